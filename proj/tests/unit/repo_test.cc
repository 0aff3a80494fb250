// Copyright 2026 The bineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bineq/repo.h"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "bineq/bytes.h"
#include "bineq/digest.h"
#include "support/http_fixture.h"

namespace bineq {
namespace {

namespace fs = std::filesystem;
using testing::FixtureServer;

constexpr char kMetadata[] = R"(<?xml version="1.0" encoding="UTF-8"?>
<metadata>
  <groupId>org.acme</groupId>
  <artifactId>widget</artifactId>
  <versioning>
    <latest>1.0.redhat-00002</latest>
    <versions>
      <version>1.0</version>
      <version>1.0-redhat-1</version>
      <version>1.0.redhat-00002</version>
    </versions>
  </versioning>
</metadata>
)";

const std::string kJarPath = "/maven/org/acme/widget/1.0-redhat-1/widget-1.0-redhat-1.jar";

FetchOptions Options(const std::string& name) {
  FetchOptions o;
  fs::path root = fs::temp_directory_path() / ("bineq_repo_" + name);
  fs::remove_all(root);
  o.cache_root = root.string();
  o.initial_backoff = std::chrono::milliseconds(1);
  o.timeout = std::chrono::seconds(5);
  return o;
}

Coordinates Widget() { return Coordinates::Parse("org.acme:widget:1.0-redhat-1"); }

TEST(ArtifactUrlTest, MavenLayout) {
  RepoSpec r = RepoSpec::Make("central", "https://repo.example/maven2/");
  EXPECT_EQ(r.base_url, "https://repo.example/maven2");
  Coordinates c = Coordinates::Parse("commons-io:commons-io:2.15.1");
  EXPECT_EQ(ArtifactUrl(r, c),
            "https://repo.example/maven2/commons-io/commons-io/2.15.1/commons-io-2.15.1.jar");
  c.classifier = "sources";
  EXPECT_EQ(ArtifactUrl(r, c),
            "https://repo.example/maven2/commons-io/commons-io/2.15.1/"
            "commons-io-2.15.1-sources.jar");
  Coordinates j = Coordinates::Parse("com.fasterxml.jackson.core:jackson-core:2.17.2");
  EXPECT_NE(ArtifactUrl(r, j).find("/com/fasterxml/jackson/core/jackson-core/2.17.2/"),
            std::string::npos);
  EXPECT_EQ(MetadataUrl(r, "com.fasterxml.jackson.core", "jackson-core"),
            "https://repo.example/maven2/com/fasterxml/jackson/core/jackson-core/"
            "maven-metadata.xml");
}

TEST(CoordinatesTest, RejectsMalformedInput) {
  EXPECT_THROW(Coordinates::Parse("a:b"), InvalidCoordinates);
  EXPECT_THROW(Coordinates::Parse("a::1"), InvalidCoordinates);
  EXPECT_THROW(Coordinates::Parse("a/b:c:1"), InvalidCoordinates);
  EXPECT_THROW(Coordinates::Parse("a:b:../1"), InvalidCoordinates);
  EXPECT_THROW(Coordinates::Parse("a:b:1:sources"), InvalidCoordinates);
  EXPECT_FALSE(Coordinates::Parse("a:b:1").classifier.has_value());
}

TEST(MetadataTest, PreservesPublishedOrder) {
  EXPECT_EQ(ParseMavenMetadata(kMetadata),
            (VersionList{"1.0", "1.0-redhat-1", "1.0.redhat-00002"}));
  EXPECT_THROW(ParseMavenMetadata("<metadata><versioning>"), MetadataParseError);
}

TEST(SelectVersionTest, FirstLastAndNoMatch) {
  VersionList vl = {"1.0-redhat-1", "1.0.redhat-00002"};
  EXPECT_EQ(SelectVersion(vl, "1.0", SelectStrategy::kFirst), "1.0-redhat-1");
  EXPECT_EQ(SelectVersion(vl, "1.0", SelectStrategy::kLast), "1.0.redhat-00002");
  EXPECT_THROW(SelectVersion({"2.0"}, "1.0", SelectStrategy::kFirst), NoMatch);
}

TEST(RepoClientTest, FetchVersionsOverHttp) {
  FixtureServer server;
  server.Serve("/maven/org/acme/widget/maven-metadata.xml", kMetadata);
  server.Serve("/maven/org/acme/broken/maven-metadata.xml", "<metadata><versioning>");
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");
  RepoClient client(Options("versions"));
  EXPECT_EQ(client.FetchVersions(repo, "org.acme", "widget"),
            (VersionList{"1.0", "1.0-redhat-1", "1.0.redhat-00002"}));
  EXPECT_THROW(client.FetchVersions(repo, "org.acme", "absent"), NotFound);
  EXPECT_THROW(client.FetchVersions(repo, "org.acme", "broken"), MetadataParseError);
}

TEST(RepoClientTest, VerifiedArtifactIsCachedAndReused) {
  FixtureServer server;
  const std::string body = "PK fixture jar bytes";
  server.Serve(kJarPath, body);
  server.Serve(kJarPath + ".md5", testing::Md5Sidecar(body) + "  widget-1.0-redhat-1.jar\n");
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");
  RepoClient client(Options("cached"));
  auto first = client.FetchArtifact(repo, Widget());
  EXPECT_EQ(first.verified_with, ChecksumKind::kMd5);
  EXPECT_FALSE(first.from_cache);
  EXPECT_EQ(first.sha256, Sha256Hex(AsBytes(body)));
  EXPECT_EQ(AsChars(ReadFile(first.path)), body);
  std::size_t before = server.request_count();
  auto second = client.FetchArtifact(repo, Widget());
  EXPECT_EQ(server.request_count(), before);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(second.path, first.path);
  EXPECT_EQ(second.verified_with, ChecksumKind::kMd5);
}

TEST(RepoClientTest, MismatchedSidecarCachesNothing) {
  FixtureServer server;
  server.Serve(kJarPath, "real body");
  server.Serve(kJarPath + ".md5", testing::Md5Sidecar("other body"));
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");
  FetchOptions options = Options("mismatch");
  RepoClient client(options);
  EXPECT_THROW(client.FetchArtifact(repo, Widget()), ChecksumMismatch);
  EXPECT_FALSE(fs::exists(options.cache_root) && !fs::is_empty(options.cache_root) &&
               fs::exists(fs::path(options.cache_root) / "fixture" / "org" / "acme" / "widget" /
                          "1.0-redhat-1" / "widget-1.0-redhat-1.jar"));
}

TEST(RepoClientTest, SidecarFallbacks) {
  FixtureServer server;
  const std::string body = "jar";
  server.Serve(kJarPath, body);
  server.Serve(kJarPath + ".sha1", testing::Sha1Sidecar(body));
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");
  auto with_sha1 = RepoClient(Options("sha1")).FetchArtifact(repo, Widget());
  EXPECT_EQ(with_sha1.verified_with, ChecksumKind::kSha1);
  EXPECT_FALSE(with_sha1.checksum_warning);

  server.Remove(kJarPath + ".sha1");
  auto bare = RepoClient(Options("none")).FetchArtifact(repo, Widget());
  EXPECT_EQ(bare.verified_with, ChecksumKind::kNone);
  EXPECT_TRUE(bare.checksum_warning);
}

TEST(RepoClientTest, RetriesServerErrors) {
  FixtureServer server;
  server.Serve("/maven/org/acme/widget/maven-metadata.xml", kMetadata);
  server.FailNext("/maven/org/acme/widget/maven-metadata.xml", 2);
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");
  RepoClient client(Options("retry"));
  EXPECT_EQ(client.FetchVersions(repo, "org.acme", "widget").size(), 3u);
  EXPECT_EQ(client.request_count(), 3u);

  server.FailNext("/maven/org/acme/widget/maven-metadata.xml", 5);
  EXPECT_THROW(client.FetchVersions(repo, "org.acme", "widget"), NetworkError);
}

TEST(RepoClientTest, MissingArtifactIsNotFound) {
  FixtureServer server;
  RepoSpec repo = RepoSpec::Make("fixture", server.base_url() + "/maven");
  EXPECT_THROW(RepoClient(Options("missing")).FetchArtifact(repo, Widget()), NotFound);
}

TEST(DefaultCacheRootTest, HonoursEnvironment) {
  ::setenv("BINEQ_CACHE", "/tmp/bineq-cache-env", 1);
  EXPECT_EQ(DefaultCacheRoot(), "/tmp/bineq-cache-env");
  ::unsetenv("BINEQ_CACHE");
  ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
  EXPECT_EQ(DefaultCacheRoot(), "/tmp/xdg/bineq");
  ::unsetenv("XDG_CACHE_HOME");
}

}  // namespace
}  // namespace bineq
