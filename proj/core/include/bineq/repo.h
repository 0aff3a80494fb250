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

#ifndef BINEQ_REPO_H_
#define BINEQ_REPO_H_

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bineq/error.h"

namespace bineq {

class NotFound : public Error {
 public:
  using Error::Error;
};
class MetadataParseError : public Error {
 public:
  using Error::Error;
};
class NoMatch : public Error {
 public:
  using Error::Error;
};
class ChecksumMismatch : public Error {
 public:
  using Error::Error;
};
class NetworkError : public Error {
 public:
  using Error::Error;
};
class InvalidCoordinates : public Error {
 public:
  using Error::Error;
};

struct Coordinates {
  std::string group;
  std::string artifact;
  std::string version;
  std::optional<std::string> classifier;  // e.g. "sources"

  // Throws InvalidCoordinates on empty parts or path separators.
  void Validate() const;
  // "group:artifact:version".
  static Coordinates Parse(std::string_view gav);
};

struct RepoSpec {
  std::string id;
  std::string base_url;  // no trailing slash
  std::string provider;

  static RepoSpec Make(std::string id, std::string_view base_url, std::string provider = "");
};

using VersionList = std::vector<std::string>;

// base/group-path/artifact/version/artifact-version[-classifier].jar
std::string ArtifactUrl(const RepoSpec& repo, const Coordinates& c);
std::string MetadataUrl(const RepoSpec& repo, std::string_view group, std::string_view artifact);

// The <versioning><versions> list of a maven-metadata.xml document, in
// document order.
VersionList ParseMavenMetadata(std::string_view xml);

enum class SelectStrategy { kFirst, kLast };

// First or last version, in release order, whose canonical form equals
// `canonical`. Throws NoMatch.
std::string SelectVersion(const VersionList& versions, std::string_view canonical,
                          SelectStrategy strategy);

enum class ChecksumKind { kMd5, kSha1, kNone };
std::string_view ChecksumKindName(ChecksumKind k);

struct CachedArtifact {
  std::string path;
  std::string sha256;
  ChecksumKind verified_with = ChecksumKind::kNone;
  bool checksum_warning = false;  // neither .md5 nor .sha1 sidecar existed
  bool from_cache = false;
};

struct FetchOptions {
  std::string cache_root;  // empty: DefaultCacheRoot()
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds politeness_delay{0};  // minimum gap between requests
  int per_host_limit = 4;
  std::chrono::seconds timeout{30};
};

// $BINEQ_CACHE, else $XDG_CACHE_HOME/bineq, else ~/.cache/bineq.
std::string DefaultCacheRoot();

// HTTP access to Maven-layout repositories with a local cache laid out as
// <cache>/<repo-id>/<group path>/<artifact>/<version>/. Thread-safe.
class RepoClient {
 public:
  explicit RepoClient(FetchOptions options = {});
  ~RepoClient();

  VersionList FetchVersions(const RepoSpec& repo, std::string_view group,
                            std::string_view artifact);
  // Verifies against the .md5 sidecar, falling back to .sha1. A verified file
  // is never downloaded or rewritten again.
  CachedArtifact FetchArtifact(const RepoSpec& repo, const Coordinates& c);

  // HTTP requests issued so far, retries included.
  std::size_t request_count() const { return requests_; }

 private:
  struct Response {
    int status = 0;
    std::string body;
  };
  Response Get(const std::string& url);
  std::string CachePath(const RepoSpec& repo, const Coordinates& c) const;

  struct HostGate;
  HostGate& Gate(const std::string& host);

  FetchOptions options_;
  std::atomic<std::size_t> requests_{0};
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace bineq

#endif  // BINEQ_REPO_H_
