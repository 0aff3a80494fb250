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

#include <fmt/format.h>
#include <httplib.h>
#include <unistd.h>

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <semaphore>
#include <sstream>
#include <thread>

#include "bineq/bytes.h"
#include "bineq/digest.h"
#include "bineq/engine.h"

namespace bineq {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kUserAgent = "bineq/0.1.0";

bool HasSeparator(std::string_view s) {
  return s.find('/') != std::string_view::npos || s.find('\\') != std::string_view::npos;
}

std::string GroupPath(std::string_view group) {
  std::string p(group);
  std::replace(p.begin(), p.end(), '.', '/');
  return p;
}

// Splits "http://host:port/a/b" into "http://host:port" and "/a/b".
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw NetworkError("not an absolute URL: " + url);
  auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string SidecarDigest(std::string_view body) {
  std::istringstream in{std::string(body)};
  std::string token;
  in >> token;
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return token;
}

std::string TempName(const fs::path& target) {
  static std::atomic<unsigned> counter{0};
  return target.string() + fmt::format(".tmp-{}-{}-{}", ::getpid(),
                                       std::hash<std::thread::id>{}(std::this_thread::get_id()),
                                       counter++);
}

void AtomicWrite(const fs::path& target, std::string_view data) {
  fs::create_directories(target.parent_path());
  const std::string tmp = TempName(target);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("cannot write " + tmp);
  }
  fs::rename(tmp, target);
}

}  // namespace

void Coordinates::Validate() const {
  if (group.empty() || artifact.empty() || version.empty()) {
    throw InvalidCoordinates("group, artifact and version must be non-empty");
  }
  if (HasSeparator(group) || HasSeparator(artifact) || HasSeparator(version) ||
      (classifier && HasSeparator(*classifier))) {
    throw InvalidCoordinates("coordinates must not contain path separators");
  }
}

Coordinates Coordinates::Parse(std::string_view gav) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = gav.find(':', start);
    parts.emplace_back(gav.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw InvalidCoordinates("expected group:artifact:version");
  Coordinates c{parts[0], parts[1], parts[2], std::nullopt};
  c.Validate();
  return c;
}

RepoSpec RepoSpec::Make(std::string id, std::string_view base_url, std::string provider) {
  while (base_url.ends_with('/')) base_url.remove_suffix(1);
  return {std::move(id), std::string(base_url), std::move(provider)};
}

std::string ArtifactUrl(const RepoSpec& repo, const Coordinates& c) {
  c.Validate();
  std::string file = c.artifact + "-" + c.version;
  if (c.classifier) file += "-" + *c.classifier;
  return fmt::format("{}/{}/{}/{}/{}.jar", repo.base_url, GroupPath(c.group), c.artifact, c.version,
                     file);
}

std::string MetadataUrl(const RepoSpec& repo, std::string_view group, std::string_view artifact) {
  return fmt::format("{}/{}/{}/maven-metadata.xml", repo.base_url, GroupPath(group), artifact);
}

VersionList ParseMavenMetadata(std::string_view xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw MetadataParseError(std::string("malformed maven-metadata.xml: ") + e.what());
  }
  auto versions = tree.get_child_optional("metadata.versioning.versions");
  if (!versions) throw MetadataParseError("maven-metadata.xml has no versioning/versions element");
  VersionList out;
  for (const auto& [name, node] : *versions) {
    if (name == "version") out.push_back(node.get_value<std::string>());
  }
  return out;
}

std::string SelectVersion(const VersionList& versions, std::string_view canonical,
                          SelectStrategy strategy) {
  std::optional<std::string> chosen;
  for (const auto& v : versions) {
    if (CanonicalizeVersion(v) != canonical) continue;
    chosen = v;
    if (strategy == SelectStrategy::kFirst) break;
  }
  if (!chosen) throw NoMatch(fmt::format("no version canonicalizes to {}", canonical));
  return *chosen;
}

std::string_view ChecksumKindName(ChecksumKind k) {
  switch (k) {
    case ChecksumKind::kMd5:
      return "md5";
    case ChecksumKind::kSha1:
      return "sha1";
    case ChecksumKind::kNone:
      return "none";
  }
  return "";
}

std::string DefaultCacheRoot() {
  if (const char* env = std::getenv("BINEQ_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return (fs::path(xdg) / "bineq").string();
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return (fs::path(home) / ".cache" / "bineq").string();
  }
  return ".bineq-cache";
}

struct RepoClient::HostGate {
  explicit HostGate(int limit) : slots(std::clamp(limit, 1, 64)) {}
  std::counting_semaphore<64> slots;
};

struct RepoClient::State {
  std::mutex mu;
  std::map<std::string, std::unique_ptr<HostGate>> gates;
  std::chrono::steady_clock::time_point next_request{};
};

RepoClient::RepoClient(FetchOptions options)
    : options_(std::move(options)), state_(std::make_unique<State>()) {
  if (options_.cache_root.empty()) options_.cache_root = DefaultCacheRoot();
}

RepoClient::~RepoClient() = default;

RepoClient::HostGate& RepoClient::Gate(const std::string& host) {
  std::lock_guard lock(state_->mu);
  auto& gate = state_->gates[host];
  if (!gate) gate = std::make_unique<HostGate>(options_.per_host_limit);
  return *gate;
}

RepoClient::Response RepoClient::Get(const std::string& url) {
  auto [host, path] = SplitUrl(url);
  HostGate& gate = Gate(host);
  auto backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= std::max(1, options_.max_attempts); ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    if (options_.politeness_delay.count() > 0) {
      std::chrono::steady_clock::time_point slot;
      {
        std::lock_guard lock(state_->mu);
        slot = std::max(std::chrono::steady_clock::now(), state_->next_request);
        state_->next_request = slot + options_.politeness_delay;
      }
      std::this_thread::sleep_until(slot);
    }
    gate.slots.acquire();
    httplib::Result res;
    {
      httplib::Client client(host);
      client.set_follow_location(true);
      client.set_connection_timeout(options_.timeout);
      client.set_read_timeout(options_.timeout);
      client.set_default_headers({{"User-Agent", std::string(kUserAgent)}});
      ++requests_;
      res = client.Get(path);
    }
    gate.slots.release();
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = fmt::format("HTTP {}", res->status);
      continue;
    }
    return {res->status, std::move(res->body)};
  }
  throw NetworkError(
      fmt::format("GET {} failed after {} attempts: {}", url, options_.max_attempts, last_error));
}

VersionList RepoClient::FetchVersions(const RepoSpec& repo, std::string_view group,
                                      std::string_view artifact) {
  const std::string url = MetadataUrl(repo, group, artifact);
  Response r = Get(url);
  if (r.status == 404) throw NotFound("not found: " + url);
  if (r.status != 200) throw NetworkError(fmt::format("GET {}: HTTP {}", url, r.status));
  return ParseMavenMetadata(r.body);
}

std::string RepoClient::CachePath(const RepoSpec& repo, const Coordinates& c) const {
  std::string file = c.artifact + "-" + c.version;
  if (c.classifier) file += "-" + *c.classifier;
  return (fs::path(options_.cache_root) / repo.id / GroupPath(c.group) / c.artifact / c.version /
          (file + ".jar"))
      .string();
}

CachedArtifact RepoClient::FetchArtifact(const RepoSpec& repo, const Coordinates& c) {
  c.Validate();
  CachedArtifact out;
  out.path = CachePath(repo, c);
  const std::string marker = out.path + ".verified";
  if (fs::exists(out.path) && fs::exists(marker)) {
    std::ifstream in(marker);
    std::string kind;
    in >> kind;
    out.verified_with = kind == "md5"    ? ChecksumKind::kMd5
                        : kind == "sha1" ? ChecksumKind::kSha1
                                         : ChecksumKind::kNone;
    out.checksum_warning = out.verified_with == ChecksumKind::kNone;
    out.sha256 = Sha256Hex(ReadFile(out.path));
    out.from_cache = true;
    return out;
  }

  const std::string url = ArtifactUrl(repo, c);
  Response jar = Get(url);
  if (jar.status == 404) throw NotFound("not found: " + url);
  if (jar.status != 200) throw NetworkError(fmt::format("GET {}: HTTP {}", url, jar.status));
  const ByteView body = AsBytes(jar.body);

  struct Sidecar {
    const char* suffix;
    ChecksumKind kind;
    std::string (*digest)(ByteView);
  };
  const Sidecar sidecars[] = {{".md5", ChecksumKind::kMd5, &Md5Hex},
                              {".sha1", ChecksumKind::kSha1, &Sha1Hex}};
  for (const auto& s : sidecars) {
    Response r = Get(url + s.suffix);
    if (r.status == 404) continue;
    if (r.status != 200) {
      throw NetworkError(fmt::format("GET {}{}: HTTP {}", url, s.suffix, r.status));
    }
    const std::string expected = SidecarDigest(r.body);
    const std::string actual = s.digest(body);
    if (expected != actual) {
      throw ChecksumMismatch(fmt::format("{}: {} sidecar says {}, content hashes to {}", url,
                                         ChecksumKindName(s.kind), expected, actual));
    }
    out.verified_with = s.kind;
    break;
  }
  out.checksum_warning = out.verified_with == ChecksumKind::kNone;
  AtomicWrite(out.path, jar.body);
  AtomicWrite(marker, ChecksumKindName(out.verified_with));
  out.sha256 = Sha256Hex(body);
  return out;
}

}  // namespace bineq
