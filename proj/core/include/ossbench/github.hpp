#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ossbench/model.hpp"
#include "ossbench/time.hpp"

namespace ossbench {

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;
};

/// Minimal GET-only transport; the production implementation talks to the
/// provider API over TLS, tests replay recorded responses.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// path_and_query is relative to the API root, e.g.
  /// "/repos/o/n/releases?per_page=100&page=1".
  virtual HttpResponse get(const std::string& path_and_query) = 0;
};

/// Transport against https://api.github.com with a bearer token taken from
/// the environment or the fetch plan.
std::unique_ptr<HttpTransport> make_github_transport(std::optional<std::string> auth_token);

struct FetchPlan {
  std::string repo;  // "owner/name"
  Period period;
  std::optional<std::string> auth_token;
  std::filesystem::path cache_dir;
  int max_requests_per_hour = 5000;  // provider ceiling when authenticated
  int lookback_days = 365;           // issue listing horizon before period.start
  bool wait_on_rate_limit = false;   // sleep until reset instead of aborting
};

struct RawCacheEntry {
  std::string endpoint;  // page parameter excluded
  int page = 1;
  Timestamp fetched_at;
  std::string body;
};

/// Write-once page store under <cache_dir>/<owner>__<name>/.
///
/// Bodies live at <endpoint-hash>/<page>.raw; manifest.json lists every
/// entry with its fetch time plus the overall first-fetch timestamp.
/// Entries are immutable: a second store of the same (endpoint, page) is
/// ignored. Staleness is the operator's concern, via purge().
class PageCache {
 public:
  PageCache(const std::filesystem::path& root, const std::string& owner, const std::string& name);

  std::optional<std::string> lookup(const std::string& endpoint, int page) const;
  void store(const RawCacheEntry& entry);

  std::optional<Timestamp> snapshot_fetched_at() const;
  void record_snapshot_fetched_at(Timestamp t);

  void purge();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  void write_manifest() const;

  std::filesystem::path dir_;
  std::map<std::pair<std::string, int>, RawCacheEntry> entries_;  // bodies kept on disk only
  std::optional<Timestamp> snapshot_fetched_at_;
};

using Clock = std::function<Timestamp()>;
Timestamp system_clock_now();

/// Builds a normalized snapshot for the plan: the full release history,
/// every issue opened inside [period.start - lookback, period.end) plus any
/// issue whose last linked commit falls inside an in-period release
/// interval, with linked commits resolved through issue timeline events
/// (directly referenced commits, and commits of cross-referenced pull
/// requests, one hop).
///
/// Every page is served from the cache when present and persisted after a
/// fetch, so interrupted runs resume without refetching and a warm cache
/// needs zero requests. Throws IngestError: "unauthorized" on credential
/// rejection, "unknown repository" on 404, "rate limited, resume after
/// <time>" when either the in-process hourly budget or the provider limit
/// is exhausted (partial cache preserved).
RepositorySnapshot fetch_snapshot(const FetchPlan& plan, HttpTransport& transport,
                                  Clock clock = system_clock_now);

}  // namespace ossbench
