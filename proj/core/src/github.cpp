#include "ossbench/github.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

namespace ossbench {
namespace {

using nlohmann::json;

constexpr int kPageSize = 100;
constexpr std::int64_t kHourMicros = 3600LL * 1000000;

std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> header_value(const HttpResponse& response, std::string_view name) {
  for (const auto& [key, value] : response.headers) {
    if (key.size() != name.size()) continue;
    bool equal = true;
    for (std::size_t i = 0; i < key.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(key[i])) !=
          std::tolower(static_cast<unsigned char>(name[i]))) {
        equal = false;
        break;
      }
    if (equal) return value;
  }
  return std::nullopt;
}

class GithubHttpTransport final : public HttpTransport {
 public:
  explicit GithubHttpTransport(std::optional<std::string> token)
      : client_("https://api.github.com"), token_(std::move(token)) {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(30);
    client_.set_follow_location(true);
  }

  HttpResponse get(const std::string& path_and_query) override {
    httplib::Headers headers{{"Accept", "application/vnd.github+json"},
                             {"User-Agent", "ossbench"},
                             {"X-GitHub-Api-Version", "2022-11-28"}};
    if (token_) headers.emplace("Authorization", "Bearer " + *token_);
    auto result = client_.Get(path_and_query, headers);
    if (!result)
      throw IngestError("network error for " + path_and_query + ": " +
                        httplib::to_string(result.error()));
    HttpResponse out;
    out.status = result->status;
    out.body = result->body;
    for (const auto& [key, value] : result->headers) out.headers.emplace(key, value);
    return out;
  }

 private:
  httplib::Client client_;
  std::optional<std::string> token_;
};

// Sliding-hour in-process request budget.
class RequestGate {
 public:
  RequestGate(int budget_per_hour, bool wait, Clock clock)
      : budget_(budget_per_hour), wait_(wait), clock_(std::move(clock)) {}

  void admit() {
    Timestamp now = clock_();
    prune(now);
    if (static_cast<int>(issued_.size()) >= budget_) {
      const Timestamp resume =
          Timestamp::from_unix_micros(issued_.front().unix_micros() + kHourMicros);
      if (!wait_) throw IngestError("rate limited, resume after " + resume.to_iso8601());
      sleep_until(resume);
      now = clock_();
      prune(now);
    }
    issued_.push_back(now);
  }

 private:
  void prune(Timestamp now) {
    const Timestamp horizon = Timestamp::from_unix_micros(now.unix_micros() - kHourMicros);
    while (!issued_.empty() && issued_.front() <= horizon) issued_.pop_front();
  }

  void sleep_until(Timestamp resume) const {
    const std::int64_t us = resume.unix_micros() - clock_().unix_micros();
    if (us > 0) std::this_thread::sleep_for(std::chrono::microseconds(us));
  }

  int budget_;
  bool wait_;
  Clock clock_;
  std::deque<Timestamp> issued_;
};

struct RepoRef {
  std::string owner;
  std::string name;
};

RepoRef split_repo(const std::string& repo) {
  const auto slash = repo.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == repo.size() ||
      repo.find('/', slash + 1) != std::string::npos)
    throw std::invalid_argument("repository must be \"owner/name\", got \"" + repo + "\"");
  return {repo.substr(0, slash), repo.substr(slash + 1)};
}

class Fetcher {
 public:
  Fetcher(const FetchPlan& plan, HttpTransport& transport, Clock clock)
      : plan_(plan),
        repo_(split_repo(plan.repo)),
        transport_(transport),
        clock_(std::move(clock)),
        cache_(plan.cache_dir, repo_.owner, repo_.name),
        gate_(plan.max_requests_per_hour, plan.wait_on_rate_limit, clock_) {}

  RepositorySnapshot run() {
    RepositorySnapshot snapshot;
    snapshot.repo = plan_.repo;

    const std::vector<json> release_records = paged_array(releases_endpoint());
    for (const json& record : release_records)
      if (auto release = to_release(record)) snapshot.releases.push_back(std::move(*release));

    const Timestamp lookback_start =
        plan_.period.start().plus_days(-static_cast<double>(plan_.lookback_days));
    const std::vector<json> issue_records = paged_array(issues_endpoint(lookback_start));

    std::vector<Issue> candidates;
    for (const json& record : issue_records)
      if (auto issue = to_issue(record)) candidates.push_back(std::move(*issue));
    for (Issue& issue : candidates) issue.linked_commits = linked_commits(issue.number);

    // Attribution needs release creation order; sort a copy now so the
    // membership test below can binary-search it.
    std::vector<Release> by_creation = snapshot.releases;
    std::sort(by_creation.begin(), by_creation.end(), [](const Release& a, const Release& b) {
      if (a.created_at != b.created_at) return a.created_at < b.created_at;
      return id_less(a.id, b.id);
    });

    for (Issue& issue : candidates) {
      const bool opened_in_horizon =
          lookback_start <= issue.opened_at && issue.opened_at < plan_.period.end();
      if (opened_in_horizon || ships_in_period(issue, by_creation))
        snapshot.issues.push_back(std::move(issue));
    }

    if (auto recorded = cache_.snapshot_fetched_at()) {
      snapshot.fetched_at = *recorded;
    } else {
      snapshot.fetched_at = clock_();
      cache_.record_snapshot_fetched_at(snapshot.fetched_at);
    }

    snapshot.normalize();
    snapshot.validate();
    return snapshot;
  }

 private:
  std::string repo_path() const { return "/repos/" + repo_.owner + "/" + repo_.name; }

  std::string releases_endpoint() const { return repo_path() + "/releases?per_page=100"; }

  std::string issues_endpoint(Timestamp since) const {
    return repo_path() + "/issues?state=all&per_page=100&since=" + since.to_iso8601();
  }

  std::string timeline_endpoint(std::int64_t number) const {
    return repo_path() + "/issues/" + std::to_string(number) + "/timeline?per_page=100";
  }

  std::string pull_commits_endpoint(std::int64_t number) const {
    return repo_path() + "/pulls/" + std::to_string(number) + "/commits?per_page=100";
  }

  std::string commit_endpoint(const std::string& sha) const {
    return repo_path() + "/commits/" + sha;
  }

  enum class Verdict { Ok, Retry };

  // One page, cache first. `paged` appends the page query parameter.
  std::string raw(const std::string& endpoint, int page, bool paged) {
    if (auto hit = cache_.lookup(endpoint, page)) return *hit;

    std::string path = endpoint;
    if (paged) path += (path.find('?') == std::string::npos ? "?page=" : "&page=") +
                       std::to_string(page);

    for (int attempt = 0; attempt < 3; ++attempt) {
      gate_.admit();
      const HttpResponse response = transport_.get(path);
      if (check(response, endpoint) == Verdict::Retry) continue;
      cache_.store(RawCacheEntry{endpoint, page, clock_(), response.body});
      return response.body;
    }
    throw IngestError("rate limited, retries exhausted for " + endpoint);
  }

  Verdict check(const HttpResponse& response, const std::string& endpoint) {
    if (response.status < 400) return Verdict::Ok;
    if (response.status == 401) throw IngestError("unauthorized");
    if (response.status == 403 || response.status == 429) {
      const auto remaining = header_value(response, "X-RateLimit-Remaining");
      if (remaining && *remaining == "0") {
        const auto reset = header_value(response, "X-RateLimit-Reset");
        const Timestamp resume = Timestamp::from_unix_micros(
            reset ? std::stoll(*reset) * 1000000 : clock_().unix_micros() + kHourMicros);
        if (plan_.wait_on_rate_limit) {
          const std::int64_t us = resume.unix_micros() - clock_().unix_micros();
          if (us > 0) std::this_thread::sleep_for(std::chrono::microseconds(us));
          return Verdict::Retry;
        }
        throw IngestError("rate limited, resume after " + resume.to_iso8601());
      }
      throw IngestError("unauthorized");  // forbidden with quota left
    }
    if (response.status == 404)
      throw IngestError("unknown repository \"" + plan_.repo + "\" (HTTP 404 for " + endpoint +
                        ")");
    throw IngestError("HTTP " + std::to_string(response.status) + " for " + endpoint);
  }

  std::vector<json> paged_array(const std::string& endpoint) {
    std::vector<json> records;
    for (int page = 1;; ++page) {
      const std::string body = raw(endpoint, page, /*paged=*/true);
      json doc;
      try {
        doc = json::parse(body);
      } catch (const json::parse_error& e) {
        throw IngestError("bad response for " + endpoint + " page " + std::to_string(page) +
                          ": " + e.what());
      }
      if (!doc.is_array())
        throw IngestError("bad response for " + endpoint + ": expected an array");
      for (auto& item : doc) records.push_back(std::move(item));
      if (doc.size() < kPageSize) break;
    }
    return records;
  }

  static std::optional<Timestamp> time_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) return std::nullopt;
    try {
      return Timestamp::parse(it->get<std::string>());
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }

  std::optional<Release> to_release(const json& record) const {
    if (record.value("draft", false)) return std::nullopt;  // unpublished: not a release event
    const auto published = time_field(record, "published_at");
    const auto created = time_field(record, "created_at");
    if (!published || !created) return std::nullopt;
    Release r;
    const auto& id = record["id"];
    r.id = id.is_string() ? id.get<std::string>() : std::to_string(id.get<std::int64_t>());
    r.tag = record.value("tag_name", "");
    r.created_at = *created;
    r.published_at = *published;
    r.is_prerelease = record.value("prerelease", false);
    return r;
  }

  static std::optional<Issue> to_issue(const json& record) {
    if (!record.contains("number") || !record["number"].is_number_integer()) return std::nullopt;
    const auto opened = time_field(record, "created_at");
    if (!opened) return std::nullopt;
    Issue issue;
    issue.number = record["number"].get<std::int64_t>();
    issue.opened_at = *opened;
    issue.closed_at = time_field(record, "closed_at");
    if (const auto it = record.find("labels"); it != record.end() && it->is_array())
      for (const json& label : *it) {
        if (label.is_string())
          issue.labels.insert(label.get<std::string>());
        else if (label.is_object() && label.contains("name") && label["name"].is_string())
          issue.labels.insert(label["name"].get<std::string>());
      }
    issue.is_pull_request = record.contains("pull_request");
    return issue;
  }

  // Commits referenced by the issue's timeline, plus commits of pull
  // requests the timeline cross-references (one hop, for repositories that
  // link commits to pull requests rather than issues).
  std::vector<CommitEvent> linked_commits(std::int64_t issue_number) {
    std::vector<CommitEvent> commits;
    std::unordered_map<std::string, bool> seen;

    const auto add = [&](const std::string& sha, Timestamp at) {
      if (sha.empty() || seen.count(sha)) return;
      seen.emplace(sha, true);
      commits.push_back(CommitEvent{sha, at});
    };

    for (const json& event : paged_array(timeline_endpoint(issue_number))) {
      const std::string kind = event.value("event", "");
      if (kind == "referenced" && event.contains("commit_id") && event["commit_id"].is_string()) {
        const std::string sha = event["commit_id"].get<std::string>();
        if (auto at = commit_time(sha)) add(sha, *at);
      } else if (kind == "cross-referenced") {
        const json* source_issue = nullptr;
        if (event.contains("source") && event["source"].is_object() &&
            event["source"].contains("issue") && event["source"]["issue"].is_object())
          source_issue = &event["source"]["issue"];
        if (!source_issue || !source_issue->contains("pull_request")) continue;
        if (!source_issue->contains("number") || !(*source_issue)["number"].is_number_integer())
          continue;
        const std::int64_t pr = (*source_issue)["number"].get<std::int64_t>();
        for (const json& record : paged_array(pull_commits_endpoint(pr))) {
          if (!record.contains("sha") || !record["sha"].is_string()) continue;
          const auto at = pull_commit_time(record);
          if (at) add(record["sha"].get<std::string>(), *at);
        }
      }
    }

    std::sort(commits.begin(), commits.end(), [](const CommitEvent& a, const CommitEvent& b) {
      if (a.committed_at != b.committed_at) return a.committed_at < b.committed_at;
      return a.sha < b.sha;
    });
    return commits;
  }

  std::optional<Timestamp> commit_time(const std::string& sha) {
    if (const auto it = commit_times_.find(sha); it != commit_times_.end()) return it->second;
    const std::string body = raw(commit_endpoint(sha), 1, /*paged=*/false);
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::parse_error&) {
      return std::nullopt;
    }
    std::optional<Timestamp> at;
    if (doc.contains("commit") && doc["commit"].is_object()) {
      const json& commit = doc["commit"];
      if (commit.contains("committer") && commit["committer"].is_object())
        at = time_field(commit["committer"], "date");
      if (!at && commit.contains("author") && commit["author"].is_object())
        at = time_field(commit["author"], "date");
    }
    commit_times_.emplace(sha, at);
    return at;
  }

  static std::optional<Timestamp> pull_commit_time(const json& record) {
    if (!record.contains("commit") || !record["commit"].is_object()) return std::nullopt;
    const json& commit = record["commit"];
    if (commit.contains("committer") && commit["committer"].is_object())
      if (auto at = time_field(commit["committer"], "date")) return at;
    if (commit.contains("author") && commit["author"].is_object())
      return time_field(commit["author"], "date");
    return std::nullopt;
  }

  bool ships_in_period(const Issue& issue, const std::vector<Release>& by_creation) const {
    if (issue.linked_commits.empty()) return false;
    const Timestamp last = issue.linked_commits.back().committed_at;
    const auto it = std::lower_bound(
        by_creation.begin(), by_creation.end(), last,
        [](const Release& r, const Timestamp& t) { return r.created_at < t; });
    return it != by_creation.end() && plan_.period.contains(it->published_at);
  }

  const FetchPlan& plan_;
  RepoRef repo_;
  HttpTransport& transport_;
  Clock clock_;
  PageCache cache_;
  RequestGate gate_;
  std::unordered_map<std::string, std::optional<Timestamp>> commit_times_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_github_transport(std::optional<std::string> auth_token) {
  return std::make_unique<GithubHttpTransport>(std::move(auth_token));
}

Timestamp system_clock_now() {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return Timestamp::from_unix_micros(
      std::chrono::duration_cast<std::chrono::microseconds>(now).count());
}

PageCache::PageCache(const std::filesystem::path& root, const std::string& owner,
                     const std::string& name)
    : dir_(root / (owner + "__" + name)) {
  const auto manifest_path = dir_ / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) return;
  std::ifstream in(manifest_path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error&) {
    return;  // unreadable manifest: treat as cold cache
  }
  if (doc.contains("fetched_at") && doc["fetched_at"].is_string()) {
    try {
      snapshot_fetched_at_ = Timestamp::parse(doc["fetched_at"].get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) return;
  for (const json& item : doc["entries"]) {
    RawCacheEntry entry;
    entry.endpoint = item.value("endpoint", "");
    entry.page = item.value("page", 0);
    try {
      entry.fetched_at = Timestamp::parse(item.value("fetched_at", ""));
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (entry.endpoint.empty() || entry.page <= 0) continue;
    entries_.emplace(std::make_pair(entry.endpoint, entry.page), std::move(entry));
  }
}

std::optional<std::string> PageCache::lookup(const std::string& endpoint, int page) const {
  if (!entries_.count({endpoint, page})) return std::nullopt;
  const auto path = dir_ / fnv1a_hex(endpoint) / (std::to_string(page) + ".raw");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void PageCache::store(const RawCacheEntry& entry) {
  const auto key = std::make_pair(entry.endpoint, entry.page);
  if (entries_.count(key)) return;  // write-once

  const auto bucket = dir_ / fnv1a_hex(entry.endpoint);
  std::filesystem::create_directories(bucket);
  const auto path = bucket / (std::to_string(entry.page) + ".raw");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestError("cannot write cache file: " + path.string());
  out << entry.body;
  out.flush();
  if (!out) throw IngestError("cache write failed: " + path.string());

  RawCacheEntry meta = entry;
  meta.body.clear();
  entries_.emplace(key, std::move(meta));
  write_manifest();
}

std::optional<Timestamp> PageCache::snapshot_fetched_at() const { return snapshot_fetched_at_; }

void PageCache::record_snapshot_fetched_at(Timestamp t) {
  snapshot_fetched_at_ = t;
  std::filesystem::create_directories(dir_);
  write_manifest();
}

void PageCache::purge() {
  std::filesystem::remove_all(dir_);
  entries_.clear();
  snapshot_fetched_at_.reset();
}

void PageCache::write_manifest() const {
  json entries = json::array();
  for (const auto& [key, entry] : entries_) {
    json item;
    item["endpoint"] = entry.endpoint;
    item["page"] = entry.page;
    item["fetched_at"] = entry.fetched_at.to_iso8601();
    item["file"] = fnv1a_hex(entry.endpoint) + "/" + std::to_string(entry.page) + ".raw";
    entries.push_back(std::move(item));
  }
  json doc;
  doc["entries"] = std::move(entries);
  if (snapshot_fetched_at_) doc["fetched_at"] = snapshot_fetched_at_->to_iso8601();

  std::filesystem::create_directories(dir_);
  const auto path = dir_ / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestError("cannot write cache manifest: " + path.string());
  out << doc.dump(2) << "\n";
}

RepositorySnapshot fetch_snapshot(const FetchPlan& plan, HttpTransport& transport, Clock clock) {
  if (plan.max_requests_per_hour <= 0)
    throw std::invalid_argument("max_requests_per_hour must be positive");
  if (plan.auth_token && plan.max_requests_per_hour > 5000)
    throw std::invalid_argument("max_requests_per_hour exceeds the provider ceiling of 5000");
  if (!clock) clock = system_clock_now;
  return Fetcher(plan, transport, std::move(clock)).run();
}

}  // namespace ossbench
