#include "ossbench/fixture.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ossbench {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FixtureError(where + ": " + what);
}

const json& member(const json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing");
  return *it;
}

std::string text_member(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

Timestamp time_member(const json& obj, const std::string& where, const char* key) {
  const std::string raw = text_member(obj, where, key);
  try {
    return Timestamp::parse(raw);
  } catch (const std::invalid_argument&) {
    fail(where + "." + key, "expected ISO-8601 timestamp, got \"" + raw + "\"");
  }
}

bool bool_member(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_boolean()) fail(where + "." + key, "expected a boolean");
  return v.get<bool>();
}

Release release_from(const json& obj, const std::string& where) {
  Release r;
  const json& id = member(obj, where, "id");
  if (id.is_string())
    r.id = id.get<std::string>();
  else if (id.is_number_integer())
    r.id = std::to_string(id.get<std::int64_t>());
  else
    fail(where + ".id", "expected a string or integer");
  r.tag = text_member(obj, where, "tag_name");
  r.created_at = time_member(obj, where, "created_at");
  r.published_at = time_member(obj, where, "published_at");
  r.is_prerelease = bool_member(obj, where, "prerelease");
  return r;
}

Issue issue_from(const json& obj, const std::string& where) {
  Issue issue;
  const json& number = member(obj, where, "number");
  if (!number.is_number_integer() || number.get<std::int64_t>() <= 0)
    fail(where + ".number", "expected a positive integer");
  issue.number = number.get<std::int64_t>();
  issue.opened_at = time_member(obj, where, "opened_at");
  const json& closed = member(obj, where, "closed_at");
  if (!closed.is_null()) {
    if (!closed.is_string()) fail(where + ".closed_at", "expected a string or null");
    try {
      issue.closed_at = Timestamp::parse(closed.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(where + ".closed_at", "expected ISO-8601 timestamp");
    }
  }
  const json& labels = member(obj, where, "labels");
  if (!labels.is_array()) fail(where + ".labels", "expected an array");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string())
      fail(where + ".labels[" + std::to_string(i) + "]", "expected a string");
    issue.labels.insert(labels[i].get<std::string>());
  }
  issue.is_pull_request = bool_member(obj, where, "is_pull_request");
  const json& commits = member(obj, where, "commits");
  if (!commits.is_array()) fail(where + ".commits", "expected an array");
  for (std::size_t i = 0; i < commits.size(); ++i) {
    const std::string cw = where + ".commits[" + std::to_string(i) + "]";
    CommitEvent c;
    c.sha = text_member(commits[i], cw, "sha");
    c.committed_at = time_member(commits[i], cw, "committed_at");
    issue.linked_commits.push_back(std::move(c));
  }
  return issue;
}

}  // namespace

RepositorySnapshot snapshot_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FixtureError(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) throw FixtureError("document: top level must be an object");

  if (const auto it = doc.find("schema_version"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() != kSchemaVersion)
      throw FixtureError("schema_version: unsupported (expected " +
                         std::to_string(kSchemaVersion) + ")");
  }

  RepositorySnapshot snapshot;
  snapshot.repo = text_member(doc, "document", "repo");
  snapshot.fetched_at = time_member(doc, "document", "fetched_at");

  const json& releases = member(doc, "document", "releases");
  if (!releases.is_array()) throw FixtureError("releases: expected an array");
  for (std::size_t i = 0; i < releases.size(); ++i)
    snapshot.releases.push_back(release_from(releases[i], "releases[" + std::to_string(i) + "]"));

  const json& issues = member(doc, "document", "issues");
  if (!issues.is_array()) throw FixtureError("issues: expected an array");
  for (std::size_t i = 0; i < issues.size(); ++i)
    snapshot.issues.push_back(issue_from(issues[i], "issues[" + std::to_string(i) + "]"));

  snapshot.normalize();
  try {
    snapshot.validate();
  } catch (const std::invalid_argument& e) {
    throw FixtureError(e.what());
  }
  return snapshot;
}

std::string snapshot_to_json_text(const RepositorySnapshot& snapshot) {
  RepositorySnapshot ordered = snapshot;
  ordered.normalize();

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["repo"] = ordered.repo;
  doc["fetched_at"] = ordered.fetched_at.to_iso8601();

  json releases = json::array();
  for (const Release& r : ordered.releases) {
    json o;
    o["id"] = r.id;
    o["tag_name"] = r.tag;
    o["created_at"] = r.created_at.to_iso8601();
    o["published_at"] = r.published_at.to_iso8601();
    o["prerelease"] = r.is_prerelease;
    releases.push_back(std::move(o));
  }
  doc["releases"] = std::move(releases);

  json issues = json::array();
  for (const Issue& issue : ordered.issues) {
    json o;
    o["number"] = issue.number;
    o["opened_at"] = issue.opened_at.to_iso8601();
    o["closed_at"] = issue.closed_at ? json(issue.closed_at->to_iso8601()) : json(nullptr);
    o["labels"] = json(issue.labels);  // std::set keeps labels sorted
    o["is_pull_request"] = issue.is_pull_request;
    json commits = json::array();
    for (const CommitEvent& c : issue.linked_commits) {
      json co;
      co["sha"] = c.sha;
      co["committed_at"] = c.committed_at.to_iso8601();
      commits.push_back(std::move(co));
    }
    o["commits"] = std::move(commits);
    issues.push_back(std::move(o));
  }
  doc["issues"] = std::move(issues);

  return doc.dump(2) + "\n";
}

RepositorySnapshot load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError("cannot open fixture file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return snapshot_from_json_text(buffer.str());
}

void save_fixture(const RepositorySnapshot& snapshot, const std::filesystem::path& path) {
  const std::string text = snapshot_to_json_text(snapshot);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace ossbench
