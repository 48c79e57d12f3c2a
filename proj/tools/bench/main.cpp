#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ossbench/report.hpp"

using namespace ossbench;

int main(int argc, char** argv) {
  CLI::App app{"Delivery-performance benchmark for open-source repositories"};
  app.name("bench");

  std::string repo;
  std::string from_text;
  std::string to_text;
  std::string offline;
  std::string cache_dir = ".bench-cache";
  std::string format_name = "markdown";
  std::vector<std::string> bug_labels;
  bool include_prereleases = false;
  bool refresh = false;

  app.add_option("--repo", repo, "Repository as OWNER/NAME");
  app.add_option("--from", from_text, "Period start, ISO-8601 date or datetime (UTC)")
      ->required();
  app.add_option("--to", to_text, "Period end, ISO-8601 date or datetime (UTC), exclusive")
      ->required();
  app.add_option("--offline", offline, "Compute from a fixture file instead of the live API");
  app.add_option("--cache-dir", cache_dir, "Directory for the write-once page cache");
  app.add_option("--bug-label", bug_labels,
                 "Label marking bug issues; repeatable (default: bug, type:bug, kind/bug)");
  app.add_flag("--include-prereleases", include_prereleases,
               "Count prereleases as releases");
  app.add_option("--format", format_name, "Output format: json, csv or markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  app.add_flag("--refresh", refresh, "Purge the cached pages for the repository first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  CliConfig config;
  try {
    config.from = Timestamp::parse(from_text);
    config.to = Timestamp::parse(to_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  config.repo = repo;
  if (!bug_labels.empty()) config.bug_labels = bug_labels;
  if (!offline.empty()) config.offline_fixture = offline;
  config.cache_dir = cache_dir;
  config.format = *report_format_from_name(format_name);
  config.include_prereleases = include_prereleases;
  config.refresh = refresh;
  if (const char* token = std::getenv("GITHUB_TOKEN"); token && *token)
    config.auth_token = token;

  if (!config.offline_fixture && config.repo.empty()) {
    std::cerr << "usage error: --repo is required unless --offline is given\n";
    return 2;
  }

  return run(config, std::cout, std::cerr);
}
