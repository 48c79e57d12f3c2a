#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ossbench/model.hpp"

namespace ossbench {

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the canonical fixture document. Throws FixtureError naming the
/// first offending field, or on an unsupported schema_version.
RepositorySnapshot snapshot_from_json_text(const std::string& text);

/// Canonical emission: alphabetical keys, event lists in model order,
/// two-space indent, trailing newline. Loading the output reproduces the
/// snapshot exactly; re-saving reproduces the bytes.
std::string snapshot_to_json_text(const RepositorySnapshot& snapshot);

RepositorySnapshot load_fixture(const std::filesystem::path& path);
void save_fixture(const RepositorySnapshot& snapshot, const std::filesystem::path& path);

}  // namespace ossbench
