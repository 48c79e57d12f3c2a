#include "ossbench/classifier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace ossbench {
namespace {

using nlohmann::json;

bool rate_metric(MetricKind kind) { return kind == MetricKind::BugIssuesRate; }

bool band_contains(MetricKind kind, const Band& band, double x) {
  const double lo = band.lower.value_or(-std::numeric_limits<double>::infinity());
  const double hi = band.upper.value_or(std::numeric_limits<double>::infinity());
  if (rate_metric(kind)) return lo < x && x <= hi;  // upper bound inclusive
  return lo <= x && x < hi;                         // lower bound inclusive
}

}  // namespace

BandTable BandTable::dora_2022() {
  BandTable t;
  t.bands[MetricKind::ReleaseFrequency] = {
      {Level::High, std::nullopt, 4.0},
      {Level::Medium, 4.0, 30.0},
      {Level::Low, 30.0, std::nullopt},
  };
  t.bands[MetricKind::LeadTimeForReleasedChanges] = {
      {Level::High, std::nullopt, 7.0},
      {Level::Medium, 7.0, 30.0},
      {Level::Low, 30.0, std::nullopt},
  };
  t.bands[MetricKind::TimeToRepairCode] = {
      {Level::High, std::nullopt, 1.0},
      {Level::Medium, 1.0, 7.0},
      {Level::Low, 7.0, std::nullopt},
  };
  t.bands[MetricKind::BugIssuesRate] = {
      {Level::High, std::nullopt, 0.15},
      {Level::Medium, 0.15, 0.38},
      {Level::Low, 0.38, std::nullopt},
  };
  return t;
}

void BandTable::validate() const {
  for (const auto& [kind, list] : bands) {
    const std::string name(metric_kind_id(kind));
    if (list.empty()) throw std::invalid_argument(name + ": no bands");
    if (list.front().lower || list.back().upper)
      throw std::invalid_argument(name + ": outermost bands must be unbounded");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i == 0) continue;
      if (static_cast<int>(list[i - 1].level) <= static_cast<int>(list[i].level))
        throw std::invalid_argument(name + ": bands must run best to worst");
      if (!list[i - 1].upper || !list[i].lower || *list[i - 1].upper != *list[i].lower)
        throw std::invalid_argument(name + ": adjacent bands must share a boundary");
    }
  }
}

BandTable BandTable::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("band table: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("band table: top level must be an object");

  BandTable t;
  for (const auto& [key, value] : doc.items()) {
    const auto kind = metric_kind_from_id(key);
    if (!kind) throw std::invalid_argument("band table: unknown metric \"" + key + "\"");
    if (!value.is_array()) throw std::invalid_argument("band table: " + key + " must be an array");
    std::vector<Band> list;
    for (const auto& entry : value) {
      Band band;
      const auto level = level_from_name(entry.value("level", ""));
      if (!level)
        throw std::invalid_argument("band table: " + key + ": bad level \"" +
                                    entry.value("level", "") + "\"");
      band.level = *level;
      if (entry.contains("lower") && !entry["lower"].is_null())
        band.lower = entry["lower"].get<double>();
      if (entry.contains("upper") && !entry["upper"].is_null())
        band.upper = entry["upper"].get<double>();
      list.push_back(band);
    }
    t.bands[*kind] = std::move(list);
  }
  t.validate();
  return t;
}

std::string BandTable::to_json_text() const {
  json doc = json::object();
  for (const auto& [kind, list] : bands) {
    json arr = json::array();
    for (const Band& band : list) {
      json entry;
      entry["level"] = std::string(level_name(band.level));
      entry["lower"] = band.lower ? json(*band.lower) : json(nullptr);
      entry["upper"] = band.upper ? json(*band.upper) : json(nullptr);
      arr.push_back(entry);
    }
    doc[std::string(metric_kind_id(kind))] = arr;
  }
  return doc.dump(2) + "\n";
}

std::optional<Level> classify(const MetricResult& result, const BandTable& table) {
  if (result.status == MetricStatus::NoData || !result.mean) return std::nullopt;
  const auto it = table.bands.find(result.kind);
  if (it == table.bands.end())
    throw std::invalid_argument(std::string("no bands for metric ") +
                                std::string(metric_kind_id(result.kind)));
  for (const Band& band : it->second)
    if (band_contains(result.kind, band, *result.mean)) return band.level;
  // Unreachable for a validated table; keep a defined answer regardless.
  return it->second.back().level;
}

std::optional<Level> classify(const MetricResult& result) {
  static const BandTable table = BandTable::dora_2022();
  return classify(result, table);
}

}  // namespace ossbench
