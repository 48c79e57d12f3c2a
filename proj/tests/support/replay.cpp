#include "replay.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ossbench::testing {

ReplayTransport ReplayTransport::from_recorded_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open recorded responses: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const nlohmann::json doc = nlohmann::json::parse(buffer.str());

  ReplayTransport transport;
  for (const auto& item : doc.at("responses")) {
    std::map<std::string, std::string> headers;
    if (item.contains("headers"))
      for (const auto& [key, value] : item["headers"].items())
        headers.emplace(key, value.get<std::string>());
    const auto& body = item.at("body");
    transport.add(item.at("path").get<std::string>(),
                  body.is_string() ? body.get<std::string>() : body.dump(),
                  item.value("status", 200), std::move(headers));
  }
  return transport;
}

}  // namespace ossbench::testing
