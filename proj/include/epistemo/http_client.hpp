#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

namespace epistemo {

struct EndpointConfig {
  std::string url;      // http(s)://host[:port]/path
  std::string api_key;  // sent as "Authorization: Bearer <key>" when non-empty
  int timeout_ms = 30000;
  std::size_t max_in_flight = 4;

  /// Reads the URL from `url_variable` and the key from EPISTEMO_API_KEY.
  /// Throws ContractError when the URL variable is unset or empty.
  static EndpointConfig from_env(const char* url_variable);
};

/// POSTs `body` as JSON and parses the JSON reply.
/// Throws TransportError (carrying the HTTP status, 0 if none) on failure.
nlohmann::json post_json(const EndpointConfig& config, const nlohmann::json& body);

}  // namespace epistemo
