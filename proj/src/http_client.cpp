#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "epistemo/http_client.hpp"

#include <cstdlib>

#include <httplib.h>

#include "epistemo/errors.hpp"

namespace epistemo {
namespace {

struct UrlParts {
  std::string scheme_host_port;
  std::string path;
};

UrlParts split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ContractError("endpoint URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

EndpointConfig EndpointConfig::from_env(const char* url_variable) {
  const char* url = std::getenv(url_variable);
  if (url == nullptr || *url == '\0') {
    throw ContractError(std::string("environment variable ") + url_variable + " is not set");
  }
  EndpointConfig c;
  c.url = url;
  if (const char* key = std::getenv("EPISTEMO_API_KEY")) c.api_key = key;
  return c;
}

nlohmann::json post_json(const EndpointConfig& config, const nlohmann::json& body) {
  const auto parts = split_url(config.url);
  httplib::Client client(parts.scheme_host_port);
  const auto seconds = config.timeout_ms / 1000;
  const auto micros = (config.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  httplib::Headers headers;
  if (!config.api_key.empty()) headers.emplace("Authorization", "Bearer " + config.api_key);

  auto res = client.Post(parts.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request to " + config.url + " failed: " + httplib::to_string(res.error()), 0);
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("endpoint " + config.url + " returned HTTP " + std::to_string(res->status),
                         res->status);
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw TransportError("endpoint " + config.url + " returned invalid JSON", res->status);
  }
}

}  // namespace epistemo
