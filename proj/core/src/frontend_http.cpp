#include <cstdlib>
#include <string>

#include "dfab/error.hpp"
#include "dfab/frontend.hpp"
#include "httplib.h"
#include "json.hpp"

namespace dfab {

namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::config_violation, "endpoint '" + url + "' lacks a scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::optional<HttpClientSettings> settings_from(const char* endpoint_var, const char* key_var,
                                                const char* model_var, const char* timeout_var,
                                                std::chrono::milliseconds default_timeout) {
  const char* endpoint = std::getenv(endpoint_var);
  if (!endpoint || !*endpoint) return std::nullopt;
  HttpClientSettings s;
  s.endpoint = endpoint;
  s.timeout = default_timeout;
  if (const char* key = std::getenv(key_var)) s.api_key = key;
  if (model_var) {
    if (const char* model = std::getenv(model_var)) s.model = model;
  }
  if (const char* t = std::getenv(timeout_var)) {
    char* end = nullptr;
    const long ms = std::strtol(t, &end, 10);
    if (end == t || *end != '\0' || ms <= 0) {
      throw Error(ErrorCode::config_violation, std::string(timeout_var) + " must be a positive integer");
    }
    s.timeout = std::chrono::milliseconds(ms);
  }
  return s;
}

httplib::Result post(const HttpClientSettings& settings, const std::string& body) {
  const auto url = split_url(settings.endpoint);
  httplib::Client client(url.origin);
  client.set_connection_timeout(settings.timeout);
  client.set_read_timeout(settings.timeout);
  client.set_write_timeout(settings.timeout);
  httplib::Headers headers;
  if (!settings.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings.api_key);
  auto res = client.Post(url.path, headers, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::client_unavailable,
                settings.endpoint + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::client_unavailable,
                settings.endpoint + " answered HTTP " + std::to_string(res->status));
  }
  return res;
}

}  // namespace

std::optional<HttpClientSettings> HttpLanguageModelClient::settings_from_env() {
  return settings_from("DFAB_LLM_ENDPOINT", "DFAB_LLM_API_KEY", "DFAB_LLM_MODEL",
                       "DFAB_LLM_TIMEOUT_MS", std::chrono::milliseconds(30000));
}

std::string HttpLanguageModelClient::complete(const std::string& prompt, const std::string& user_text) {
  nlohmann::json body = {
      {"messages",
       {{{"role", "system"}, {"content", prompt}}, {{"role", "user"}, {"content", user_text}}}},
      {"temperature", 0},
  };
  if (!settings_.model.empty()) body["model"] = settings_.model;
  const auto res = post(settings_, body.dump());
  try {
    const auto doc = nlohmann::json::parse(res->body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::client_unavailable,
                settings_.endpoint + " returned an unexpected body: " + e.what());
  }
}

std::optional<HttpClientSettings> HttpMeshGenerator::settings_from_env() {
  return settings_from("DFAB_MESHGEN_ENDPOINT", "DFAB_MESHGEN_API_KEY", nullptr,
                       "DFAB_MESHGEN_TIMEOUT_MS", std::chrono::milliseconds(300000));
}

GeneratedMesh HttpMeshGenerator::generate(const std::string& prompt) {
  const auto res = post(settings_, nlohmann::json{{"prompt", prompt}}.dump());
  GeneratedMesh out{res->body, std::nullopt};
  std::string hint = res->get_header_value("X-Mesh-Format");
  if (hint.empty()) hint = res->get_header_value("Content-Type");
  for (auto& ch : hint) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (hint.find("obj") != std::string::npos) out.format = MeshFormat::obj;
  return out;
}

}  // namespace dfab
