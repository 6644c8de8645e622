#pragma once

#include <string>
#include <string_view>

#include <toml.hpp>

#include "corr2cause/assets.hpp"
#include "corr2cause/errors.hpp"

namespace c2c {

struct RetryPolicy {
  int max_attempts = 4;
  int initial_backoff_ms = 500;
  double backoff_multiplier = 2.0;
  int max_backoff_ms = 30000;
};

struct BackendConfig {
  std::string kind = "symbolic";  // symbolic | remote
  std::string endpoint;
  std::string model;
  std::string api_key_env = "CORR2CAUSE_API_KEY";
  double temperature = 0.0;
  int max_tokens = 1024;
  double timeout_seconds = 120;
  int concurrency = 4;
  bool verbose = false;
  RetryPolicy retry;

  void validate() const {
    if (kind != "symbolic" && kind != "remote") throw ConfigError("backend.kind must be 'symbolic' or 'remote'");
    if (kind == "remote") {
      if (endpoint.empty()) throw ConfigError("remote backend needs backend.endpoint");
      if (api_key_env.empty()) throw ConfigError("remote backend needs backend.api_key_env");
      if (model.empty()) throw ConfigError("remote backend needs backend.model");
    }
    if (temperature < 0) throw ConfigError("backend.temperature must be >= 0");
    if (max_tokens <= 0) throw ConfigError("backend.max_tokens must be positive");
    if (timeout_seconds <= 0) throw ConfigError("backend.timeout_seconds must be positive");
    if (concurrency < 1) throw ConfigError("backend.concurrency must be >= 1");
    if (retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be >= 1");
    if (retry.initial_backoff_ms < 0 || retry.max_backoff_ms < 0) throw ConfigError("retry backoff must be >= 0");
    if (retry.backoff_multiplier < 1.0) throw ConfigError("retry.backoff_multiplier must be >= 1");
  }

  static BackendConfig parse(std::string_view text) {
    toml::table t;
    try {
      t = toml::parse(text);
    } catch (const toml::parse_error& e) {
      throw ConfigError(std::string("config: ") + std::string(e.description()));
    }
    BackendConfig c;
    auto b = t["backend"];
    c.kind = b["kind"].value_or(c.kind);
    c.endpoint = b["endpoint"].value_or(c.endpoint);
    c.model = b["model"].value_or(c.model);
    c.api_key_env = b["api_key_env"].value_or(c.api_key_env);
    c.temperature = b["temperature"].value_or(c.temperature);
    c.max_tokens = b["max_tokens"].value_or(c.max_tokens);
    c.timeout_seconds = b["timeout_seconds"].value_or(c.timeout_seconds);
    c.concurrency = b["concurrency"].value_or(c.concurrency);
    c.verbose = b["verbose"].value_or(c.verbose);
    auto r = t["retry"];
    c.retry.max_attempts = r["max_attempts"].value_or(c.retry.max_attempts);
    c.retry.initial_backoff_ms = r["initial_backoff_ms"].value_or(c.retry.initial_backoff_ms);
    c.retry.backoff_multiplier = r["backoff_multiplier"].value_or(c.retry.backoff_multiplier);
    c.retry.max_backoff_ms = r["max_backoff_ms"].value_or(c.retry.max_backoff_ms);
    c.validate();
    return c;
  }

  static BackendConfig load(const std::string& path) { return parse(read_file(path)); }
};

}  // namespace c2c
