#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "corr2cause/backends/backend.hpp"
#include "corr2cause/backends/config.hpp"
#include "corr2cause/errors.hpp"

namespace c2c {

// FNV-1a, printed as 16 hex digits; stable across platforms so log lines can be correlated.
inline std::string prompt_hash(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;

  static Endpoint parse(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint must start with http:// or https://");
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw ConfigError("endpoint scheme must be http or https");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") throw ConfigError("this build has no TLS support; reconfigure with -DC2C_REMOTE=ON");
#endif
    auto path_start = url.find('/', scheme_end + 3);
    Endpoint e;
    e.origin = url.substr(0, path_start);
    e.path = path_start == std::string::npos ? "" : url.substr(path_start);
    if (e.path.empty() || e.path == "/") e.path = "/v1/chat/completions";
    return e;
  }
};

// OpenAI-compatible chat-completion client with retries and a cap on requests in flight.
class RemoteBackend : public Backend {
 public:
  using Logger = std::function<void(const std::string&)>;
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit RemoteBackend(BackendConfig cfg, Logger log = {}, Sleeper sleep = {})
      : cfg_(std::move(cfg)),
        endpoint_(Endpoint::parse(cfg_.endpoint)),
        log_(std::move(log)),
        sleep_(sleep ? std::move(sleep) : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })),
        slots_(cfg_.concurrency) {
    cfg_.validate();
    if (cfg_.kind != "remote") throw ConfigError("RemoteBackend needs backend.kind = \"remote\"");
  }

  Completion complete(const CompletionRequest& req) override {
    req.validate();
    int backoff = cfg_.retry.initial_backoff_ms;
    for (int attempt = 1;; ++attempt) {
      try {
        return attempt_once(req);
      } catch (const BackendError& e) {
        log("request " + prompt_hash(req.prompt) + " attempt " + std::to_string(attempt) + " failed: " + e.what());
        if (!e.transient() || attempt >= cfg_.retry.max_attempts) throw;
      }
      sleep_(std::chrono::milliseconds(backoff));
      backoff = static_cast<int>(std::min<double>(cfg_.retry.max_backoff_ms, backoff * cfg_.retry.backoff_multiplier));
    }
  }

  // One minimal request, no retries.
  HealthStatus healthcheck() override {
    try {
      CompletionRequest req{"Reply with OK.", {}, 1, 0.0};
      attempt_once(req);
      return {true, "ok"};
    } catch (const Error& e) {
      return {false, e.what()};
    }
  }

  std::string name() const override { return "remote:" + cfg_.model; }

 private:
  std::string api_key() const {
    const char* v = std::getenv(cfg_.api_key_env.c_str());
    if (!v || !*v) throw BackendError(BackendError::Kind::permanent, "environment variable " + cfg_.api_key_env + " is not set");
    return v;
  }

  std::unique_ptr<httplib::Client> acquire_client() {
    {
      std::lock_guard lk(pool_mu_);
      if (!pool_.empty()) {
        auto c = std::move(pool_.back());
        pool_.pop_back();
        return c;
      }
    }
    auto c = std::make_unique<httplib::Client>(endpoint_.origin);
    const auto secs = static_cast<time_t>(cfg_.timeout_seconds);
    const auto usecs = static_cast<time_t>((cfg_.timeout_seconds - static_cast<double>(secs)) * 1e6);
    c->set_connection_timeout(secs, usecs);
    c->set_read_timeout(secs, usecs);
    c->set_write_timeout(secs, usecs);
    c->set_keep_alive(true);
    return c;
  }

  void release_client(std::unique_ptr<httplib::Client> c) {
    std::lock_guard lk(pool_mu_);
    pool_.push_back(std::move(c));
  }

  void log(const std::string& msg) const {
    if (log_) log_(msg);
  }

  static std::string server_message(const std::string& body) {
    try {
      auto j = nlohmann::json::parse(body);
      if (j.contains("error")) {
        const auto& e = j["error"];
        if (e.is_object() && e.contains("message")) return e["message"].get<std::string>();
        if (e.is_string()) return e.get<std::string>();
      }
    } catch (const nlohmann::json::exception&) {
    }
    return body.substr(0, 300);
  }

  Completion attempt_once(const CompletionRequest& req) {
    nlohmann::json body = {
        {"model", cfg_.model},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", req.prompt}}})},
        {"temperature", req.temperature},
        {"max_tokens", req.max_tokens},
    };
    if (!req.stop.empty()) {
      // the wire format accepts at most four stop sequences; the rest are applied locally
      std::vector<std::string> s(req.stop.begin(), req.stop.begin() + std::min<std::size_t>(4, req.stop.size()));
      body["stop"] = s;
    }
    const std::string key = api_key();
    httplib::Headers headers = {{"Authorization", "Bearer " + key}};

    slots_.acquire();
    auto client = acquire_client();
    const auto t0 = std::chrono::steady_clock::now();
    auto res = client->Post(endpoint_.path, headers, body.dump(), "application/json");
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    release_client(std::move(client));
    slots_.release();

    if (!res) throw BackendError(BackendError::Kind::transient, "transport error: " + httplib::to_string(res.error()));
    if (cfg_.verbose) log("request " + prompt_hash(req.prompt) + " -> " + std::to_string(res->status) + ": " + res->body);
    else log("request " + prompt_hash(req.prompt) + " -> " + std::to_string(res->status));
    const int st = res->status;
    if (st == 408 || st == 429 || st >= 500)
      throw BackendError(BackendError::Kind::transient, "HTTP " + std::to_string(st) + ": " + server_message(res->body), st);
    if (st < 200 || st >= 300)
      throw BackendError(BackendError::Kind::permanent, "HTTP " + std::to_string(st) + ": " + server_message(res->body), st);

    Completion c;
    c.latency_ms = ms;
    try {
      auto j = nlohmann::json::parse(res->body);
      const auto& msg = j.at("choices").at(0).at("message");
      c.text = msg.at("content").is_null() ? "" : msg.at("content").get<std::string>();
      if (j.contains("usage") && j["usage"].is_object()) {
        c.prompt_tokens = j["usage"].value("prompt_tokens", -1);
        c.completion_tokens = j["usage"].value("completion_tokens", -1);
      }
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(BackendError::Kind::permanent, std::string("malformed completion response: ") + e.what(), st);
    }
    c.text = truncate_at_stop(c.text, req.stop);
    return c;
  }

  BackendConfig cfg_;
  Endpoint endpoint_;
  Logger log_;
  Sleeper sleep_;
  std::counting_semaphore<> slots_;
  std::mutex pool_mu_;
  std::vector<std::unique_ptr<httplib::Client>> pool_;
};

}  // namespace c2c
