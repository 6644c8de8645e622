#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corr2cause/errors.hpp"

namespace c2c {

struct CompletionRequest {
  std::string prompt;
  std::vector<std::string> stop;
  int max_tokens = 1024;
  double temperature = 0.0;

  void validate() const {
    if (temperature < 0) throw ArgumentError("temperature must be non-negative");
    if (stop.empty() && max_tokens <= 0) throw ArgumentError("a request needs a stop sequence or a token limit");
  }
};

struct Completion {
  std::string text;
  int prompt_tokens = -1;  // -1 when the backend does not report usage
  int completion_tokens = -1;
  double latency_ms = 0;
};

struct HealthStatus {
  bool ok = false;
  std::string message;
};

// Implementations must be safe to call from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Completion complete(const CompletionRequest& req) = 0;
  virtual HealthStatus healthcheck() = 0;
  virtual std::string name() const = 0;
};

// Cuts text at the earliest stop sequence.
inline std::string truncate_at_stop(std::string text, const std::vector<std::string>& stop) {
  std::size_t cut = text.size();
  for (const auto& s : stop) {
    if (s.empty()) continue;
    auto p = text.find(s);
    if (p != std::string::npos) cut = std::min(cut, p);
  }
  text.resize(cut);
  return text;
}

}  // namespace c2c
