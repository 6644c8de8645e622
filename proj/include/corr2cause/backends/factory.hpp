#pragma once

#include <memory>

#include "corr2cause/backends/config.hpp"
#include "corr2cause/backends/remote.hpp"
#include "corr2cause/backends/symbolic.hpp"

namespace c2c {

inline std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, RemoteBackend::Logger log = {}) {
  cfg.validate();
  if (cfg.kind == "symbolic") return std::make_unique<SymbolicBackend>();
  return std::make_unique<RemoteBackend>(cfg, std::move(log));
}

}  // namespace c2c
