#pragma once

#include <stdexcept>
#include <string>

namespace maxgcd {

// Bad parameters at the experiment/CLI level. Exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested computation has no solution in the given regime
// (e.g. no root phi > e exists). Exit code 3.
struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// The result would exceed a configured size cap.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// File I/O failure, reported with path context. Exit code 4.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace maxgcd
