#pragma once

#include <stdexcept>
#include <string>

namespace arborist {

// Failure categories surfaced by the library. CLI maps these to exit codes.
enum class Errc {
  self_loop,
  duplicate_edge,
  non_finite_weight,
  root_incoming,
  invalid_argument,
  no_incoming_edge,
  not_a_cycle,
  missing_entry_edge,
  missing_edge,
  no_tree,
  too_large,
  parse_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void throw_error(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace arborist
