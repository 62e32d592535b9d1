#pragma once

#include <stdexcept>
#include <string>

namespace hgdyn {

enum class Errc {
  arena_exhausted,
  overflow,
  already_chained,
  corrupt_chain,
  not_found,
  already_free,
  rank_out_of_range,
  not_free,
  duplicate,
  invalid_argument,
  identical_sets,
  class_count_mismatch,
  missing_timestamps,
  inconsistent_state,
  oracle_cap_exceeded,
  parse_error,
  cardinality_mismatch,
  insufficient_edges,
  config_error,
  verification_failed,
};

const char* to_string(Errc code) noexcept;

// All library failures are reported as Error; code() tells callers which
// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hgdyn
