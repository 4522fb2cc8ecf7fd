#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alphamag {

enum class Errc {
  empty_cloud,
  dimension_mismatch,
  invalid_scale,
  singular,
  too_large,
  malformed_complex,
  not_sorted,
  bad_interval,
  bad_config,
  too_few_points,
  bad_size,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Library-wide exception. Every failure surfaced by the public API carries
/// one of the Errc codes so callers (the CLI in particular) can map it to an
/// exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace alphamag
