#include "alphamag/error.hpp"

namespace alphamag {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::empty_cloud: return "EmptyCloud";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_scale: return "InvalidScale";
    case Errc::singular: return "Singular";
    case Errc::too_large: return "TooLarge";
    case Errc::malformed_complex: return "MalformedComplex";
    case Errc::not_sorted: return "NotSorted";
    case Errc::bad_interval: return "BadInterval";
    case Errc::bad_config: return "BadConfig";
    case Errc::too_few_points: return "TooFewPoints";
    case Errc::bad_size: return "BadSize";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace alphamag
