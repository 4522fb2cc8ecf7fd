#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace alphamag::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& message) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = message;
  }
  bool ok() const { return failures == 0 && cases > 0; }
};

struct Property {
  std::string name;
  std::function<PropertyResult(std::uint64_t seed)> run;
};

/// Every randomized invariant, each driven by its own seeded generator.
const std::vector<Property>& all_properties();

}  // namespace alphamag::testing
