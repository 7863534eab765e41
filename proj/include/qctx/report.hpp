#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qctx/types.hpp"

namespace qctx {

/// Counterexample payload. Context fields are poset indices; only the
/// fields relevant to the property are set.
struct Witness {
  std::optional<std::size_t> stage;   // the larger context V1
  std::optional<std::size_t> lower;   // V2, with V2 below V1
  std::optional<std::size_t> bottom;  // V3, for chains V3 <= V2 <= V1
  std::optional<AtomMask> p;
  std::optional<AtomMask> q;
  std::optional<AtomMask> expected;
  std::optional<AtomMask> actual;
  std::vector<std::size_t> expected_set;
  std::vector<std::size_t> actual_set;
  std::string detail;
};

/// Outcome of checking one universally quantified property.
struct PropertyResult {
  std::string name;
  bool enabled = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<Witness> first;

  explicit PropertyResult(std::string n, bool on = true) : name(std::move(n)), enabled(on) {}

  bool holds() const { return !enabled || violations == 0; }

  void record(Witness w) {
    ++violations;
    if (!first) first = std::move(w);
  }
};

inline bool all_hold(const std::vector<PropertyResult>& results) {
  for (const auto& r : results) {
    if (!r.holds()) return false;
  }
  return true;
}

inline const PropertyResult& find_property(const std::vector<PropertyResult>& results, const std::string& name) {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no property named " + name);
}

}  // namespace qctx
