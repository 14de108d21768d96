#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "subact/errors.hpp"

namespace subact {

/// Size limits for the exhaustive algorithms. Every refusal raises a
/// CapacityError naming the field below.
struct Caps {
  std::size_t closure_order = 20160;        // closure_from_generators
  std::size_t subgroup_enum_order = 1000;   // enumerate_subgroups
  std::size_t mul_table_order = 2048;       // above this, products are computed on demand
  std::size_t act_table_entries = 10'000'000;
  std::size_t exhaustive_submodular = 16;   // check_submodular / check_invariance
  std::size_t exhaustive_minimize = 24;     // minimize_nonempty
  std::size_t fragment_list = 10'000;
  std::size_t subspace_count = 100'000;
  std::size_t mu_exhaustive_order = 20;     // exhaustive cross-check of mu
  std::size_t petridis_exhaustive_order = 14;
  std::size_t hamidoune_exhaustive_order = 20;
  std::size_t sample_trials = 10'000;
  std::uint64_t seed = 0xD1CE;

  /// Sets a field by name; returns false for unknown names.
  bool set(std::string_view name, std::uint64_t value) {
    auto assign = [&](std::size_t& field) {
      field = static_cast<std::size_t>(value);
      return true;
    };
    if (name == "closure_order") return assign(closure_order);
    if (name == "subgroup_enum_order") return assign(subgroup_enum_order);
    if (name == "mul_table_order") return assign(mul_table_order);
    if (name == "act_table_entries") return assign(act_table_entries);
    if (name == "exhaustive_submodular") return assign(exhaustive_submodular);
    if (name == "exhaustive_minimize") return assign(exhaustive_minimize);
    if (name == "fragment_list") return assign(fragment_list);
    if (name == "subspace_count") return assign(subspace_count);
    if (name == "mu_exhaustive_order") return assign(mu_exhaustive_order);
    if (name == "petridis_exhaustive_order") return assign(petridis_exhaustive_order);
    if (name == "hamidoune_exhaustive_order") return assign(hamidoune_exhaustive_order);
    if (name == "sample_trials") return assign(sample_trials);
    if (name == "seed") {
      seed = value;
      return true;
    }
    return false;
  }
};

inline void require_cap(std::string_view cap, std::size_t limit, std::size_t measured,
                        const std::string& hint = {}) {
  if (measured > limit) throw CapacityError(std::string(cap), limit, measured, hint);
}

}  // namespace subact
