#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "fdo/core.hpp"

namespace fdo {

struct CountRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

// Parameters of a synthetic ecosystem. Identical parameters give identical
// ecosystems.
struct GeneratorParams {
  Model model = Model::record;
  std::size_t n_fdos = 20;
  std::size_t n_ops = 8;
  std::size_t n_profiles = 3;
  // Domain attributes per FDO, on top of the profile reference and any
  // operation references. Capped at n_keys.
  CountRange attrs_per_fdo{2, 5};
  CountRange required_inputs_per_op{1, 3};
  // Probability that an FDO (record model) or profile (profile model) lists a
  // given operation.
  double association_density = 0.3;
  // Fixed number of operations per FDO or profile; overrides the density.
  std::optional<std::size_t> ops_per_holder;
  // Chance that a required input also constrains the value.
  double value_constraint_probability = 0.0;
  std::size_t n_keys = 8;
  std::uint64_t seed = 0;
};

// Pid prefixes of generated components.
namespace gen_prefix {
inline constexpr std::string_view fdo = "21.F";
inline constexpr std::string_view op = "21.O";
inline constexpr std::string_view profile = "21.P";
inline constexpr std::string_view definition = "21.A";
}  // namespace gen_prefix

// Builds a valid ecosystem: reserved definitions for the model, n_keys domain
// definitions, profiles, operations and FDOs whose records conform to their
// profiles. Profile-model relations are unions of profile populations.
Ecosystem generate_ecosystem(const GeneratorParams& params);

// Values drawn for domain attributes and value constraints.
inline constexpr std::string_view kGeneratedValues[] = {"v0", "v1", "v2"};

}  // namespace fdo
