#pragma once

// Evaluation of the quantitative quality measures of an association model:
// component count C, association attribute count A, query costs Q/R/S and
// update costs T/U.
//
// C and A are computed twice, once by walking the ecosystem or its graph and
// once from the closed-form counts, and must agree exactly. Query costs are
// counted reads of the scan engine, each checked against a ceiling built from
// the record sizes involved. Update costs are registry write-log deltas.

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fdo/core.hpp"
#include "fdo/engine.hpp"
#include "fdo/generator.hpp"

namespace fdo {

struct ExactCount {
  std::uint64_t measured = 0;
  std::uint64_t formula = 0;
  bool exact() const { return measured == formula; }
};

// Sizes the closed-form counts are built from.
struct EcosystemInputs {
  std::size_t fdos = 0;
  std::size_t operations = 0;
  std::size_t profiles = 0;
  std::size_t definitions = 0;
  std::size_t associated_fdos = 0;       // |F_O|
  std::size_t associated_operations = 0; // |O_F|
  std::size_t associated_profiles = 0;   // |P_{2,FO}|, profile model only
  std::vector<std::size_t> fdo_attribute_counts;        // b_j, attribute model only
  std::vector<std::size_t> operation_attribute_counts;  // d_j, attribute model only
};

EcosystemInputs collect_inputs(const Ecosystem& ecosystem);

ExactCount count_components(const Ecosystem& ecosystem);
ExactCount count_attributes(const Ecosystem& ecosystem);

enum class Measure { C, A, Q, R, S, T, U };

std::string_view to_string(Measure measure);

struct QueryMeasurement {
  Measure measure;  // Q, R or S
  Pid fdo;          // unused for R
  Pid op;           // unused for S
  std::uint64_t measured = 0;
  std::uint64_t ceiling = 0;
  bool within() const { return measured <= ceiling; }
};

// Cost ceilings with unit constants, from the sizes the ecosystem records.
std::uint64_t query_ceiling(const Ecosystem& ecosystem, Measure measure, const Pid& fdo, const Pid& op);

// For each sampled (f, o): Q for the pair, R for o and S for f, measured with
// the scan strategy. Throws Error(empty_sample).
std::vector<QueryMeasurement> measure_query_costs(const Ecosystem& ecosystem,
                                                  std::span<const Association> sample);

// Uniformly sampled (f, o) pairs, without replacement when possible.
std::vector<Association> sample_pairs(const Ecosystem& ecosystem, std::size_t count, std::uint64_t seed);

struct UpdateMeasurement {
  Measure measure;  // T or U
  Model model;
  std::uint64_t measured = 0;  // update entries appended to the write log
  std::uint64_t formula = 0;
  std::size_t set_size = 0;    // |F'| or |O'|
  bool exact() const { return measured == formula; }
};

// A new operation with its target FDOs, or a new FDO with its operations,
// drawn so that the ecosystem's model can express it.
struct UpdateScenario {
  OperationSpec new_op;
  std::set<Pid> targets;
  InformationRecord new_fdo;
  std::set<Pid> fdo_ops;
};

UpdateScenario make_update_scenario(const Ecosystem& ecosystem, std::uint64_t seed);

// Dumps the ecosystem into `scratch` (replacing its contents), performs the
// update through a registry store and reads the write-log delta.
UpdateMeasurement measure_new_operation(const Ecosystem& ecosystem, const OperationSpec& op,
                                        const std::set<Pid>& targets,
                                        const std::filesystem::path& scratch);
UpdateMeasurement measure_new_fdo(const Ecosystem& ecosystem, const InformationRecord& fdo,
                                  const std::set<Pid>& ops, const std::filesystem::path& scratch);

struct MetricsRow {
  Model model;
  std::string measure;
  std::uint64_t measured = 0;
  std::uint64_t ceiling = 0;
  bool pass = false;
};

struct MetricsReport {
  Model model;
  EcosystemInputs inputs;
  std::vector<MetricsRow> rows;
  std::vector<std::string> notes;
  bool passed() const;
};

struct MetricsOptions {
  std::size_t query_sample = 200;
  std::uint64_t seed = 0;
  // Where update costs are measured. Empty skips T and U.
  std::filesystem::path scratch;
  // Measures to evaluate; empty means all.
  std::vector<Measure> measures;
};

// C and A rows compare walk and formula; Q/R/S rows carry the worst sampled
// query (largest measured/ceiling ratio) and the pass flag of the whole
// sample; T/U rows compare the write-log delta with the formula.
MetricsReport evaluate_metrics(const Ecosystem& ecosystem, const MetricsOptions& options);

std::string to_text(const MetricsReport& report);
// Columns: model,measure,measured,ceiling,pass
std::string to_csv(std::span<const MetricsRow> rows, bool header = true);

// S_1 and S_3 across growing ecosystems: |O| grows with |F| while the number
// of attributes per record stays fixed.
struct ScalingRung {
  std::size_t fdos = 0;
  std::size_t operations = 0;
  std::uint64_t total_operation_attributes = 0;  // sum over o of |A_o|, attribute model
  std::uint64_t s1_measured = 0;                 // worst over sampled FDOs
  std::uint64_t s1_ceiling = 0;
  std::uint64_t s3_measured = 0;
  std::uint64_t s3_ceiling = 0;
  // Extremes of measured/ceiling over the sampled FDOs.
  double s3_min_ratio = 0.0;
  double s3_max_ratio = 0.0;
};

struct ScalingReport {
  std::vector<ScalingRung> rungs;
  // S_1 identical on every rung and within its ceiling, S_3 strictly
  // increasing with the total operation attribute count, and every sampled
  // S_3 ratio within [0.1, 1].
  bool s1_constant = false;
  bool s3_grows = false;
  bool s3_ratios_in_band = false;
  bool passed() const { return s1_constant && s3_grows && s3_ratios_in_band; }
};

inline constexpr double kScalingRatioMin = 0.1;
inline constexpr double kScalingRatioMax = 1.0;

ScalingReport scaling_report(std::span<const std::size_t> fdo_ladder, std::uint64_t seed,
                             std::size_t fdo_sample = 20);

std::string to_text(const ScalingReport& report);
std::string to_csv(const ScalingReport& report);

}  // namespace fdo
