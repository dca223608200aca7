#include "fdo/generator.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace fdo {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    if (hi <= lo) return lo;
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool chance(double p) { return std::bernoulli_distribution(std::clamp(p, 0.0, 1.0))(engine_); }

  // k distinct indices of [0, n) in random order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), engine_);
    all.resize(std::min(k, n));
    return all;
  }

 private:
  std::mt19937_64 engine_;
};

AttributeDefinition reserved_definition(const Pid& pid, std::string_view key) {
  ValueRestriction r = ValueRestriction::any();
  if (key == keys::profile_ref) r = ValueRestriction::reference(ComponentKind::profile);
  if (key == keys::operation_ref) r = ValueRestriction::reference(ComponentKind::operation_fdo);
  return AttributeDefinition{pid, std::string(key), r};
}

std::string domain_key(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "key-%02zu", i);
  return buf;
}

}  // namespace

Ecosystem generate_ecosystem(const GeneratorParams& params) {
  Rng rng(params.seed);
  PidMinter minter;
  Ecosystem eco(params.model);

  for (auto key : reserved_keys(params.model)) {
    eco.add_definition(reserved_definition(minter.mint(gen_prefix::definition), key));
  }
  std::vector<std::string> domain;
  for (std::size_t i = 0; i < params.n_keys; ++i) {
    domain.push_back(domain_key(i));
    ValueRestriction r = ValueRestriction::any();
    if (i % 3 == 2) r = ValueRestriction::enumeration({kGeneratedValues[0].data(), kGeneratedValues[1].data(),
                                                       kGeneratedValues[2].data()});
    eco.add_definition(AttributeDefinition{minter.mint(gen_prefix::definition), domain.back(), r});
  }
  auto random_value = [&] { return std::string(kGeneratedValues[rng.uniform(0, 2)]); };

  // Operations.
  std::vector<Pid> ops;
  for (std::size_t i = 0; i < params.n_ops; ++i) {
    OperationSpec op{minter.mint(gen_prefix::op), {}, {}};
    op.executor_ref = "exec://" + op.pid.str();
    if (params.model == Model::attribute && !domain.empty()) {
      auto n = rng.uniform(params.required_inputs_per_op.min, params.required_inputs_per_op.max);
      for (auto k : rng.sample(domain.size(), n)) {
        RequiredInput in{domain[k], std::nullopt};
        if (rng.chance(params.value_constraint_probability)) in.value_constraint = random_value();
        op.required_inputs.push_back(std::move(in));
      }
    }
    ops.push_back(op.pid);
    eco.add_operation(std::move(op));
  }

  auto pick_ops = [&] {
    std::vector<Pid> chosen;
    if (params.ops_per_holder) {
      for (auto k : rng.sample(ops.size(), *params.ops_per_holder)) chosen.push_back(ops[k]);
    } else {
      for (const auto& o : ops) {
        if (rng.chance(params.association_density)) chosen.push_back(o);
      }
    }
    return chosen;
  };

  // Profiles. Every FDO needs one, so at least one exists when there are FDOs.
  std::size_t n_profiles = params.n_profiles;
  if (params.n_fdos > 0 && n_profiles == 0) n_profiles = 1;
  std::vector<Pid> profiles;
  for (std::size_t i = 0; i < n_profiles; ++i) {
    Profile p{minter.mint(gen_prefix::profile), {std::string(keys::profile_ref)}, {}, {}};
    auto picks = rng.sample(domain.size(), 3);
    if (!picks.empty()) p.mandatory_keys.insert(domain[picks[0]]);
    for (std::size_t k = 1; k < picks.size(); ++k) p.optional_keys.insert(domain[picks[k]]);
    if (params.model == Model::profile) p.operation_list = pick_ops();
    profiles.push_back(p.pid);
    eco.add_profile(std::move(p));
  }

  // Data FDOs.
  for (std::size_t i = 0; i < params.n_fdos; ++i) {
    InformationRecord r{minter.mint(gen_prefix::fdo), ComponentKind::data_fdo, {}, std::nullopt};
    const Profile& profile = *eco.find_profile(profiles[rng.uniform(0, profiles.size() - 1)]);
    r.add(keys::profile_ref, profile.pid.str());

    std::vector<std::string> keys_here;
    for (const auto& k : profile.mandatory_keys) {
      if (k != keys::profile_ref) keys_here.push_back(k);
    }
    auto want = std::min(rng.uniform(params.attrs_per_fdo.min, params.attrs_per_fdo.max), domain.size());
    for (auto k : rng.sample(domain.size(), domain.size())) {
      if (keys_here.size() >= want) break;
      if (std::find(keys_here.begin(), keys_here.end(), domain[k]) == keys_here.end()) {
        keys_here.push_back(domain[k]);
      }
    }
    for (const auto& k : keys_here) r.add(k, random_value());

    if (params.model == Model::record) {
      for (const auto& o : pick_ops()) r.add(keys::operation_ref, o.str());
    }
    r.payload_ref = "bits://" + r.pid.str();
    eco.add_fdo(std::move(r));
  }
  return eco;
}

}  // namespace fdo
