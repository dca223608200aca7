#include "fdo/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>

#include "fdo/graph.hpp"
#include "fdo/registry.hpp"

namespace fdo {

namespace {

// The attribute count follows the graph's key-presence reading of required
// inputs, so both routes use key-only matching.
AssociationEngine counting_engine(const Ecosystem& eco) {
  return AssociationEngine(eco, {Strategy::indexed, MatchMode::key_only});
}

std::set<std::string> required_keys(const OperationSpec& op) {
  std::set<std::string> out;
  for (const auto& in : op.required_inputs) out.insert(in.key);
  return out;
}

std::uint64_t profile_list_size(const Ecosystem& eco, const InformationRecord& record) {
  auto p = record.profile_ref();
  const Profile* profile = p ? eco.find_profile(*p) : nullptr;
  return profile ? profile->operation_list.size() : 0;
}

std::uint64_t count_updates(const RegistryStore& store) {
  auto log = store.write_log();
  return std::count_if(log.begin(), log.end(),
                       [](const WriteLogEntry& e) { return e.action == WriteAction::update; });
}

RegistryStore fresh_store(const Ecosystem& eco, const std::filesystem::path& scratch) {
  std::filesystem::remove_all(scratch);
  dump_ecosystem(eco, scratch);
  return RegistryStore::open(scratch);
}

// Has-attribute edges lying on a path of `length` edges from an FDO to an
// operation (record and profile graphs, where every such path is an
// association).
std::uint64_t edges_on_paths(const AssociationGraph& g, std::size_t length) {
  std::vector<std::set<Vertex>> fwd(length + 1), bwd(length + 1);
  for (const auto& v : g.vertices()) {
    if (v.kind == VertexKind::fdo) fwd[0].insert(v);
    if (v.kind == VertexKind::operation) bwd[0].insert(v);
  }
  for (std::size_t i = 1; i <= length; ++i) {
    for (const auto& v : fwd[i - 1]) {
      const auto& s = g.successors(v);
      fwd[i].insert(s.begin(), s.end());
    }
    for (const auto& v : bwd[i - 1]) {
      const auto& p = g.predecessors(v);
      bwd[i].insert(p.begin(), p.end());
    }
  }
  std::uint64_t n = 0;
  for (const auto& e : g.edges()) {
    if (e.label != EdgeLabel::has_attribute) continue;
    for (std::size_t i = 0; i < length; ++i) {
      if (fwd[i].contains(e.from) && bwd[length - 1 - i].contains(e.to)) {
        ++n;
        break;
      }
    }
  }
  return n;
}

// Attribute graph: f -> a -> h -> o counts when (f, o) is associated.
std::uint64_t edges_on_attribute_paths(const AssociationGraph& g) {
  std::set<std::pair<Vertex, Vertex>> used;
  for (const auto& [f, o] : associations_from_graph(g)) {
    Vertex fv = Vertex::of(VertexKind::fdo, f);
    Vertex ov = Vertex::of(VertexKind::operation, o);
    for (const auto& h : g.predecessors(ov)) {
      bool closed = false;
      for (const auto& a : g.predecessors(h)) {
        if (!g.predecessors(a).contains(fv)) continue;
        used.emplace(fv, a);
        closed = true;
      }
      if (closed) used.emplace(h, ov);
    }
  }
  return used.size();
}

bool wanted(const MetricsOptions& options, Measure m) {
  return options.measures.empty() ||
         std::find(options.measures.begin(), options.measures.end(), m) != options.measures.end();
}

// A value the key's definition accepts, or nullopt for reference-restricted
// keys.
std::optional<std::string> admissible_value(const Ecosystem& eco, std::string_view key, std::mt19937_64& rng) {
  const AttributeDefinition* def = eco.definition_by_key(key);
  if (!def || def->restriction.kind == ValueRestriction::Kind::reference) return std::nullopt;
  if (def->restriction.kind == ValueRestriction::Kind::enumeration) {
    if (def->restriction.allowed.empty()) return std::nullopt;
    auto it = def->restriction.allowed.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, def->restriction.allowed.size() - 1)(rng));
    return *it;
  }
  return std::string(kGeneratedValues[std::uniform_int_distribution<int>(0, 2)(rng)]);
}

}  // namespace

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::C: return "C";
    case Measure::A: return "A";
    case Measure::Q: return "Q";
    case Measure::R: return "R";
    case Measure::S: return "S";
    case Measure::T: return "T";
    case Measure::U: return "U";
  }
  return "?";
}

EcosystemInputs collect_inputs(const Ecosystem& eco) {
  const Model model = eco.model();
  EcosystemInputs in;
  in.fdos = eco.fdos().size();
  in.operations = eco.operations().size();
  in.profiles = eco.profiles().size();
  in.definitions = eco.definitions().size();

  AssociationEngine engine = counting_engine(eco);
  const QueryIndex& index = *engine.index();
  std::set<Pid> profiles_fo;
  for (const auto& [f, ops] : index.ops_by_fdo) {
    if (ops.empty()) continue;
    ++in.associated_fdos;
    const InformationRecord& record = *eco.find_fdo(f);
    if (model == Model::profile) {
      if (auto p = record.profile_ref()) profiles_fo.insert(*p);
    }
    if (model == Model::attribute) {
      std::set<std::string> keys_used;
      for (const auto& o : ops) {
        auto k = required_keys(*eco.find_operation(o));
        keys_used.insert(k.begin(), k.end());
      }
      std::set<std::pair<std::string, std::string>> b;
      for (const auto& a : record.attributes) {
        if (keys_used.contains(a.key)) b.emplace(a.key, a.value);
      }
      in.fdo_attribute_counts.push_back(b.size());
    }
  }
  for (const auto& [o, fdos] : index.fdos_by_op) {
    if (fdos.empty()) continue;
    ++in.associated_operations;
    if (model == Model::attribute) {
      std::set<std::string> d;
      for (const auto& r : eco.find_operation(o)->required_inputs) d.insert(r.encode());
      in.operation_attribute_counts.push_back(d.size());
    }
  }
  in.associated_profiles = profiles_fo.size();
  return in;
}

ExactCount count_components(const Ecosystem& eco) {
  const Model model = eco.model();
  ExactCount c;
  const std::uint64_t base = eco.fdos().size() + eco.operations().size();

  // Walk: the components the model's mechanism can involve.
  std::uint64_t defs = 0;
  for (const auto& [pid, def] : eco.definitions()) {
    switch (model) {
      case Model::record: defs += def.key == keys::operation_ref; break;
      case Model::profile: defs += def.key == keys::profile_ref || def.key == keys::operation_list; break;
      case Model::attribute: ++defs; break;
    }
  }
  c.measured = base + defs + (model == Model::profile ? eco.profiles().size() : 0);

  switch (model) {
    case Model::record: c.formula = base + 1; break;
    case Model::profile: c.formula = base + eco.profiles().size() + 2; break;
    case Model::attribute: c.formula = base + eco.definitions().size(); break;
  }
  return c;
}

ExactCount count_attributes(const Ecosystem& eco) {
  const Model model = eco.model();
  ExactCount c;
  AssociationGraph g = build_graph(eco);
  c.measured = model == Model::attribute ? edges_on_attribute_paths(g)
                                         : edges_on_paths(g, association_path_length(model));

  EcosystemInputs in = collect_inputs(eco);
  switch (model) {
    case Model::record: c.formula = counting_engine(eco).index()->association_count(); break;
    case Model::profile: c.formula = in.associated_fdos + in.associated_profiles; break;
    case Model::attribute:
      for (auto b : in.fdo_attribute_counts) c.formula += b;
      for (auto d : in.operation_attribute_counts) c.formula += d;
      break;
  }
  return c;
}

std::uint64_t query_ceiling(const Ecosystem& eco, Measure measure, const Pid& fdo, const Pid& op) {
  const Model model = eco.model();
  auto a_f = [&](const Pid& f) -> std::uint64_t { return eco.find_fdo(f)->attributes.size(); };
  auto a_o = [&](const Pid& o) -> std::uint64_t { return eco.find_operation(o)->required_inputs.size(); };

  switch (measure) {
    case Measure::Q:
      switch (model) {
        case Model::record: return a_f(fdo);
        case Model::profile: return a_f(fdo) + profile_list_size(eco, *eco.find_fdo(fdo));
        case Model::attribute: return a_f(fdo) + a_o(op) + std::min(a_f(fdo), a_o(op));
      }
      break;
    case Measure::R: {
      std::uint64_t n = model == Model::attribute ? a_o(op) : 0;
      std::set<Pid> profiles;
      for (const auto& [f, record] : eco.fdos()) {
        n += record.attributes.size();
        if (model == Model::attribute) n += std::min<std::uint64_t>(record.attributes.size(), a_o(op));
        if (model == Model::profile) {
          if (auto p = record.profile_ref(); p && profiles.insert(*p).second) {
            n += profile_list_size(eco, record);
          }
        }
      }
      return n;
    }
    case Measure::S:
      switch (model) {
        case Model::record: return a_f(fdo);
        case Model::profile: return a_f(fdo) + profile_list_size(eco, *eco.find_fdo(fdo));
        case Model::attribute: {
          std::uint64_t n = a_f(fdo);
          for (const auto& [o, operation] : eco.operations()) n += a_o(o) + std::min(a_f(fdo), a_o(o));
          return n;
        }
      }
      break;
    default: break;
  }
  throw Error(ErrorCode::parse_error, "no query ceiling for measure " + std::string(to_string(measure)));
}

std::vector<QueryMeasurement> measure_query_costs(const Ecosystem& eco, std::span<const Association> sample) {
  if (sample.empty()) throw Error(ErrorCode::empty_sample, "no (fdo, operation) pairs to measure");
  AssociationEngine engine(eco, {Strategy::scan, MatchMode::key_value});
  std::vector<QueryMeasurement> out;
  std::set<Pid> seen_f, seen_o;
  for (const auto& [f, o] : sample) {
    StepCounter q;
    engine.is_associated(f, o, &q);
    out.push_back({Measure::Q, f, o, q.value(), query_ceiling(eco, Measure::Q, f, o)});
    if (seen_o.insert(o).second) {
      StepCounter r;
      engine.fdos_for_op(o, &r);
      out.push_back({Measure::R, f, o, r.value(), query_ceiling(eco, Measure::R, f, o)});
    }
    if (seen_f.insert(f).second) {
      StepCounter s;
      engine.ops_for_fdo(f, &s);
      out.push_back({Measure::S, f, o, s.value(), query_ceiling(eco, Measure::S, f, o)});
    }
  }
  return out;
}

std::vector<Association> sample_pairs(const Ecosystem& eco, std::size_t count, std::uint64_t seed) {
  std::vector<Pid> fdos, ops;
  for (const auto& [f, r] : eco.fdos()) fdos.push_back(f);
  for (const auto& [o, s] : eco.operations()) ops.push_back(o);
  std::vector<Association> out;
  const std::size_t total = fdos.size() * ops.size();
  if (total == 0 || count == 0) return out;
  if (count >= total) {
    for (const auto& f : fdos) {
      for (const auto& o : ops) out.emplace_back(f, o);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  std::set<std::size_t> chosen;
  while (chosen.size() < count) chosen.insert(pick(rng));
  for (auto i : chosen) out.emplace_back(fdos[i / ops.size()], ops[i % ops.size()]);
  return out;
}

UpdateScenario make_update_scenario(const Ecosystem& eco, std::uint64_t seed) {
  const Model model = eco.model();
  std::mt19937_64 rng(seed);
  auto coin = [&] { return std::bernoulli_distribution(0.5)(rng); };
  PidMinter minter;

  std::vector<std::string> domain;
  for (const auto& [pid, def] : eco.definitions()) {
    auto reserved = reserved_keys(model);
    if (std::find(reserved.begin(), reserved.end(), def.key) == reserved.end() &&
        def.restriction.kind != ValueRestriction::Kind::reference) {
      domain.push_back(def.key);
    }
  }

  UpdateScenario s{OperationSpec{minter.mint(gen_prefix::op, &eco), {}, {}},
                   {},
                   InformationRecord{minter.mint(gen_prefix::fdo, &eco), ComponentKind::data_fdo, {}, std::nullopt},
                   {}};
  s.new_op.executor_ref = "exec://" + s.new_op.pid.str();
  if (model == Model::attribute) {
    for (const auto& k : domain) {
      if (s.new_op.required_inputs.size() < 2 && coin()) s.new_op.required_inputs.push_back({k, std::nullopt});
    }
  }

  // Targets: any subset under record typing, a union of profile populations
  // under profile typing. Attribute typing derives them from the inputs.
  if (model == Model::profile) {
    std::map<Pid, std::set<Pid>> population;
    for (const auto& [f, record] : eco.fdos()) {
      if (auto p = record.profile_ref()) population[*p].insert(f);
    }
    for (const auto& [p, fdos] : population) {
      if (coin()) s.targets.insert(fdos.begin(), fdos.end());
    }
  } else if (model == Model::record) {
    for (const auto& [f, record] : eco.fdos()) {
      if (coin()) s.targets.insert(f);
    }
  }

  // The new FDO conforms to a randomly chosen profile.
  if (!eco.profiles().empty()) {
    auto it = eco.profiles().begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, eco.profiles().size() - 1)(rng));
    const Profile& profile = it->second;
    s.new_fdo.add(keys::profile_ref, profile.pid.str());
    std::set<std::string> present;
    for (const auto& k : profile.mandatory_keys) {
      if (k == keys::profile_ref) continue;
      if (auto v = admissible_value(eco, k, rng)) {
        s.new_fdo.add(k, *v);
        present.insert(k);
      }
    }
    for (const auto& k : domain) {
      if (!present.contains(k) && coin()) {
        if (auto v = admissible_value(eco, k, rng)) s.new_fdo.add(k, *v);
      }
    }
  }
  s.new_fdo.payload_ref = "bits://" + s.new_fdo.pid.str();

  if (model == Model::record) {
    for (const auto& [o, operation] : eco.operations()) {
      if (coin()) s.fdo_ops.insert(o);
    }
  } else {
    s.fdo_ops = AssociationEngine(eco, {Strategy::scan, MatchMode::key_value}).implied_ops(s.new_fdo);
  }
  return s;
}

UpdateMeasurement measure_new_operation(const Ecosystem& eco, const OperationSpec& op,
                                        const std::set<Pid>& targets, const std::filesystem::path& scratch) {
  const Model model = eco.model();
  RegistryStore store = fresh_store(eco, scratch);
  const std::uint64_t before = count_updates(store);
  UpdateReport report = AssociationEngine(eco).associate_new_operation(op, targets);
  store.apply(report.writes);

  UpdateMeasurement m{Measure::T, model, count_updates(store) - before, 0, report.associated.size()};
  switch (model) {
    case Model::record: m.formula = targets.size(); break;
    case Model::profile: {
      // |P_{2,o}|: profiles whose list now holds the operation.
      Ecosystem after = store.snapshot();
      for (const auto& [p, profile] : after.profiles()) {
        if (std::find(profile.operation_list.begin(), profile.operation_list.end(), op.pid) !=
            profile.operation_list.end()) {
          ++m.formula;
        }
      }
      break;
    }
    case Model::attribute: m.formula = 0; break;
  }
  return m;
}

UpdateMeasurement measure_new_fdo(const Ecosystem& eco, const InformationRecord& fdo, const std::set<Pid>& ops,
                                  const std::filesystem::path& scratch) {
  const Model model = eco.model();
  RegistryStore store = fresh_store(eco, scratch);
  const std::uint64_t before = count_updates(store);
  UpdateReport report = AssociationEngine(eco).associate_new_fdo(fdo, ops);
  store.apply(report.writes);
  return UpdateMeasurement{Measure::U, model, count_updates(store) - before,
                           model == Model::record ? ops.size() : 0, ops.size()};
}

bool MetricsReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const MetricsRow& r) { return r.pass; });
}

MetricsReport evaluate_metrics(const Ecosystem& eco, const MetricsOptions& options) {
  MetricsReport report{eco.model(), collect_inputs(eco), {}, {}};
  const Model model = report.model;

  if (wanted(options, Measure::C)) {
    auto c = count_components(eco);
    report.rows.push_back({model, "C", c.measured, c.formula, c.exact()});
  }
  if (wanted(options, Measure::A)) {
    auto a = count_attributes(eco);
    report.rows.push_back({model, "A", a.measured, a.formula, a.exact()});
  }

  const bool queries = wanted(options, Measure::Q) || wanted(options, Measure::R) || wanted(options, Measure::S);
  if (queries) {
    auto sample = sample_pairs(eco, options.query_sample, options.seed);
    if (sample.empty()) {
      report.notes.push_back("query costs skipped: no FDOs or no operations");
    } else {
      auto measured = measure_query_costs(eco, sample);
      for (Measure m : {Measure::Q, Measure::R, Measure::S}) {
        if (!wanted(options, m)) continue;
        const QueryMeasurement* worst = nullptr;
        bool all_within = true;
        for (const auto& q : measured) {
          if (q.measure != m) continue;
          all_within = all_within && q.within();
          // Largest measured/ceiling ratio, compared without division.
          if (!worst || q.measured * worst->ceiling > worst->measured * q.ceiling ||
              (worst->ceiling == 0 && q.ceiling == 0 && q.measured > worst->measured)) {
            worst = &q;
          }
        }
        if (worst) report.rows.push_back({model, std::string(to_string(m)), worst->measured, worst->ceiling, all_within});
      }
      if (model == Model::attribute) {
        report.notes.push_back("Q/R/S include the reads that convert records and requirements for matching");
      }
    }
  }

  if (!options.scratch.empty() && (wanted(options, Measure::T) || wanted(options, Measure::U))) {
    UpdateScenario s = make_update_scenario(eco, options.seed);
    if (wanted(options, Measure::T)) {
      auto t = measure_new_operation(eco, s.new_op, s.targets, options.scratch / "new-operation");
      report.rows.push_back({model, "T", t.measured, t.formula, t.exact()});
    }
    if (wanted(options, Measure::U)) {
      auto u = measure_new_fdo(eco, s.new_fdo, s.fdo_ops, options.scratch / "new-fdo");
      report.rows.push_back({model, "U", u.measured, u.formula, u.exact()});
    }
  }
  return report;
}

std::string to_text(const MetricsReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-8s %10s %10s  %s\n", "model", "measure", "measured", "ceiling", "pass");
  out += line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-10s %-8s %10llu %10llu  %s\n", std::string(to_string(r.model)).c_str(),
                  r.measure.c_str(), static_cast<unsigned long long>(r.measured),
                  static_cast<unsigned long long>(r.ceiling), r.pass ? "yes" : "NO");
    out += line;
  }
  const auto& in = report.inputs;
  std::snprintf(line, sizeof line, "\n|F|=%zu |O|=%zu |P|=%zu |A_def|=%zu |F_O|=%zu |O_F|=%zu |P_FO|=%zu\n", in.fdos,
                in.operations, in.profiles, in.definitions, in.associated_fdos, in.associated_operations,
                in.associated_profiles);
  out += line;
  auto list = [&](const char* name, const std::vector<std::size_t>& v) {
    if (v.empty()) return;
    out += name;
    out += '=';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(v[i]);
    }
    out += '\n';
  };
  list("b", in.fdo_attribute_counts);
  list("d", in.operation_attribute_counts);
  for (const auto& n : report.notes) out += "note: " + n + "\n";
  return out;
}

std::string to_csv(std::span<const MetricsRow> rows, bool header) {
  std::string out = header ? "model,measure,measured,ceiling,pass\n" : "";
  for (const auto& r : rows) {
    out += std::string(to_string(r.model)) + "," + r.measure + "," + std::to_string(r.measured) + "," +
           std::to_string(r.ceiling) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

ScalingReport scaling_report(std::span<const std::size_t> ladder, std::uint64_t seed, std::size_t fdo_sample) {
  ScalingReport report;
  for (std::size_t n : ladder) {
    GeneratorParams params;
    params.n_fdos = n;
    params.n_ops = std::max<std::size_t>(3, n / 10);
    params.n_profiles = 3;
    params.attrs_per_fdo = {4, 4};
    params.required_inputs_per_op = {2, 2};
    params.ops_per_holder = 3;
    params.seed = seed;

    ScalingRung rung{n, params.n_ops};
    params.model = Model::record;
    Ecosystem rec = generate_ecosystem(params);
    params.model = Model::attribute;
    Ecosystem attr = generate_ecosystem(params);
    for (const auto& [o, op] : attr.operations()) rung.total_operation_attributes += op.required_inputs.size();

    AssociationEngine rec_engine(rec, {Strategy::scan});
    AssociationEngine attr_engine(attr, {Strategy::scan});
    std::mt19937_64 rng(seed ^ n);
    std::vector<Pid> fdos;
    for (const auto& [f, r] : attr.fdos()) fdos.push_back(f);
    std::shuffle(fdos.begin(), fdos.end(), rng);
    if (fdos.size() > fdo_sample) fdos.erase(fdos.begin() + fdo_sample, fdos.end());

    rung.s3_min_ratio = 1e300;
    for (const auto& f : fdos) {
      StepCounter s1, s3;
      rec_engine.ops_for_fdo(f, &s1);
      attr_engine.ops_for_fdo(f, &s3);
      const auto c1 = query_ceiling(rec, Measure::S, f, f);
      const auto c3 = query_ceiling(attr, Measure::S, f, f);
      if (s1.value() > rung.s1_measured) {
        rung.s1_measured = s1.value();
        rung.s1_ceiling = c1;
      }
      if (s3.value() > rung.s3_measured) {
        rung.s3_measured = s3.value();
        rung.s3_ceiling = c3;
      }
      const double ratio = c3 ? double(s3.value()) / double(c3) : 0.0;
      rung.s3_min_ratio = std::min(rung.s3_min_ratio, ratio);
      rung.s3_max_ratio = std::max(rung.s3_max_ratio, ratio);
    }
    if (fdos.empty()) rung.s3_min_ratio = 0.0;
    report.rungs.push_back(rung);
  }

  const auto& r = report.rungs;
  report.s1_constant = !r.empty() && std::all_of(r.begin(), r.end(), [&](const ScalingRung& x) {
    return x.s1_measured == r.front().s1_measured && x.s1_measured <= x.s1_ceiling;
  });
  report.s3_grows = !r.empty();
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i].total_operation_attributes > r[i - 1].total_operation_attributes &&
        r[i].s3_measured <= r[i - 1].s3_measured) {
      report.s3_grows = false;
    }
  }
  report.s3_ratios_in_band = !r.empty() && std::all_of(r.begin(), r.end(), [](const ScalingRung& x) {
    return x.s3_min_ratio >= kScalingRatioMin && x.s3_max_ratio <= kScalingRatioMax;
  });
  return report;
}

std::string to_text(const ScalingReport& report) {
  std::string out;
  char line[200];
  std::snprintf(line, sizeof line, "%8s %6s %10s %6s %8s %10s %10s %s\n", "|F|", "|O|", "sum|A_o|", "S1", "S1_ceil",
                "S3", "S3_ceil", "S3_ratio");
  out += line;
  for (const auto& r : report.rungs) {
    std::snprintf(line, sizeof line, "%8zu %6zu %10llu %6llu %8llu %10llu %10llu %.3f..%.3f\n", r.fdos, r.operations,
                  static_cast<unsigned long long>(r.total_operation_attributes),
                  static_cast<unsigned long long>(r.s1_measured), static_cast<unsigned long long>(r.s1_ceiling),
                  static_cast<unsigned long long>(r.s3_measured), static_cast<unsigned long long>(r.s3_ceiling),
                  r.s3_min_ratio, r.s3_max_ratio);
    out += line;
  }
  out += std::string("S1 constant: ") + (report.s1_constant ? "yes" : "NO") + "\n";
  out += std::string("S3 grows with sum|A_o|: ") + (report.s3_grows ? "yes" : "NO") + "\n";
  out += std::string("S3 ratios within [0.1, 1]: ") + (report.s3_ratios_in_band ? "yes" : "NO") + "\n";
  return out;
}

std::string to_csv(const ScalingReport& report) {
  std::string out = "fdos,operations,sum_a_o,s1,s1_ceiling,s3,s3_ceiling,s3_min_ratio,s3_max_ratio\n";
  for (const auto& r : report.rungs) {
    char line[200];
    std::snprintf(line, sizeof line, "%zu,%zu,%llu,%llu,%llu,%llu,%llu,%.4f,%.4f\n", r.fdos, r.operations,
                  static_cast<unsigned long long>(r.total_operation_attributes),
                  static_cast<unsigned long long>(r.s1_measured), static_cast<unsigned long long>(r.s1_ceiling),
                  static_cast<unsigned long long>(r.s3_measured), static_cast<unsigned long long>(r.s3_ceiling),
                  r.s3_min_ratio, r.s3_max_ratio);
    out += line;
  }
  return out;
}

}  // namespace fdo
