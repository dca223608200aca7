// fdoctl: registry, association queries, graphs, metrics and conversion over a
// local FDO store.
//
// Exit codes: 0 ok, 1 validation or usage error, 2 not found, 3 a metric
// exceeded its ceiling or missed its formula.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fdo/core.hpp"
#include "fdo/engine.hpp"
#include "fdo/fixtures.hpp"
#include "fdo/generator.hpp"
#include "fdo/graph.hpp"
#include "fdo/interop.hpp"
#include "fdo/metrics.hpp"
#include "fdo/ndrec.hpp"
#include "fdo/registry.hpp"
#include "fdo/validation.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace fdo;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNotFound = 2, kMetrics = 3 };

struct Config {
  std::string store;
  std::string model;
  std::uint64_t seed = 0;
  std::string format = "text";
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found:
    case ErrorCode::unknown_pid: return kNotFound;
    default: return kValidation;
  }
}

void report(const Error& e) {
  std::cerr << "fdoctl: " << e.what() << "\n";
  for (const auto& v : e.violations()) {
    std::cerr << "  " << to_string(v.kind) << " " << v.key;
    if (!v.detail.empty()) std::cerr << " (" << v.detail << ")";
    std::cerr << "\n";
  }
  for (const auto& s : e.subjects()) std::cerr << "  " << s << "\n";
}

fs::path require_store(const Config& cfg) {
  if (cfg.store.empty()) throw Error(ErrorCode::model_unset, "--store is required");
  return cfg.store;
}

// The store's ecosystem, converted when --model names another model.
Ecosystem load(const Config& cfg) {
  Ecosystem eco = load_ecosystem(require_store(cfg));
  if (!cfg.model.empty()) {
    Model m = parse_model(cfg.model);
    if (m != eco.model()) {
      std::cerr << "fdoctl: evaluating the " << to_string(eco.model()) << " store under the " << to_string(m)
                << " model\n";
      eco = convert(eco, m).ecosystem;
    }
  }
  return eco;
}

json component_json(const Component& c) {
  return std::visit(
      overloaded{
          [](const InformationRecord& r) {
            json attrs = json::array();
            for (const auto& a : r.attributes) attrs.push_back({a.key, a.value});
            json j{{"pid", r.pid.str()}, {"kind", to_string(r.kind)}, {"attributes", attrs}};
            if (r.payload_ref) j["payload"] = *r.payload_ref;
            return j;
          },
          [](const Profile& p) {
            json ops = json::array();
            for (const auto& o : p.operation_list) ops.push_back(o.str());
            return json{{"pid", p.pid.str()},
                        {"kind", "profile"},
                        {"mandatory", p.mandatory_keys},
                        {"optional", p.optional_keys},
                        {"operations", ops}};
          },
          [](const OperationSpec& o) {
            json inputs = json::array();
            for (const auto& in : o.required_inputs) inputs.push_back(in.encode());
            return json{{"pid", o.pid.str()}, {"kind", "operation-fdo"}, {"inputs", inputs}, {"executor", o.executor_ref}};
          },
          [](const AttributeDefinition& d) {
            static const char* kinds[] = {"any", "enum", "ref"};
            json j{{"pid", d.pid.str()},
                   {"kind", "attribute-def"},
                   {"key", d.key},
                   {"restriction", kinds[static_cast<int>(d.restriction.kind)]}};
            if (d.restriction.kind == ValueRestriction::Kind::enumeration) j["allowed"] = d.restriction.allowed;
            if (d.restriction.kind == ValueRestriction::Kind::reference) j["target"] = to_string(d.restriction.target);
            return j;
          },
      },
      c);
}

Component to_component(const Resolved& r) {
  return std::visit([](const auto& x) -> Component { return x; }, r);
}

void print_pids(const Config& cfg, const std::set<Pid>& pids) {
  for (const auto& p : pids) {
    if (cfg.format == "json-lines") {
      std::cout << json{{"pid", p.str()}}.dump() << "\n";
    } else {
      std::cout << p.str() << "\n";
    }
  }
}

// --- commands --------------------------------------------------------------

int cmd_init(const Config& cfg) {
  if (cfg.model.empty()) throw Error(ErrorCode::model_unset, "init needs --model");
  RegistryStore::create(require_store(cfg), parse_model(cfg.model));
  return kOk;
}

int cmd_register(const Config& cfg, const std::string& ns_text, const std::string& file) {
  Namespace ns = parse_namespace(ns_text);
  RegistryStore store = RegistryStore::open(require_store(cfg));
  std::ifstream in_file;
  if (!file.empty() && file != "-") {
    in_file.open(file);
    if (!in_file) throw Error(ErrorCode::io_error, "cannot read " + file);
  }
  std::istream& in = in_file.is_open() ? in_file : std::cin;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Component c = [&] {
      try {
        return ndrec::decode(line);
      } catch (const Error& e) {
        throw Error(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": " + e.what());
      }
    }();
    std::cout << store.register_component(std::move(c), ns).str() << "\n";
  }
  return kOk;
}

int cmd_resolve(const Config& cfg, const std::string& pid) {
  RegistryStore store = RegistryStore::open(require_store(cfg));
  Component c = to_component(store.resolve(Pid::parse(pid)));
  if (cfg.format == "json-lines") {
    std::cout << component_json(c).dump() << "\n";
  } else {
    std::cout << ndrec::encode(c) << "\n";
  }
  return kOk;
}

int cmd_query(const Config& cfg, const std::string& kind, const std::vector<std::string>& args,
              const std::string& strategy, bool show_steps) {
  Ecosystem eco = load(cfg);
  EngineOptions opts;
  opts.strategy = strategy == "scan" ? Strategy::scan : Strategy::indexed;
  AssociationEngine engine(std::move(eco), opts);
  StepCounter steps;
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw Error(ErrorCode::parse_error, "query " + kind + " takes " + std::to_string(n) + " Pid(s)");
    }
  };
  if (kind == "ops-for") {
    need(1);
    print_pids(cfg, engine.ops_for_fdo(Pid::parse(args[0]), &steps));
  } else if (kind == "fdos-for") {
    need(1);
    print_pids(cfg, engine.fdos_for_op(Pid::parse(args[0]), &steps));
  } else if (kind == "check") {
    need(2);
    bool yes = engine.is_associated(Pid::parse(args[0]), Pid::parse(args[1]), &steps);
    if (cfg.format == "json-lines") {
      std::cout << json{{"fdo", args[0]}, {"operation", args[1]}, {"associated", yes}}.dump() << "\n";
    } else {
      std::cout << (yes ? "true" : "false") << "\n";
    }
  } else {
    throw Error(ErrorCode::parse_error, "unknown query '" + kind + "'");
  }
  if (show_steps) std::cerr << "steps: " << steps.value() << "\n";
  return kOk;
}

int cmd_convert(const Config& cfg, const std::string& target, const std::string& out) {
  Ecosystem eco = load_ecosystem(require_store(cfg));
  Conversion conv = convert(eco, parse_model(target));
  if (!out.empty()) dump_ecosystem(conv.ecosystem, out);
  if (cfg.format == "json-lines") {
    for (const auto& [a, b] : conv.mapping.fdo_map) {
      std::cout << json{{"bijection", "fdo"}, {"source", a.str()}, {"target", b.str()}}.dump() << "\n";
    }
    for (const auto& [a, b] : conv.mapping.op_map) {
      std::cout << json{{"bijection", "operation"}, {"source", a.str()}, {"target", b.str()}}.dump() << "\n";
    }
  } else {
    std::cout << to_table(conv.mapping);
  }
  std::cerr << "fdoctl: " << conv.mapping.synthesized.size() << " synthesized component(s)\n";
  return kOk;
}

int cmd_graph(const Config& cfg) {
  AssociationGraph g = build_graph(load(cfg));
  if (cfg.format == "dot") {
    std::cout << export_graph(g, GraphFormat::dot);
  } else if (cfg.format == "json-lines") {
    for (const auto& e : g.edges()) {
      std::cout << json{{"from", e.from.label()}, {"to", e.to.label()}, {"label", to_string(e.label)}}.dump() << "\n";
    }
  } else if (cfg.format == "csv") {
    std::cout << "from,to,label\n";
    for (const auto& e : g.edges()) {
      std::cout << e.from.label() << "," << e.to.label() << "," << to_string(e.label) << "\n";
    }
  } else {
    std::cout << export_graph(g, GraphFormat::edge_list);
  }
  return kOk;
}

fs::path scratch_dir(std::uint64_t seed) {
  std::random_device rd;
  char name[64];
  std::snprintf(name, sizeof name, "fdoctl-%llu-%08x", static_cast<unsigned long long>(seed), rd());
  return fs::temp_directory_path() / name;
}

Measure parse_measure(const std::string& s) {
  static const std::map<std::string, Measure> names{{"C", Measure::C}, {"A", Measure::A}, {"Q", Measure::Q},
                                                    {"R", Measure::R}, {"S", Measure::S}, {"T", Measure::T},
                                                    {"U", Measure::U}};
  auto it = names.find(s);
  if (it == names.end()) throw Error(ErrorCode::parse_error, "unknown measure '" + s + "'");
  return it->second;
}

int cmd_metrics(const Config& cfg, const std::vector<std::string>& measures, std::size_t sample) {
  Ecosystem eco = load(cfg);
  MetricsOptions opts;
  opts.seed = cfg.seed;
  opts.query_sample = sample;
  for (const auto& m : measures) opts.measures.push_back(parse_measure(m));
  opts.scratch = scratch_dir(cfg.seed);
  MetricsReport rep = [&] {
    try {
      auto r = evaluate_metrics(eco, opts);
      fs::remove_all(opts.scratch);
      return r;
    } catch (...) {
      fs::remove_all(opts.scratch);
      throw;
    }
  }();
  if (cfg.format == "csv") {
    std::cout << to_csv(rep.rows);
  } else if (cfg.format == "json-lines") {
    for (const auto& r : rep.rows) {
      std::cout << json{{"model", to_string(r.model)},
                        {"measure", r.measure},
                        {"measured", r.measured},
                        {"ceiling", r.ceiling},
                        {"pass", r.pass}}
                       .dump()
                << "\n";
    }
  } else {
    std::cout << to_text(rep);
  }
  return rep.passed() ? kOk : kMetrics;
}

int cmd_generate(const Config& cfg, GeneratorParams params, const std::string& out) {
  params.model = cfg.model.empty() ? Model::record : parse_model(cfg.model);
  params.seed = cfg.seed;
  Ecosystem eco = generate_ecosystem(params);
  fs::path dir = out.empty() ? require_store(cfg) : fs::path(out);
  dump_ecosystem(eco, dir);
  std::cout << to_string(eco.model()) << "\t" << eco.fdos().size() << " fdos\t" << eco.operations().size()
            << " operations\t" << eco.profiles().size() << " profiles\t" << eco.definitions().size()
            << " definitions\n";
  return kOk;
}

int cmd_scaling(const Config& cfg, const std::vector<std::size_t>& ladder, std::size_t sample) {
  ScalingReport rep = scaling_report(ladder, cfg.seed, sample);
  std::cout << (cfg.format == "csv" ? to_csv(rep) : to_text(rep));
  return rep.passed() ? kOk : kMetrics;
}

int cmd_fixture(const Config& cfg, const std::string& model, const std::string& out) {
  fs::path dir = out.empty() ? require_store(cfg) : fs::path(out);
  dump_ecosystem(example_ecosystem(parse_model(model)), dir);
  return kOk;
}

int cmd_validate(const Config& cfg) {
  auto found = validate_ecosystem(load_ecosystem(require_store(cfg)));
  for (const auto& cv : found) {
    std::cout << cv.pid.str() << "\t" << to_string(cv.violation.kind) << "\t" << cv.violation.key;
    if (!cv.violation.detail.empty()) std::cout << "\t" << cv.violation.detail;
    std::cout << "\n";
  }
  return found.empty() ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FDO registry, association and metrics tool"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--store", cfg.store, "Store directory");
  app.add_option("--model", cfg.model, "Association model")->check(CLI::IsMember({"record", "profile", "attribute"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "dot", "json-lines"}));

  std::function<int()> run;

  auto* init = app.add_subcommand("init", "Create an empty store");
  init->callback([&] { run = [&] { return cmd_init(cfg); }; });

  std::string ns, file;
  auto* reg = app.add_subcommand("register", "Register ndrec lines from a file or stdin");
  reg->add_option("namespace", ns)->required()->check(
      CLI::IsMember({"handles", "profiles", "operations", "attribute_defs"}));
  reg->add_option("file", file);
  reg->callback([&] { run = [&] { return cmd_register(cfg, ns, file); }; });

  std::string pid;
  auto* res = app.add_subcommand("resolve", "Print a registered component");
  res->add_option("pid", pid)->required();
  res->callback([&] { run = [&] { return cmd_resolve(cfg, pid); }; });

  std::string qkind, strategy = "indexed";
  std::vector<std::string> qargs;
  bool show_steps = false;
  auto* query = app.add_subcommand("query", "ops-for <fdo> | fdos-for <op> | check <fdo> <op>");
  query->add_option("kind", qkind)->required()->check(CLI::IsMember({"ops-for", "fdos-for", "check"}));
  query->add_option("pids", qargs)->required();
  query->add_option("--strategy", strategy)->check(CLI::IsMember({"scan", "indexed"}));
  query->add_flag("--steps", show_steps, "Report counted steps on stderr");
  query->callback([&] { run = [&] { return cmd_query(cfg, qkind, qargs, strategy, show_steps); }; });

  std::string target, out;
  auto* conv = app.add_subcommand("convert", "Convert the store to another model");
  conv->add_option("model", target)->required()->check(CLI::IsMember({"record", "profile", "attribute"}));
  conv->add_option("--out", out, "Directory for the converted store");
  conv->callback([&] { run = [&] { return cmd_convert(cfg, target, out); }; });

  auto* graph = app.add_subcommand("graph", "Export the association graph");
  graph->callback([&] { run = [&] { return cmd_graph(cfg); }; });

  std::vector<std::string> measures;
  std::size_t sample = 200;
  auto* metrics = app.add_subcommand("metrics", "Evaluate C A Q R S T U");
  metrics->add_option("measures", measures)->check(CLI::IsMember({"C", "A", "Q", "R", "S", "T", "U"}));
  metrics->add_option("--sample", sample, "Sampled (fdo, operation) pairs");
  metrics->callback([&] { run = [&] { return cmd_metrics(cfg, measures, sample); }; });

  GeneratorParams gen;
  std::size_t attrs_min = gen.attrs_per_fdo.min, attrs_max = gen.attrs_per_fdo.max;
  std::size_t inputs_min = gen.required_inputs_per_op.min, inputs_max = gen.required_inputs_per_op.max;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic store");
  generate->add_option("--fdos", gen.n_fdos);
  generate->add_option("--ops", gen.n_ops);
  generate->add_option("--profiles", gen.n_profiles);
  generate->add_option("--keys", gen.n_keys);
  generate->add_option("--density", gen.association_density)->check(CLI::Range(0.0, 1.0));
  generate->add_option("--attrs-min", attrs_min);
  generate->add_option("--attrs-max", attrs_max);
  generate->add_option("--inputs-min", inputs_min);
  generate->add_option("--inputs-max", inputs_max);
  generate->add_option("--out", gen_out, "Target directory (defaults to --store)");
  generate->callback([&] {
    run = [&] {
      gen.attrs_per_fdo = {attrs_min, attrs_max};
      gen.required_inputs_per_op = {inputs_min, inputs_max};
      return cmd_generate(cfg, gen, gen_out);
    };
  });

  std::vector<std::size_t> ladder{10, 100, 1000, 10000};
  std::size_t scaling_sample = 20;
  auto* scaling = app.add_subcommand("scaling", "S_1 and S_3 across growing ecosystems");
  scaling->add_option("--ladder", ladder)->delimiter(',');
  scaling->add_option("--sample", scaling_sample, "Sampled FDOs per rung");
  scaling->callback([&] { run = [&] { return cmd_scaling(cfg, ladder, scaling_sample); }; });

  std::string fixture_model, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Write the four-FDO example store");
  fixture->add_option("model", fixture_model)->required()->check(CLI::IsMember({"record", "profile", "attribute"}));
  fixture->add_option("--out", fixture_out, "Target directory (defaults to --store)");
  fixture->callback([&] { run = [&] { return cmd_fixture(cfg, fixture_model, fixture_out); }; });

  auto* validate = app.add_subcommand("validate", "List violations of every stored component");
  validate->callback([&] { run = [&] { return cmd_validate(cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    return run();
  } catch (const Error& e) {
    report(e);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "fdoctl: " << e.what() << "\n";
    return kValidation;
  }
}
