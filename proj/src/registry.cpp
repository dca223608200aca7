#include "fdo/registry.hpp"

#include <ctime>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "fdo/ndrec.hpp"
#include "fdo/validation.hpp"

namespace fdo {

namespace fs = std::filesystem;

namespace {

constexpr const char* kModelFile = "model";
constexpr const char* kWriteLog = "writes.log";

fs::path namespace_file(const fs::path& root, Namespace ns) {
  return root / (std::string(to_string(ns)) + ".ndrec");
}

std::string read_model_file(const fs::path& root) {
  std::ifstream in(root / kModelFile);
  std::string name;
  if (!in || !std::getline(in, name) || name.empty()) {
    throw Error(ErrorCode::model_unset, "no store at " + root.string());
  }
  return name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
}

void append_line(const fs::path& path, const std::string& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << line << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "cannot append to " + path.string());
}

Resolved to_resolved(Component c) {
  if (auto* op = std::get_if<OperationSpec>(&c)) return op->to_record();
  if (auto* r = std::get_if<InformationRecord>(&c)) return std::move(*r);
  if (auto* p = std::get_if<Profile>(&c)) return std::move(*p);
  return std::get<AttributeDefinition>(std::move(c));
}

// Operation-fdo records are stored as OperationSpec so the encoding is the
// same whichever form the caller used.
Component normalize(Component c) {
  if (auto* r = std::get_if<InformationRecord>(&c); r && r->kind == ComponentKind::operation_fdo) {
    return OperationSpec::from_record(*r);
  }
  return c;
}

}  // namespace

std::string_view to_string(Namespace ns) {
  switch (ns) {
    case Namespace::handles: return "handles";
    case Namespace::profiles: return "profiles";
    case Namespace::operations: return "operations";
    case Namespace::attribute_defs: return "attribute_defs";
  }
  return "unknown";
}

Namespace parse_namespace(std::string_view text) {
  for (auto ns : kAllNamespaces) {
    if (to_string(ns) == text) return ns;
  }
  throw Error(ErrorCode::parse_error, "unknown namespace '" + std::string(text) + "'");
}

Namespace namespace_for(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::data_fdo: return Namespace::handles;
    case ComponentKind::operation_fdo: return Namespace::operations;
    case ComponentKind::profile: return Namespace::profiles;
    case ComponentKind::attribute_definition: return Namespace::attribute_defs;
  }
  return Namespace::handles;
}

std::string_view to_string(WriteAction action) {
  return action == WriteAction::registration ? "register" : "update";
}

std::string format_timestamp(std::chrono::system_clock::time_point t) {
  using namespace std::chrono;
  auto secs = time_point_cast<seconds>(t);
  auto millis = duration_cast<milliseconds>(t - secs).count();
  std::time_t tt = system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03lldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<long long>(millis));
  return buf;
}

// ---------------------------------------------------------------------------

Ecosystem load_ecosystem(const fs::path& root) {
  Ecosystem eco(parse_model(read_model_file(root)));
  for (auto ns : kAllNamespaces) {
    std::ifstream in(namespace_file(root, ns), std::ios::binary);
    if (!in) continue;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      Component c = [&] {
        try {
          return ndrec::decode(line);
        } catch (const Error& e) {
          throw Error(ErrorCode::parse_error, std::string(to_string(ns)) + ".ndrec:" +
                                                  std::to_string(lineno) + ": " + e.what());
        }
      }();
      if (namespace_for(kind_of(c)) != ns) {
        throw Error(ErrorCode::parse_error, pid_of(c).str() + " does not belong in " +
                                                std::string(to_string(ns)));
      }
      if (eco.contains(pid_of(c))) {
        eco.replace(std::move(c));
      } else {
        eco.add(std::move(c));
      }
    }
  }
  return eco;
}

void dump_ecosystem(const Ecosystem& ecosystem, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create " + root.string() + ": " + ec.message());
  write_file(root / kModelFile, std::string(to_string(ecosystem.model())) + "\n");

  auto dump = [&](Namespace ns, const auto& map) {
    std::string content;
    for (const auto& [pid, c] : map) {
      content += ndrec::encode(Component(c));
      content += '\n';
    }
    write_file(namespace_file(root, ns), content);
  };
  dump(Namespace::handles, ecosystem.fdos());
  dump(Namespace::profiles, ecosystem.profiles());
  dump(Namespace::operations, ecosystem.operations());
  dump(Namespace::attribute_defs, ecosystem.definitions());
  write_file(root / kWriteLog, "");
}

// ---------------------------------------------------------------------------

struct RegistryStore::State {
  fs::path root;
  Clock clock;
  Ecosystem eco;
  std::size_t writes = 0;
  mutable std::shared_mutex mutex;

  void record(WriteAction action, const Component& c) {
    Namespace ns = namespace_for(kind_of(c));
    append_line(namespace_file(root, ns), ndrec::encode(c));
    std::string entry = format_timestamp(clock());
    entry += '\t';
    entry += to_string(ns);
    entry += '\t';
    entry += pid_of(c).str();
    entry += '\t';
    entry += to_string(action);
    append_line(root / kWriteLog, entry);
    ++writes;
  }

  void check_valid(const Component& c) const {
    auto violations = validate_component(c, eco);
    if (!violations.empty()) {
      throw Error(ErrorCode::validation_failed,
                  pid_of(c).str() + ": " + std::to_string(violations.size()) + " violation(s)",
                  std::move(violations));
    }
  }

  Pid do_register(Component c, Namespace ns) {
    c = normalize(std::move(c));
    if (namespace_for(kind_of(c)) != ns) {
      throw Error(ErrorCode::kind_mismatch, pid_of(c).str() + " is a " +
                                                std::string(to_string(kind_of(c))) +
                                                ", not a " + std::string(to_string(ns)) + " entry");
    }
    Pid pid = pid_of(c);
    if (eco.contains(pid)) throw Error(ErrorCode::duplicate_pid, pid.str());
    check_valid(c);
    eco.add(c);
    record(WriteAction::registration, c);
    return pid;
  }

  void do_update(const Pid& pid, Component c) {
    c = normalize(std::move(c));
    if (pid_of(c) != pid) {
      throw Error(ErrorCode::invalid_pid, "update of " + pid.str() + " carries " + pid_of(c).str());
    }
    if (!eco.contains(pid)) throw Error(ErrorCode::not_found, pid.str());
    check_valid(c);
    eco.replace(c);
    record(WriteAction::update, c);
  }
};

RegistryStore::RegistryStore(std::unique_ptr<State> state) : state_(std::move(state)) {}
RegistryStore::RegistryStore(RegistryStore&&) noexcept = default;
RegistryStore& RegistryStore::operator=(RegistryStore&&) noexcept = default;
RegistryStore::~RegistryStore() = default;

RegistryStore RegistryStore::create(const fs::path& root, Model model, Clock clock) {
  if (fs::exists(root / kModelFile)) {
    throw Error(ErrorCode::io_error, "a store already exists at " + root.string());
  }
  dump_ecosystem(Ecosystem(model), root);
  return open(root, std::move(clock));
}

RegistryStore RegistryStore::open(const fs::path& root, Clock clock) {
  auto state = std::make_unique<State>();
  state->root = root;
  state->clock = clock ? std::move(clock) : Clock([] { return std::chrono::system_clock::now(); });
  state->eco = load_ecosystem(root);
  std::ifstream log(root / kWriteLog);
  std::string line;
  while (std::getline(log, line)) {
    if (!line.empty()) ++state->writes;
  }
  return RegistryStore(std::move(state));
}

const fs::path& RegistryStore::root() const { return state_->root; }

Model RegistryStore::model() const { return state_->eco.model(); }

Resolved RegistryStore::resolve(const Pid& pid) const {
  std::shared_lock lock(state_->mutex);
  return to_resolved(state_->eco.get(pid));
}

Pid RegistryStore::register_component(Component component, Namespace ns) {
  std::unique_lock lock(state_->mutex);
  return state_->do_register(std::move(component), ns);
}

void RegistryStore::update(const Pid& pid, Component component) {
  std::unique_lock lock(state_->mutex);
  state_->do_update(pid, std::move(component));
}

void RegistryStore::apply(std::span<const PendingWrite> writes) {
  std::unique_lock lock(state_->mutex);
  for (const auto& w : writes) {
    if (w.action == WriteAction::registration) {
      state_->do_register(w.component, namespace_for(kind_of(w.component)));
    } else {
      state_->do_update(pid_of(w.component), w.component);
    }
  }
}

Ecosystem RegistryStore::snapshot() const {
  std::shared_lock lock(state_->mutex);
  return state_->eco;
}

std::vector<WriteLogEntry> RegistryStore::write_log() const {
  std::shared_lock lock(state_->mutex);
  std::vector<WriteLogEntry> entries;
  std::ifstream in(state_->root / kWriteLog);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string ts, ns, pid, action;
    std::getline(fields, ts, '\t');
    std::getline(fields, ns, '\t');
    std::getline(fields, pid, '\t');
    std::getline(fields, action, '\t');
    entries.push_back(WriteLogEntry{ts, parse_namespace(ns), Pid::parse(pid),
                                    action == "update" ? WriteAction::update
                                                       : WriteAction::registration});
  }
  return entries;
}

std::size_t RegistryStore::write_count() const {
  std::shared_lock lock(state_->mutex);
  return state_->writes;
}

}  // namespace fdo
