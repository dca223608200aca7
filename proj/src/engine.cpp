#include "fdo/engine.hpp"

#include <algorithm>
#include <string_view>

#include "fdo/validation.hpp"

namespace fdo {

namespace {

void count(StepCounter* steps, std::uint64_t n) {
  if (steps) steps->add(n);
}

std::optional<Pid> as_pid(std::string_view text) {
  if (!Pid::is_valid(text)) return std::nullopt;
  return Pid::parse(text);
}

// FDO record converted for matching: values grouped by key.
using KeyTable = std::map<std::string_view, std::vector<std::string_view>>;

KeyTable read_record(const InformationRecord& record, StepCounter* steps) {
  count(steps, record.attributes.size());
  KeyTable table;
  for (const auto& a : record.attributes) table[a.key].push_back(a.value);
  return table;
}

// Operation requirements converted for matching: constraints grouped by key.
// An entry without constraint contributes a nullopt.
using Requirements = std::map<std::string_view, std::vector<std::optional<std::string_view>>>;

Requirements read_requirements(const OperationSpec& op, StepCounter* steps) {
  count(steps, op.required_inputs.size());
  Requirements req;
  for (const auto& in : op.required_inputs) {
    auto& slot = req[in.key];
    if (in.value_constraint) {
      slot.emplace_back(std::string_view(*in.value_constraint));
    } else {
      slot.emplace_back(std::nullopt);
    }
  }
  return req;
}

// One step per required key looked up in the FDO table. A requirement set
// with more distinct keys than the record cannot be satisfied, so it fails
// before any lookup; this keeps the matching phase within min(|A_f|, |A_o|).
bool match(const KeyTable& fdo, const Requirements& req, MatchMode mode, StepCounter* steps) {
  if (req.size() > fdo.size()) return false;
  for (const auto& [key, constraints] : req) {
    count(steps, 1);
    auto it = fdo.find(key);
    if (it == fdo.end()) return false;
    if (mode == MatchMode::key_only) continue;
    for (const auto& c : constraints) {
      if (c && std::find(it->second.begin(), it->second.end(), *c) == it->second.end()) return false;
    }
  }
  return true;
}

// Reads the whole record and returns its single profile reference.
std::optional<Pid> read_profile_ref(const InformationRecord& record, StepCounter* steps) {
  count(steps, record.attributes.size());
  return record.profile_ref();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void apply_write(Ecosystem& eco, const PendingWrite& w) {
  auto violations = validate_component(w.component, eco);
  if (!violations.empty()) {
    throw Error(ErrorCode::validation_failed, pid_of(w.component).str(), std::move(violations));
  }
  if (w.action == WriteAction::registration) {
    eco.add(w.component);
  } else {
    eco.replace(w.component);
  }
}

std::vector<std::string> to_strings(const std::set<Pid>& pids) {
  std::vector<std::string> out;
  for (const auto& p : pids) out.push_back(p.str());
  return out;
}

}  // namespace

std::size_t QueryIndex::association_count() const {
  std::size_t n = 0;
  for (const auto& [f, ops] : ops_by_fdo) n += ops.size();
  return n;
}

bool QueryIndex::handshake_holds() const {
  std::size_t n = 0;
  for (const auto& [o, fdos] : fdos_by_op) n += fdos.size();
  return n == association_count();
}

// ---------------------------------------------------------------------------

AssociationEngine::AssociationEngine(Ecosystem ecosystem, EngineOptions options)
    : AssociationEngine(std::make_shared<const Ecosystem>(std::move(ecosystem)), options) {}

AssociationEngine::AssociationEngine(std::shared_ptr<const Ecosystem> ecosystem, EngineOptions options)
    : eco_(std::move(ecosystem)), model_(eco_->model()), options_(options) {
  if (options_.strategy != Strategy::indexed) return;
  auto index = std::make_shared<QueryIndex>();
  for (const auto& [o, op] : eco_->operations()) {
    index->fdos_by_op[o];
    index->attrs_by_op[o] = op.association_attributes();
  }
  for (const auto& [p, profile] : eco_->profiles()) {
    if (model_ == Model::profile) index->ops_by_profile[p] = profile.operation_list;
  }
  for (const auto& [f, record] : eco_->fdos()) {
    index->attrs_by_fdo[f] = record.attributes;
    if (model_ == Model::profile) {
      if (auto p = record.profile_ref()) index->profile_by_fdo.emplace(f, *p);
    }
    auto ops = scan_ops_for_record(record, nullptr);
    index->ops_by_fdo[f].assign(ops.begin(), ops.end());
    for (const auto& o : ops) index->fdos_by_op[o].push_back(f);
  }
  index_ = std::move(index);
}

void AssociationEngine::check_fdo(const Pid& fdo) const {
  auto kind = eco_->kind_of(fdo);
  if (!kind) throw Error(ErrorCode::unknown_pid, fdo.str(), std::vector<std::string>{fdo.str()});
  if (*kind != ComponentKind::data_fdo) {
    throw Error(ErrorCode::kind_mismatch, fdo.str() + " is a " + std::string(to_string(*kind)));
  }
}

void AssociationEngine::check_op(const Pid& op) const {
  auto kind = eco_->kind_of(op);
  if (!kind) throw Error(ErrorCode::unknown_pid, op.str(), std::vector<std::string>{op.str()});
  if (*kind != ComponentKind::operation_fdo) {
    throw Error(ErrorCode::kind_mismatch, op.str() + " is a " + std::string(to_string(*kind)));
  }
}

std::set<Pid> AssociationEngine::scan_ops_for_record(const InformationRecord& record,
                                                     StepCounter* steps) const {
  std::set<Pid> out;
  switch (model_) {
    case Model::record: {
      count(steps, record.attributes.size());
      for (const auto& a : record.attributes) {
        if (a.key != keys::operation_ref) continue;
        if (auto o = as_pid(a.value); o && eco_->find_operation(*o)) out.insert(*o);
      }
      break;
    }
    case Model::profile: {
      auto p = read_profile_ref(record, steps);
      const Profile* profile = p ? eco_->find_profile(*p) : nullptr;
      if (!profile) break;
      count(steps, profile->operation_list.size());
      for (const auto& o : profile->operation_list) {
        if (eco_->find_operation(o)) out.insert(o);
      }
      break;
    }
    case Model::attribute: {
      auto table = read_record(record, steps);
      for (const auto& [o, op] : eco_->operations()) {
        if (match(table, read_requirements(op, steps), options_.match, steps)) out.insert(o);
      }
      break;
    }
  }
  return out;
}

bool AssociationEngine::is_associated(const Pid& fdo, const Pid& op, StepCounter* steps) const {
  check_fdo(fdo);
  check_op(op);
  if (index_) {
    count(steps, 1);
    const auto& ops = index_->ops_by_fdo.at(fdo);
    return std::binary_search(ops.begin(), ops.end(), op);
  }
  const InformationRecord& record = *eco_->find_fdo(fdo);
  switch (model_) {
    case Model::record: {
      count(steps, record.attributes.size());
      return std::any_of(record.attributes.begin(), record.attributes.end(), [&](const Attribute& a) {
        return a.key == keys::operation_ref && a.value == op.str();
      });
    }
    case Model::profile: {
      auto p = read_profile_ref(record, steps);
      const Profile* profile = p ? eco_->find_profile(*p) : nullptr;
      if (!profile) return false;
      count(steps, profile->operation_list.size());
      return std::find(profile->operation_list.begin(), profile->operation_list.end(), op) !=
             profile->operation_list.end();
    }
    case Model::attribute: {
      auto req = read_requirements(*eco_->find_operation(op), steps);
      auto table = read_record(record, steps);
      return match(table, req, options_.match, steps);
    }
  }
  return false;
}

std::set<Pid> AssociationEngine::ops_for_fdo(const Pid& fdo, StepCounter* steps) const {
  check_fdo(fdo);
  if (index_) {
    const auto& ops = index_->ops_by_fdo.at(fdo);
    count(steps, ops.size());
    return {ops.begin(), ops.end()};
  }
  return scan_ops_for_record(*eco_->find_fdo(fdo), steps);
}

std::set<Pid> AssociationEngine::fdos_for_op(const Pid& op, StepCounter* steps) const {
  check_op(op);
  if (index_) {
    const auto& fdos = index_->fdos_by_op.at(op);
    count(steps, fdos.size());
    return {fdos.begin(), fdos.end()};
  }
  std::set<Pid> out;
  switch (model_) {
    case Model::record:
      for (const auto& [f, record] : eco_->fdos()) {
        count(steps, record.attributes.size());
        for (const auto& a : record.attributes) {
          if (a.key == keys::operation_ref && a.value == op.str()) {
            out.insert(f);
            break;
          }
        }
      }
      break;
    case Model::profile: {
      // Each referenced profile's list is read once.
      std::map<Pid, bool> lists;
      for (const auto& [f, record] : eco_->fdos()) {
        auto p = read_profile_ref(record, steps);
        if (!p) continue;
        auto it = lists.find(*p);
        if (it == lists.end()) {
          const Profile* profile = eco_->find_profile(*p);
          bool listed = false;
          if (profile) {
            count(steps, profile->operation_list.size());
            listed = std::find(profile->operation_list.begin(), profile->operation_list.end(), op) !=
                     profile->operation_list.end();
          }
          it = lists.emplace(*p, listed).first;
        }
        if (it->second) out.insert(f);
      }
      break;
    }
    case Model::attribute: {
      auto req = read_requirements(*eco_->find_operation(op), steps);
      for (const auto& [f, record] : eco_->fdos()) {
        if (match(read_record(record, steps), req, options_.match, steps)) out.insert(f);
      }
      break;
    }
  }
  return out;
}

Relation AssociationEngine::relation() const {
  Relation rel;
  for (const auto& [f, record] : eco_->fdos()) {
    for (const auto& o : ops_for_fdo(f)) rel.emplace(f, o);
  }
  return rel;
}

std::set<Pid> AssociationEngine::implied_ops(const InformationRecord& fdo) const {
  return scan_ops_for_record(fdo, nullptr);
}

UpdateReport AssociationEngine::associate_new_operation(OperationSpec op,
                                                        const std::set<Pid>& targets) const {
  if (eco_->contains(op.pid)) throw Error(ErrorCode::duplicate_pid, op.pid.str());
  UpdateReport report;
  Ecosystem next = *eco_;
  auto write = [&](WriteAction action, Component c) {
    PendingWrite w{action, std::move(c)};
    apply_write(next, w);
    report.writes.push_back(std::move(w));
  };
  const Pid op_pid = op.pid;

  switch (model_) {
    case Model::record: {
      for (const auto& f : targets) check_fdo(f);
      write(WriteAction::registration, std::move(op));
      for (const auto& f : targets) {
        InformationRecord updated = *next.find_fdo(f);
        updated.add(keys::operation_ref, op_pid.str());
        write(WriteAction::update, std::move(updated));
        ++report.record_writes;
      }
      report.associated = targets;
      break;
    }
    case Model::profile: {
      for (const auto& f : targets) check_fdo(f);
      std::map<Pid, std::set<Pid>> population;
      for (const auto& [f, record] : eco_->fdos()) {
        if (auto p = record.profile_ref()) population[*p].insert(f);
      }
      std::set<Pid> covered;
      std::vector<Pid> chosen;
      for (const auto& [p, fdos] : population) {
        if (!eco_->find_profile(p)) continue;
        if (std::includes(targets.begin(), targets.end(), fdos.begin(), fdos.end())) {
          chosen.push_back(p);
          covered.insert(fdos.begin(), fdos.end());
        }
      }
      if (covered != targets) {
        std::set<Pid> uncovered;
        std::set_difference(targets.begin(), targets.end(), covered.begin(), covered.end(),
                            std::inserter(uncovered, uncovered.end()));
        throw Error(ErrorCode::unexpressible_target_set,
                    std::to_string(uncovered.size()) +
                        " target(s) share a profile with FDOs outside the target set",
                    to_strings(uncovered));
      }
      write(WriteAction::registration, std::move(op));
      for (const auto& p : chosen) {
        Profile updated = *next.find_profile(p);
        updated.operation_list.push_back(op_pid);
        write(WriteAction::update, std::move(updated));
        ++report.record_writes;
        report.touched_profiles.insert(p);
      }
      report.associated = targets;
      break;
    }
    case Model::attribute: {
      write(WriteAction::registration, std::move(op));
      AssociationEngine after(std::make_shared<const Ecosystem>(next), {Strategy::scan, options_.match});
      report.associated = after.fdos_for_op(op_pid);
      break;
    }
  }
  report.ecosystem = std::make_shared<const Ecosystem>(std::move(next));
  return report;
}

UpdateReport AssociationEngine::associate_new_fdo(InformationRecord fdo, const std::set<Pid>& ops) const {
  if (eco_->contains(fdo.pid)) throw Error(ErrorCode::duplicate_pid, fdo.pid.str());
  if (fdo.kind != ComponentKind::data_fdo) {
    throw Error(ErrorCode::kind_mismatch, fdo.pid.str() + " is not a data FDO record");
  }
  for (const auto& o : ops) check_op(o);

  UpdateReport report;
  Ecosystem next = *eco_;
  auto write = [&](WriteAction action, Component c) {
    PendingWrite w{action, std::move(c)};
    apply_write(next, w);
    report.writes.push_back(std::move(w));
  };

  if (model_ == Model::record) {
    InformationRecord current = fdo;
    write(WriteAction::registration, fdo);
    for (const auto& o : ops) {
      current.add(keys::operation_ref, o.str());
      write(WriteAction::update, current);
      ++report.record_writes;
    }
    report.associated = ops;
  } else {
    if (model_ == Model::profile) {
      auto p = fdo.profile_ref();
      if (!p || !eco_->find_profile(*p)) {
        throw Error(ErrorCode::unresolved_profile, fdo.pid.str() + " has no resolvable profile");
      }
    }
    auto implied = implied_ops(fdo);
    if (implied != ops) {
      throw Error(ErrorCode::model_mismatch,
                  "the " + std::string(to_string(model_)) + " model implies " +
                      std::to_string(implied.size()) + " operation(s) for " + fdo.pid.str(),
                  to_strings(implied));
    }
    write(WriteAction::registration, std::move(fdo));
    report.associated = std::move(implied);
  }
  report.ecosystem = std::make_shared<const Ecosystem>(std::move(next));
  return report;
}

}  // namespace fdo
