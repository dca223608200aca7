#include "fdo/interop.hpp"

#include <algorithm>

#include "fdo/engine.hpp"

namespace fdo {

namespace {

bool is_marker(std::string_view key) { return key.starts_with(kMarkerPrefix); }

// Keys that carry an association mechanism in some model other than `target`.
bool foreign_mechanism_key(std::string_view key, Model target) {
  if (key == keys::profile_ref) return false;
  auto reserved = reserved_keys(target);
  if (std::find(reserved.begin(), reserved.end(), key) != reserved.end()) return false;
  return key == keys::operation_ref || key == keys::operation_list || key == keys::required_input;
}

ValueRestriction reserved_restriction(std::string_view key) {
  if (key == keys::profile_ref) return ValueRestriction::reference(ComponentKind::profile);
  if (key == keys::operation_ref) return ValueRestriction::reference(ComponentKind::operation_fdo);
  return ValueRestriction::any();
}

class Builder {
 public:
  Builder(const Ecosystem& source, Model target, const ConvertOptions& options)
      : src_(source), target_(target), options_(options), out_(target) {
    mapping_.source = source.model();
    mapping_.target = target;
  }

  Conversion run() {
    AssociationEngine engine(src_, {Strategy::indexed, MatchMode::key_value});
    map_pids();
    copy_definitions();
    copy_operations();
    if (target_ == Model::profile) {
      synthesize_profiles(engine);
    } else {
      copy_profiles();
    }
    copy_fdos(engine);
    return Conversion{std::move(out_), std::move(mapping_)};
  }

 private:
  // Fresh Pids never collide with anything in the source.
  Pid fresh(std::string_view prefix) {
    for (;;) {
      Pid pid = minter_.mint(prefix, &src_);
      if (!out_.contains(pid)) return pid;
    }
  }

  void map_pids() {
    for (const auto& [f, r] : src_.fdos()) {
      mapping_.fdo_map.emplace(f, options_.fdo_prefix ? fresh(*options_.fdo_prefix) : f);
    }
    for (const auto& [o, s] : src_.operations()) {
      mapping_.op_map.emplace(o, options_.op_prefix ? fresh(*options_.op_prefix) : o);
    }
  }

  void synthesize(Component c) {
    mapping_.synthesized.push_back(c);
    out_.add(std::move(c));
  }

  void copy_definitions() {
    for (const auto& [pid, def] : src_.definitions()) {
      if (is_marker(def.key) || foreign_mechanism_key(def.key, target_)) continue;
      out_.add_definition(def);
    }
    for (auto key : reserved_keys(target_)) {
      if (!out_.definition_by_key(key)) {
        synthesize(AttributeDefinition{fresh(options_.synth_prefix), std::string(key), reserved_restriction(key)});
      }
    }
  }

  void copy_operations() {
    for (const auto& [o, op] : src_.operations()) {
      OperationSpec copy = op;
      copy.pid = mapping_.op_map.at(o);
      copy.required_inputs.clear();
      if (target_ == Model::attribute) {
        std::string key = marker_key(copy.pid);
        if (!out_.definition_by_key(key)) {
          synthesize(AttributeDefinition{fresh(options_.synth_prefix), key, ValueRestriction::any()});
        }
        copy.required_inputs.push_back(RequiredInput{key, std::nullopt});
      }
      out_.add_operation(std::move(copy));
    }
  }

  void copy_profiles() {
    for (const auto& [p, profile] : src_.profiles()) {
      Profile copy = profile;
      copy.operation_list.clear();
      std::erase_if(copy.mandatory_keys, [&](const std::string& k) { return !out_.definition_by_key(k); });
      std::erase_if(copy.optional_keys, [&](const std::string& k) { return !out_.definition_by_key(k); });
      out_.add_profile(std::move(copy));
    }
  }

  void synthesize_profiles(const AssociationEngine& engine) {
    std::map<std::set<Pid>, std::vector<Pid>> groups;
    for (const auto& [f, r] : src_.fdos()) groups[engine.ops_for_fdo(f)].push_back(f);

    for (const auto& [ops, members] : groups) {
      Profile p{fresh(options_.synth_prefix), {}, {}, {}};
      std::optional<std::set<std::string>> common;
      std::set<std::string> seen;
      for (const auto& f : members) {
        std::set<std::string> mandatory;
        if (auto ref = src_.fdos().at(f).profile_ref()) {
          if (const Profile* old = src_.find_profile(*ref)) {
            mandatory = old->mandatory_keys;
            seen.insert(old->optional_keys.begin(), old->optional_keys.end());
          }
        }
        seen.insert(mandatory.begin(), mandatory.end());
        if (!common) {
          common = std::move(mandatory);
        } else {
          std::erase_if(*common, [&](const std::string& k) { return !mandatory.contains(k); });
        }
      }
      p.mandatory_keys = common.value_or(std::set<std::string>{});
      p.mandatory_keys.insert(std::string(keys::profile_ref));
      for (const auto& k : seen) {
        if (!p.mandatory_keys.contains(k)) p.optional_keys.insert(k);
      }
      std::erase_if(p.mandatory_keys, [&](const std::string& k) { return !out_.definition_by_key(k); });
      std::erase_if(p.optional_keys, [&](const std::string& k) { return !out_.definition_by_key(k); });
      for (const auto& o : ops) p.operation_list.push_back(mapping_.op_map.at(o));
      for (const auto& f : members) profile_of_.emplace(f, p.pid);
      synthesize(std::move(p));
    }
  }

  void copy_fdos(const AssociationEngine& engine) {
    for (const auto& [f, record] : src_.fdos()) {
      InformationRecord copy{mapping_.fdo_map.at(f), record.kind, {}, record.payload_ref};
      for (const auto& a : record.attributes) {
        if (is_marker(a.key) || foreign_mechanism_key(a.key, target_)) continue;
        if (a.key == keys::operation_ref) continue;  // rebuilt below when the target uses them
        if (a.key == keys::profile_ref && target_ == Model::profile) {
          copy.add(a.key, profile_of_.at(f).str());
          continue;
        }
        copy.add(a.key, a.value);
      }
      for (const auto& o : engine.ops_for_fdo(f)) {
        const Pid& mapped = mapping_.op_map.at(o);
        if (target_ == Model::record) copy.add(keys::operation_ref, mapped.str());
        if (target_ == Model::attribute) copy.add(marker_key(mapped), "true");
      }
      out_.add_fdo(std::move(copy));
    }
  }

  const Ecosystem& src_;
  Model target_;
  const ConvertOptions& options_;
  Ecosystem out_;
  ModelMapping mapping_;
  PidMinter minter_;
  std::map<Pid, Pid> profile_of_;
};

}  // namespace

ModelMapping ModelMapping::identity(const Ecosystem& ecosystem) {
  ModelMapping m;
  m.source = m.target = ecosystem.model();
  for (const auto& [f, r] : ecosystem.fdos()) m.fdo_map.emplace(f, f);
  for (const auto& [o, s] : ecosystem.operations()) m.op_map.emplace(o, o);
  return m;
}

std::string marker_key(const Pid& op) {
  // Pids may contain '=', which keys may not.
  std::string key(kMarkerPrefix);
  for (char c : op.str()) {
    if (c == '%') {
      key += "%25";
    } else if (c == '=') {
      key += "%3D";
    } else {
      key += c;
    }
  }
  return key;
}

Conversion convert(const Ecosystem& ecosystem, Model target, const ConvertOptions& options) {
  if (ecosystem.model() == target) return Conversion{ecosystem, ModelMapping::identity(ecosystem)};
  return Builder(ecosystem, target, options).run();
}

ConsistencyReport check_consistency(std::span<const Ecosystem> ecosystems, std::span<const ModelMapping> mappings) {
  ConsistencyReport report;
  if (ecosystems.empty()) return report;
  if (mappings.size() + 1 != ecosystems.size()) {
    throw Error(ErrorCode::model_mismatch, std::to_string(ecosystems.size()) + " ecosystems need " +
                                               std::to_string(ecosystems.size() - 1) + " mappings, got " +
                                               std::to_string(mappings.size()));
  }
  std::vector<AssociationEngine> engines;
  for (const auto& e : ecosystems) engines.emplace_back(e);

  for (const auto& [f, record] : ecosystems[0].fdos()) {
    const auto ops0 = engines[0].ops_for_fdo(f);
    for (std::size_t k = 1; k < ecosystems.size(); ++k) {
      const ModelMapping& m = mappings[k - 1];
      Disagreement d{f, k, {}, {}};
      for (const auto& o : ops0) {
        auto it = m.op_map.find(o);
        d.expected.insert(it == m.op_map.end() ? o : it->second);
      }
      auto fit = m.fdo_map.find(f);
      if (fit != m.fdo_map.end() && ecosystems[k].find_fdo(fit->second)) {
        d.actual = engines[k].ops_for_fdo(fit->second);
      }
      if (fit == m.fdo_map.end() || !ecosystems[k].find_fdo(fit->second) || d.actual != d.expected) {
        report.disagreements.push_back(std::move(d));
      }
    }
  }
  return report;
}

std::string to_table(const ModelMapping& mapping) {
  std::string out = "[fdo]\n";
  for (const auto& [a, b] : mapping.fdo_map) out += a.str() + "\t" + b.str() + "\n";
  out += "[operation]\n";
  for (const auto& [a, b] : mapping.op_map) out += a.str() + "\t" + b.str() + "\n";
  return out;
}

}  // namespace fdo
