#include "fdo/ndrec.hpp"

#include <utility>
#include <vector>

namespace fdo::ndrec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class FieldWriter {
 public:
  void put(std::string_view name, std::string_view value) {
    if (!out_.empty()) out_ += ';';
    out_ += name;
    out_ += '=';
    out_ += escape(value);
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

// Splits on separators not preceded by an escaping backslash.
std::vector<std::string_view> split_unescaped(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\') {
      ++i;
    } else if (text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

std::vector<std::pair<std::string, std::string>> parse_fields(std::string_view body) {
  std::vector<std::pair<std::string, std::string>> fields;
  if (body.empty()) return fields;
  for (auto part : split_unescaped(body, ';')) {
    auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::parse_error, "field without '=': '" + std::string(part) + "'");
    }
    fields.emplace_back(std::string(part.substr(0, eq)), unescape(part.substr(eq + 1)));
  }
  return fields;
}

[[noreturn]] void unknown_field(std::string_view kind, const std::string& name) {
  throw Error(ErrorCode::parse_error, "unknown field '" + name + "' for " + std::string(kind));
}

std::string encode_record(const InformationRecord& r) {
  FieldWriter w;
  for (const auto& a : r.attributes) w.put("attr", a.key + "=" + a.value);
  if (r.payload_ref) w.put("payload", *r.payload_ref);
  return w.take();
}

std::string encode_profile(const Profile& p) {
  FieldWriter w;
  for (const auto& k : p.mandatory_keys) w.put("mandatory", k);
  for (const auto& k : p.optional_keys) w.put("optional", k);
  for (const auto& op : p.operation_list) w.put("op", op.str());
  return w.take();
}

std::string encode_operation(const OperationSpec& o) {
  FieldWriter w;
  for (const auto& in : o.required_inputs) w.put("input", in.encode());
  if (!o.executor_ref.empty()) w.put("executor", o.executor_ref);
  return w.take();
}

std::string encode_definition(const AttributeDefinition& d) {
  FieldWriter w;
  w.put("key", d.key);
  switch (d.restriction.kind) {
    case ValueRestriction::Kind::any:
      w.put("restriction", "any");
      break;
    case ValueRestriction::Kind::enumeration:
      w.put("restriction", "enum");
      for (const auto& v : d.restriction.allowed) w.put("allowed", v);
      break;
    case ValueRestriction::Kind::reference:
      w.put("restriction", "ref");
      w.put("target", to_string(d.restriction.target));
      break;
  }
  return w.take();
}

}  // namespace

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case ';': out += "\\;"; break;
      case '=': out += "\\="; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] != '\\') {
      out += escaped[i];
      continue;
    }
    if (++i == escaped.size()) throw Error(ErrorCode::parse_error, "dangling escape");
    switch (escaped[i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case ';': out += ';'; break;
      case '=': out += '='; break;
      case '\\': out += '\\'; break;
      default:
        throw Error(ErrorCode::parse_error, std::string("unknown escape \\") + escaped[i]);
    }
  }
  return out;
}

std::string encode(const Component& component) {
  std::string body = std::visit(overloaded{
                                    [](const InformationRecord& r) { return encode_record(r); },
                                    [](const Profile& p) { return encode_profile(p); },
                                    [](const OperationSpec& o) { return encode_operation(o); },
                                    [](const AttributeDefinition& d) { return encode_definition(d); },
                                },
                                component);
  std::string line = pid_of(component).str();
  line += '\t';
  line += to_string(kind_of(component));
  line += '\t';
  line += body;
  return line;
}

Component decode(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  auto t1 = line.find('\t');
  auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
  if (t2 == std::string_view::npos) {
    throw Error(ErrorCode::parse_error, "expected pid<TAB>kind<TAB>fields: '" + std::string(line) + "'");
  }
  Pid pid = Pid::parse(line.substr(0, t1));
  std::string_view kind_text = line.substr(t1 + 1, t2 - t1 - 1);
  ComponentKind kind = parse_component_kind(kind_text);
  auto fields = parse_fields(line.substr(t2 + 1));

  switch (kind) {
    case ComponentKind::data_fdo: {
      InformationRecord r{pid, kind, {}, std::nullopt};
      for (auto& [name, value] : fields) {
        if (name == "attr") {
          auto eq = value.find('=');
          if (eq == std::string::npos) throw Error(ErrorCode::parse_error, "attribute without '='");
          r.add(std::string_view(value).substr(0, eq), std::string_view(value).substr(eq + 1));
        } else if (name == "payload") {
          r.payload_ref = std::move(value);
        } else {
          unknown_field(kind_text, name);
        }
      }
      return r;
    }
    case ComponentKind::operation_fdo: {
      OperationSpec o{pid, {}, {}};
      for (auto& [name, value] : fields) {
        if (name == "input") {
          o.required_inputs.push_back(RequiredInput::decode(value));
        } else if (name == "executor") {
          o.executor_ref = std::move(value);
        } else {
          unknown_field(kind_text, name);
        }
      }
      return o;
    }
    case ComponentKind::profile: {
      Profile p{pid, {}, {}, {}};
      for (auto& [name, value] : fields) {
        if (name == "mandatory") {
          p.mandatory_keys.insert(std::move(value));
        } else if (name == "optional") {
          p.optional_keys.insert(std::move(value));
        } else if (name == "op") {
          p.operation_list.push_back(Pid::parse(value));
        } else {
          unknown_field(kind_text, name);
        }
      }
      return p;
    }
    case ComponentKind::attribute_definition: {
      AttributeDefinition d{pid, {}, {}};
      std::string restriction = "any";
      for (auto& [name, value] : fields) {
        if (name == "key") {
          d.key = std::move(value);
        } else if (name == "restriction") {
          restriction = std::move(value);
        } else if (name == "allowed") {
          d.restriction.allowed.insert(std::move(value));
        } else if (name == "target") {
          d.restriction.target = parse_component_kind(value);
        } else {
          unknown_field(kind_text, name);
        }
      }
      if (restriction == "any") {
        d.restriction.kind = ValueRestriction::Kind::any;
      } else if (restriction == "enum") {
        d.restriction.kind = ValueRestriction::Kind::enumeration;
      } else if (restriction == "ref") {
        d.restriction.kind = ValueRestriction::Kind::reference;
      } else {
        throw Error(ErrorCode::parse_error, "unknown restriction '" + restriction + "'");
      }
      if (d.key.empty()) throw Error(ErrorCode::parse_error, pid.str() + ": definition without key");
      return d;
    }
  }
  throw Error(ErrorCode::parse_error, "unreachable component kind");
}

}  // namespace fdo::ndrec
