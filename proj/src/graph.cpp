#include "fdo/graph.hpp"

#include <algorithm>

namespace fdo {

namespace {

const std::set<Vertex> kNoVertices;

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  if (value.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto bar = value.find(kListSeparator, start);
    out.push_back(value.substr(start, bar - start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

Pid resolve_reference(const Ecosystem& eco, std::string_view value, ComponentKind expected,
                      const Pid& owner) {
  if (Pid::is_valid(value)) {
    Pid pid = Pid::parse(value);
    if (eco.kind_of(pid) == expected) return pid;
  }
  throw Error(ErrorCode::dangling_reference,
              owner.str() + " references '" + std::string(value) + "'",
              std::vector<std::string>{std::string(value)});
}

void build_record(const Ecosystem& eco, AssociationGraph& g) {
  for (const auto& [f, record] : eco.fdos()) {
    Vertex fv = Vertex::of(VertexKind::fdo, f);
    g.add_vertex(fv);
    for (const auto& a : record.attributes) {
      if (a.key != keys::operation_ref) continue;
      Pid o = resolve_reference(eco, a.value, ComponentKind::operation_fdo, f);
      Vertex av = Vertex::of(a);
      g.add_edge(fv, av, EdgeLabel::has_attribute);
      g.add_edge(av, Vertex::of(VertexKind::operation, o), EdgeLabel::references);
    }
  }
}

void build_profile(const Ecosystem& eco, AssociationGraph& g) {
  for (const auto& [p, profile] : eco.profiles()) {
    Vertex pv = Vertex::of(VertexKind::profile, p);
    g.add_vertex(pv);
    for (const auto& a : profile.association_attributes()) {
      Vertex av = Vertex::of(a);
      g.add_edge(pv, av, EdgeLabel::has_attribute);
      for (auto item : split_list(a.value)) {
        Pid o = resolve_reference(eco, item, ComponentKind::operation_fdo, p);
        g.add_edge(av, Vertex::of(VertexKind::operation, o), EdgeLabel::references);
      }
    }
  }
  for (const auto& [f, record] : eco.fdos()) {
    Vertex fv = Vertex::of(VertexKind::fdo, f);
    g.add_vertex(fv);
    for (const auto& a : record.attributes) {
      if (a.key != keys::profile_ref) continue;
      Pid p = resolve_reference(eco, a.value, ComponentKind::profile, f);
      Vertex av = Vertex::of(a);
      g.add_edge(fv, av, EdgeLabel::has_attribute);
      g.add_edge(av, Vertex::of(VertexKind::profile, p), EdgeLabel::references);
    }
  }
}

void build_attribute(const Ecosystem& eco, AssociationGraph& g) {
  // FDO-side attribute vertices by key, for linking required inputs.
  std::map<std::string_view, std::set<Vertex>> by_key;
  for (const auto& [f, record] : eco.fdos()) {
    Vertex fv = Vertex::of(VertexKind::fdo, f);
    g.add_vertex(fv);
    for (const auto& a : record.attributes) {
      Vertex av = Vertex::of(a);
      g.add_edge(fv, av, EdgeLabel::has_attribute);
      by_key[a.key].insert(av);
    }
  }
  for (const auto& [o, op] : eco.operations()) {
    Vertex ov = Vertex::of(VertexKind::operation, o);
    for (const auto& in : op.required_inputs) {
      if (!eco.definition_by_key(in.key)) {
        throw Error(ErrorCode::dangling_reference, o.str() + " requires unregistered key '" + in.key + "'",
                    std::vector<std::string>{in.key});
      }
    }
    for (const auto& h : op.association_attributes()) {
      Vertex hv = Vertex::of(h);
      g.add_edge(hv, ov, EdgeLabel::has_attribute);
      // Key presence only: value constraints are outside the graph model.
      auto key = RequiredInput::decode(h.value).key;
      if (auto it = by_key.find(key); it != by_key.end()) {
        for (const auto& av : it->second) g.add_edge(av, hv, EdgeLabel::references);
      }
    }
  }
}

}  // namespace

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::fdo: return "fdo";
    case VertexKind::attribute: return "attribute";
    case VertexKind::profile: return "profile";
    case VertexKind::operation: return "operation";
  }
  return "unknown";
}

std::string_view to_string(EdgeLabel label) {
  return label == EdgeLabel::has_attribute ? "has-attribute" : "references";
}

std::string Vertex::label() const { return std::string(to_string(kind)) + ":" + id; }

void AssociationGraph::add_vertex(const Vertex& v) { vertices_.insert(v); }

void AssociationGraph::add_edge(const Vertex& from, const Vertex& to, EdgeLabel label) {
  if (auto it = out_.find(to); it != out_.end() && it->second.contains(from)) {
    throw Error(ErrorCode::validation_failed,
                "anti-parallel edge " + from.label() + " -> " + to.label());
  }
  vertices_.insert(from);
  vertices_.insert(to);
  edges_.insert(Edge{from, to, label});
  out_[from].insert(to);
  in_[to].insert(from);
}

std::size_t AssociationGraph::count(VertexKind kind) const {
  return std::count_if(vertices_.begin(), vertices_.end(),
                       [kind](const Vertex& v) { return v.kind == kind; });
}

const std::set<Vertex>& AssociationGraph::successors(const Vertex& v) const {
  auto it = out_.find(v);
  return it == out_.end() ? kNoVertices : it->second;
}

const std::set<Vertex>& AssociationGraph::predecessors(const Vertex& v) const {
  auto it = in_.find(v);
  return it == in_.end() ? kNoVertices : it->second;
}

AssociationGraph build_graph(const Ecosystem& ecosystem) {
  AssociationGraph g(ecosystem.model());
  for (const auto& [o, op] : ecosystem.operations()) g.add_vertex(Vertex::of(VertexKind::operation, o));
  switch (g.model()) {
    case Model::record: build_record(ecosystem, g); break;
    case Model::profile: build_profile(ecosystem, g); break;
    case Model::attribute: build_attribute(ecosystem, g); break;
  }
  return g;
}

std::size_t association_path_length(Model model) {
  switch (model) {
    case Model::record: return 2;
    case Model::profile: return 4;
    case Model::attribute: return 3;
  }
  return 0;
}

bool has_path_of_length(const AssociationGraph& graph, const Vertex& from, const Vertex& to,
                        std::size_t length) {
  std::set<Vertex> frontier{from};
  for (std::size_t i = 0; i < length && !frontier.empty(); ++i) {
    std::set<Vertex> next;
    for (const auto& v : frontier) {
      const auto& succ = graph.successors(v);
      next.insert(succ.begin(), succ.end());
    }
    frontier = std::move(next);
  }
  return frontier.contains(to);
}

Relation associations_from_graph(const AssociationGraph& graph) {
  Relation rel;
  auto pid = [](const Vertex& v) { return Pid::parse(v.id); };
  std::vector<Vertex> fdos, ops;
  for (const auto& v : graph.vertices()) {
    if (v.kind == VertexKind::fdo) fdos.push_back(v);
    if (v.kind == VertexKind::operation) ops.push_back(v);
  }

  if (graph.model() != Model::attribute) {
    const std::size_t length = association_path_length(graph.model());
    for (const auto& f : fdos) {
      std::set<Vertex> frontier{f};
      for (std::size_t i = 0; i < length; ++i) {
        std::set<Vertex> next;
        for (const auto& v : frontier) {
          const auto& succ = graph.successors(v);
          next.insert(succ.begin(), succ.end());
        }
        frontier = std::move(next);
      }
      for (const auto& v : frontier) {
        if (v.kind == VertexKind::operation) rel.emplace(pid(f), pid(v));
      }
    }
    return rel;
  }

  // Closed lines: for each required-input vertex h of o, the FDOs whose
  // attributes point at h. o is associated with the FDOs common to all h.
  for (const auto& o : ops) {
    std::vector<std::set<Vertex>> closing;
    for (const auto& h : graph.predecessors(o)) {
      if (h.kind != VertexKind::attribute) continue;
      std::set<Vertex> owners;
      for (const auto& a : graph.predecessors(h)) {
        for (const auto& f : graph.predecessors(a)) {
          if (f.kind == VertexKind::fdo) owners.insert(f);
        }
      }
      closing.push_back(std::move(owners));
    }
    for (const auto& f : fdos) {
      bool closed = std::all_of(closing.begin(), closing.end(),
                                [&](const std::set<Vertex>& owners) { return owners.contains(f); });
      if (closed) rel.emplace(pid(f), pid(o));
    }
  }
  return rel;
}

std::string export_graph(const AssociationGraph& graph, GraphFormat format) {
  std::string out;
  if (format == GraphFormat::edge_list) {
    for (const auto& e : graph.edges()) {
      out += e.from.label();
      out += '\t';
      out += e.to.label();
      out += '\t';
      out += to_string(e.label);
      out += '\n';
    }
    return out;
  }
  out += "digraph g {\n";
  for (const auto& v : graph.vertices()) {
    out += "  " + dot_quote(v.label()) + ";\n";
  }
  for (const auto& e : graph.edges()) {
    out += "  " + dot_quote(e.from.label()) + " -> " + dot_quote(e.to.label()) + " [label=\"" +
           std::string(to_string(e.label)) + "\"];\n";
  }
  out += "}\n";
  return out;
}

Divergence compare_with_engine(const AssociationGraph& graph, const AssociationEngine& engine) {
  Relation from_graph = associations_from_graph(graph);
  Relation from_engine = engine.relation();
  Divergence d;
  std::set_difference(from_graph.begin(), from_graph.end(), from_engine.begin(), from_engine.end(),
                      std::inserter(d.only_in_graph, d.only_in_graph.end()));
  std::set_difference(from_engine.begin(), from_engine.end(), from_graph.begin(), from_graph.end(),
                      std::inserter(d.only_in_engine, d.only_in_engine.end()));
  return d;
}

}  // namespace fdo
