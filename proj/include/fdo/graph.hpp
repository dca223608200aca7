#pragma once

// Directed association graphs. Edges run from the FDO side to the operation
// side, so every association is a left-to-right path:
//
//   record     f -> a -> o                 (2 edges)
//   profile    f -> a -> p -> a' -> o      (4 edges)
//   attribute  f -> a -> a' -> o           (3 edges, one per required input)
//
// Attribute vertices are identified by (owner, key, value), so equal pairs in
// different records stay distinct.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fdo/core.hpp"
#include "fdo/engine.hpp"

namespace fdo {

enum class VertexKind { fdo, attribute, profile, operation };

std::string_view to_string(VertexKind kind);

struct Vertex {
  VertexKind kind;
  std::string id;

  static Vertex of(VertexKind kind, const Pid& pid) { return {kind, pid.str()}; }
  static Vertex of(const Attribute& a) { return {VertexKind::attribute, a.owner.str() + "#" + a.key + "=" + a.value}; }

  // `<kind>:<id>`
  std::string label() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class EdgeLabel { has_attribute, references };

std::string_view to_string(EdgeLabel label);

struct Edge {
  Vertex from;
  Vertex to;
  EdgeLabel label;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class AssociationGraph {
 public:
  explicit AssociationGraph(Model model) : model_(model) {}

  Model model() const noexcept { return model_; }

  void add_vertex(const Vertex& v);
  // Adds both endpoints. Throws Error(validation_failed) if the reverse edge
  // is present.
  void add_edge(const Vertex& from, const Vertex& to, EdgeLabel label);

  bool contains(const Vertex& v) const { return vertices_.contains(v); }
  const std::set<Vertex>& vertices() const noexcept { return vertices_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::size_t count(VertexKind kind) const;

  const std::set<Vertex>& successors(const Vertex& v) const;
  const std::set<Vertex>& predecessors(const Vertex& v) const;

  friend bool operator==(const AssociationGraph&, const AssociationGraph&) = default;

 private:
  Model model_;
  std::set<Vertex> vertices_;
  std::set<Edge> edges_;
  std::map<Vertex, std::set<Vertex>> out_;
  std::map<Vertex, std::set<Vertex>> in_;
};

// Throws Error(dangling_reference) for references to components outside the
// ecosystem and Error(model_unset).
AssociationGraph build_graph(const Ecosystem& ecosystem);

// Record and profile: every left-to-right path from an FDO to an operation.
// Attribute: o is associated with f when every required-input vertex of o
// closes with an attribute of f (vacuously true for no required inputs).
Relation associations_from_graph(const AssociationGraph& graph);

// Number of edges on a path of the given length from `from` to `to`.
bool has_path_of_length(const AssociationGraph& graph, const Vertex& from, const Vertex& to,
                        std::size_t length);

// Edge count of an association path in the model.
std::size_t association_path_length(Model model);

enum class GraphFormat { dot, edge_list };

// Deterministic text export, vertices and edges sorted by kind then id, LF
// line endings.
std::string export_graph(const AssociationGraph& graph, GraphFormat format);

// Pairs on which the graph relation and an engine relation disagree.
struct Divergence {
  Relation only_in_graph;
  Relation only_in_engine;
  bool empty() const { return only_in_graph.empty() && only_in_engine.empty(); }
};

Divergence compare_with_engine(const AssociationGraph& graph, const AssociationEngine& engine);

}  // namespace fdo
