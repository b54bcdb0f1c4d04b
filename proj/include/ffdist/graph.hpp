#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ffdist {

using Edge = std::pair<unsigned, unsigned>;

// A connected simple graph on k+1 vertices. Edges are stored as (i, j) with
// i < j in ascending dictionary order, which is also the order of the
// entries of a distance vector t.
class ConfigGraph {
 public:
  // Normalizes and sorts edges; throws InvalidArgument for self-loops,
  // duplicates, out-of-range vertices or a disconnected graph.
  ConfigGraph(unsigned vertices, std::vector<Edge> edges, std::string name = {});

  // Vertices x, y (0, 1).
  static ConfigGraph edge();
  // Path x0 - x1 - x2: edges (0,1), (1,2).
  static ConfigGraph path2();
  // x, y, z: t = (||x-y||, ||x-z||, ||y-z||).
  static ConfigGraph triangle();
  // Two triangles joined at x; vertices x, y, z, u, v = 0..4.
  static ConfigGraph bowtie();
  // Two triangles XYU and YUV sharing YU plus the pendant edge XZ;
  // vertices X, Y, Z, U, V = 0..4.
  static ConfigGraph kite();

  // Built-in by name: edge, path2, triangle, bowtie, kite.
  static ConfigGraph builtin(const std::string& name);
  static std::vector<std::string> builtin_names();

  unsigned vertex_count() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const ConfigGraph& a, const ConfigGraph& b) noexcept {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  unsigned vertices_;
  std::vector<Edge> edges_;
  std::string name_;
};

// "vertices N" followed by one "i j" edge per line; '#' comments allowed.
ConfigGraph read_graph(std::istream& in, std::string name = "custom");

}  // namespace ffdist
