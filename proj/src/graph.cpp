#include "ffdist/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

#include "ffdist/error.hpp"

namespace ffdist {

ConfigGraph::ConfigGraph(unsigned vertices, std::vector<Edge> edges, std::string name)
    : vertices_(vertices), edges_(std::move(edges)), name_(std::move(name)) {
  if (vertices_ < 2) throw Error(ErrorKind::InvalidArgument, "graph needs at least two vertices");
  for (auto& [i, j] : edges_) {
    if (i == j) throw Error(ErrorKind::InvalidArgument, "self-loop");
    if (i >= vertices_ || j >= vertices_) throw Error(ErrorKind::InvalidArgument, "edge vertex out of range");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error(ErrorKind::InvalidArgument, "duplicate edge");

  std::vector<unsigned> parent(vertices_);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](unsigned v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [i, j] : edges_) parent[find(i)] = find(j);
  for (unsigned v = 1; v < vertices_; ++v)
    if (find(v) != find(0)) throw Error(ErrorKind::InvalidArgument, "graph is not connected");
}

ConfigGraph ConfigGraph::edge() { return {2, {{0, 1}}, "edge"}; }

ConfigGraph ConfigGraph::path2() { return {3, {{0, 1}, {1, 2}}, "path2"}; }

ConfigGraph ConfigGraph::triangle() { return {3, {{0, 1}, {0, 2}, {1, 2}}, "triangle"}; }

ConfigGraph ConfigGraph::bowtie() {
  // x-y, y-z, z-x, x-u, u-v, v-x
  return {5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}}, "bowtie"};
}

ConfigGraph ConfigGraph::kite() {
  // X-Y, Y-V, U-V, U-X, X-Z, U-Y
  return {5, {{0, 1}, {1, 4}, {3, 4}, {0, 3}, {0, 2}, {1, 3}}, "kite"};
}

std::vector<std::string> ConfigGraph::builtin_names() { return {"edge", "path2", "triangle", "bowtie", "kite"}; }

ConfigGraph ConfigGraph::builtin(const std::string& name) {
  if (name == "edge") return edge();
  if (name == "path2") return path2();
  if (name == "triangle") return triangle();
  if (name == "bowtie") return bowtie();
  if (name == "kite") return kite();
  throw Error(ErrorKind::InvalidArgument, "unknown graph '" + name + "'");
}

ConfigGraph read_graph(std::istream& in, std::string name) {
  std::string line;
  std::size_t line_no = 0;
  unsigned vertices = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    std::string extra;
    if (!have_header) {
      if (first != "vertices" || !(fields >> vertices) || (fields >> extra))
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 'vertices N'");
      have_header = true;
      continue;
    }
    std::istringstream pair(line);
    unsigned i = 0, j = 0;
    if (!(pair >> i >> j) || (pair >> extra))
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 'i j'");
    if (i >= j) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": edges need i < j");
    edges.emplace_back(i, j);
  }
  if (!have_header) throw Error(ErrorKind::Parse, "missing 'vertices N' header");
  try {
    return ConfigGraph(vertices, std::move(edges), std::move(name));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace ffdist
