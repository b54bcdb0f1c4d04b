#include "ffdist/counting.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>

#include "ffdist/error.hpp"
#include "ffdist/parallel.hpp"

namespace ffdist {

namespace {

// For each vertex v, the edges (u, v) with u < v and the weight q^(E-1-e) of
// that edge's digit in the encoded distance vector.
struct BackEdge {
  unsigned from;
  std::size_t edge;
  std::uint64_t weight;
};

std::vector<std::vector<BackEdge>> back_edges(const ConfigGraph& graph, std::uint32_t q) {
  std::vector<std::vector<BackEdge>> out(graph.vertex_count());
  const std::size_t count = graph.edge_count();
  std::uint64_t weight = 1;
  for (std::size_t e = count; e-- > 0;) {
    const auto [i, j] = graph.edges()[e];
    out[j].push_back({i, e, weight});
    weight *= q;
  }
  return out;
}

void require_tuple_budget(const PointSet& set, const ConfigGraph& graph) {
  long double tuples = 1;
  for (unsigned v = 0; v < graph.vertex_count(); ++v) tuples *= static_cast<long double>(set.size());
  if (tuples > static_cast<long double>(kTupleBudget))
    throw Error(ErrorKind::FallbackTooLarge, "exhaustive enumeration over |E|^(k+1) tuples exceeds the budget");
}

void require_table(std::uint64_t entries) {
  if (entries > kDenseTableCap) throw Error(ErrorKind::SizeOverflow, "dense distance table exceeds the cap");
}

std::uint64_t checked_space(std::uint32_t q, std::size_t edges, std::uint64_t cap) {
  long double size = 1;
  for (std::size_t e = 0; e < edges; ++e) size *= q;
  if (size > static_cast<long double>(cap))
    throw Error(ErrorKind::SizeOverflow, "distance space q^|edges| exceeds the configured cap");
  return distance_space_size(q, edges);
}

// Visits the encoded distance vector of every tuple in E^(k+1).
template <class Visit>
void for_each_tuple(const PointSet& set, const ConfigGraph& graph, Visit&& visit) {
  const Plane& plane = set.plane();
  const auto back = back_edges(graph, plane.q());
  const auto& members = set.members();
  std::vector<PointIndex> chosen(graph.vertex_count());
  auto recurse = [&](auto&& self, unsigned v, std::uint64_t index) -> void {
    if (v == graph.vertex_count()) {
      visit(index);
      return;
    }
    for (PointIndex x : members) {
      std::uint64_t next = index;
      for (const auto& b : back[v]) next += b.weight * plane.dist(chosen[b.from], x);
      chosen[v] = x;
      self(self, v + 1, next);
    }
  };
  if (!members.empty()) recurse(recurse, 0, 0);
}

DeltaSet empty_delta(std::uint32_t q, std::size_t edges, std::uint64_t space) {
  DeltaSet d;
  d.q = q;
  d.edge_count = edges;
  d.bits.assign((space + 63) / 64, 0);
  return d;
}

void finalize(DeltaSet& d) {
  d.size = 0;
  for (auto w : d.bits) d.size += static_cast<std::uint64_t>(std::popcount(w));
}

void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t index) {
  bits[index >> 6] |= std::uint64_t{1} << (index & 63);
}

// Distances from each member to every member, as (distance, count) lists.
std::vector<std::vector<std::pair<Code, std::uint32_t>>> distance_profiles(const PointSet& set) {
  const Plane& plane = set.plane();
  std::vector<std::vector<std::pair<Code, std::uint32_t>>> out(set.size());
  std::vector<std::uint32_t> counts(plane.q());
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (PointIndex y : set.members()) ++counts[plane.dist(set.members()[i], y)];
    for (Code a = 0; a < plane.q(); ++a)
      if (counts[a] != 0) out[i].emplace_back(a, counts[a]);
  }
  return out;
}

// Apex triangle counts N_x(a, b, c) = #{(y, z) in E^2 : ||x-y|| = a,
// ||x-z|| = b, ||y-z|| = c}, keyed by (a q + b) q + c, for each member x.
struct ApexTables {
  std::vector<std::vector<std::uint32_t>> dense;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sparse;
};

ApexTables apex_triangles(const PointSet& set) {
  const Plane& plane = set.plane();
  const std::uint32_t q = plane.q();
  const std::size_t cube = std::size_t{q} * q * q;
  ApexTables out;
  out.dense.assign(set.size(), {});
  out.sparse.assign(set.size(), {});
  const auto& members = set.members();
  parallel_for(set.size(), [&](std::size_t i) {
    std::vector<std::uint32_t> table(cube, 0);
    const PointIndex x = members[i];
    for (PointIndex y : members) {
      const std::uint32_t a = plane.dist(x, y);
      for (PointIndex z : members) ++table[(a * q + plane.dist(x, z)) * q + plane.dist(y, z)];
    }
    for (std::uint32_t key = 0; key < cube; ++key)
      if (table[key] != 0) out.sparse[i].emplace_back(key, table[key]);
    out.dense[i] = std::move(table);
  });
  return out;
}

bool same_graph(const ConfigGraph& g, const ConfigGraph& builtin) { return g == builtin; }

// Bow-tie t = (t01, t02, t03, t04, t12, t34): first triangle (t01, t02, t12),
// second triangle (t03, t04, t34).
std::uint64_t bowtie_index(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  const std::uint64_t q1 = q, q2 = q1 * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
  const std::uint64_t a0 = a / q2, a1 = (a / q1) % q, a2 = a % q;
  const std::uint64_t b0 = b / q2, b1 = (b / q1) % q, b2 = b % q;
  return a0 * q5 + a1 * q4 + b0 * q3 + b1 * q2 + a2 * q1 + b2;
}

}  // namespace

std::uint64_t distance_space_size(std::uint32_t q, std::size_t edges) {
  std::uint64_t size = 1;
  for (std::size_t e = 0; e < edges; ++e) size *= q;
  return size;
}

std::uint64_t encode_distances(std::span<const Code> t, std::uint32_t q) {
  std::uint64_t index = 0;
  for (Code c : t) {
    if (c >= q) throw Error(ErrorKind::InvalidArgument, "distance entry out of range");
    index = index * q + c;
  }
  return index;
}

DistanceVector decode_distances(std::uint64_t index, std::uint32_t q, std::size_t edges) {
  DistanceVector t(edges);
  for (std::size_t e = edges; e-- > 0;) {
    t[e] = static_cast<Code>(index % q);
    index /= q;
  }
  return t;
}

bool DeltaSet::is_subset_of(const DeltaSet& other) const {
  if (q != other.q || edge_count != other.edge_count) return false;
  for (std::size_t w = 0; w < bits.size(); ++w)
    if ((bits[w] & ~other.bits[w]) != 0) return false;
  return true;
}

std::uint64_t nu(const PointSet& set, const ConfigGraph& graph, std::span<const Code> t) {
  if (t.size() != graph.edge_count())
    throw Error(ErrorKind::ArityMismatch, "distance vector has " + std::to_string(t.size()) + " entries, graph has " +
                                              std::to_string(graph.edge_count()) + " edges");
  const Plane& plane = set.plane();
  for (Code c : t)
    if (c >= plane.q()) throw Error(ErrorKind::InvalidArgument, "distance entry out of range");
  const auto back = back_edges(graph, plane.q());
  const auto& members = set.members();
  std::vector<PointIndex> chosen(graph.vertex_count());
  std::uint64_t count = 0;
  auto recurse = [&](auto&& self, unsigned v) -> void {
    if (v == graph.vertex_count()) {
      ++count;
      return;
    }
    for (PointIndex x : members) {
      bool ok = true;
      for (const auto& b : back[v]) {
        if (plane.dist(chosen[b.from], x) != t[b.edge]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen[v] = x;
      self(self, v + 1);
    }
  };
  recurse(recurse, 0);
  return count;
}

NuTable nu_table_bruteforce(const PointSet& set, const ConfigGraph& graph) {
  const std::uint64_t space = distance_space_size(set.plane().q(), graph.edge_count());
  require_table(space);
  require_tuple_budget(set, graph);
  NuTable table(space, 0);
  for_each_tuple(set, graph, [&](std::uint64_t index) { ++table[index]; });
  return table;
}

NuTable nu_table(const PointSet& set, const ConfigGraph& graph) {
  const Plane& plane = set.plane();
  const std::uint32_t q = plane.q();
  const std::uint64_t space = distance_space_size(q, graph.edge_count());
  require_table(space);
  const auto& members = set.members();

  if (same_graph(graph, ConfigGraph::edge())) {
    NuTable table(space, 0);
    for (PointIndex x : members)
      for (PointIndex y : members) ++table[plane.dist(x, y)];
    return table;
  }
  if (same_graph(graph, ConfigGraph::path2())) {
    // nu(a, b) = sum over the middle vertex of D(a) D(b).
    NuTable table(space, 0);
    for (const auto& profile : distance_profiles(set))
      for (const auto& [a, ca] : profile)
        for (const auto& [b, cb] : profile) table[std::uint64_t{a} * q + b] += std::uint64_t{ca} * cb;
    return table;
  }
  if (same_graph(graph, ConfigGraph::bowtie())) {
    // nu_B(t) = sum_x N_x(t01, t02, t12) N_x(t03, t04, t34).
    NuTable table(space, 0);
    const ApexTables apex = apex_triangles(set);
    for (const auto& list : apex.sparse)
      for (const auto& [a, ca] : list)
        for (const auto& [b, cb] : list) table[bowtie_index(a, b, q)] += std::uint64_t{ca} * cb;
    return table;
  }
  if (same_graph(graph, ConfigGraph::kite())) {
    // t = (t01, t02, t03, t13, t14, t34) over X, Y, Z, U, V. Z hangs off X and
    // V closes the triangle on the edge YU, so
    //   nu_K(t) = sum_{X,Y,U} [XYU matches] D_X(t02) W_{Y,U}(t14, t34).
    const std::uint64_t q1 = q, q2 = q1 * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
    const auto profiles = distance_profiles(set);
    const std::size_t m = members.size();
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> closers(m * m);
    std::vector<std::uint32_t> counts(std::size_t{q} * q);
    for (std::size_t iy = 0; iy < m; ++iy) {
      for (std::size_t iu = 0; iu < m; ++iu) {
        std::fill(counts.begin(), counts.end(), 0);
        for (PointIndex v : members) ++counts[plane.dist(members[iy], v) * q + plane.dist(members[iu], v)];
        for (std::uint32_t key = 0; key < counts.size(); ++key)
          if (counts[key] != 0) closers[iy * m + iu].emplace_back(key, counts[key]);
      }
    }
    NuTable table(space, 0);
    for (std::size_t ix = 0; ix < m; ++ix) {
      for (std::size_t iy = 0; iy < m; ++iy) {
        const std::uint64_t t01 = plane.dist(members[ix], members[iy]);
        for (std::size_t iu = 0; iu < m; ++iu) {
          const std::uint64_t base =
              t01 * q5 + plane.dist(members[ix], members[iu]) * q3 + plane.dist(members[iy], members[iu]) * q2;
          for (const auto& [d, cd] : profiles[ix])
            for (const auto& [w, cw] : closers[iy * m + iu])
              table[base + std::uint64_t{d} * q4 + (w / q) * q1 + (w % q)] += std::uint64_t{cd} * cw;
        }
      }
    }
    return table;
  }
  return nu_table_bruteforce(set, graph);
}

DeltaSet support(const NuTable& table, std::uint32_t q, std::size_t edges) {
  if (table.size() != distance_space_size(q, edges)) throw Error(ErrorKind::InvalidArgument, "table size mismatch");
  DeltaSet d = empty_delta(q, edges, table.size());
  for (std::uint64_t i = 0; i < table.size(); ++i)
    if (table[i] != 0) set_bit(d.bits, i);
  finalize(d);
  return d;
}

DeltaSet delta_bruteforce(const PointSet& set, const ConfigGraph& graph, std::uint64_t mask_cap_bits) {
  const std::uint64_t space = checked_space(set.plane().q(), graph.edge_count(), mask_cap_bits);
  require_tuple_budget(set, graph);
  DeltaSet d = empty_delta(set.plane().q(), graph.edge_count(), space);
  for_each_tuple(set, graph, [&](std::uint64_t index) { set_bit(d.bits, index); });
  finalize(d);
  return d;
}

DeltaSet delta(const PointSet& set, const ConfigGraph& graph, std::uint64_t mask_cap_bits) {
  const Plane& plane = set.plane();
  const std::uint32_t q = plane.q();
  const std::uint64_t space = checked_space(q, graph.edge_count(), mask_cap_bits);
  const auto& members = set.members();

  if (same_graph(graph, ConfigGraph::edge())) {
    DeltaSet d = empty_delta(q, 1, space);
    for (PointIndex x : members)
      for (PointIndex y : members) set_bit(d.bits, plane.dist(x, y));
    finalize(d);
    return d;
  }
  if (same_graph(graph, ConfigGraph::path2())) {
    DeltaSet d = empty_delta(q, 2, space);
    for (const auto& profile : distance_profiles(set))
      for (const auto& [a, ca] : profile)
        for (const auto& [b, cb] : profile) set_bit(d.bits, std::uint64_t{a} * q + b);
    finalize(d);
    return d;
  }
  if (same_graph(graph, ConfigGraph::bowtie())) {
    // (a, b) is realized iff some apex x carries both triangle shapes a and b.
    // holders[a] is the set of apexes (as a bitset over members) realizing a.
    const std::size_t m = members.size();
    const std::size_t words = (m + 63) / 64;
    const std::uint32_t cube = q * q * q;
    std::vector<std::uint64_t> holders(std::size_t{cube} * words, 0);
    for (std::size_t i = 0; i < m; ++i) {
      const PointIndex x = members[i];
      for (PointIndex y : members) {
        const std::uint32_t a = plane.dist(x, y);
        for (PointIndex z : members) {
          const std::uint32_t key = (a * q + plane.dist(x, z)) * q + plane.dist(y, z);
          holders[std::size_t{key} * words + i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
    std::vector<std::uint32_t> active;
    for (std::uint32_t key = 0; key < cube; ++key) {
      const std::uint64_t* h = &holders[std::size_t{key} * words];
      if (std::any_of(h, h + words, [](std::uint64_t w) { return w != 0; })) active.push_back(key);
    }
    DeltaSet d = empty_delta(q, 6, space);
    parallel_for(active.size(), [&](std::size_t ia) {
      const std::uint32_t a = active[ia];
      const std::uint64_t* ha = &holders[std::size_t{a} * words];
      for (std::uint32_t b : active) {
        const std::uint64_t* hb = &holders[std::size_t{b} * words];
        bool shared = false;
        for (std::size_t w = 0; w < words && !shared; ++w) shared = (ha[w] & hb[w]) != 0;
        if (!shared) continue;
        const std::uint64_t index = bowtie_index(a, b, q);
        std::atomic_ref<std::uint64_t>(d.bits[index >> 6]).fetch_or(std::uint64_t{1} << (index & 63),
                                                                     std::memory_order_relaxed);
      }
    });
    finalize(d);
    return d;
  }
  return delta_bruteforce(set, graph, mask_cap_bits);
}

// sum nu^2 <= (sum nu)^2 = |E|^(2(k+1)); five vertices at |E| < 2^10 stay below 2^100.
// Larger inputs rely on the checked arithmetic.
u128 sum_of_squares(const NuTable& table) {
  u128 acc = 0;
  for (auto v : table) acc = checked_add(acc, checked_mul(v, v));
  return acc;
}

u128 nu_squared_sum_bruteforce(const PointSet& set, const ConfigGraph& graph) {
  return sum_of_squares(nu_table_bruteforce(set, graph));
}

u128 nu_squared_sum(const PointSet& set, const ConfigGraph& graph) {
  const Plane& plane = set.plane();
  const std::uint32_t q = plane.q();
  const auto& members = set.members();
  if (members.empty()) return 0;

  if (same_graph(graph, ConfigGraph::edge())) return sum_of_squares(nu_table(set, graph));

  if (same_graph(graph, ConfigGraph::path2())) {
    // sum_{a,b} (sum_y D_y(a) D_y(b))^2 = sum_{y,y'} <D_y, D_y'>^2.
    const std::size_t m = members.size();
    std::vector<std::uint64_t> dense(m * q, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (PointIndex y : members) ++dense[i * q + plane.dist(members[i], y)];
    u128 acc = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        u128 dot = 0;
        for (std::uint32_t a = 0; a < q; ++a) dot += u128{dense[i * q + a]} * dense[j * q + a];
        acc = checked_add(acc, checked_mul(dot, dot));
      }
    }
    return acc;
  }

  if (same_graph(graph, ConfigGraph::triangle())) {
    NuTable table(distance_space_size(q, 3), 0);
    for (PointIndex x : members)
      for (PointIndex y : members) {
        const std::uint64_t a = plane.dist(x, y);
        for (PointIndex z : members) ++table[(a * q + plane.dist(x, z)) * q + plane.dist(y, z)];
      }
    return sum_of_squares(table);
  }

  if (same_graph(graph, ConfigGraph::bowtie())) {
    // sum_t nu_B(t)^2 = sum_{x,x'} M(x,x')^2 with M(x,x') = <N_x, N_x'>.
    // M <= |E|^4 fits 64 bits for |E| < 2^16; the total is <= |E|^10, so it
    // fits 128 bits for |E| < 2^12 and checked accumulation throws beyond.
    const ApexTables apex = apex_triangles(set);
    const std::size_t m = members.size();
    std::vector<u128> row(m, 0);
    parallel_for(m, [&](std::size_t i) {
      u128 acc = 0;
      for (std::size_t j = 0; j < m; ++j) {
        std::uint64_t dot = 0;
        const auto& other = apex.dense[j];
        for (const auto& [key, count] : apex.sparse[i]) dot += std::uint64_t{count} * other[key];
        acc = checked_add(acc, checked_mul(dot, dot));
      }
      row[i] = acc;
    });
    u128 total = 0;
    for (auto v : row) total = checked_add(total, v);
    return total;
  }

  try {
    return sum_of_squares(nu_table(set, graph));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SizeOverflow) throw Error(ErrorKind::FallbackTooLarge, e.what());
    throw;
  }
}

}  // namespace ffdist
