#include "ffdist/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ffdist/averaging.hpp"
#include "ffdist/counting.hpp"
#include "ffdist/error.hpp"
#include "ffdist/group_tables.hpp"
#include "ffdist/random.hpp"
#include "ffdist/spectral.hpp"

namespace ffdist {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kProperties{
    "field_axioms",          "isotropy_free",          "orthogonal_group",       "sphere_trichotomy",
    "plancherel",            "fourier_linearity",      "translation_covariance", "l4_identity",
    "tuple_identity",        "delta_support",          "factorization_oracle",   "monotonicity",
    "isometry_invariance",   "group_action_inequality", "lambda_product_identity", "alpha_invariants",
    "alpha_product_identity", "averaging_lemma",       "interpolation_chain",    "psi_symmetry",
    "kite_decomposition",    "kite_radius_sum",
};

class Recorder {
 public:
  Recorder() {
    for (const auto& name : kProperties) results_[name].name = name;
  }

  template <class Describe>
  void check(const std::string& name, bool ok, Describe&& describe) {
    auto& r = results_.at(name);
    ++r.checks;
    if (ok) return;
    if (r.failures++ == 0) r.counterexample = describe();
  }

  void fail_all(const std::string& reason) {
    for (auto& [name, r] : results_) {
      ++r.failures;
      r.counterexample = reason;
    }
  }

  // Runs body, charges its wall time to the property and records an
  // escaping library error as a failure of that property alone.
  template <class Body>
  void timed(const std::string& name, Body&& body) {
    const auto start = Clock::now();
    try {
      body();
    } catch (const Error& e) {
      check(name, false, [&] { return std::string("error: ") + e.what(); });
    }
    results_.at(name).elapsed_ms += std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }

  std::vector<PropertyResult> take() {
    std::vector<PropertyResult> out;
    for (const auto& name : kProperties) out.push_back(results_.at(name));
    return out;
  }

 private:
  std::map<std::string, PropertyResult> results_;
};

std::string describe_set(const PointSet& set) {
  std::ostringstream out;
  out << "E = {";
  bool first = true;
  for (PointIndex i : set.members()) {
    out << (first ? "" : " ") << '(' << set.plane().x1(i) << ',' << set.plane().x2(i) << ')';
    first = false;
  }
  out << '}';
  return out.str();
}

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

PointSet random_set(const PlanePtr& plane, std::size_t max_size, SplitMix64& rng) {
  const std::size_t size = rng.below(std::min(max_size, plane->size()) + 1);
  std::vector<PointIndex> idx(size);
  for (auto& i : idx) i = static_cast<PointIndex>(rng.below(plane->size()));
  return PointSet(plane, idx);
}

PointSet prefix(const PointSet& set, std::size_t count) {
  const auto& m = set.members();
  const std::vector<PointIndex> idx(m.begin(), m.begin() + std::min(count, m.size()));
  return PointSet(set.plane_ptr(), idx);
}

WeightedFunction random_complex(const Plane& plane, SplitMix64& rng) {
  WeightedFunction fn = WeightedFunction::zeros(plane);
  fn.real_nonneg = false;
  for (auto& v : fn.values)
    v = Complex(static_cast<double>(rng.below(2001)) / 1000.0 - 1.0, static_cast<double>(rng.below(2001)) / 1000.0 - 1.0);
  return fn;
}

bool table_fits(std::uint32_t q, const ConfigGraph& g) {
  return distance_space_size(q, g.edge_count()) <= kDenseTableCap;
}

// nu_G by plain tuple enumeration into a sparse map; independent of every
// kernel in counting.cpp and usable at any q.
std::unordered_map<std::uint64_t, std::uint64_t> sparse_nu(const PointSet& set, const ConfigGraph& graph) {
  std::unordered_map<std::uint64_t, std::uint64_t> out;
  const auto& pts = set.members();
  const unsigned k1 = graph.vertex_count();
  if (pts.empty()) return out;
  const std::uint32_t q = set.plane().q();
  std::vector<std::size_t> pos(k1, 0);
  for (;;) {
    std::uint64_t code = 0;
    for (const auto& [i, j] : graph.edges()) code = code * q + set.plane().dist(pts[pos[i]], pts[pos[j]]);
    ++out[code];
    unsigned v = 0;
    while (v < k1 && ++pos[v] == pts.size()) pos[v++] = 0;
    if (v == k1) return out;
  }
}

std::uint64_t integer_power(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Checks run once per field.
void field_level_checks(const Plane& plane, Recorder& rec) {
  const Field& f = plane.field();
  const Code q = f.q();

  rec.timed("field_axioms", [&] {
    for (Code x = 0; x < q; ++x) {
      rec.check("field_axioms", f.pow(x, q) == x, [&] { return "x^q != x at x = " + std::to_string(x); });
      for (Code y = 0; y < q; ++y) {
        const bool ok = f.add(x, y) == f.add(y, x) && f.mul(x, y) == f.mul(y, x) &&
                        f.trace(f.add(x, y)) == (f.trace(x) + f.trace(y)) % f.p() &&
                        close(f.character(f.add(x, y)), f.character(x) * f.character(y), 1e-12);
        rec.check("field_axioms", ok, [&] { return "x = " + std::to_string(x) + ", y = " + std::to_string(y); });
      }
    }
  });

  rec.timed("isotropy_free", [&] {
    for (Code x = 1; x < q; ++x)
      rec.check("isotropy_free", !f.is_square(f.neg(f.mul(x, x))),
                [&] { return "-x^2 is a square at x = " + std::to_string(x); });
    rec.check("isotropy_free", plane.sphere_indices(0).size() == 1, [] { return std::string("|S_0| != 1"); });
  });

  rec.timed("orthogonal_group", [&] {
    const auto& group = plane.orthogonal_group();
    rec.check("orthogonal_group", group.size() == 2 * (q + 1), [&] {
      return "|O2| = " + std::to_string(group.size());
    });
    for (std::size_t g = 0; g < group.size(); ++g) {
      rec.check("orthogonal_group", group[g].is_orthogonal(), [&] { return "element " + std::to_string(g); });
      rec.check("orthogonal_group", group[g] * group[plane.inverse_element(g)] == group[plane.identity_element()],
                [&] { return "inverse of element " + std::to_string(g); });
      for (std::size_t h = 0; h < group.size(); ++h) {
        const OrthMatrix prod = group[g] * group[h];
        rec.check("orthogonal_group", std::find(group.begin(), group.end(), prod) != group.end(),
                  [&] { return "product of elements " + std::to_string(g) + " and " + std::to_string(h); });
      }
    }
    std::size_t total = 0;
    for (Code t = 0; t < q; ++t) {
      total += plane.sphere_indices(t).size();
      if (t != 0)
        rec.check("orthogonal_group", plane.sphere_indices(t).size() == q + 1,
                  [&] { return "|S_t| != q + 1 at t = " + std::to_string(t); });
    }
    rec.check("orthogonal_group", total == plane.size(), [] { return std::string("spheres do not partition"); });
    // Orbit step: for nonzero x, y of equal norm exactly two elements map x to y.
    const std::size_t stride = q <= 11 ? 1 : plane.size() / 97 + 1;
    for (PointIndex x = 1; x < plane.size(); x += static_cast<PointIndex>(stride)) {
      std::vector<std::uint32_t> hits(plane.size(), 0);
      for (std::size_t g = 0; g < group.size(); ++g) ++hits[plane.act(g, x)];
      for (PointIndex y = 1; y < plane.size(); ++y) {
        const std::uint32_t expected = plane.norm(y) == plane.norm(x) ? 2 : 0;
        rec.check("orthogonal_group", hits[y] == expected, [&] {
          return "x = " + std::to_string(x) + " reaches y = " + std::to_string(y) + " " + std::to_string(hits[y]) +
                 " times";
        });
      }
    }
  });

  rec.timed("sphere_trichotomy", [&] {
    for (Code t = 0; t < q; ++t)
      rec.check("sphere_trichotomy", sphere_quadruple_trichotomy(plane, t),
                [&] { return "t = " + std::to_string(t); });
  });
}

void trial_checks(const PlanePtr& plane_ptr, const PointSet& set, SplitMix64& rng, const VerifyOptions& options,
                  Recorder& rec) {
  const Plane& plane = *plane_ptr;
  const std::uint32_t q = plane.q();
  const auto where = [&] { return describe_set(set); };
  const std::size_t small = q <= 3 ? 6 : 5;
  const PointSet tiny = prefix(set, small);

  rec.timed("plancherel", [&] {
    for (const auto& fn : {WeightedFunction::indicator(set), random_complex(plane, rng)}) {
      const auto [lhs, rhs] = plancherel_check(plane, fn);
      rec.check("plancherel", std::fabs(lhs - rhs) <= 1e-9 * (1.0 + rhs), [&] {
        return where() + ": sum |f^|^2 = " + std::to_string(lhs) + " vs " + std::to_string(rhs);
      });
    }
  });

  rec.timed("fourier_linearity", [&] {
    const auto f = random_complex(plane, rng), g = random_complex(plane, rng);
    const Complex a(1.5, -0.25), b(-0.75, 2.0);
    WeightedFunction combo = WeightedFunction::zeros(plane);
    for (std::size_t i = 0; i < combo.values.size(); ++i) combo.values[i] = a * f.values[i] + b * g.values[i];
    const auto fh = fourier(plane, f), gh = fourier(plane, g), ch = fourier(plane, combo);
    for (PointIndex m = 0; m < plane.size(); ++m)
      rec.check("fourier_linearity", close(ch.coeffs[m], a * fh.coeffs[m] + b * gh.coeffs[m]),
                [&] { return "m = " + std::to_string(m); });
  });

  rec.timed("translation_covariance", [&] {
    const PointIndex s = static_cast<PointIndex>(rng.below(plane.size()));
    const auto fn = WeightedFunction::indicator(set);
    WeightedFunction shifted = WeightedFunction::zeros(plane);
    for (PointIndex x = 0; x < plane.size(); ++x) shifted.values[plane.add(x, s)] = fn.values[x];
    const auto base = fourier(plane, fn), moved = fourier(plane, shifted);
    const std::uint32_t p = plane.field().p();
    for (PointIndex m = 0; m < plane.size(); ++m) {
      const std::uint32_t k = plane.trace_dot(m, s);
      const Complex factor = plane.field().root_of_unity(k == 0 ? 0 : p - k);
      rec.check("translation_covariance", close(moved.coeffs[m], factor * base.coeffs[m]),
                [&] { return where() + ", shift " + std::to_string(s) + ", m = " + std::to_string(m); });
    }
  });

  rec.timed("l4_identity", [&] {
    const Code t = static_cast<Code>(rng.below(q));
    const auto [lhs, rhs] = sphere_restricted_l4_identity(plane, WeightedFunction::indicator(set), t);
    rec.check("l4_identity", std::fabs(lhs - rhs) <= 1e-9 * (1.0 + std::fabs(rhs)), [&] {
      return where() + ", t = " + std::to_string(t) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs);
    });
  });

  rec.timed("tuple_identity", [&] {
    for (const auto& name : ConfigGraph::builtin_names()) {
      const ConfigGraph g = ConfigGraph::builtin(name);
      if (!table_fits(q, g)) continue;
      std::uint64_t total = 0;
      for (auto v : nu_table(set, g)) total += v;
      rec.check("tuple_identity", total == integer_power(set.size(), g.vertex_count()),
                [&] { return where() + ", graph " + name; });
    }
  });

  rec.timed("delta_support", [&] {
    for (const auto& name : ConfigGraph::builtin_names()) {
      const ConfigGraph g = ConfigGraph::builtin(name);
      rec.check("delta_support", delta(tiny, g) == delta_bruteforce(tiny, g),
                [&] { return describe_set(tiny) + ", graph " + name; });
      if (table_fits(q, g))
        rec.check("delta_support", delta(tiny, g) == support(nu_table_bruteforce(tiny, g), q, g.edge_count()),
                  [&] { return describe_set(tiny) + ", graph " + name; });
    }
  });

  rec.timed("factorization_oracle", [&] {
    for (const auto& name : {"edge", "path2", "bowtie", "kite"}) {
      const ConfigGraph g = ConfigGraph::builtin(name);
      if (table_fits(q, g))
        rec.check("factorization_oracle", nu_table(tiny, g) == nu_table_bruteforce(tiny, g),
                  [&] { return describe_set(tiny) + ", graph " + std::string(name); });
    }
    for (const auto& [name, e] : {std::pair<const char*, const PointSet*>{"bowtie", &tiny}, {"triangle", &set}}) {
      const ConfigGraph g = ConfigGraph::builtin(name);
      const auto oracle = sparse_nu(*e, g);
      u128 squares = 0;
      for (const auto& [code, count] : oracle) squares += u128{count} * count;
      rec.check("factorization_oracle", nu_squared_sum(*e, g) == squares,
                [&] { return describe_set(*e) + ", " + name + " square sum"; });
      const DeltaSet d = delta(*e, g);
      bool same = d.size == oracle.size();
      for (const auto& [code, count] : oracle) same = same && d.contains(code);
      rec.check("factorization_oracle", same, [&] { return describe_set(*e) + ", " + name + " support"; });
    }
  });

  rec.timed("monotonicity", [&] {
    const PointSet sub = prefix(set, set.size() / 2);
    for (const auto& name : {"edge", "path2", "triangle", "bowtie"}) {
      const ConfigGraph g = ConfigGraph::builtin(name);
      if (std::string(name) == "bowtie" && q > 11) continue;
      rec.check("monotonicity", delta(sub, g).is_subset_of(delta(set, g)),
                [&] { return where() + ", graph " + std::string(name); });
    }
  });

  rec.timed("isometry_invariance", [&] {
    const std::size_t g = rng.below(plane.group_order());
    const PointIndex s = static_cast<PointIndex>(rng.below(plane.size()));
    const PointSet moved = set.transformed(g, s);
    for (const auto& name : {"edge", "path2", "triangle"}) {
      const ConfigGraph graph = ConfigGraph::builtin(name);
      rec.check("isometry_invariance", nu_table(moved, graph) == nu_table(set, graph), [&] {
        return where() + ", theta #" + std::to_string(g) + ", shift " + std::to_string(s) + ", graph " + name;
      });
    }
    for (const auto& name : {"bowtie", "kite"}) {
      const ConfigGraph graph = ConfigGraph::builtin(name);
      if (table_fits(q, graph))
        rec.check("isometry_invariance", nu_table(tiny.transformed(g, s), graph) == nu_table(tiny, graph),
                  [&] { return describe_set(tiny) + ", graph " + std::string(name); });
    }
  });

  const LambdaTable lambda(set);

  rec.timed("group_action_inequality", [&] {
    LambdaTable table = lambda;
    if (options.inject_lambda_fault) table.at(plane.identity_element(), 0) = 0;
    const std::uint64_t e = set.size();
    rec.check("group_action_inequality", table.at(plane.identity_element(), 0) == e,
              [&] { return where() + ": lambda_I(0) != |E|"; });
    for (std::size_t g = 0; g < table.group_order(); ++g) {
      std::uint64_t row = 0, worst = 0;
      for (auto v : table.row(g)) {
        row += v;
        worst = std::max(worst, v);
      }
      rec.check("group_action_inequality", row == e * e && worst <= e,
                [&] { return where() + ": row " + std::to_string(g) + " sums to " + std::to_string(row); });
    }
    const u128 nu_sq = nu_squared_sum(set, ConfigGraph::triangle());
    const u128 cubic = cubic_lambda_sum(table);
    rec.check("group_action_inequality", nu_sq <= cubic,
              [&] { return where() + ": " + to_string(nu_sq) + " > " + to_string(cubic); });
    const u128 d = delta(set, ConfigGraph::triangle()).size;
    const u128 lhs = checked_pow(e, 6), mid = checked_mul(d, nu_sq), rhs = checked_mul(d, cubic);
    rec.check("group_action_inequality", lhs <= mid && mid <= rhs, [&] {
      return where() + ": chain " + to_string(lhs) + ", " + to_string(mid) + ", " + to_string(rhs);
    });
  });

  rec.timed("lambda_product_identity", [&] {
    const double err = product_identity_error(plane, lambda, WeightedFunction::indicator(set));
    rec.check("lambda_product_identity", err <= 1e-9,
              [&] { return where() + ": relative error " + std::to_string(err); });
  });

  const Code radius = static_cast<Code>(1 + rng.below(q - 1));
  const AlphaTable alpha(set, radius);

  rec.timed("alpha_invariants", [&] {
    std::uint64_t pairs = 0;
    for (PointIndex x : set.members())
      for (PointIndex y : set.members()) pairs += plane.dist(x, y) == radius;
    rec.check("alpha_invariants", alpha.weight_l1() == pairs && alpha.weight_max() <= q + 1,
              [&] { return where() + ", a = " + std::to_string(radius) + ": weight sums"; });
    const std::uint64_t l1 = alpha.weight_l1();
    for (std::size_t g = 0; g < alpha.group_order(); ++g) {
      std::uint64_t row = 0, worst = 0;
      for (auto v : alpha.row(g)) {
        row += v;
        worst = std::max(worst, v);
      }
      rec.check("alpha_invariants", row == l1 * l1 && worst <= alpha.weight_max() * l1,
                [&] { return where() + ", a = " + std::to_string(radius) + ", row " + std::to_string(g); });
    }
  });

  rec.timed("alpha_product_identity", [&] {
    const double err = product_identity_error(plane, alpha, alpha.weight());
    rec.check("alpha_product_identity", err <= 1e-9, [&] {
      return where() + ", a = " + std::to_string(radius) + ": relative error " + std::to_string(err);
    });
  });

  rec.timed("averaging_lemma", [&] {
    std::vector<double> phi(plane.size());
    const std::uint64_t range = 1 + rng.below(q + 2);
    for (auto& v : phi) v = static_cast<double>(rng.below(range));
    const auto fn = WeightedFunction::from_real(phi);
    for (unsigned n : {2u, 3u, 4u}) {
      const auto r = averaging_bound_check(fn, n);
      const bool ok = r.exact && r.holds && (n != 2 || r.equal);
      rec.check("averaging_lemma", ok, [&] {
        return "n = " + std::to_string(n) + ", values below " + std::to_string(range) + ": lhs " +
               std::to_string(r.lhs) + ", rhs " + std::to_string(r.rhs);
      });
    }
  });

  InterpolationValues iv;
  rec.timed("interpolation_chain", [&] {
    iv = interpolation_values(plane, lambda);
    const u128 nu_sq = nu_squared_sum(set, ConfigGraph::bowtie());
    rec.check("interpolation_chain", nu_sq <= iv.psi22 && iv.psi22 <= iv.psi31, [&] {
      return where() + ": " + to_string(nu_sq) + ", " + to_string(iv.psi22) + ", " + to_string(iv.psi31);
    });
  });

  rec.timed("psi_symmetry", [&] {
    rec.check("psi_symmetry", psi(plane, lambda, 1, 3) == iv.psi31 && psi(plane, lambda, 2, 2) == iv.psi22,
              [&] { return where(); });
  });

  rec.timed("kite_decomposition", [&] {
    const auto d = kite_decomposition(set, lambda, alpha);
    rec.check("kite_decomposition", d.identity_holds(1e-6), [&] {
      return where() + ", a = " + std::to_string(radius) + ": I + II + III = " +
             std::to_string(d.first + d.second + d.third) + ", total " + to_string(d.total) + ", pairs " +
             to_string(d.total_pairs);
    });
  });

  rec.timed("kite_radius_sum", [&] {
    // On E x E, sum_phi lambda_phi(x - phi x') = 2 sum_a n_a(x) n_a(x') + 2q, so
    //   sum_{x,x' in E} A_3 A_1 = 2 sum_a total(a) + 2q sum_{x,x' in E} A_3.
    u128 kite_sum = 0;
    for (Code a = 0; a < q; ++a) kite_sum = checked_add(kite_sum, kite_decomposition(set, lambda, AlphaTable(set, a)).total);
    u128 lhs = 0, cubic = 0;
    for (PointIndex x : set.members())
      for (PointIndex xp : set.members()) {
        u128 a3 = 0, a1 = 0;
        for (std::size_t g = 0; g < plane.group_order(); ++g) {
          const std::uint64_t v = lambda.at(g, plane.sub(x, plane.act(g, xp)));
          a3 += checked_pow(v, 3);
          a1 += v;
        }
        lhs = checked_add(lhs, checked_mul(a3, a1));
        cubic = checked_add(cubic, a3);
      }
    const u128 rhs = checked_add(checked_mul(2, kite_sum), checked_mul(checked_mul(2, q), cubic));
    rec.check("kite_radius_sum", lhs == rhs,
              [&] { return where() + ": " + to_string(lhs) + " vs " + to_string(rhs); });
  });
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.passed(); });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& r : properties) {
    nlohmann::json item{{"name", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures}};
    if (!r.passed()) item["counterexample"] = r.counterexample;
    props.push_back(item);
  }
  return {{"schema", "ffdist.verify/1"}, {"p", p},         {"n", n},
          {"q", q},                      {"trials", trials}, {"seed", seed},
          {"passed", passed()},          {"properties", props}};
}

std::vector<std::string> verify_property_names() { return kProperties; }

VerifyReport verify_suite(const PlanePtr& plane, std::size_t trials, std::uint64_t seed, const VerifyOptions& options) {
  const auto start = Clock::now();
  VerifyReport report;
  report.p = plane->field().p();
  report.n = plane->field().n();
  report.q = plane->q();
  report.trials = trials;
  report.seed = seed;

  Recorder rec;
  if (!plane->field().hypothesis_ok()) {
    rec.fail_all("q = " + std::to_string(report.q) + " admits isotropic vectors");
  } else {
    field_level_checks(*plane, rec);
    for (std::size_t t = 0; t < trials; ++t) {
      SplitMix64 rng(derive_seed(seed, report.q, t));
      const PointSet set = random_set(plane, options.max_set_size, rng);
      trial_checks(plane, set, rng, options, rec);
    }
  }
  report.properties = rec.take();
  report.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

}  // namespace ffdist
