// Acceptance driver. `acceptance ID` runs one criterion (1..12, with 9 split
// into 9a and 9b), `acceptance all` runs every criterion. Each run prints one
// PASS/FAIL line per criterion and exits nonzero if any failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ffdist/averaging.hpp"
#include "ffdist/counting.hpp"
#include "ffdist/error.hpp"
#include "ffdist/experiments.hpp"
#include "ffdist/group_tables.hpp"
#include "ffdist/random.hpp"
#include "ffdist/verify.hpp"

#ifndef FFDIST_GOLDEN_DIR
#error "FFDIST_GOLDEN_DIR must point at tests/golden"
#endif

using namespace ffdist;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// The i-th random set for (criterion, q): size uniform in [0, max_size].
PointSet random_set(const PlanePtr& plane, std::uint64_t criterion, std::size_t i, std::size_t max_size) {
  SplitMix64 rng(derive_seed(kSeed, criterion * 1000 + plane->q(), i));
  const std::size_t size = rng.below(std::min(max_size, plane->size()) + 1);
  return sample_set(plane, size, rng.next(), SampleKind::Uniform);
}

std::uint64_t integer_power(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

nlohmann::json golden() {
  std::ifstream in(std::string(FFDIST_GOLDEN_DIR) + "/thresholds.json");
  if (!in) throw Error(ErrorKind::Io, "golden thresholds missing");
  return nlohmann::json::parse(in);
}

Outcome tuple_identity() {
  std::size_t sets = 0;
  for (std::uint32_t q : {3u, 7u}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < 100; ++i) {
      const PointSet set = random_set(plane, 1, i, q == 3 ? 9 : 20);
      for (const auto& name : ConfigGraph::builtin_names()) {
        const ConfigGraph g = ConfigGraph::builtin(name);
        std::uint64_t total = 0;
        for (auto v : nu_table(set, g)) total += v;
        if (total != integer_power(set.size(), g.vertex_count()))
          return {false, name + " at q = " + std::to_string(q) + ", |E| = " + std::to_string(set.size())};
      }
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " sets x 5 graphs"};
}

Outcome group_action_inequality() {
  std::size_t sets = 0;
  for (std::uint32_t q : {3u, 7u, 11u}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < 100; ++i) {
      const PointSet set = random_set(plane, 2, i, std::size_t{4} * q);
      const u128 lhs = nu_squared_sum(set, ConfigGraph::triangle());
      const u128 rhs = cubic_lambda_sum(LambdaTable(set));
      if (lhs > rhs) return {false, "q = " + std::to_string(q) + ": " + to_string(lhs) + " > " + to_string(rhs)};
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " sets"};
}

Outcome fourier_products() {
  double worst = 0;
  for (std::uint32_t q : {3u, 7u}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < 20; ++i) {
      const PointSet set = random_set(plane, 3, i, plane->size());
      worst = std::max(worst, product_identity_error(*plane, LambdaTable(set), WeightedFunction::indicator(set)));
      for (Code a = 0; a < q; ++a) {
        const AlphaTable alpha(set, a);
        worst = std::max(worst, product_identity_error(*plane, alpha, alpha.weight()));
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst relative error %.3g over lambda and alpha (all radii)", worst);
  return {worst <= 1e-9, buf};
}

Outcome plancherel() {
  double worst = 0;
  for (std::uint32_t q : {3u, 7u, 11u, 27u}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < 100; ++i) {
      const PointSet set = random_set(plane, 4, i, plane->size());
      const auto [lhs, rhs] = plancherel_check(*plane, WeightedFunction::indicator(set));
      const double expected = static_cast<double>(set.size()) / static_cast<double>(plane->size());
      if (rhs != expected) return {false, "q^-2 |E| mismatch"};
      worst = std::max(worst, std::fabs(lhs - rhs) / std::max(rhs, 1e-300));
      if (set.empty()) worst = std::max(worst, lhs);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative error %.3g", worst);
  return {worst <= 1e-9, buf};
}

Outcome trichotomy() {
  std::size_t spheres = 0;
  for (std::uint32_t q : {3u, 7u, 11u, 19u, 23u, 27u}) {
    const PlanePtr plane = plane_for_order(q);
    for (Code t = 0; t < q; ++t, ++spheres)
      if (!sphere_quadruple_trichotomy(*plane, t))
        return {false, "q = " + std::to_string(q) + ", t = " + std::to_string(t)};
  }
  return {true, std::to_string(spheres) + " spheres exhaustively"};
}

Outcome averaging() {
  std::size_t functions = 0;
  for (std::uint32_t q : {3u, 7u}) {
    const std::size_t domain = std::size_t{q} * q;
    for (std::size_t i = 0; i < 100; ++i) {
      SplitMix64 rng(derive_seed(kSeed, 6000 + q, i));
      const std::uint64_t range = 1 + rng.below(i % 2 ? 4 : 1000);
      std::vector<double> phi(domain);
      for (auto& v : phi) v = static_cast<double>(rng.below(range));
      const auto fn = WeightedFunction::from_real(phi);
      for (unsigned n : {2u, 3u, 4u}) {
        const auto r = averaging_bound_check(fn, n);
        const bool ok = r.exact && r.holds && (n != 2 || r.equal);
        if (!ok) return {false, "q = " + std::to_string(q) + ", n = " + std::to_string(n)};
      }
      ++functions;
    }
  }
  return {true, std::to_string(functions) + " functions, n = 3, 4 exact inequality, n = 2 exact equality"};
}

Outcome interpolation_chain() {
  std::size_t sets = 0;
  for (auto [q, count] : {std::pair{3u, 50u}, {7u, 50u}, {11u, 10u}}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < count; ++i) {
      const PointSet set = random_set(plane, 7, i, std::size_t{5} * q);
      const auto iv = interpolation_values(*plane, LambdaTable(set));
      const u128 nu_sq = nu_squared_sum(set, ConfigGraph::bowtie());
      if (!(nu_sq <= iv.psi22 && iv.psi22 <= iv.psi31))
        return {false, "q = " + std::to_string(q) + ": " + to_string(nu_sq) + ", " + to_string(iv.psi22) + ", " +
                           to_string(iv.psi31)};
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " sets"};
}

Outcome factorization_oracle() {
  std::size_t sets = 0;
  const ConfigGraph bowtie = ConfigGraph::bowtie();
  for (auto [q, count, max_size] : {std::tuple{3u, 200u, 6u}, {7u, 50u, 5u}}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < count; ++i) {
      const PointSet set = random_set(plane, 8, i, max_size);
      if (nu_table(set, bowtie) != nu_table_bruteforce(set, bowtie))
        return {false, "nu mismatch at q = " + std::to_string(q)};
      if (!(delta(set, bowtie) == delta_bruteforce(set, bowtie)))
        return {false, "support mismatch at q = " + std::to_string(q)};
      if (nu_squared_sum(set, bowtie) != nu_squared_sum_bruteforce(set, bowtie))
        return {false, "square sum mismatch at q = " + std::to_string(q)};
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " sets"};
}

Outcome decomposition_identity() {
  std::size_t checks = 0;
  for (std::uint32_t q : {3u, 7u}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < 20; ++i) {
      const PointSet set = random_set(plane, 9, i, plane->size());
      const LambdaTable lambda(set);
      for (Code a = 0; a < q; ++a, ++checks) {
        const auto d = kite_decomposition(set, lambda, AlphaTable(set, a));
        if (!d.identity_holds(1e-6))
          return {false, "q = " + std::to_string(q) + ", a = " + std::to_string(a) + ": total " + to_string(d.total)};
      }
    }
  }
  return {true, std::to_string(checks) + " (E, a) pairs within 1e-6"};
}

Outcome radius_sum_equals_psi31() {
  std::size_t matches = 0, sets = 0;
  std::string first_mismatch;
  for (std::uint32_t q : {3u, 7u}) {
    const PlanePtr plane = plane_for_order(q);
    for (std::size_t i = 0; i < 20; ++i, ++sets) {
      const PointSet set = random_set(plane, 9, i, plane->size());
      const LambdaTable lambda(set);
      u128 sum = 0;
      for (Code a = 0; a < q; ++a) sum = checked_add(sum, kite_decomposition(set, lambda, AlphaTable(set, a)).total);
      const u128 psi31 = psi(*plane, lambda, 3, 1);
      if (sum == psi31) {
        ++matches;
      } else if (first_mismatch.empty()) {
        first_mismatch = "q = " + std::to_string(q) + ", |E| = " + std::to_string(set.size()) +
                         ": sum_a total(a) = " + to_string(sum) + ", psi(3,1) = " + to_string(psi31);
      }
    }
  }
  if (matches == sets) return {true, std::to_string(sets) + " sets"};
  return {false, std::to_string(matches) + "/" + std::to_string(sets) + " sets agree; first mismatch " + first_mismatch};
}

Outcome theorem_trend() {
  const auto g = golden();
  std::ostringstream detail;
  bool pass = true;
  for (const std::string name : {"bowtie", "triangle"}) {
    ExperimentConfig cfg;
    cfg.graph = name;
    cfg.exponent = parse_rational(g.at(name).at("exponent").get<std::string>());
    cfg.q_list = g.at(name).at("q_list").get<std::vector<std::uint32_t>>();
    cfg.trials = 20;
    cfg.seed = kSeed;
    cfg.lemma_columns = false;
    std::ostringstream sink;
    const auto rows = run_sweep(cfg, sink);
    const double c0 = g.at(name).at("c0").get<double>();
    double worst = 1;
    for (const auto& r : rows) worst = std::min(worst, r.ratio);
    pass = pass && worst > c0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s min ratio %.6f vs c0 %.3f; ", name.c_str(), worst, c0);
    detail << buf;
  }
  return {pass, detail.str()};
}

Outcome completeness() {
  const auto g = golden();
  std::ostringstream detail;
  bool pass = true;
  for (const std::string name : {"edge", "path2"}) {
    ExperimentConfig cfg;
    cfg.graph = name;
    cfg.exponent = parse_rational(g.at(name).at("exponent").get<std::string>());
    cfg.coefficient = parse_rational(g.at(name).at("coefficient").get<std::string>());
    cfg.q_list = g.at(name).at("q_list").get<std::vector<std::uint32_t>>();
    cfg.trials = 20;
    cfg.seed = kSeed;
    cfg.lemma_columns = false;
    std::ostringstream sink;
    std::size_t complete = 0;
    const auto rows = run_sweep(cfg, sink);
    for (const auto& r : rows) complete += r.ratio == 1.0;
    pass = pass && complete == rows.size();
    detail << name << " (C = " << to_string(cfg.coefficient) << ") complete in " << complete << "/" << rows.size()
           << " trials; ";
  }
  return {pass, detail.str()};
}

Outcome performance() {
  const auto start = Clock::now();
  bool verified = true;
  for (std::uint32_t q : {3u, 7u, 11u, 19u, 23u, 27u}) {
    const VerifyReport report = verify_suite(plane_for_order(q), q == 3 ? 100 : 25, kSeed);
    verified = verified && report.passed();
  }
  const double verify_seconds = seconds_since(start);

  const PlanePtr plane = plane_for_order(11);
  const PointSet set = sample_set(plane, 61, kSeed, SampleKind::Uniform);
  const auto psi_start = Clock::now();
  const u128 value = psi(*plane, LambdaTable(set), 3, 1);
  const double psi_seconds = seconds_since(psi_start);

  char buf[160];
  std::snprintf(buf, sizeof buf, "verify suite %.1f s (budget 300, %s); psi(3,1) at q = 11, |E| = 61: %.3f s (budget 10)",
                verify_seconds, verified ? "all passed" : "FAILURES", psi_seconds);
  (void)value;
  return {verified && verify_seconds <= 300 && psi_seconds <= 10, buf};
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"1", "tuple identity sum_t nu_G(t) = |E|^(k+1)", tuple_identity},
      {"2", "group-action inequality sum nu_T^2 <= sum lambda^3", group_action_inequality},
      {"3", "Fourier product identities for lambda and alpha", fourier_products},
      {"4", "Plancherel", plancherel},
      {"5", "sphere quadruple trichotomy", trichotomy},
      {"6", "averaging lemma", averaging},
      {"7", "interpolation chain nu_B^2 <= psi(2,2) <= psi(3,1)", interpolation_chain},
      {"8", "bowtie factorization against brute force", factorization_oracle},
      {"9a", "kite decomposition I + II + III = sum lambda^3 alpha", decomposition_identity},
      {"9b", "sum over radii of kite totals = psi(3,1)", radius_sum_equals_psi31},
      {"10", "distance-set trend above pinned thresholds", theorem_trend},
      {"11", "distance-set completeness instances", completeness},
      {"12", "performance budget", performance},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string want = argc > 1 ? argv[1] : "all";
  bool any = false, all_pass = true;
  for (const auto& c : criteria()) {
    if (want != "all" && want != c.id) continue;
    any = true;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %s: %s -- %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (!any) {
    std::fprintf(stderr, "unknown criterion '%s'\n", want.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
