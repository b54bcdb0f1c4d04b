#include "ffdist/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffdist/counting.hpp"
#include "ffdist/error.hpp"
#include "ffdist/group_tables.hpp"
#include "ffdist/random.hpp"

namespace ffdist {

namespace {

using boost::multiprecision::cpp_int;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string cell(const std::optional<u128>& v) { return v ? to_string(*v) : std::string(); }
std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

bool graph_has_fast_square_sum(const std::string& name) {
  return name == "edge" || name == "path2" || name == "triangle" || name == "bowtie";
}

void write_row(std::ostream& out, const TrialRecord& r, const std::string& seed_cell) {
  out << r.q << ',' << r.graph << ',' << r.kind << ',' << seed_cell << ',' << r.set_size << ',' << r.delta_size << ','
      << format_double(r.ratio) << ',' << cell(r.nu_sq_sum) << ',' << cell(r.psi22) << ',' << cell(r.psi31);
  for (const auto& v : r.lemma_ratios) out << ',' << cell(v);
  out << ',' << format_double(r.elapsed_ms) << '\n';
}

// Summary rows carry min or mean of each numeric column across trials.
void write_summary(std::ostream& out, const std::vector<TrialRecord>& rows) {
  if (rows.empty()) return;
  const auto stat = [&](auto get, bool mean) -> std::optional<double> {
    double acc = mean ? 0.0 : INFINITY;
    for (const auto& r : rows) {
      const std::optional<double> v = get(r);
      if (!v) return std::nullopt;
      acc = mean ? acc + *v : std::min(acc, *v);
    }
    return mean ? acc / static_cast<double>(rows.size()) : acc;
  };
  const auto wide = [](const std::optional<u128>& v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return static_cast<double>(to_long_double(*v));
  };
  for (bool mean : {false, true}) {
    const TrialRecord& first = rows.front();
    out << first.q << ',' << first.graph << ',' << (mean ? "mean" : "min") << ",," << first.set_size << ','
        << cell(stat([](const TrialRecord& r) { return std::optional<double>(static_cast<double>(r.delta_size)); }, mean))
        << ',' << cell(stat([](const TrialRecord& r) { return std::optional<double>(r.ratio); }, mean)) << ','
        << cell(stat([&](const TrialRecord& r) { return wide(r.nu_sq_sum); }, mean)) << ','
        << cell(stat([&](const TrialRecord& r) { return wide(r.psi22); }, mean)) << ','
        << cell(stat([&](const TrialRecord& r) { return wide(r.psi31); }, mean));
    for (std::size_t i = 0; i < first.lemma_ratios.size(); ++i)
      out << ',' << cell(stat([i](const TrialRecord& r) { return r.lemma_ratios[i]; }, mean));
    out << ',' << cell(stat([](const TrialRecord& r) { return std::optional<double>(r.elapsed_ms); }, mean)) << '\n';
  }
  out.flush();
}

std::vector<std::optional<double>> lemma_ratios(const PointSet& set, const LambdaTable& lambda, Code radius) {
  const Plane& plane = set.plane();
  const double q = plane.q();
  const double e = static_cast<double>(set.size());
  std::vector<std::optional<double>> out(lemma_ratio_names().size());
  if (set.empty()) return out;

  const double mean = e * e / (q * q);
  double centered = 0;
  for (std::size_t g = 0; g < lambda.group_order(); ++g)
    for (auto v : lambda.row(g)) centered += (static_cast<double>(v) - mean) * (static_cast<double>(v) - mean);
  out[0] = centered / (q * std::pow(e, 2.5));
  out[1] = static_cast<double>(to_long_double(cubic_lambda_sum(lambda))) / (std::pow(e, 6) / (q * q * q));

  const AlphaTable alpha(set, radius);
  std::uint64_t alpha_max = 0;
  for (std::size_t g = 0; g < alpha.group_order(); ++g)
    for (auto v : alpha.row(g)) alpha_max = std::max(alpha_max, v);
  out[2] = static_cast<double>(alpha_max) / (e * e);
  const double l1 = static_cast<double>(alpha.weight_l1());
  out[3] = (l1 * l1 / (q * q)) / (std::pow(e, 4) / std::pow(q, 4));

  const auto kite = kite_decomposition(set, lambda, alpha);
  out[4] = std::fabs(kite.first) / (std::pow(e, 6.5) / q);
  out[5] = std::fabs(kite.second) / (std::pow(e, 37.0 / 4) / std::pow(q, 6));
  out[6] = std::fabs(kite.third) / (std::pow(e, 10) / std::pow(q, 7));
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto digits_only = [](const std::string& s) {
    return !s.empty() && s.size() <= 18 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Rational r;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    if (!digits_only(a) || !digits_only(b)) throw Error(ErrorKind::Parse, "bad rational '" + text + "'");
    r = {std::stoull(a), std::stoull(b)};
  } else if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string a = text.substr(0, dot), b = text.substr(dot + 1);
    if (!digits_only(a) || !digits_only(b) || b.size() > 9) throw Error(ErrorKind::Parse, "bad rational '" + text + "'");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < b.size(); ++i) den *= 10;
    r = {std::stoull(a) * den + std::stoull(b), den};
  } else {
    if (!digits_only(text)) throw Error(ErrorKind::Parse, "bad rational '" + text + "'");
    r = {std::stoull(text), 1};
  }
  if (r.den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
  const std::uint64_t g = std::gcd(r.num, r.den);
  if (g > 1) r = {r.num / g, r.den / g};
  return r;
}

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (exponent.den == 0 || coefficient.den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (exponent.den > 64) throw Error(ErrorKind::InvalidArgument, "exponent denominator above 64");
  ConfigGraph::builtin(graph);
  for (std::uint32_t q : q_list) {
    const auto shape = odd_prime_power(q);
    if (!shape) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not an odd prime power");
    if (radius >= q) throw Error(ErrorKind::InvalidArgument, "radius must be a field code below every q");
    const bool ok = shape->first % 4 == 3 && shape->second % 2 == 1;
    if (!ok && !allow_any_field)
      throw Error(ErrorKind::HypothesisViolated,
                  "q = " + std::to_string(q) + " has isotropic vectors; pass the override to sweep it anyway");
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "experiment config must be a JSON object");
  static const std::vector<std::string> known{"q_list", "exponent", "coefficient", "trials", "seed", "graph",
                                              "kind", "radius", "lemma_columns", "allow_any_field", "output"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorKind::Parse, "unknown config key '" + key + "'");
  const auto as_rational = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_unsigned()) return Rational{v.get<std::uint64_t>(), 1};
    throw Error(ErrorKind::Parse, "rationals are written as strings such as \"12/7\"");
  };
  ExperimentConfig cfg;
  try {
    if (j.contains("q_list")) cfg.q_list = j.at("q_list").get<std::vector<std::uint32_t>>();
    if (j.contains("exponent")) cfg.exponent = as_rational(j.at("exponent"));
    if (j.contains("coefficient")) cfg.coefficient = as_rational(j.at("coefficient"));
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("graph")) cfg.graph = j.at("graph").get<std::string>();
    if (j.contains("kind")) {
      const auto kind = parse_sample_kind(j.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorKind::Parse, "unknown sample kind");
      cfg.kind = *kind;
    }
    if (j.contains("radius")) cfg.radius = j.at("radius").get<Code>();
    if (j.contains("lemma_columns")) cfg.lemma_columns = j.at("lemma_columns").get<bool>();
    if (j.contains("allow_any_field")) cfg.allow_any_field = j.at("allow_any_field").get<bool>();
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("experiment config: ") + e.what());
  }
  return cfg;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {{"q_list", cfg.q_list},
          {"exponent", to_string(cfg.exponent)},
          {"coefficient", to_string(cfg.coefficient)},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"graph", cfg.graph},
          {"kind", to_string(cfg.kind)},
          {"radius", cfg.radius},
          {"lemma_columns", cfg.lemma_columns},
          {"allow_any_field", cfg.allow_any_field},
          {"output", cfg.output}};
}

std::size_t sweep_set_size(std::uint32_t q, const Rational& exponent, const Rational& coefficient) {
  // Smallest m with (m * C_den)^s_den >= C_num^s_den * q^s_num.
  const std::size_t cap = std::size_t{q} * q;
  const unsigned d = static_cast<unsigned>(exponent.den);
  const cpp_int target = boost::multiprecision::pow(cpp_int(coefficient.num), d) *
                         boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(exponent.num));
  const auto enough = [&](std::size_t m) {
    return boost::multiprecision::pow(cpp_int(m) * coefficient.den, d) >= target;
  };
  if (!enough(cap)) return cap;
  std::size_t lo = 0, hi = cap;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (enough(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

PlanePtr plane_for_order(std::uint64_t q) {
  const auto shape = odd_prime_power(q);
  if (!shape) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not an odd prime power");
  return std::make_shared<const Plane>(Field::make(shape->first, shape->second));
}

std::string csv_header() {
  std::string h = "q,graph,kind,seed,set_size,delta_size,ratio,nu_sq_sum,psi22,psi31";
  for (const auto& name : lemma_ratio_names()) h += "," + name;
  return h + ",elapsed_ms";
}

TrialRecord run_trial(const ExperimentConfig& cfg, const PlanePtr& plane, std::size_t index) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t q = plane->q();
  const ConfigGraph graph = ConfigGraph::builtin(cfg.graph);

  TrialRecord r;
  r.q = q;
  r.graph = graph.name();
  r.kind = to_string(cfg.kind);
  r.seed = derive_seed(cfg.seed, q, index);
  const PointSet set = sample_set(plane, sweep_set_size(q, cfg.exponent, cfg.coefficient), r.seed, cfg.kind);
  r.set_size = set.size();
  r.delta_size = delta(set, graph).size;
  r.ratio = static_cast<double>(r.delta_size) / std::pow(static_cast<double>(q), graph.edge_count());
  if (graph_has_fast_square_sum(r.graph)) r.nu_sq_sum = nu_squared_sum(set, graph);
  r.lemma_ratios.assign(lemma_ratio_names().size(), std::nullopt);
  if (cfg.lemma_columns) {
    const LambdaTable lambda(set);
    const auto iv = interpolation_values(*plane, lambda);
    r.psi22 = iv.psi22;
    r.psi31 = iv.psi31;
    r.lemma_ratios = lemma_ratios(set, lambda, cfg.radius);
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  out << csv_header() << '\n';
  out.flush();
  std::vector<TrialRecord> all;
  for (std::uint32_t q : cfg.q_list) {
    const PlanePtr plane = plane_for_order(q);
    std::vector<TrialRecord> rows;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      rows.push_back(run_trial(cfg, plane, t));
      write_row(out, rows.back(), std::to_string(rows.back().seed));
      out.flush();
      if (!out) throw Error(ErrorKind::Io, "failed writing sweep output");
    }
    write_summary(out, rows);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

}  // namespace ffdist
