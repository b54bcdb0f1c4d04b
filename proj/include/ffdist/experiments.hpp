#pragma once

// Seeded sweeps over q: sample E with |E| = min(q^2, ceil(C q^s)), measure
// |Delta_G(E)| and the counting functionals, and log each asymptotic lemma as
// the ratio of the measured quantity to its bound without the constant.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdist/int128.hpp"
#include "ffdist/sampling.hpp"

namespace ffdist {

struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
};

// Parses "12/7", "3" or "1.5" (finite decimals only).
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

struct ExperimentConfig {
  std::vector<std::uint32_t> q_list{3, 7, 11, 19, 23, 27};
  Rational exponent{12, 7};
  Rational coefficient{1, 1};
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::string graph = "bowtie";
  SampleKind kind = SampleKind::Uniform;
  Code radius = 1;              // a in f(x) = E(x) (E * S_a)(x)
  bool lemma_columns = true;    // psi and lemma ratios; off leaves those cells empty
  bool allow_any_field = false; // admit q with isotropic vectors
  std::string output;           // empty means the caller's stream

  // Throws InvalidArgument or HypothesisViolated.
  void validate() const;
};

// Unknown keys are rejected with Parse.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

// min(q^2, ceil(C q^s)), decided in exact integer arithmetic.
std::size_t sweep_set_size(std::uint32_t q, const Rational& exponent, const Rational& coefficient);

inline const std::vector<std::string>& lemma_ratio_names() {
  static const std::vector<std::string> names{
      "bound1_ratio",      // sum (lambda - |E|^2/q^2)^2 / (q |E|^(5/2))
      "cubic_ratio",       // sum lambda^3 / (|E|^6 / q^3)
      "alpha_linf_ratio",  // max alpha / |E|^2
      "alpha_zero_ratio",  // alpha^_theta(0) / (|E|^4 / q^4)
      "kite_I_ratio",      // |I| / (|E|^(13/2) / q)
      "kite_II_ratio",     // |II| / (|E|^(37/4) / q^6)
      "kite_III_ratio",    // |III| / (|E|^10 / q^7)
  };
  return names;
}

struct TrialRecord {
  std::uint32_t q = 0;
  std::string graph;
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t set_size = 0;
  std::uint64_t delta_size = 0;
  double ratio = 0;  // delta_size / q^|edges|
  std::optional<u128> nu_sq_sum;
  std::optional<u128> psi22;
  std::optional<u128> psi31;
  std::vector<std::optional<double>> lemma_ratios;
  double elapsed_ms = 0;
};

std::string csv_header();

// Writes the header, one row per trial (flushed as it is produced) and, per
// q, a "min" and a "mean" summary row. Returns the trial rows.
std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg, std::ostream& out);

// The plane over GF(q) with the default modulus; InvalidArgument unless q is
// an odd prime power.
PlanePtr plane_for_order(std::uint64_t q);

// Trial `index` of the sweep at the plane's q, without output.
TrialRecord run_trial(const ExperimentConfig& cfg, const PlanePtr& plane, std::size_t index);

}  // namespace ffdist
