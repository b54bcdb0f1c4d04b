#pragma once

// Arithmetic in GF(p^n) for odd primes p.
//
// Elements are addressed by a canonical integer code in [0, q): the residue
// c_0 + c_1 x + ... + c_{n-1} x^{n-1} modulo the field's monic irreducible
// modulus has code sum c_i p^i. Every file format in the project stores
// scalars as these codes.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ffdist {

using Code = std::uint32_t;

class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;
  // Fields up to this order keep dense q*q addition and multiplication tables.
  static constexpr std::uint32_t kTableOrder = 1024;

  // Uses the lexicographically smallest monic irreducible modulus of degree n,
  // comparing coefficient tuples (c_0, c_1, ..., c_{n-1}) with c_0 first.
  // For n = 1 the modulus is x (coefficients {0, 1}).
  static std::shared_ptr<const Field> make(std::uint64_t p, unsigned n);

  // Explicit modulus, low-to-high coefficients, length n + 1, monic.
  static std::shared_ptr<const Field> make(std::uint64_t p, unsigned n, std::vector<Code> modulus);

  std::uint32_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<Code>& modulus() const noexcept { return modulus_; }

  // p = 3 mod 4 and n odd; equivalently -1 is not a square in GF(q).
  bool hypothesis_ok() const noexcept { return hypothesis_ok_; }

  bool same_as(const Field& other) const noexcept;

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }

  Code add(Code a, Code b) const noexcept;
  Code sub(Code a, Code b) const noexcept;
  Code neg(Code a) const noexcept;
  Code mul(Code a, Code b) const noexcept;
  Code pow(Code a, std::uint64_t e) const noexcept;
  // Throws Error(DivisionByZero) for a == 0.
  Code inv(Code a) const;

  bool is_square(Code a) const noexcept;

  // Absolute trace to GF(p), as an integer in [0, p).
  std::uint32_t trace(Code a) const noexcept;
  // exp(2 pi i trace(a) / p).
  std::complex<double> character(Code a) const noexcept;
  // exp(2 pi i k / p) for k in [0, p).
  std::complex<double> root_of_unity(std::uint32_t k) const noexcept;

  std::vector<Code> digits(Code a) const;
  Code from_digits(std::span<const Code> digits) const;

 private:
  Field(std::uint32_t p, unsigned n, std::vector<Code> modulus);

  Code mul_poly(Code a, Code b) const noexcept;
  Code add_digits(Code a, Code b, bool subtract) const noexcept;

  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::vector<Code> modulus_;
  bool hypothesis_ok_;
  std::vector<std::uint32_t> pow_p_;        // p^i, i < n
  std::vector<std::uint32_t> basis_trace_;  // trace(x^i)
  std::vector<Code> add_table_;
  std::vector<Code> mul_table_;
  std::vector<std::complex<double>> roots_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Deterministic trial division.
bool is_prime(std::uint64_t value) noexcept;

// Exhaustive test against every monic polynomial of degree <= deg/2.
// poly is low-to-high and must be monic.
bool is_irreducible(std::uint32_t p, std::span<const Code> poly);

// Returns (p, n) with q = p^n for an odd prime p, if q has that shape.
std::optional<std::pair<std::uint32_t, unsigned>> odd_prime_power(std::uint64_t q) noexcept;

// A field element that remembers its field; mixing fields throws MixedFields.
class Scalar {
 public:
  Scalar(FieldPtr field, Code code);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  Code code() const noexcept { return code_; }

  Scalar inv() const;
  Scalar pow(std::uint64_t e) const;
  bool is_square() const noexcept { return field_->is_square(code_); }
  std::uint32_t trace() const noexcept { return field_->trace(code_); }
  std::complex<double> character() const noexcept { return field_->character(code_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b) noexcept;

 private:
  FieldPtr field_;
  Code code_;
};

// Throws Error(MixedFields) unless both fields describe the same GF(q).
void require_same_field(const Field& a, const Field& b);

}  // namespace ffdist
