#include "ffdist/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

using Poly = std::vector<std::uint64_t>;

// Remainder of num modulo a monic den, coefficients mod p.
Poly poly_mod(Poly num, const Poly& den, std::uint64_t p) {
  const std::size_t dd = den.size() - 1;
  for (std::size_t k = num.size(); k-- > dd;) {
    const std::uint64_t c = num[k] % p;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) {
      std::uint64_t& slot = num[k - dd + i];
      slot = (slot + (p - c) * den[i]) % p;
    }
  }
  num.resize(dd);
  return num;
}

bool all_zero(const Poly& poly) {
  for (auto c : poly)
    if (c != 0) return false;
  return true;
}

}  // namespace

bool is_prime(std::uint64_t value) noexcept {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2)
    if (value % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const Code> poly) {
  if (poly.size() < 2 || poly.back() != 1)
    throw Error(ErrorKind::InvalidArgument, "irreducibility test needs a monic polynomial of degree >= 1");
  const std::size_t deg = poly.size() - 1;
  const Poly num(poly.begin(), poly.end());
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    Poly den(d + 1, 0);
    den[d] = 1;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t rest = k;
      for (std::size_t i = 0; i < d; ++i) {
        den[i] = rest % p;
        rest /= p;
      }
      if (all_zero(poly_mod(num, den, p))) return false;
    }
  }
  return true;
}

std::optional<std::pair<std::uint32_t, unsigned>> odd_prime_power(std::uint64_t q) noexcept {
  if (q < 3 || q % 2 == 0) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 3; d * d <= q; d += 2) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  unsigned n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), n);
}

std::shared_ptr<const Field> Field::make(std::uint64_t p, unsigned n) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorKind::TooLarge, "p^n exceeds 2^31");
  }
  if (n == 1) return make(p, 1, {0, 1});

  std::vector<Code> modulus(n + 1, 0);
  modulus[n] = 1;
  // c_0 is the most significant digit of the enumeration index.
  for (std::uint64_t k = 0; k < q; ++k) {
    std::uint64_t rest = k;
    for (unsigned i = n; i-- > 0;) {
      modulus[i] = static_cast<Code>(rest % p);
      rest /= p;
    }
    if (modulus[0] == 0) continue;
    if (is_irreducible(static_cast<std::uint32_t>(p), modulus))
      return std::shared_ptr<const Field>(new Field(static_cast<std::uint32_t>(p), n, modulus));
  }
  throw Error(ErrorKind::NotIrreducible, "no irreducible polynomial found");  // unreachable
}

std::shared_ptr<const Field> Field::make(std::uint64_t p, unsigned n, std::vector<Code> modulus) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorKind::TooLarge, "p^n exceeds 2^31");
  }
  if (modulus.size() != n + 1 || modulus[n] != 1)
    throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree n");
  for (auto c : modulus)
    if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient out of range");
  if (n > 1 && !is_irreducible(static_cast<std::uint32_t>(p), modulus))
    throw Error(ErrorKind::NotIrreducible, "modulus is reducible over GF(p)");
  return std::shared_ptr<const Field>(new Field(static_cast<std::uint32_t>(p), n, std::move(modulus)));
}

Field::Field(std::uint32_t p, unsigned n, std::vector<Code> modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)), hypothesis_ok_(p % 4 == 3 && n % 2 == 1) {
  for (unsigned i = 0; i < n_; ++i) {
    pow_p_.push_back(q_);
    q_ *= p_;
  }

  if (n_ > 1 && q_ <= kTableOrder) {
    add_table_.resize(std::size_t{q_} * q_);
    mul_table_.resize(std::size_t{q_} * q_);
    for (Code a = 0; a < q_; ++a) {
      for (Code b = 0; b < q_; ++b) {
        add_table_[std::size_t{a} * q_ + b] = add_digits(a, b, false);
        mul_table_[std::size_t{a} * q_ + b] = mul_poly(a, b);
      }
    }
  }

  basis_trace_.resize(n_);
  for (unsigned i = 0; i < n_; ++i) {
    Code acc = 0;
    Code conj = pow_p_[i];
    for (unsigned j = 0; j < n_; ++j) {
      acc = add(acc, conj);
      conj = pow(conj, p_);
    }
    basis_trace_[i] = acc;  // lies in GF(p), so acc < p
  }

  if (p_ <= (1u << 16)) {
    std::vector<std::complex<double>> roots(p_);
    for (std::uint32_t k = 0; k < p_; ++k) roots[k] = root_of_unity(k);
    roots_ = std::move(roots);
  }
}

bool Field::same_as(const Field& other) const noexcept {
  return this == &other || (p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_);
}

Code Field::add_digits(Code a, Code b, bool subtract) const noexcept {
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    const std::uint32_t da = a % p_;
    const std::uint32_t db = b % p_;
    a /= p_;
    b /= p_;
    const std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    out += d * pow_p_[i];
  }
  return out;
}

Code Field::mul_poly(Code a, Code b) const noexcept {
  std::vector<std::uint64_t> da(n_), db(n_), prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    da[i] = a % p_;
    db[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  for (unsigned i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (std::size_t k = prod.size(); k-- > n_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (unsigned i = 0; i < n_; ++i) {
      std::uint64_t& slot = prod[k - n_ + i];
      slot = (slot + (p_ - c) * modulus_[i]) % p_;
    }
  }
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) out += static_cast<Code>(prod[i]) * pow_p_[i];
  return out;
}

Code Field::add(Code a, Code b) const noexcept {
  if (n_ == 1) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Code>(s >= p_ ? s - p_ : s);
  }
  if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
  return add_digits(a, b, false);
}

Code Field::neg(Code a) const noexcept {
  if (n_ == 1) return a == 0 ? 0 : p_ - a;
  return add_digits(0, a, true);
}

Code Field::sub(Code a, Code b) const noexcept {
  if (n_ == 1) return a >= b ? a - b : static_cast<Code>(std::uint64_t{a} + p_ - b);
  if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + neg(b)];
  return add_digits(a, b, true);
}

Code Field::mul(Code a, Code b) const noexcept {
  if (n_ == 1) return static_cast<Code>(std::uint64_t{a} * b % p_);
  if (!mul_table_.empty()) return mul_table_[std::size_t{a} * q_ + b];
  return mul_poly(a, b);
}

Code Field::pow(Code a, std::uint64_t e) const noexcept {
  Code result = 1;
  Code base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Code Field::inv(Code a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return pow(a, q_ - 2);
}

bool Field::is_square(Code a) const noexcept {
  return a == 0 || pow(a, (q_ - 1) / 2) == 1;
}

std::uint32_t Field::trace(Code a) const noexcept {
  if (n_ == 1) return a;
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < n_; ++i) {
    acc += std::uint64_t{a % p_} * basis_trace_[i];
    a /= p_;
  }
  return static_cast<std::uint32_t>(acc % p_);
}

std::complex<double> Field::root_of_unity(std::uint32_t k) const noexcept {
  if (!roots_.empty()) return roots_[k];
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p_);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> Field::character(Code a) const noexcept { return root_of_unity(trace(a)); }

std::vector<Code> Field::digits(Code a) const {
  std::vector<Code> out(n_);
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Code Field::from_digits(std::span<const Code> digits) const {
  if (digits.size() != n_) throw Error(ErrorKind::InvalidArgument, "digit count must equal n");
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (digits[i] >= p_) throw Error(ErrorKind::InvalidArgument, "digit out of range");
    out += digits[i] * pow_p_[i];
  }
  return out;
}

void require_same_field(const Field& a, const Field& b) {
  if (!a.same_as(b)) throw Error(ErrorKind::MixedFields, "operands belong to different fields");
}

Scalar::Scalar(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
  if (!field_) throw Error(ErrorKind::InvalidArgument, "scalar without a field");
  if (code_ >= field_->q()) throw Error(ErrorKind::InvalidArgument, "scalar code out of range");
}

Scalar Scalar::inv() const { return {field_, field_->inv(code_)}; }

Scalar Scalar::pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->add(a.code_, b.code_)};
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->sub(a.code_, b.code_)};
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->mul(a.code_, b.code_)};
}

Scalar operator-(const Scalar& a) { return {a.field_, a.field_->neg(a.code_)}; }

bool operator==(const Scalar& a, const Scalar& b) noexcept {
  return a.code_ == b.code_ && a.field_->same_as(*b.field_);
}

}  // namespace ffdist
