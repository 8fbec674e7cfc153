#pragma once

// Homogeneous polynomials in at most six variables and univariate
// polynomials, all over a prime field.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "k3/field.hpp"

namespace k3 {

constexpr int kMaxVars = 6;
using Exponent = std::array<std::uint8_t, kMaxVars>;

int total_degree(const Exponent& e);
std::uint64_t pack(const Exponent& e);
std::uint64_t binomial(int n, int k);

/// All monomials of one degree, in graded lexicographic order with
/// x0 > x1 > ... (so x0^t comes first).
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monos_.size(); }
  const Exponent& operator[](std::size_t i) const { return monos_[i]; }
  const std::vector<Exponent>& monomials() const { return monos_; }
  std::size_t index_of(const Exponent& e) const;

 private:
  int nvars_;
  int degree_;
  std::vector<Exponent> monos_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Cached bases; the returned reference lives for the program's lifetime.
const MonomialBasis& monomial_basis(int nvars, int degree);

struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

/// Sparse homogeneous polynomial; zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Fp, GrlexGreater>;

  MultiPoly() = default;
  MultiPoly(int nvars, int degree);

  static MultiPoly variable(int nvars, int i);
  static MultiPoly from_dense(int nvars, int degree, std::span<const Fp> coeffs);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Fp coefficient(const Exponent& e) const;

  /// Adds c * x^e; throws if e has the wrong degree.
  void add_term(const PrimeField& f, const Exponent& e, Fp c);
  std::vector<Fp> dense() const;

  bool operator==(const MultiPoly& o) const = default;

 private:
  int nvars_ = 0;
  int degree_ = 0;
  Terms terms_;
};

MultiPoly add(const PrimeField& f, const MultiPoly& a, const MultiPoly& b);
MultiPoly scale(const PrimeField& f, const MultiPoly& a, Fp c);
MultiPoly multiply(const PrimeField& f, const MultiPoly& a, const MultiPoly& b);
MultiPoly derivative(const PrimeField& f, const MultiPoly& a, int var);
Fp evaluate(const PrimeField& f, const MultiPoly& a, std::span<const Fp> point);
std::vector<Fp> gradient(const PrimeField& f, const MultiPoly& a, std::span<const Fp> point);
/// Linear combination sum c_i g_i of polynomials of equal degree.
MultiPoly combine(const PrimeField& f, const std::vector<MultiPoly>& gens, std::span<const Fp> coeffs);

/// Values of every basis monomial at a point.
std::vector<Fp> evaluate_monomials(const PrimeField& f, const MonomialBasis& basis, std::span<const Fp> point);

/// Dense coefficients of x^shift * g in the degree-(deg g + |shift|) basis.
std::vector<Fp> shifted_dense(const MultiPoly& g, const Exponent& shift, const MonomialBasis& target);

std::string to_string(const MultiPoly& a);

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Fp> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(Fp c) { return UPoly(std::vector<Fp>{c}); }
  static UPoly x() { return UPoly(std::vector<Fp>{0, 1}); }

  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Fp operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Fp>& coeffs() const { return c_; }
  Fp eval(const PrimeField& f, Fp x) const;

  bool operator==(const UPoly&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Fp> c_;
};

UPoly add(const PrimeField& f, const UPoly& a, const UPoly& b);
UPoly sub(const PrimeField& f, const UPoly& a, const UPoly& b);
UPoly mul(const PrimeField& f, const UPoly& a, const UPoly& b);
UPoly scale(const PrimeField& f, const UPoly& a, Fp c);
UPoly derivative(const PrimeField& f, const UPoly& a);
UPoly mod(const PrimeField& f, const UPoly& a, const UPoly& b);
UPoly gcd(const PrimeField& f, UPoly a, UPoly b);

/// Binary form of fixed degree e in (s:t), stored as the dehomogenised
/// polynomial in t (coefficient i belongs to s^(e-i) t^i).
struct BinaryForm {
  int degree = 0;
  UPoly poly;

  Fp eval(const PrimeField& f, Fp s, Fp t) const;
  bool operator==(const BinaryForm&) const = default;
};

/// True iff the forms have a common zero on P^1 (over the algebraic closure).
bool have_common_zero(const PrimeField& f, std::span<const BinaryForm> forms);

}  // namespace k3
