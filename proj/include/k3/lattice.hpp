#pragma once

// Exact integer-lattice arithmetic for the rank-3 lattices spanned by the
// hyperplane class and two curve classes on a K3 surface.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "k3/model_case.hpp"

namespace k3 {

using Rational = boost::rational<std::int64_t>;
using IntVec3 = std::array<std::int64_t, 3>;

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Symmetric 3x3 intersection matrix. Index 0 is always the hyperplane class H.
struct GramMatrix3 {
  std::array<std::array<std::int64_t, 3>, 3> entries{};
  std::array<std::string, 3> basis_labels{"H", "A", "B"};

  std::int64_t at(int i, int j) const { return entries[i][j]; }
  std::int64_t pairing(const IntVec3& a, const IntVec3& b) const;
  std::int64_t square(const IntVec3& a) const { return pairing(a, a); }
  std::int64_t degree(const IntVec3& a) const { return pairing(a, IntVec3{1, 0, 0}); }
  bool is_even() const;
  IntMatrix to_matrix() const;

  bool operator==(const GramMatrix3& rhs) const { return entries == rhs.entries; }
};

struct BuiltGram {
  GramMatrix3 gram;
  std::int64_t k = 0;  // det / 2
};

/// Intersection matrix of a configuration in the basis (H, first curve, second curve).
///   case1           degrees {g1, g2}, m = Gamma1.Gamma2
///   case2           degrees {d, gamma}, basis (H, E, Gamma), m must be 1
///   nodal_elliptic  degrees {d}, basis (H, C_p, E), m must be 1
///   nodal_rational  degrees {gamma}, basis (H, C_p, Gamma), m = C_p.Gamma
/// Throws std::invalid_argument when the parameters do not fit the case.
BuiltGram build_gram(ModelCase c, int n, std::span<const int> degrees, int m);

std::int64_t determinant(const GramMatrix3& g);
/// Fraction-free (Bareiss) determinant of a square matrix.
std::int64_t determinant(const IntMatrix& a);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

/// Exact inertia by pivoted rational diagonalisation.
Inertia signature(const IntMatrix& g);
Inertia signature(const GramMatrix3& g);

struct SmithForm {
  IntMatrix d;  // diagonal, d_i | d_{i+1}, non-negative
  IntMatrix u;  // unimodular, u * a * v == d
  IntMatrix v;
  std::vector<std::int64_t> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Inverse of a unimodular integer matrix. Throws if |det| != 1.
IntMatrix inverse_unimodular(const IntMatrix& a);

struct FiniteAbelianGroup {
  std::vector<std::int64_t> invariant_factors;          // each > 1, d_i | d_{i+1}
  std::vector<std::vector<std::int64_t>> generator_lifts;  // dual coordinates x, element G^{-1} x

  std::int64_t order() const;
  bool is_cyclic() const { return invariant_factors.size() <= 1; }
};

struct DiscriminantForm {
  FiniteAbelianGroup group;
  std::vector<Rational> q_values;                      // in [0, 2)
  std::vector<std::vector<Rational>> bilinear_values;  // in [0, 1)
};

/// Representative of r modulo m in [0, m).
Rational mod_rational(const Rational& r, std::int64_t m);

/// x^T G^{-1} y for dual coordinates x, y (no reduction).
Rational dual_pairing(const IntMatrix& g, std::span<const std::int64_t> x,
                      std::span<const std::int64_t> y);

/// Discriminant group L^* / L with its Q/2Z-valued quadratic form.
/// Throws std::invalid_argument on a degenerate Gram matrix.
DiscriminantForm discriminant_form(const IntMatrix& g);
DiscriminantForm discriminant_form(const GramMatrix3& g);

/// True iff g lies in the genus of U + <-2k>: even, signature (1,2),
/// det 2k, cyclic discriminant group of order 2k whose generator has
/// q = -c^2/(2k) mod 2 for some unit c.
bool is_genus_U_plus(const GramMatrix3& g, std::int64_t k);

/// Primitive vector orthogonal to the two basis classes of a unimodular
/// hyperbolic pair, normalised so its first non-zero coordinate is positive.
IntVec3 orthogonal_complement_generator(const GramMatrix3& g, std::pair<int, int> hyperbolic_pair);

/// Searches for isotropic e, f with e.f = 1 (a copy of U). Exhaustive over
/// |e_0|, |e_1| <= radius.
std::optional<std::pair<IntVec3, IntVec3>> find_hyperbolic_pair(const GramMatrix3& g, int radius = 60);

/// Every v with v.H == degree and v.v >= min_square. The set is finite
/// because H^perp is negative definite.
std::vector<IntVec3> classes_of_degree(const GramMatrix3& g, std::int64_t degree,
                                       std::int64_t min_square);

struct VeryAmpleObstruction {
  std::string rule;  // "SD1" (-2)-class of degree 0, "SD2" elliptic of degree <= 2, "SD3" trigonal
  IntVec3 witness_class{};
};

/// Finite Saint-Donat checks that H embeds the surface as a complete
/// intersection in P^n (for the nodal cases, with exactly one contracted
/// (-2)-class, C_p).
std::optional<VeryAmpleObstruction> very_ample_obstruction(const GramMatrix3& g, ModelCase c, int n);

struct PrimeOutcome {
  std::int64_t prime = 0;
  std::string rule;          // "R1".."R5", or "unresolved"
  IntVec3 class_numerator{};  // the excluded class is class_numerator / prime
  bool canonical = true;      // false if found by searching other coset representatives
};

struct PrimitivityVerdict {
  std::int64_t k = 0;
  std::vector<std::int64_t> tested_primes;
  std::vector<PrimeOutcome> per_prime;
  IntVec3 complement_generator{};

  bool primitive() const;
};

/// For each prime r with r^2 | k, the class c/r generating the order-r
/// subgroup of L^*/L is tested against the exclusion rules
///   R1  square 0 and 0 < |degree| <= 2
///   R2  square -2 and degree 0
///   R3  square -2 pairing with opposite signs against two nef classes (H, E)
///   R4  (case1) the class is (Gamma1+Gamma2)/r and Gamma1+Gamma2 is reduced, connected of square 0
///   R5  the class is H/r (the hyperplane class is primitive)
PrimitivityVerdict primitivity_report(const GramMatrix3& g, std::int64_t k, ModelCase c);

std::vector<std::int64_t> primes_with_square_dividing(std::int64_t k);

}  // namespace k3
