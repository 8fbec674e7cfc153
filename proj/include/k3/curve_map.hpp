#pragma once

// Parametrisations of rational and elliptic curves in P^n and the
// pullback of forms along them.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "k3/field.hpp"
#include "k3/poly.hpp"

namespace k3 {

/// t -> (phi_0(1,t) : ... : phi_n(1,t)); the point (0:1) is t = infinity.
struct RationalMap {
  int degree = 0;
  std::vector<BinaryForm> forms;

  int n() const { return static_cast<int>(forms.size()) - 1; }
  std::vector<Fp> point(const PrimeField& f, Fp t) const;
  std::vector<Fp> point_at_infinity(const PrimeField& f) const;
  std::vector<Fp> tangent(const PrimeField& f, Fp t) const;
  /// g(phi(1,t)) as a polynomial in t of degree <= degree * deg g.
  UPoly pullback(const PrimeField& f, const MultiPoly& g) const;
};

/// Element A(x) + y B(x) of the coordinate ring of y^2 = x^3 + a x + b.
struct CurveFunction {
  UPoly a;
  UPoly b;
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

/// Affine point (x, y) of the Weierstrass cubic.
struct CubicPoint {
  Fp x = 0;
  Fp y = 0;
  bool operator==(const CubicPoint&) const = default;
};

/// Weierstrass cubic, the basis {x^i y^j : 2i + 3j <= d, j <= 1} of L(d q)
/// and a linear map from P^(d-1) to P^n.
struct EllipticMap {
  Fp a = 0;
  Fp b = 0;
  int degree = 0;
  std::vector<std::pair<int, int>> monomials;  // (i, j) for x^i y^j
  std::vector<std::vector<Fp>> linear_map;      // (n+1) x degree

  int n() const { return static_cast<int>(linear_map.size()) - 1; }
  UPoly cubic(const PrimeField& f) const;
  bool on_curve(const PrimeField& f, const CubicPoint& p) const;
  std::optional<Fp> y_at(const PrimeField& f, Fp x) const;  // some root, if any
  std::vector<CurveFunction> coordinates(const PrimeField& f) const;
  std::vector<Fp> point(const PrimeField& f, const CubicPoint& p) const;
  std::vector<Fp> tangent(const PrimeField& f, const CubicPoint& p) const;  // needs y != 0
  /// g pulled back and reduced modulo the Weierstrass relation.
  CurveFunction pullback(const PrimeField& f, const MultiPoly& g) const;
};

/// Riemann-Roch monomials for L(d q), ordered by pole order.
std::vector<std::pair<int, int>> weierstrass_monomials(int d);

CurveFunction add(const PrimeField& f, const CurveFunction& u, const CurveFunction& v);
CurveFunction mul(const PrimeField& f, const CurveFunction& u, const CurveFunction& v, const UPoly& cubic);

using CurveMap = std::variant<RationalMap, EllipticMap>;

int curve_degree(const CurveMap& c);
int curve_genus(const CurveMap& c);
int ambient_n(const CurveMap& c);

/// Parameter of a point on a curve: t for rational curves, (x, y) for elliptic ones.
using CurveParam = std::variant<Fp, CubicPoint>;

std::vector<Fp> point_at(const PrimeField& f, const CurveMap& c, const CurveParam& p);
std::vector<Fp> tangent_at(const PrimeField& f, const CurveMap& c, const CurveParam& p);

/// Deterministic distinct affine parameters: rational curves use t = start,
/// start+1, ...; elliptic curves scan x upward and take both roots.
std::vector<CurveParam> sample_params(const PrimeField& f, const CurveMap& c, std::size_t count, Fp start = 1);
/// Random distinct parameters (elliptic: y != 0).
std::vector<CurveParam> random_params(const PrimeField& f, const CurveMap& c, std::size_t count, Rng& rng);

/// Exact test that g vanishes identically on the curve.
bool vanishes_on(const PrimeField& f, const MultiPoly& g, const CurveMap& c);

/// Projective normalisation: first nonzero coordinate becomes 1.
std::vector<Fp> normalize_point(const PrimeField& f, std::vector<Fp> v);
bool same_projective_point(const PrimeField& f, const std::vector<Fp>& u, const std::vector<Fp>& v);

}  // namespace k3
