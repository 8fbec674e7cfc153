#pragma once

// Graded pieces of homogeneous ideals: spans of generator multiples,
// interpolation through points, and containment/emptiness certificates.

#include <optional>
#include <vector>

#include "k3/curve_map.hpp"
#include "k3/field.hpp"
#include "k3/linalg.hpp"
#include "k3/poly.hpp"

namespace k3 {

/// Row-reduced basis of the degree-t part of (gens). Generators of degree
/// above t are ignored.
std::vector<MultiPoly> graded_ideal_piece(const PrimeField& f, const std::vector<MultiPoly>& gens, int t);
std::size_t graded_piece_dim(const PrimeField& f, const std::vector<MultiPoly>& gens, int t);

/// Rows of the evaluation matrix of degree-t monomials at the given points.
FpMatrix evaluation_matrix(const PrimeField& f, const std::vector<std::vector<Fp>>& points, int t);

/// Kernel of the evaluation matrix: the degree-t forms through all points.
std::vector<MultiPoly> vanishing_forms_at_points(const PrimeField& f, const std::vector<std::vector<Fp>>& points, int t,
                                                 int n);

/// Composition with the parametrisation is identically zero.
bool exact_containment(const PrimeField& f, const MultiPoly& g, const CurveMap& curve);

struct EmptinessResult {
  std::optional<int> degree;  // least t at which the ideal holds every degree-t form
  bool empty() const { return degree.has_value(); }
};

EmptinessResult empty_projective_check(const PrimeField& f, const std::vector<MultiPoly>& gens, int n, int t_max);

/// Default bound: largest generator degree + 6.
int default_t_max(const std::vector<MultiPoly>& gens);

/// Number of sample points used per curve component when interpolating
/// degree-t forms (more than deg * t, so the interpolated forms contain the curve).
std::size_t interpolation_points(int degree, int t);

/// Degree-t forms through a union of curves, by interpolation on
/// deterministic samples; every returned form is re-checked exactly.
std::vector<MultiPoly> curve_ideal_piece(const PrimeField& f, const std::vector<CurveMap>& curves, int t);
/// Rank of the evaluation matrix of the curves at degree t (= h^0 of the
/// restriction image).
std::size_t curve_evaluation_rank(const PrimeField& f, const std::vector<CurveMap>& curves, int t);

/// Sum of monomial multiples of `gens` landing in degree t, as dense rows.
std::vector<std::vector<Fp>> multiple_rows(const std::vector<MultiPoly>& gens, int t);

}  // namespace k3
