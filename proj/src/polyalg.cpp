#include "k3/polyalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3 {

std::vector<std::vector<Fp>> multiple_rows(const std::vector<MultiPoly>& gens, int t) {
  std::vector<std::vector<Fp>> rows;
  if (gens.empty()) return rows;
  const int nv = gens[0].nvars();
  const MonomialBasis& target = monomial_basis(nv, t);
  for (const auto& g : gens) {
    if (g.degree() > t || g.is_zero()) continue;
    for (const auto& shift : monomial_basis(nv, t - g.degree()).monomials()) rows.push_back(shifted_dense(g, shift, target));
  }
  return rows;
}

std::vector<MultiPoly> graded_ideal_piece(const PrimeField& f, const std::vector<MultiPoly>& gens, int t) {
  std::vector<MultiPoly> out;
  if (gens.empty()) return out;
  const int nv = gens[0].nvars();
  const MonomialBasis& target = monomial_basis(nv, t);
  RowEchelon e(f, target.size());
  for (const auto& row : multiple_rows(gens, t)) {
    e.add_row(row);
    if (e.full()) break;
  }
  for (const auto& r : e.reduced_rows()) out.push_back(MultiPoly::from_dense(nv, t, r));
  return out;
}

std::size_t graded_piece_dim(const PrimeField& f, const std::vector<MultiPoly>& gens, int t) {
  if (gens.empty()) return 0;
  const int nv = gens[0].nvars();
  const MonomialBasis& target = monomial_basis(nv, t);
  RowEchelon e(f, target.size());
  for (const auto& g : gens) {
    if (g.degree() > t || g.is_zero()) continue;
    for (const auto& shift : monomial_basis(nv, t - g.degree()).monomials()) {
      e.add_row(shifted_dense(g, shift, target));
      if (e.full()) return e.rank();
    }
  }
  return e.rank();
}

FpMatrix evaluation_matrix(const PrimeField& f, const std::vector<std::vector<Fp>>& points, int t) {
  if (points.empty()) throw std::invalid_argument("evaluation_matrix: no points");
  const MonomialBasis& b = monomial_basis(static_cast<int>(points[0].size()), t);
  FpMatrix m(0, b.size());
  for (const auto& p : points) m.append_row(evaluate_monomials(f, b, p));
  return m;
}

std::vector<MultiPoly> vanishing_forms_at_points(const PrimeField& f, const std::vector<std::vector<Fp>>& points, int t,
                                                 int n) {
  std::vector<MultiPoly> out;
  if (points.empty()) {
    for (const auto& e : monomial_basis(n + 1, t).monomials()) {
      MultiPoly m(n + 1, t);
      m.add_term(f, e, 1);
      out.push_back(m);
    }
    return out;
  }
  for (const auto& v : kernel_basis(f, evaluation_matrix(f, points, t))) out.push_back(MultiPoly::from_dense(n + 1, t, v));
  return out;
}

bool exact_containment(const PrimeField& f, const MultiPoly& g, const CurveMap& curve) { return vanishes_on(f, g, curve); }

EmptinessResult empty_projective_check(const PrimeField& f, const std::vector<MultiPoly>& gens, int n, int t_max) {
  if (gens.empty()) return {};
  int t0 = gens[0].degree();
  for (const auto& g : gens) t0 = std::min(t0, g.degree());
  for (int t = std::max(t0, 1); t <= t_max; ++t) {
    if (graded_piece_dim(f, gens, t) == binomial(n + t, t)) return {t};
  }
  return {};
}

int default_t_max(const std::vector<MultiPoly>& gens) {
  int d = 0;
  for (const auto& g : gens) d = std::max(d, g.degree());
  return d + 6;
}

std::size_t interpolation_points(int degree, int t) { return static_cast<std::size_t>(degree * t + 2); }

namespace {

std::vector<std::vector<Fp>> curve_samples(const PrimeField& f, const std::vector<CurveMap>& curves, int t) {
  std::vector<std::vector<Fp>> pts;
  for (const auto& c : curves) {
    auto params = sample_params(f, c, interpolation_points(curve_degree(c), t));
    for (const auto& p : params) pts.push_back(point_at(f, c, p));
  }
  return pts;
}

}  // namespace

std::vector<MultiPoly> curve_ideal_piece(const PrimeField& f, const std::vector<CurveMap>& curves, int t) {
  if (curves.empty()) throw std::invalid_argument("curve_ideal_piece: no curves");
  auto forms = vanishing_forms_at_points(f, curve_samples(f, curves, t), t, ambient_n(curves[0]));
  for (const auto& g : forms)
    for (const auto& c : curves)
      if (!exact_containment(f, g, c)) throw std::logic_error("curve_ideal_piece: interpolated form does not contain the curve");
  return forms;
}

std::size_t curve_evaluation_rank(const PrimeField& f, const std::vector<CurveMap>& curves, int t) {
  return rank(f, evaluation_matrix(f, curve_samples(f, curves, t), t));
}

}  // namespace k3
