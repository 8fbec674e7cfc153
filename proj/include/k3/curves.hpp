#pragma once

// Explicit curves over F_p: elliptic curves with a marked point, rational
// curves through prescribed points, and the curve pairs the surfaces contain.

#include <optional>
#include <vector>

#include "k3/curve_map.hpp"
#include "k3/enumerate.hpp"
#include "k3/errors.hpp"
#include "k3/field.hpp"
#include "k3/poly.hpp"

namespace k3 {

/// Degree used to certify that a curve is embedded: the least t with
/// e*t >= 3 and enough degree-t forms to surject onto H^0(O_C(t)).
int embedding_check_degree(int n, int e, int g);

/// Surjectivity of restriction at embedding_check_degree, plus base-point
/// freeness (rational), plus injectivity/immersion on >= 200 samples.
bool embedding_certified(const PrimeField& f, const CurveMap& c);

/// h^0 of O_C(t) for a smooth curve of degree e and genus g <= 1.
int curve_h0(int e, int g, int t);

EllipticMap random_elliptic_curve(const PrimeField& f, int n, int d, Rng& rng);
/// Affine point with y != 0 (so x is a local parameter there).
CubicPoint random_cubic_point(const PrimeField& f, const EllipticMap& e, Rng& rng);

struct RationalThrough {
  RationalMap map;
  std::vector<Fp> params;  // map(params[i]) is a multiple of points[i]
};

/// Degree-gamma rational curve through the given points.
RationalThrough rational_through_points(const PrimeField& f, int n, int gamma, const std::vector<std::vector<Fp>>& points,
                                        Rng& rng);

/// Any s <= min(m, l+1) of the points span a P^(s-1), l the dimension of their span.
bool in_general_position(const PrimeField& f, const std::vector<std::vector<Fp>>& points);

struct Meet {
  std::vector<CurveParam> params;  // one per curve
  std::vector<Fp> point;           // normalised
  bool transversal = false;
};

struct PairWitness {
  ModelCase kind = ModelCase::case2;
  int n = 3;
  std::vector<CurveMap> curves;  // two curves, or one for the nodal cases
  std::vector<Meet> meets;
  std::optional<std::vector<Fp>> node;   // nodal cases
  std::optional<CurveParam> node_param;  // set when the node lies on the curve
};

/// Point and the two tangent vectors span a 3-space.
bool transversal(const PrimeField& f, const std::vector<Fp>& p, const std::vector<Fp>& t1, const std::vector<Fp>& t2);

/// Every generic certificate of a pair: embeddings, meets on both curves,
/// transversality, intersection length, general position, node placement.
/// Returns the name of the first failing check, or nothing.
std::optional<std::string> pair_defect(const PrimeField& f, const PairWitness& w);

PairWitness build_pair(const PrimeField& f, const Configuration& cfg, Rng& rng);

struct IntersectionLength {
  std::optional<int> value;  // empty when not stabilised
  int t = 0;                 // degree where the value stabilised
};

/// dim of (R/(I_1+I_2))_t, looked for at two consecutive degrees from t_stab on.
IntersectionLength intersection_length(const PrimeField& f, const std::vector<CurveMap>& curves, int t_stab);
/// Default start degree for intersection_length.
int intersection_start_degree(const std::vector<CurveMap>& curves);

/// Forms generating the ideal of a curve up to saturation, grouped by
/// degree, obtained from certified interpolated pieces.
std::vector<MultiPoly> curve_ideal_generators(const PrimeField& f, const CurveMap& c);

struct TangentResult {
  std::optional<int> value;  // empty when the generators exceed the bound
  int d_bound = 0;
};

/// Dimension of Hom(I_C, O_C) in degree 0 for each curve, glued along the
/// meets and the marked node (when it lies on the curve); an upper bound
/// that certifies a smooth point when it equals the formula dimension.
/// Syzygies are used up to the bound, max generator degree + 3 by default.
TangentResult hilbert_tangent_dim(const PrimeField& f, const PairWitness& w, std::optional<int> d_bound = std::nullopt);

}  // namespace k3
