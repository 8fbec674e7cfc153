#pragma once

// K3 complete intersections through the curve data, their
// smoothness or single-node certificates, and the dimension ledger.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/curves.hpp"
#include "k3/enumerate.hpp"
#include "k3/field.hpp"
#include "k3/poly.hpp"

namespace k3 {

/// Degrees of the forms cutting out the surface: {4}, {2, 3} or {2, 2, 2}.
std::vector<int> surface_degrees(int n);
/// Degrees whose ideal pieces enter the fiber count: {4}, {2, 3} or {2}.
std::vector<int> fiber_degrees(int n);

/// Certified bases of I(t) of the curve union for the fiber degrees.
std::map<int, std::vector<MultiPoly>> pair_ideal_pieces(const PrimeField& f, const PairWitness& pair);
std::map<int, int> pair_ideal_dims(const PrimeField& f, const PairWitness& pair);

/// n=3: h(4)-1; n=4: (h(2)-1)+(h(3)-6); n=5: 3(h(2)-3).
int fiber_dimension(int n, const std::map<int, int>& dims);

struct NodalSystem {
  std::map<int, std::vector<MultiPoly>> nodal;  // forms through the curve, double at the node
  std::map<int, std::vector<MultiPoly>> all;    // n = 5: quadrics through the curve and the node
  std::vector<Fp> hyperplane;                   // n = 4: the tangent hyperplane at the node

  std::map<int, int> nodal_dims() const;
  std::map<int, int> all_dims() const;
};

/// Linear forms l with l(p) = 0 and, when given, l(tangent) = 0.
std::vector<Fp> random_tangent_hyperplane(const PrimeField& f, const std::vector<Fp>& p,
                                          const std::optional<std::vector<Fp>>& tangent, Rng& rng);

/// n=3: I_C(4) with a double point at p; n=4: I_C(2), I_C(3) with gradient
/// at p proportional to the hyperplane; n=5: I_C(2) double at p next to the
/// quadrics of I_C(2) through p.
NodalSystem nodal_linear_system(const PrimeField& f, const CurveMap& curve, const std::vector<Fp>& p, int n,
                                const std::vector<Fp>& hyperplane = {});

/// Nodal count; `hyperplane_params` is added for n = 4.
int nodal_fiber_dimension(int n, int hyperplane_params, const std::map<int, int>& nodal, const std::map<int, int>& all);

/// Hilbert function of the quotient equals (n-1)t^2 + 2 at t = maxdeg+1, maxdeg+2.
bool complete_intersection_check(const PrimeField& f, const std::vector<MultiPoly>& gens, int n);

/// n=4: the cubic is not in quadric * linear forms; n=5: the quadrics are independent.
bool generators_independent(const PrimeField& f, const std::vector<MultiPoly>& gens, int n);

/// Surface generators plus the maximal minors of the Jacobian matrix.
std::vector<MultiPoly> singular_locus_generators(const PrimeField& f, const std::vector<MultiPoly>& gens, int n);

struct Certificate {
  enum class Kind { smooth, node, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<int> degree;  // certifying degree t
  std::vector<Fp> node_point;
  int hessian_rank = -1;
  std::string failure;  // sub-check that failed, when inconclusive
};

std::string to_string(Certificate::Kind k);

/// Empty singular locus, by the degree-piece emptiness test.
Certificate smoothness_certificate(const PrimeField& f, const std::vector<MultiPoly>& gens, int n,
                                   std::optional<int> t_max = std::nullopt);

/// Single reduced singular point at p (quotient of the singular-locus ideal
/// of dimension 1 at two consecutive degrees) with a rank-3 local quadratic form.
Certificate node_certificate(const PrimeField& f, const std::vector<MultiPoly>& gens, int n, const std::vector<Fp>& p,
                             std::optional<int> t_max = std::nullopt);

/// Rank of the second-order form left after eliminating the smooth directions at p.
int local_hessian_rank(const PrimeField& f, const std::vector<MultiPoly>& gens, const std::vector<Fp>& p);

struct SurfaceWitness {
  int n = 3;
  std::vector<MultiPoly> generators;
  std::map<int, int> h0_values;    // ideal of the curves (all quadrics for nodal n = 5)
  std::map<int, int> h0_nodal;     // nodal systems, empty otherwise
  std::vector<Fp> hyperplane;      // nodal n = 4
  int fiber_dim = 0;
  Certificate certificate;
};

/// Thrown when the ideal pieces are too small to hold a surface.
class NoSurface : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random generators from the certified pieces, subject to independence and
/// the complete-intersection Hilbert check; the certificate is filled in.
SurfaceWitness pick_surface(const PrimeField& f, const Configuration& cfg, const PairWitness& pair, Rng& rng,
                            std::optional<int> t_max = std::nullopt);

struct LedgerVerdict {
  int incidence_dim = 0;
  int tangent_dim = 0;
  int fiber_dim = 0;
  int required_fiber_dim = 0;
  int target = 0;
  int pgl_dim = 0;
  bool pass = false;
};

/// incidence + fiber = target + dim PGL, with the tangent dimension matching incidence.
LedgerVerdict dimension_ledger(const Configuration& cfg, int tangent_dim, int fiber_dim);

}  // namespace k3
