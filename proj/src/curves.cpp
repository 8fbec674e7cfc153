#include "k3/curves.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "k3/linalg.hpp"
#include "k3/polyalg.hpp"

namespace k3 {

namespace {

std::size_t vector_rank(const PrimeField& f, const std::vector<std::vector<Fp>>& vs) {
  if (vs.empty()) return 0;
  RowEchelon e(f, vs[0].size());
  for (const auto& v : vs) e.add_row(v);
  return e.rank();
}

int span_dim(const PrimeField& f, const CurveMap& c) { return static_cast<int>(curve_evaluation_rank(f, {c}, 1)) - 1; }

// Castelnuovo-Mumford regularity bound for a smooth curve spanning a P^s.
int regularity_bound(const PrimeField& f, const CurveMap& c) {
  return std::max(1, curve_degree(c) - span_dim(f, c) + 2);
}

bool separates_samples(const PrimeField& f, const CurveMap& c) {
  constexpr std::size_t kSamples = 200;
  std::set<std::vector<Fp>> seen;
  for (const auto& prm : sample_params(f, c, kSamples, 2)) {
    auto p = normalize_point(f, point_at(f, c, prm));
    if (!seen.insert(p).second) return false;
    if (auto cp = std::get_if<CubicPoint>(&prm); cp && cp->y == 0) continue;
    if (vector_rank(f, {p, tangent_at(f, c, prm)}) != 2) return false;
  }
  return true;
}

}  // namespace

int curve_h0(int e, int g, int t) { return e * t + 1 - g; }

int embedding_check_degree(int n, int e, int g) {
  for (int t = 1;; ++t)
    if (e * t >= (g == 1 ? 3 : 1) && binomial(n + t, t) >= static_cast<std::uint64_t>(curve_h0(e, g, t))) return t;
}

bool embedding_certified(const PrimeField& f, const CurveMap& c) {
  if (auto r = std::get_if<RationalMap>(&c)) {
    for (const auto& b : r->forms)
      if (b.degree != r->degree || b.poly.degree() > r->degree) return false;
    if (have_common_zero(f, r->forms)) return false;
  } else {
    const auto& e = std::get<EllipticMap>(c);
    const Fp disc = f.add(f.mul(4, f.pow(e.a, 3)), f.mul(27, f.mul(e.b, e.b)));
    if (disc == 0) return false;
    if (e.monomials != weierstrass_monomials(e.degree)) return false;
    for (const auto& row : e.linear_map)
      if (row.size() != e.monomials.size()) return false;
  }
  const int e = curve_degree(c), g = curve_genus(c);
  const int t = embedding_check_degree(ambient_n(c), e, g);
  if (curve_evaluation_rank(f, {c}, t) != static_cast<std::size_t>(curve_h0(e, g, t))) return false;
  return separates_samples(f, c);
}

EllipticMap random_elliptic_curve(const PrimeField& f, int n, int d, Rng& rng) {
  if (d < 3 || d > 12) throw std::invalid_argument("random_elliptic_curve: degree out of range");
  if (n < 3 || n > 5) throw std::invalid_argument("random_elliptic_curve: n out of range");
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    EllipticMap e;
    e.a = rng.element(f);
    e.b = rng.element(f);
    if (f.add(f.mul(4, f.pow(e.a, 3)), f.mul(27, f.mul(e.b, e.b))) == 0) continue;
    e.degree = d;
    e.monomials = weierstrass_monomials(d);
    for (int i = 0; i <= n; ++i) e.linear_map.push_back(rng.vector(f, e.monomials.size()));
    if (embedding_certified(f, e)) return e;
  }
  throw RetryExhausted("random_elliptic_curve: no embedded curve within the retry budget");
}

CubicPoint random_cubic_point(const PrimeField& f, const EllipticMap& e, Rng& rng) {
  return std::get<CubicPoint>(random_params(f, e, 1, rng)[0]);
}

RationalThrough rational_through_points(const PrimeField& f, int n, int gamma, const std::vector<std::vector<Fp>>& points,
                                        Rng& rng) {
  const std::size_t m = points.size();
  if (gamma < 1) throw std::invalid_argument("rational_through_points: degree must be positive");
  if (static_cast<int>(m) > 2 * gamma) throw std::invalid_argument("rational_through_points: more than 2*gamma points");
  for (const auto& p : points)
    if (p.size() != static_cast<std::size_t>(n + 1)) throw std::invalid_argument("rational_through_points: bad point");
  const std::size_t nc = static_cast<std::size_t>((n + 1) * (gamma + 1));
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Fp> ts;
    std::set<Fp> used;
    while (ts.size() < m) {
      Fp t = rng.element(f);
      if (used.insert(t).second) ts.push_back(t);
    }
    FpMatrix sys(0, nc + m);
    for (std::size_t i = 0; i < m; ++i)
      for (int j = 0; j <= n; ++j) {
        std::vector<Fp> row(nc + m, 0);
        Fp pw = 1;
        for (int k = 0; k <= gamma; ++k, pw = f.mul(pw, ts[i])) row[static_cast<std::size_t>(j * (gamma + 1) + k)] = pw;
        row[nc + i] = f.neg(points[i][static_cast<std::size_t>(j)]);
        sys.append_row(row);
      }
    std::vector<std::vector<Fp>> ker;
    if (m == 0) {
      for (std::size_t i = 0; i < nc; ++i) {
        std::vector<Fp> v(nc, 0);
        v[i] = 1;
        ker.push_back(v);
      }
    } else {
      ker = kernel_basis(f, sys);
    }
    if (ker.empty()) continue;
    std::vector<Fp> sol(ker[0].size(), 0);
    for (const auto& v : ker) {
      const Fp c = rng.element(f);
      for (std::size_t i = 0; i < sol.size(); ++i) sol[i] = f.add(sol[i], f.mul(c, v[i]));
    }
    bool lambdas_ok = true;
    for (std::size_t i = 0; i < m; ++i)
      if (sol[nc + i] == 0) lambdas_ok = false;
    if (!lambdas_ok) continue;
    RationalMap map;
    map.degree = gamma;
    for (int j = 0; j <= n; ++j) {
      auto first = sol.begin() + j * (gamma + 1);
      map.forms.push_back(BinaryForm{gamma, UPoly(std::vector<Fp>(first, first + gamma + 1))});
    }
    if (!embedding_certified(f, map)) continue;
    return {map, ts};
  }
  throw RetryExhausted("rational_through_points: no embedded curve within the retry budget");
}

bool in_general_position(const PrimeField& f, const std::vector<std::vector<Fp>>& points) {
  const std::size_t m = points.size();
  if (m == 0) return true;
  if (m > 20) throw std::invalid_argument("in_general_position: too many points");
  const std::size_t span = vector_rank(f, points);
  const std::size_t smax = std::min(m, span);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::vector<Fp>> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) sub.push_back(points[i]);
    if (sub.size() > smax) continue;
    if (vector_rank(f, sub) != sub.size()) return false;
  }
  return true;
}

bool transversal(const PrimeField& f, const std::vector<Fp>& p, const std::vector<Fp>& t1, const std::vector<Fp>& t2) {
  return vector_rank(f, {p, t1, t2}) == 3;
}

int intersection_start_degree(const std::vector<CurveMap>& curves) {
  // the regularity bound needs the span, which needs a field; use the
  // nondegenerate bound and let the loop climb if needed
  int t = 1;
  for (const auto& c : curves) t = std::max(t, curve_degree(c) - ambient_n(c) + 2);
  return t;
}

IntersectionLength intersection_length(const PrimeField& f, const std::vector<CurveMap>& curves, int t_stab) {
  if (curves.size() != 2) throw std::invalid_argument("intersection_length: needs two curves");
  const int n = ambient_n(curves[0]);
  auto value_at = [&](int t) {
    RowEchelon e(f, binomial(n + t, t));
    for (const auto& c : curves)
      for (const auto& g : curve_ideal_piece(f, {c}, t)) e.add_row(g.dense());
    return static_cast<int>(binomial(n + t, t) - e.rank());
  };
  int prev = value_at(t_stab);
  for (int t = t_stab; t < t_stab + 6; ++t) {
    int next = value_at(t + 1);
    if (next == prev) return {prev, t};
    prev = next;
  }
  return {std::nullopt, t_stab};
}

namespace {

bool off_curve(const PrimeField& f, const CurveMap& c, const std::vector<Fp>& p) {
  for (const auto& g : curve_ideal_piece(f, {c}, regularity_bound(f, c)))
    if (evaluate(f, g, p) != 0) return true;
  return false;
}

}  // namespace

std::optional<std::string> pair_defect(const PrimeField& f, const PairWitness& w) {
  const bool nodal = is_nodal(w.kind);
  if (w.curves.size() != (nodal ? 1u : 2u)) return "curve-count";
  for (const auto& c : w.curves) {
    if (ambient_n(c) != w.n) return "ambient";
    if (!embedding_certified(f, c)) return "embedding";
  }
  std::vector<std::vector<Fp>> meet_points;
  for (const auto& m : w.meets) {
    if (m.params.size() != w.curves.size()) return "meet-params";
    for (std::size_t i = 0; i < w.curves.size(); ++i) {
      if (auto cp = std::get_if<CubicPoint>(&m.params[i]); cp && cp->y == 0) return "meet-params";
      if (auto e = std::get_if<EllipticMap>(&w.curves[i]); e && !std::holds_alternative<CubicPoint>(m.params[i]))
        return "meet-params";
      if (auto e = std::get_if<EllipticMap>(&w.curves[i]); e && !e->on_curve(f, std::get<CubicPoint>(m.params[i])))
        return "meet-params";
      if (std::holds_alternative<RationalMap>(w.curves[i]) && !std::holds_alternative<Fp>(m.params[i]))
        return "meet-params";
      if (!same_projective_point(f, point_at(f, w.curves[i], m.params[i]), m.point)) return "meet-point";
    }
    if (w.curves.size() == 2) {
      bool tr = transversal(f, m.point, tangent_at(f, w.curves[0], m.params[0]), tangent_at(f, w.curves[1], m.params[1]));
      if (!tr || !m.transversal) return "transversality";
    }
    meet_points.push_back(m.point);
  }
  if (!nodal) {
    const int expected = w.kind == ModelCase::case2 ? 1 : static_cast<int>(w.meets.size());
    if (static_cast<int>(w.meets.size()) != expected) return "meet-count";
    auto len = intersection_length(f, w.curves, intersection_start_degree(w.curves));
    if (!len.value || *len.value != expected) return "intersection-length";
    if (!in_general_position(f, meet_points)) return "general-position";
    if (w.node || w.node_param) return "node";
  } else {
    if (!w.meets.empty()) return "meet-count";
    if (!w.node || w.node->size() != static_cast<std::size_t>(w.n + 1)) return "node";
    if (w.node_param) {
      const auto& c = w.curves[0];
      if (auto cp = std::get_if<CubicPoint>(&*w.node_param)) {
        if (!std::holds_alternative<EllipticMap>(c) || cp->y == 0 || !std::get<EllipticMap>(c).on_curve(f, *cp))
          return "node-param";
      } else if (!std::holds_alternative<RationalMap>(c)) {
        return "node-param";
      }
      if (!same_projective_point(f, point_at(f, c, *w.node_param), *w.node)) return "node-on-curve";
    } else if (!off_curve(f, w.curves[0], *w.node)) {
      return "node-off-curve";
    }
  }
  return std::nullopt;
}

PairWitness build_pair(const PrimeField& f, const Configuration& cfg, Rng& rng) {
  const int n = cfg.n;
  std::string last = "none";
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    PairWitness w;
    w.kind = cfg.kind;
    w.n = n;
    switch (cfg.kind) {
      case ModelCase::case1: {
        const int g1 = cfg.degrees[0], g2 = cfg.degrees[1];
        auto second = rational_through_points(f, n, g2, {}, rng).map;
        std::vector<CurveParam> on_second = random_params(f, second, static_cast<std::size_t>(cfg.m), rng);
        std::vector<std::vector<Fp>> pts;
        for (const auto& s : on_second) pts.push_back(normalize_point(f, point_at(f, second, s)));
        if (!in_general_position(f, pts)) {
          last = "general-position";
          continue;
        }
        auto first = rational_through_points(f, n, g1, pts, rng);
        w.curves = {first.map, second};
        for (std::size_t i = 0; i < pts.size(); ++i) w.meets.push_back({{first.params[i], on_second[i]}, pts[i], false});
        break;
      }
      case ModelCase::case2: {
        auto e = random_elliptic_curve(f, n, cfg.degrees[0], rng);
        CubicPoint p = random_cubic_point(f, e, rng);
        auto pt = normalize_point(f, e.point(f, p));
        auto g = rational_through_points(f, n, cfg.degrees[1], {pt}, rng);
        w.curves = {e, g.map};
        w.meets.push_back({{p, g.params[0]}, pt, false});
        break;
      }
      case ModelCase::nodal_elliptic: {
        auto e = random_elliptic_curve(f, n, cfg.degrees[0], rng);
        CubicPoint p = random_cubic_point(f, e, rng);
        w.curves = {e};
        w.node = normalize_point(f, e.point(f, p));
        w.node_param = p;
        break;
      }
      case ModelCase::nodal_rational: {
        if (cfg.m == 2) throw Unsupported("nodal rational curves through the node twice are not constructed");
        auto g = rational_through_points(f, n, cfg.degrees[0], {}, rng).map;
        w.curves = {g};
        if (cfg.m == 1) {
          CurveParam t = random_params(f, g, 1, rng)[0];
          w.node = normalize_point(f, point_at(f, g, t));
          w.node_param = t;
        } else {
          std::vector<Fp> p;
          do p = rng.vector(f, static_cast<std::size_t>(n + 1));
          while (std::all_of(p.begin(), p.end(), [](Fp x) { return x == 0; }));
          w.node = normalize_point(f, p);
        }
        break;
      }
    }
    for (auto& m : w.meets)
      m.transversal = transversal(f, m.point, tangent_at(f, w.curves[0], m.params[0]), tangent_at(f, w.curves[1], m.params[1]));
    auto defect = pair_defect(f, w);
    if (!defect) return w;
    last = *defect;
  }
  throw RetryExhausted("build_pair: " + cfg.label() + " failed check '" + last + "' on every draw");
}

std::vector<MultiPoly> curve_ideal_generators(const PrimeField& f, const CurveMap& c) {
  const int n = ambient_n(c);
  const int top = regularity_bound(f, c);
  std::vector<MultiPoly> gens;
  for (int t = 1; t <= top + 1; ++t) {
    const auto piece = curve_ideal_piece(f, {c}, t);
    RowEchelon e(f, binomial(n + t, t));
    for (const auto& row : multiple_rows(gens, t)) e.add_row(row);
    if (t == top + 1) {
      if (e.rank() != piece.size()) throw std::logic_error("curve_ideal_generators: ideal not generated below the bound");
      break;
    }
    for (const auto& g : piece)
      if (e.add_row(g.dense())) gens.push_back(g);
  }
  return gens;
}

}  // namespace k3
