#include "k3/surfaces.hpp"

#include <algorithm>
#include <stdexcept>

#include "k3/linalg.hpp"
#include "k3/polyalg.hpp"

namespace k3 {

std::vector<int> surface_degrees(int n) {
  switch (n) {
    case 3: return {4};
    case 4: return {2, 3};
    case 5: return {2, 2, 2};
    default: throw std::invalid_argument("surface_degrees: n must be 3, 4 or 5");
  }
}

std::vector<int> fiber_degrees(int n) {
  switch (n) {
    case 3: return {4};
    case 4: return {2, 3};
    case 5: return {2};
    default: throw std::invalid_argument("fiber_degrees: n must be 3, 4 or 5");
  }
}

std::map<int, std::vector<MultiPoly>> pair_ideal_pieces(const PrimeField& f, const PairWitness& pair) {
  std::map<int, std::vector<MultiPoly>> out;
  for (int t : fiber_degrees(pair.n)) out[t] = curve_ideal_piece(f, pair.curves, t);
  return out;
}

std::map<int, int> pair_ideal_dims(const PrimeField& f, const PairWitness& pair) {
  std::map<int, int> out;
  for (const auto& [t, b] : pair_ideal_pieces(f, pair)) out[t] = static_cast<int>(b.size());
  return out;
}

namespace {

int dim_at(const std::map<int, int>& dims, int t) {
  auto it = dims.find(t);
  if (it == dims.end()) throw std::invalid_argument("missing h0 value in degree " + std::to_string(t));
  return it->second;
}

std::map<int, int> sizes(const std::map<int, std::vector<MultiPoly>>& m) {
  std::map<int, int> out;
  for (const auto& [t, b] : m) out[t] = static_cast<int>(b.size());
  return out;
}

// Random nonzero combination of a basis.
MultiPoly random_member(const PrimeField& f, const std::vector<MultiPoly>& basis, Rng& rng) {
  if (basis.empty()) throw NoSurface("empty linear system");
  for (;;) {
    auto g = combine(f, basis, rng.vector(f, basis.size()));
    if (!g.is_zero()) return g;
  }
}

}  // namespace

int fiber_dimension(int n, const std::map<int, int>& dims) {
  switch (n) {
    case 3: return dim_at(dims, 4) - 1;
    case 4: return (dim_at(dims, 2) - 1) + (dim_at(dims, 3) - 6);
    case 5: return 3 * (dim_at(dims, 2) - 3);
    default: throw std::invalid_argument("fiber_dimension: n must be 3, 4 or 5");
  }
}

std::map<int, int> NodalSystem::nodal_dims() const { return sizes(nodal); }
std::map<int, int> NodalSystem::all_dims() const { return sizes(all); }

std::vector<Fp> random_tangent_hyperplane(const PrimeField& f, const std::vector<Fp>& p,
                                          const std::optional<std::vector<Fp>>& tangent, Rng& rng) {
  FpMatrix m(0, p.size());
  m.append_row(p);
  if (tangent) m.append_row(*tangent);
  const auto ker = kernel_basis(f, m);
  for (;;) {
    std::vector<Fp> l(p.size(), 0);
    for (const auto& v : ker) {
      const Fp c = rng.element(f);
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = f.add(l[i], f.mul(c, v[i]));
    }
    if (std::any_of(l.begin(), l.end(), [](Fp x) { return x != 0; })) return l;
  }
}

namespace {

// Members of span(basis) whose gradient at p lies in span(dirs).
std::vector<MultiPoly> gradient_condition(const PrimeField& f, const std::vector<MultiPoly>& basis, const std::vector<Fp>& p,
                                          const std::vector<std::vector<Fp>>& dirs) {
  if (basis.empty()) return {};
  const std::size_t nb = basis.size(), nd = dirs.size();
  std::vector<std::vector<Fp>> grads;
  for (const auto& g : basis) grads.push_back(gradient(f, g, p));
  FpMatrix m(0, nb + nd);
  for (std::size_t j = 0; j < p.size(); ++j) {
    std::vector<Fp> row(nb + nd, 0);
    for (std::size_t b = 0; b < nb; ++b) row[b] = grads[b][j];
    for (std::size_t d = 0; d < nd; ++d) row[nb + d] = f.neg(dirs[d][j]);
    m.append_row(row);
  }
  // f(p) = 0 as well; automatic on the curve, and from Euler's relation otherwise
  std::vector<Fp> row(nb + nd, 0);
  for (std::size_t b = 0; b < nb; ++b) row[b] = evaluate(f, basis[b], p);
  m.append_row(row);
  RowEchelon e(f, binomial(basis[0].nvars() - 1 + basis[0].degree(), basis[0].degree()));
  std::vector<MultiPoly> out;
  for (const auto& v : kernel_basis(f, m)) {
    auto g = combine(f, basis, std::span<const Fp>(v.data(), nb));
    if (!g.is_zero() && e.add_row(g.dense())) out.push_back(g);
  }
  return out;
}

// Members of span(basis) vanishing at p.
std::vector<MultiPoly> through_point(const PrimeField& f, const std::vector<MultiPoly>& basis, const std::vector<Fp>& p) {
  std::vector<Fp> vals;
  for (const auto& g : basis) vals.push_back(evaluate(f, g, p));
  FpMatrix m(0, basis.size());
  m.append_row(vals);
  std::vector<MultiPoly> out;
  for (const auto& v : kernel_basis(f, m)) out.push_back(combine(f, basis, v));
  return out;
}

}  // namespace

NodalSystem nodal_linear_system(const PrimeField& f, const CurveMap& curve, const std::vector<Fp>& p, int n,
                                const std::vector<Fp>& hyperplane) {
  if (p.size() != static_cast<std::size_t>(n + 1)) throw std::invalid_argument("nodal_linear_system: bad point");
  NodalSystem out;
  switch (n) {
    case 3: out.nodal[4] = gradient_condition(f, curve_ideal_piece(f, {curve}, 4), p, {}); break;
    case 4:
      if (hyperplane.size() != p.size()) throw std::invalid_argument("nodal_linear_system: n = 4 needs a hyperplane");
      out.hyperplane = hyperplane;
      for (int t : {2, 3}) out.nodal[t] = gradient_condition(f, curve_ideal_piece(f, {curve}, t), p, {hyperplane});
      break;
    case 5:
      out.all[2] = through_point(f, curve_ideal_piece(f, {curve}, 2), p);
      out.nodal[2] = gradient_condition(f, out.all[2], p, {});
      break;
    default: throw std::invalid_argument("nodal_linear_system: n must be 3, 4 or 5");
  }
  return out;
}

int nodal_fiber_dimension(int n, int hyperplane_params, const std::map<int, int>& nodal, const std::map<int, int>& all) {
  switch (n) {
    case 3: return dim_at(nodal, 4) - 1;
    case 4: return hyperplane_params + (dim_at(nodal, 2) - 1) + (dim_at(nodal, 3) - 6);
    case 5: return (dim_at(nodal, 2) - 1) + 2 * (dim_at(all, 2) - 3);
    default: throw std::invalid_argument("nodal_fiber_dimension: n must be 3, 4 or 5");
  }
}

bool complete_intersection_check(const PrimeField& f, const std::vector<MultiPoly>& gens, int n) {
  if (gens.empty()) return false;
  int top = 0;
  for (const auto& g : gens) top = std::max(top, g.degree());
  for (int t : {top + 1, top + 2}) {
    const long quotient = static_cast<long>(binomial(n + t, t)) - static_cast<long>(graded_piece_dim(f, gens, t));
    if (quotient != static_cast<long>(n - 1) * t * t + 2) return false;
  }
  return true;
}

bool generators_independent(const PrimeField& f, const std::vector<MultiPoly>& gens, int n) {
  const auto want = surface_degrees(n);
  if (gens.size() != want.size()) return false;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].degree() != want[i] || gens[i].is_zero()) return false;
  if (n == 4) {
    RowEchelon e(f, binomial(n + 3, 3));
    for (const auto& row : multiple_rows({gens[0]}, 3)) e.add_row(row);
    return !e.contains(gens[1].dense());
  }
  if (n == 5) {
    RowEchelon e(f, binomial(n + 2, 2));
    for (const auto& g : gens) e.add_row(g.dense());
    return e.rank() == 3;
  }
  return true;
}

namespace {

MultiPoly determinant(const PrimeField& f, const std::vector<std::vector<MultiPoly>>& m) {
  const std::size_t c = m.size();
  if (c == 1) return m[0][0];
  MultiPoly acc;
  bool first = true;
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t r = 1; r < c; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t k = 0; k < c; ++k)
        if (k != j) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    MultiPoly term = multiply(f, m[0][j], determinant(f, minor));
    if (j % 2 == 1) term = scale(f, term, f.neg(1));
    acc = first ? term : add(f, acc, term);
    first = false;
  }
  return acc;
}

}  // namespace

std::vector<MultiPoly> singular_locus_generators(const PrimeField& f, const std::vector<MultiPoly>& gens, int n) {
  const std::size_t c = gens.size();
  std::vector<std::vector<MultiPoly>> jac(c);
  for (std::size_t i = 0; i < c; ++i)
    for (int j = 0; j <= n; ++j) jac[i].push_back(derivative(f, gens[i], j));
  std::vector<MultiPoly> out = gens;
  // column subsets of size c in lexicographic order
  std::vector<int> cols(c);
  for (std::size_t i = 0; i < c; ++i) cols[i] = static_cast<int>(i);
  for (;;) {
    std::vector<std::vector<MultiPoly>> sub(c);
    for (std::size_t i = 0; i < c; ++i)
      for (int j : cols) sub[i].push_back(jac[i][static_cast<std::size_t>(j)]);
    auto d = determinant(f, sub);
    if (!d.is_zero()) out.push_back(d);
    int i = static_cast<int>(c) - 1;
    while (i >= 0 && cols[static_cast<std::size_t>(i)] == n + 1 - static_cast<int>(c) + i) --i;
    if (i < 0) break;
    ++cols[static_cast<std::size_t>(i)];
    for (std::size_t k = static_cast<std::size_t>(i) + 1; k < c; ++k) cols[k] = cols[k - 1] + 1;
  }
  return out;
}

std::string to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::smooth: return "smooth";
    case Certificate::Kind::node: return "node";
    case Certificate::Kind::inconclusive: return "inconclusive";
  }
  return "?";
}

Certificate smoothness_certificate(const PrimeField& f, const std::vector<MultiPoly>& gens, int n, std::optional<int> t_max) {
  const auto sing = singular_locus_generators(f, gens, n);
  auto r = empty_projective_check(f, sing, n, t_max.value_or(default_t_max(sing)));
  Certificate c;
  if (r.empty()) {
    c.kind = Certificate::Kind::smooth;
    c.degree = r.degree;
  } else {
    c.failure = "singular locus not shown empty";
  }
  return c;
}

int local_hessian_rank(const PrimeField& f, const std::vector<MultiPoly>& gens, const std::vector<Fp>& p) {
  const std::size_t nv = p.size();
  std::size_t chart = 0;
  while (chart < nv && p[chart] == 0) ++chart;
  if (chart == nv) throw std::invalid_argument("local_hessian_rank: zero point");
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < nv; ++i)
    if (i != chart) vars.push_back(i);
  const std::size_t c = gens.size(), m = vars.size();

  // affine gradients (rows) and the combination killing them
  FpMatrix gt(0, c);
  for (std::size_t j : vars) {
    std::vector<Fp> row;
    for (const auto& g : gens) row.push_back(evaluate(f, derivative(f, g, static_cast<int>(j)), p));
    gt.append_row(row);
  }
  const auto combos = kernel_basis(f, gt);
  if (combos.size() != 1) return -1;  // not a single quadratic relation
  const auto& lam = combos[0];

  FpMatrix gm(0, m);
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<Fp> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back(gt(j, i));
    gm.append_row(row);
  }
  const auto tangent = kernel_basis(f, gm);

  std::vector<std::vector<Fp>> hess(m, std::vector<Fp>(m, 0));
  for (std::size_t i = 0; i < c; ++i) {
    if (lam[i] == 0) continue;
    for (std::size_t a = 0; a < m; ++a) {
      const auto da = derivative(f, gens[i], static_cast<int>(vars[a]));
      for (std::size_t b = a; b < m; ++b) {
        const Fp v = f.mul(lam[i], evaluate(f, derivative(f, da, static_cast<int>(vars[b])), p));
        hess[a][b] = f.add(hess[a][b], v);
        if (b != a) hess[b][a] = f.add(hess[b][a], v);
      }
    }
  }
  FpMatrix q(0, tangent.size());
  for (const auto& u : tangent) {
    std::vector<Fp> row;
    for (const auto& v : tangent) {
      std::uint64_t acc = 0;
      for (std::size_t a = 0; a < m; ++a) {
        if (u[a] == 0) continue;
        for (std::size_t b = 0; b < m; ++b) acc = (acc + static_cast<std::uint64_t>(f.mul(u[a], hess[a][b])) * v[b]) % f.p();
      }
      row.push_back(static_cast<Fp>(acc));
    }
    q.append_row(row);
  }
  return tangent.empty() ? 0 : static_cast<int>(rank(f, q));
}

Certificate node_certificate(const PrimeField& f, const std::vector<MultiPoly>& gens, int n, const std::vector<Fp>& p,
                             std::optional<int> t_max) {
  Certificate c;
  c.node_point = p;
  for (const auto& g : gens)
    if (evaluate(f, g, p) != 0) {
      c.failure = "node not on surface";
      return c;
    }
  const auto sing = singular_locus_generators(f, gens, n);
  for (const auto& g : sing)
    if (evaluate(f, g, p) != 0) {
      c.failure = "surface smooth at node";
      return c;
    }
  // p lies on V(sing), so the quotient is at least 1 in every degree
  int top = 0;
  for (const auto& g : sing) top = std::max(top, g.degree());
  const int tm = t_max.value_or(default_t_max(sing));
  auto quotient_is_one = [&](int t) {
    const std::size_t full = binomial(n + t, t);
    RowEchelon e(f, full);
    for (const auto& g : sing) {
      if (g.degree() > t) continue;
      for (const auto& mu : monomial_basis(n + 1, t - g.degree()).monomials()) {
        e.add_row(shifted_dense(g, mu, monomial_basis(n + 1, t)));
        if (e.rank() + 1 >= full) return true;
      }
    }
    return false;
  };
  bool prev = false;
  for (int t = 1; t <= tm + 1; ++t) {
    const bool cur = quotient_is_one(t);
    if (prev && cur) {
      c.degree = t - 1;
      break;
    }
    prev = cur;
  }
  if (!c.degree) {
    c.failure = "singular locus not a single reduced point";
    return c;
  }
  c.hessian_rank = local_hessian_rank(f, gens, p);
  if (c.hessian_rank != 3) {
    c.failure = "local quadratic form has rank " + std::to_string(c.hessian_rank);
    c.degree.reset();
    return c;
  }
  c.kind = Certificate::Kind::node;
  return c;
}

SurfaceWitness pick_surface(const PrimeField& f, const Configuration& cfg, const PairWitness& pair, Rng& rng,
                            std::optional<int> t_max) {
  const int n = cfg.n;
  SurfaceWitness w;
  w.n = n;
  std::map<int, std::vector<MultiPoly>> pool;  // degree -> system for the first generator
  std::map<int, std::vector<MultiPoly>> rest;  // n = 5 nodal: the other two quadrics
  if (!is_nodal(cfg.kind)) {
    pool = pair_ideal_pieces(f, pair);
    w.h0_values = sizes(pool);
    w.fiber_dim = fiber_dimension(n, w.h0_values);
  } else {
    if (!pair.node) throw std::invalid_argument("pick_surface: nodal pair without a node");
    if (n == 4) {
      std::optional<std::vector<Fp>> tangent;
      if (pair.node_param) tangent = tangent_at(f, pair.curves[0], *pair.node_param);
      w.hyperplane = random_tangent_hyperplane(f, *pair.node, tangent, rng);
    }
    auto sys = nodal_linear_system(f, pair.curves[0], *pair.node, n, w.hyperplane);
    pool = sys.nodal;
    rest = sys.all;
    w.h0_nodal = sys.nodal_dims();
    w.h0_values = n == 5 ? sys.all_dims() : w.h0_nodal;
    w.fiber_dim = nodal_fiber_dimension(n, nodal_hyperplane_params(cfg), w.h0_nodal, sys.all_dims());
  }
  for (const auto& [t, b] : pool)
    if (b.empty()) throw NoSurface(cfg.label() + ": no forms of degree " + std::to_string(t));

  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<MultiPoly> gens;
    switch (n) {
      case 3: gens = {random_member(f, pool.at(4), rng)}; break;
      case 4: gens = {random_member(f, pool.at(2), rng), random_member(f, pool.at(3), rng)}; break;
      case 5: {
        const auto& others = is_nodal(cfg.kind) ? rest.at(2) : pool.at(2);
        gens = {random_member(f, pool.at(2), rng), random_member(f, others, rng), random_member(f, others, rng)};
        break;
      }
    }
    if (!generators_independent(f, gens, n)) continue;
    if (!complete_intersection_check(f, gens, n)) continue;
    w.generators = std::move(gens);
    w.certificate = is_nodal(cfg.kind) ? node_certificate(f, w.generators, n, *pair.node, t_max)
                                       : smoothness_certificate(f, w.generators, n, t_max);
    return w;
  }
  throw NoSurface(cfg.label() + ": no complete intersection among " + std::to_string(kRetryBudget) + " draws");
}

LedgerVerdict dimension_ledger(const Configuration& cfg, int tangent_dim, int fiber_dim) {
  LedgerVerdict v;
  v.incidence_dim = incidence_dim(cfg);
  v.tangent_dim = tangent_dim;
  v.fiber_dim = fiber_dim;
  v.required_fiber_dim = required_fiber_dim(cfg);
  v.target = target_dim(cfg.kind);
  v.pgl_dim = (cfg.n + 1) * (cfg.n + 1) - 1;
  v.pass = tangent_dim == v.incidence_dim && v.incidence_dim + fiber_dim == v.target + v.pgl_dim;
  return v;
}

}  // namespace k3
