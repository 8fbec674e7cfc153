// First-order deformations of the curve data: a degree-0 map phi from the
// ideal to the coordinate ring of C is fixed by the values phi(g_i) in
// H^0(O_C(deg g_i)); every syzygy sum a_i g_i = 0 forces sum a_i phi(g_i) = 0
// on C. A point p on C moving with the curve adds a vector w with
// grad g(p).w + phi(g)(p) = 0 for every generator g.

#include <algorithm>

#include "k3/curves.hpp"
#include "k3/linalg.hpp"
#include "k3/polyalg.hpp"

namespace k3 {

namespace {

// Values at a parameter of the basis of H^0(O_C(t)) used for phi(g).
std::vector<Fp> section_basis_values(const PrimeField& f, const CurveMap& c, const CurveParam& prm, int t) {
  std::vector<Fp> out;
  if (auto r = std::get_if<RationalMap>(&c)) {
    const Fp x = std::get<Fp>(prm);
    Fp pw = 1;
    for (int j = 0; j <= r->degree * t; ++j, pw = f.mul(pw, x)) out.push_back(pw);
    return out;
  }
  const auto& e = std::get<EllipticMap>(c);
  const auto& p = std::get<CubicPoint>(prm);
  for (auto [i, j] : weierstrass_monomials(e.degree * t)) {
    Fp v = f.pow(p.x, static_cast<std::uint64_t>(i));
    if (j) v = f.mul(v, p.y);
    out.push_back(v);
  }
  return out;
}

struct CurveBlock {
  const CurveMap* curve = nullptr;
  std::vector<MultiPoly> gens;
  std::vector<std::size_t> offset;  // column of the first coefficient of phi(g_i)
};

// Syzygies of `gens` in degree D as coefficient vectors over the multiplier
// monomials, laid out generator by generator.
std::vector<std::vector<Fp>> syzygy_basis(const PrimeField& f, const std::vector<MultiPoly>& gens, int n, int D) {
  const MonomialBasis& target = monomial_basis(n + 1, D);
  std::size_t cols = 0;
  for (const auto& g : gens)
    if (g.degree() <= D) cols += monomial_basis(n + 1, D - g.degree()).size();
  FpMatrix mt(target.size(), cols);
  std::size_t col = 0;
  for (const auto& g : gens) {
    if (g.degree() > D) continue;
    for (const auto& mu : monomial_basis(n + 1, D - g.degree()).monomials()) {
      for (const auto& [e, c] : g.terms()) {
        Exponent s = e;
        for (int i = 0; i < kMaxVars; ++i) s[i] = static_cast<std::uint8_t>(s[i] + mu[i]);
        mt(target.index_of(s), col) = c;
      }
      ++col;
    }
  }
  return kernel_basis(f, mt);
}

}  // namespace

TangentResult hilbert_tangent_dim(const PrimeField& f, const PairWitness& w, std::optional<int> d_bound) {
  const int n = w.n;
  std::vector<CurveBlock> blocks;
  std::size_t cols = 0;
  int max_gen = 0;
  for (const auto& c : w.curves) {
    CurveBlock b;
    b.curve = &c;
    b.gens = curve_ideal_generators(f, c);
    for (const auto& g : b.gens) {
      b.offset.push_back(cols);
      cols += static_cast<std::size_t>(curve_h0(curve_degree(c), curve_genus(c), g.degree()));
      max_gen = std::max(max_gen, g.degree());
    }
    blocks.push_back(std::move(b));
  }
  const int bound = d_bound.value_or(max_gen + 3);
  if (max_gen > bound) return {std::nullopt, bound};

  // moving points: one per meet, one for a node on the curve
  struct Moving {
    std::vector<CurveParam> params;  // per curve, empty parameter slots skipped
    std::vector<std::size_t> curves;
  };
  std::vector<Moving> moving;
  for (const auto& m : w.meets) {
    Moving mv;
    for (std::size_t i = 0; i < w.curves.size(); ++i) mv.params.push_back(m.params[i]), mv.curves.push_back(i);
    moving.push_back(mv);
  }
  if (w.node_param) moving.push_back({{*w.node_param}, {0}});
  const std::size_t w_cols = moving.size() * static_cast<std::size_t>(n + 1);
  const std::size_t total = cols + w_cols;
  int offset_after = -static_cast<int>(moving.size());
  if (is_nodal(w.kind) && !w.node_param) offset_after += n;

  RowEchelon eq(f, total);
  auto current = [&] { return static_cast<int>(total - eq.rank()) + offset_after; };

  for (std::size_t k = 0; k < moving.size(); ++k) {
    const auto& mv = moving[k];
    const auto base = point_at(f, w.curves[mv.curves[0]], mv.params[0]);
    std::size_t lead = 0;
    while (base[lead] == 0) ++lead;
    for (std::size_t s = 0; s < mv.curves.size(); ++s) {
      const auto& blk = blocks[mv.curves[s]];
      const auto here = point_at(f, *blk.curve, mv.params[s]);
      const Fp lambda_inv = f.inv(f.mul(here[lead], f.inv(base[lead])));  // here = lambda * base
      for (std::size_t i = 0; i < blk.gens.size(); ++i) {
        const auto& g = blk.gens[i];
        std::vector<Fp> row(total, 0);
        const auto grad = gradient(f, g, base);
        for (int j = 0; j <= n; ++j) row[cols + k * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(j)] = grad[j];
        const Fp scale = f.pow(lambda_inv, static_cast<std::uint64_t>(g.degree()));
        const auto vals = section_basis_values(f, *blk.curve, mv.params[s], g.degree());
        for (std::size_t j = 0; j < vals.size(); ++j) row[blk.offset[i] + j] = f.mul(scale, vals[j]);
        eq.add_row(row);
      }
    }
  }

  Rng rng(0x5eed7a);
  for (const auto& blk : blocks) {
    const CurveMap& c = *blk.curve;
    const int e = curve_degree(c);
    int min_gen = bound;
    for (const auto& g : blk.gens) min_gen = std::min(min_gen, g.degree());
    for (int D = min_gen + 1; D <= bound; ++D) {
      const auto syz = syzygy_basis(f, blk.gens, n, D);
      if (syz.empty()) continue;
      const auto params = sample_params(f, c, interpolation_points(e, D));
      // eD+2 samples: a nonzero section of O_C(D) has at most eD zeros
      std::vector<std::vector<Fp>> coords;
      for (const auto& p : params) coords.push_back(point_at(f, c, p));
      int stall = 0;
      while (stall < 2) {
        std::vector<Fp> a(syz[0].size(), 0);
        for (const auto& v : syz) {
          const Fp r = rng.element(f);
          if (r == 0) continue;
          for (std::size_t i = 0; i < a.size(); ++i)
            if (v[i]) a[i] = f.add(a[i], f.mul(r, v[i]));
        }
        bool grew = false;
        for (std::size_t pi = 0; pi < params.size(); ++pi) {
          std::vector<Fp> row(total, 0);
          std::size_t pos = 0;
          for (std::size_t i = 0; i < blk.gens.size(); ++i) {
            const int mdeg = D - blk.gens[i].degree();
            if (mdeg < 0) continue;
            const MonomialBasis& mb = monomial_basis(n + 1, mdeg);
            const auto mv = evaluate_monomials(f, mb, coords[pi]);
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < mb.size(); ++j) acc = (acc + static_cast<std::uint64_t>(a[pos + j]) * mv[j]) % f.p();
            pos += mb.size();
            const Fp ai = static_cast<Fp>(acc);
            if (ai == 0) continue;
            const auto vals = section_basis_values(f, c, params[pi], blk.gens[i].degree());
            for (std::size_t j = 0; j < vals.size(); ++j) row[blk.offset[i] + j] = f.mul(ai, vals[j]);
          }
          if (eq.add_row(row)) grew = true;
        }
        stall = grew ? 0 : stall + 1;
      }
    }
  }
  return {current(), bound};
}

}  // namespace k3
