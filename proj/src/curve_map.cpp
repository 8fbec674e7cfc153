#include "k3/curve_map.hpp"

#include <set>
#include <stdexcept>

namespace k3 {

std::vector<Fp> RationalMap::point(const PrimeField& f, Fp t) const {
  std::vector<Fp> out;
  out.reserve(forms.size());
  for (const auto& b : forms) out.push_back(b.poly.eval(f, t));
  return out;
}

std::vector<Fp> RationalMap::point_at_infinity(const PrimeField&) const {
  std::vector<Fp> out;
  for (const auto& b : forms) out.push_back(b.poly[static_cast<std::size_t>(degree)]);
  return out;
}

std::vector<Fp> RationalMap::tangent(const PrimeField& f, Fp t) const {
  std::vector<Fp> out;
  for (const auto& b : forms) out.push_back(derivative(f, b.poly).eval(f, t));
  return out;
}

UPoly RationalMap::pullback(const PrimeField& f, const MultiPoly& g) const {
  const int d = g.degree();
  std::vector<std::vector<UPoly>> pw(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    pw[i].push_back(UPoly::constant(1));
    for (int k = 1; k <= d; ++k) pw[i].push_back(mul(f, pw[i].back(), forms[i].poly));
  }
  UPoly acc;
  for (const auto& [e, c] : g.terms()) {
    UPoly term = UPoly::constant(c);
    for (std::size_t i = 0; i < forms.size(); ++i)
      if (e[i]) term = mul(f, term, pw[i][e[i]]);
    acc = add(f, acc, term);
  }
  return acc;
}

std::vector<std::pair<int, int>> weierstrass_monomials(int d) {
  // pole order of x^i y^j at infinity is 2i + 3j
  std::vector<std::pair<int, int>> out;
  for (int order = 0; order <= d; ++order) {
    if (order == 1) continue;
    if (order % 2 == 0) out.emplace_back(order / 2, 0);
    else out.emplace_back((order - 3) / 2, 1);
  }
  return out;
}

UPoly EllipticMap::cubic(const PrimeField&) const { return UPoly(std::vector<Fp>{b, a, 0, 1}); }

bool EllipticMap::on_curve(const PrimeField& f, const CubicPoint& p) const {
  return f.mul(p.y, p.y) == cubic(f).eval(f, p.x);
}

std::optional<Fp> EllipticMap::y_at(const PrimeField& f, Fp x) const { return f.sqrt(cubic(f).eval(f, x)); }

CurveFunction add(const PrimeField& f, const CurveFunction& u, const CurveFunction& v) {
  return {add(f, u.a, v.a), add(f, u.b, v.b)};
}

CurveFunction mul(const PrimeField& f, const CurveFunction& u, const CurveFunction& v, const UPoly& cubic) {
  UPoly a = add(f, mul(f, u.a, v.a), mul(f, mul(f, u.b, v.b), cubic));
  UPoly b = add(f, mul(f, u.a, v.b), mul(f, u.b, v.a));
  return {a, b};
}

std::vector<CurveFunction> EllipticMap::coordinates(const PrimeField& f) const {
  std::vector<CurveFunction> out;
  for (const auto& row : linear_map) {
    std::vector<Fp> ca, cb;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      auto [i, y] = monomials[j];
      auto& tgt = y ? cb : ca;
      if (tgt.size() <= static_cast<std::size_t>(i)) tgt.resize(i + 1, 0);
      tgt[i] = f.add(tgt[i], row[j]);
    }
    out.push_back({UPoly(ca), UPoly(cb)});
  }
  return out;
}

std::vector<Fp> EllipticMap::point(const PrimeField& f, const CubicPoint& p) const {
  std::vector<Fp> out;
  for (const auto& row : linear_map) {
    Fp acc = 0;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      auto [i, y] = monomials[j];
      Fp m = f.pow(p.x, i);
      if (y) m = f.mul(m, p.y);
      acc = f.add(acc, f.mul(row[j], m));
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<Fp> EllipticMap::tangent(const PrimeField& f, const CubicPoint& p) const {
  if (p.y == 0) throw std::domain_error("EllipticMap::tangent: x is not a local parameter at a 2-torsion point");
  const Fp dy = f.mul(f.add(f.mul(3, f.mul(p.x, p.x)), a), f.inv(f.mul(2, p.y)));
  std::vector<Fp> out;
  for (const auto& c : coordinates(f)) {
    Fp v = derivative(f, c.a).eval(f, p.x);
    v = f.add(v, f.mul(dy, c.b.eval(f, p.x)));
    v = f.add(v, f.mul(p.y, derivative(f, c.b).eval(f, p.x)));
    out.push_back(v);
  }
  return out;
}

CurveFunction EllipticMap::pullback(const PrimeField& f, const MultiPoly& g) const {
  const UPoly cub = cubic(f);
  const auto coords = coordinates(f);
  const int d = g.degree();
  std::vector<std::vector<CurveFunction>> pw(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    pw[i].push_back({UPoly::constant(1), {}});
    for (int k = 1; k <= d; ++k) pw[i].push_back(mul(f, pw[i].back(), coords[i], cub));
  }
  CurveFunction acc;
  for (const auto& [e, c] : g.terms()) {
    CurveFunction term{UPoly::constant(c), {}};
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (e[i]) term = mul(f, term, pw[i][e[i]], cub);
    acc = add(f, acc, term);
  }
  return acc;
}

int curve_degree(const CurveMap& c) {
  return std::visit([](const auto& m) { return m.degree; }, c);
}

int curve_genus(const CurveMap& c) { return std::holds_alternative<EllipticMap>(c) ? 1 : 0; }

int ambient_n(const CurveMap& c) {
  return std::visit([](const auto& m) { return m.n(); }, c);
}

std::vector<Fp> point_at(const PrimeField& f, const CurveMap& c, const CurveParam& p) {
  if (auto r = std::get_if<RationalMap>(&c)) return r->point(f, std::get<Fp>(p));
  return std::get<EllipticMap>(c).point(f, std::get<CubicPoint>(p));
}

std::vector<Fp> tangent_at(const PrimeField& f, const CurveMap& c, const CurveParam& p) {
  if (auto r = std::get_if<RationalMap>(&c)) return r->tangent(f, std::get<Fp>(p));
  return std::get<EllipticMap>(c).tangent(f, std::get<CubicPoint>(p));
}

std::vector<CurveParam> sample_params(const PrimeField& f, const CurveMap& c, std::size_t count, Fp start) {
  std::vector<CurveParam> out;
  if (std::holds_alternative<RationalMap>(c)) {
    if (count > f.p()) throw std::invalid_argument("sample_params: not enough field elements");
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(static_cast<Fp>((start + i) % f.p()));
    return out;
  }
  const auto& e = std::get<EllipticMap>(c);
  for (std::uint64_t i = 0; i < f.p() && out.size() < count; ++i) {
    Fp x = static_cast<Fp>((start + i) % f.p());
    Fp rhs = e.cubic(f).eval(f, x);
    auto y = f.sqrt(rhs);
    if (!y) continue;
    out.emplace_back(CubicPoint{x, *y});
    if (*y != 0 && out.size() < count) out.emplace_back(CubicPoint{x, f.neg(*y)});
  }
  if (out.size() < count) throw std::runtime_error("sample_params: curve has too few affine points");
  return out;
}

std::vector<CurveParam> random_params(const PrimeField& f, const CurveMap& c, std::size_t count, Rng& rng) {
  std::vector<CurveParam> out;
  if (std::holds_alternative<RationalMap>(c)) {
    std::set<Fp> used;
    while (out.size() < count) {
      Fp t = rng.element(f);
      if (used.insert(t).second) out.emplace_back(t);
    }
    return out;
  }
  const auto& e = std::get<EllipticMap>(c);
  std::set<std::pair<Fp, Fp>> used;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000) throw std::runtime_error("random_params: sampling failed");
    Fp x = rng.element(f);
    auto y = e.y_at(f, x);
    if (!y || *y == 0) continue;
    Fp yy = (rng.below(2) != 0) ? f.neg(*y) : *y;
    if (used.insert({x, yy}).second) out.emplace_back(CubicPoint{x, yy});
  }
  return out;
}

bool vanishes_on(const PrimeField& f, const MultiPoly& g, const CurveMap& c) {
  if (auto r = std::get_if<RationalMap>(&c)) return r->pullback(f, g).is_zero();
  return std::get<EllipticMap>(c).pullback(f, g).is_zero();
}

std::vector<Fp> normalize_point(const PrimeField& f, std::vector<Fp> v) {
  for (auto x : v) {
    if (x == 0) continue;
    Fp inv = f.inv(x);
    for (auto& y : v) y = f.mul(y, inv);
    return v;
  }
  throw std::invalid_argument("normalize_point: zero vector");
}

bool same_projective_point(const PrimeField& f, const std::vector<Fp>& u, const std::vector<Fp>& v) {
  return normalize_point(f, u) == normalize_point(f, v);
}

}  // namespace k3
