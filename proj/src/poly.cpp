#include "k3/poly.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace k3 {

int total_degree(const Exponent& e) {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

std::uint64_t pack(const Exponent& e) {
  std::uint64_t k = 0;
  for (auto x : e) k = (k << 8) | x;
  return k;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

namespace {

void gen_monomials(int nvars, int var, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (var == nvars - 1) {
    cur[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = static_cast<std::uint8_t>(e);
    gen_monomials(nvars, var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("MonomialBasis: unsupported number of variables");
  if (degree < 0 || degree > 255) throw std::invalid_argument("MonomialBasis: bad degree");
  Exponent cur{};
  gen_monomials(nvars, 0, degree, cur, monos_);
  index_.reserve(monos_.size());
  for (std::size_t i = 0; i < monos_.size(); ++i) index_.emplace(pack(monos_[i]), i);
}

std::size_t MonomialBasis::index_of(const Exponent& e) const {
  auto it = index_.find(pack(e));
  if (it == index_.end()) throw std::out_of_range("MonomialBasis: monomial not in basis");
  return it->second;
}

const MonomialBasis& monomial_basis(int nvars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(nvars, degree);
  return *slot;
}

MultiPoly::MultiPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("MultiPoly: unsupported number of variables");
  if (degree < 0) throw std::invalid_argument("MultiPoly: negative degree");
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  MultiPoly p(nvars, 1);
  Exponent e{};
  e[i] = 1;
  p.terms_[e] = 1;
  return p;
}

MultiPoly MultiPoly::from_dense(int nvars, int degree, std::span<const Fp> coeffs) {
  const MonomialBasis& b = monomial_basis(nvars, degree);
  if (coeffs.size() != b.size()) throw std::invalid_argument("MultiPoly::from_dense: wrong length");
  MultiPoly p(nvars, degree);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (coeffs[i] != 0) p.terms_[b[i]] = coeffs[i];
  return p;
}

Fp MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::add_term(const PrimeField& f, const Exponent& e, Fp c) {
  if (total_degree(e) != degree_) throw std::invalid_argument("MultiPoly: term of wrong degree");
  for (int i = nvars_; i < kMaxVars; ++i)
    if (e[i] != 0) throw std::invalid_argument("MultiPoly: variable out of range");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = f.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<Fp> MultiPoly::dense() const {
  const MonomialBasis& b = monomial_basis(nvars_, degree_);
  std::vector<Fp> out(b.size(), 0);
  for (const auto& [e, c] : terms_) out[b.index_of(e)] = c;
  return out;
}

MultiPoly add(const PrimeField& f, const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars() || a.degree() != b.degree()) throw std::invalid_argument("add: shape mismatch");
  MultiPoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(f, e, c);
  return out;
}

MultiPoly scale(const PrimeField& f, const MultiPoly& a, Fp c) {
  MultiPoly out(a.nvars(), a.degree());
  if (c == 0) return out;
  for (const auto& [e, v] : a.terms()) out.add_term(f, e, f.mul(v, c));
  return out;
}

MultiPoly multiply(const PrimeField& f, const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("multiply: shape mismatch");
  MultiPoly out(a.nvars(), a.degree() + b.degree());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponent e{};
      for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      out.add_term(f, e, f.mul(ca, cb));
    }
  return out;
}

MultiPoly derivative(const PrimeField& f, const MultiPoly& a, int var) {
  if (a.degree() == 0) return MultiPoly(a.nvars(), 0);
  MultiPoly out(a.nvars(), a.degree() - 1);
  for (const auto& [e, c] : a.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] = static_cast<std::uint8_t>(d[var] - 1);
    out.add_term(f, d, f.mul(c, f.from_int(e[var])));
  }
  return out;
}

Fp evaluate(const PrimeField& f, const MultiPoly& a, std::span<const Fp> point) {
  if (static_cast<int>(point.size()) != a.nvars()) throw std::invalid_argument("evaluate: point dimension mismatch");
  const int d = a.degree();
  std::vector<std::vector<Fp>> pw(point.size(), std::vector<Fp>(d + 1, 1));
  for (std::size_t i = 0; i < point.size(); ++i)
    for (int k = 1; k <= d; ++k) pw[i][k] = f.mul(pw[i][k - 1], point[i]);
  Fp acc = 0;
  for (const auto& [e, c] : a.terms()) {
    Fp m = c;
    for (std::size_t i = 0; i < point.size(); ++i) m = f.mul(m, pw[i][e[i]]);
    acc = f.add(acc, m);
  }
  return acc;
}

std::vector<Fp> gradient(const PrimeField& f, const MultiPoly& a, std::span<const Fp> point) {
  std::vector<Fp> g(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) g[i] = evaluate(f, derivative(f, a, i), point);
  return g;
}

MultiPoly combine(const PrimeField& f, const std::vector<MultiPoly>& gens, std::span<const Fp> coeffs) {
  if (gens.empty() || gens.size() != coeffs.size()) throw std::invalid_argument("combine: size mismatch");
  MultiPoly out(gens[0].nvars(), gens[0].degree());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (const auto& [e, c] : gens[i].terms()) out.add_term(f, e, f.mul(c, coeffs[i]));
  }
  return out;
}

std::vector<Fp> evaluate_monomials(const PrimeField& f, const MonomialBasis& basis, std::span<const Fp> point) {
  const int d = basis.degree();
  const int nv = basis.nvars();
  std::vector<std::vector<Fp>> pw(nv, std::vector<Fp>(d + 1, 1));
  for (int i = 0; i < nv; ++i)
    for (int k = 1; k <= d; ++k) pw[i][k] = f.mul(pw[i][k - 1], point[i]);
  std::vector<Fp> out(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Fp m = 1;
    for (int i = 0; i < nv; ++i) m = f.mul(m, pw[i][basis[j][i]]);
    out[j] = m;
  }
  return out;
}

std::vector<Fp> shifted_dense(const MultiPoly& g, const Exponent& shift, const MonomialBasis& target) {
  std::vector<Fp> row(target.size(), 0);
  for (const auto& [e, c] : g.terms()) {
    Exponent s{};
    for (int i = 0; i < kMaxVars; ++i) s[i] = static_cast<std::uint8_t>(e[i] + shift[i]);
    row[target.index_of(s)] = c;
  }
  return row;
}

std::string to_string(const MultiPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < a.nvars(); ++i) {
      if (e[i] == 0) continue;
      os << "*x" << i;
      if (e[i] > 1) os << "^" << int(e[i]);
    }
  }
  return os.str();
}

Fp UPoly::eval(const PrimeField& f, Fp x) const {
  Fp acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c_[i]);
  return acc;
}

UPoly add(const PrimeField& f, const UPoly& a, const UPoly& b) {
  std::vector<Fp> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a[i], b[i]);
  return UPoly(std::move(c));
}

UPoly sub(const PrimeField& f, const UPoly& a, const UPoly& b) {
  std::vector<Fp> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a[i], b[i]);
  return UPoly(std::move(c));
}

UPoly mul(const PrimeField& f, const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<std::uint64_t> acc(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % f.p();
  }
  return UPoly(std::vector<Fp>(acc.begin(), acc.end()));
}

UPoly scale(const PrimeField& f, const UPoly& a, Fp c) {
  std::vector<Fp> v(a.coeffs());
  for (auto& x : v) x = f.mul(x, c);
  return UPoly(std::move(v));
}

UPoly derivative(const PrimeField& f, const UPoly& a) {
  if (a.degree() <= 0) return {};
  std::vector<Fp> v(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) v[i - 1] = f.mul(a[i], f.from_int(static_cast<std::int64_t>(i)));
  return UPoly(std::move(v));
}

UPoly mod(const PrimeField& f, const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("UPoly mod: division by zero");
  std::vector<Fp> r = a.coeffs();
  const int db = b.degree();
  const Fp inv = f.inv(b[db]);
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    Fp q = f.mul(r[i], inv);
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(q, b[j]));
  }
  r.resize(static_cast<std::size_t>(std::min<int>(db, static_cast<int>(r.size()))));
  return UPoly(std::move(r));
}

UPoly gcd(const PrimeField& f, UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = scale(f, a, f.inv(a[a.degree()]));
  return a;
}

Fp BinaryForm::eval(const PrimeField& f, Fp s, Fp t) const {
  // sum c_i s^(e-i) t^i
  Fp acc = 0, sp = 1;
  std::vector<Fp> tp(degree + 1, 1);
  for (int i = 1; i <= degree; ++i) tp[i] = f.mul(tp[i - 1], t);
  for (int i = degree; i >= 0; --i) {
    acc = f.add(acc, f.mul(poly[static_cast<std::size_t>(i)], f.mul(sp, tp[i])));
    sp = f.mul(sp, s);
  }
  return acc;
}

bool have_common_zero(const PrimeField& f, std::span<const BinaryForm> forms) {
  if (forms.empty()) return true;
  bool all_drop = true;  // every form vanishes at (0:1)
  for (const auto& b : forms)
    if (b.poly[static_cast<std::size_t>(b.degree)] != 0) all_drop = false;
  if (all_drop) return true;
  UPoly g;
  for (const auto& b : forms) g = gcd(f, g, b.poly);
  return g.degree() > 0;
}

}  // namespace k3
