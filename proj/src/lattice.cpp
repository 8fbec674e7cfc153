#include "k3/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace k3 {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("lattice: integer overflow");
  return static_cast<std::int64_t>(v);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t isqrt_exact(std::int64_t v) {
  if (v < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s * s == v ? s : -1;
}

IntVec3 gram_times(const GramMatrix3& g, const IntVec3& v) {
  IntVec3 out{};
  for (int i = 0; i < 3; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < 3; ++j) acc += static_cast<__int128>(g.at(i, j)) * v[j];
    out[i] = checked(acc);
  }
  return out;
}

IntVec3 make_primitive(IntVec3 v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

IntVec3 cross(const IntVec3& a, const IntVec3& b) {
  return {checked(static_cast<__int128>(a[1]) * b[2] - static_cast<__int128>(a[2]) * b[1]),
          checked(static_cast<__int128>(a[2]) * b[0] - static_cast<__int128>(a[0]) * b[2]),
          checked(static_cast<__int128>(a[0]) * b[1] - static_cast<__int128>(a[1]) * b[0])};
}

using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix rational_inverse(const IntMatrix& g) {
  const std::size_t n = g.rows();
  RatMatrix a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].numerator() == 0) ++p;
    if (p == n) throw std::invalid_argument("degenerate Gram matrix");
    std::swap(a[p], a[c]);
    Rational inv = Rational(1) / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].numerator() == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  RatMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      __int128 acc = 0;
      for (std::size_t l = 0; l < cols_; ++l) acc += static_cast<__int128>((*this)(i, l)) * rhs(l, j);
      out(i, j) = checked(acc);
    }
  return out;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::int64_t GramMatrix3::pairing(const IntVec3& a, const IntVec3& b) const {
  __int128 acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += static_cast<__int128>(a[i]) * entries[i][j] * b[j];
  return checked(acc);
}

bool GramMatrix3::is_even() const {
  for (int i = 0; i < 3; ++i)
    if (entries[i][i] % 2 != 0) return false;
  return true;
}

IntMatrix GramMatrix3::to_matrix() const {
  IntMatrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = entries[i][j];
  return m;
}

BuiltGram build_gram(ModelCase c, int n, std::span<const int> degrees, int m) {
  if (n < 3 || n > 5) throw std::invalid_argument("build_gram: n must be 3, 4 or 5");
  for (int d : degrees)
    if (d <= 0) throw std::invalid_argument("build_gram: degrees must be positive");
  if (m < 0) throw std::invalid_argument("build_gram: m must be non-negative");
  const std::int64_t h2 = 2 * n - 2;
  GramMatrix3 g;
  switch (c) {
    case ModelCase::case1:
      if (degrees.size() != 2) throw std::invalid_argument("build_gram: case1 takes two degrees");
      g.entries = {{{h2, degrees[0], degrees[1]}, {degrees[0], -2, m}, {degrees[1], m, -2}}};
      g.basis_labels = {"H", "Gamma1", "Gamma2"};
      break;
    case ModelCase::case2:
      if (degrees.size() != 2) throw std::invalid_argument("build_gram: case2 takes (d, gamma)");
      if (m != 1) throw std::invalid_argument("build_gram: case2 requires m = 1");
      g.entries = {{{h2, degrees[0], degrees[1]}, {degrees[0], 0, 1}, {degrees[1], 1, -2}}};
      g.basis_labels = {"H", "E", "Gamma"};
      break;
    case ModelCase::nodal_elliptic:
      if (degrees.size() != 1) throw std::invalid_argument("build_gram: nodal_elliptic takes (d)");
      if (m != 1) throw std::invalid_argument("build_gram: nodal_elliptic requires m = 1");
      g.entries = {{{h2, 0, degrees[0]}, {0, -2, 1}, {degrees[0], 1, 0}}};
      g.basis_labels = {"H", "C_p", "E"};
      break;
    case ModelCase::nodal_rational:
      if (degrees.size() != 1) throw std::invalid_argument("build_gram: nodal_rational takes (gamma)");
      g.entries = {{{h2, 0, degrees[0]}, {0, -2, m}, {degrees[0], m, -2}}};
      g.basis_labels = {"H", "C_p", "Gamma"};
      break;
  }
  BuiltGram out{g, 0};
  std::int64_t det = determinant(g);
  if (det % 2 != 0) throw std::logic_error("build_gram: odd determinant on an even lattice");
  out.k = det / 2;
  return out;
}

std::int64_t determinant(const GramMatrix3& g) {
  const auto& a = g.entries;
  __int128 d = static_cast<__int128>(a[0][0]) * (static_cast<__int128>(a[1][1]) * a[2][2] - static_cast<__int128>(a[1][2]) * a[2][1]) -
               static_cast<__int128>(a[0][1]) * (static_cast<__int128>(a[1][0]) * a[2][2] - static_cast<__int128>(a[1][2]) * a[2][0]) +
               static_cast<__int128>(a[0][2]) * (static_cast<__int128>(a[1][0]) * a[2][1] - static_cast<__int128>(a[1][1]) * a[2][0]);
  return checked(d);
}

std::int64_t determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return checked(sign * m[n - 1][n - 1]);
}

Inertia signature(const IntMatrix& g) {
  if (!g.is_symmetric()) throw std::invalid_argument("signature: matrix not symmetric");
  const std::size_t n = g.rows();
  RatMatrix a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g(i, j);

  // Congruence transformations keep the matrix symmetric.
  auto swap_basis = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  auto add_basis = [&](std::size_t i, std::size_t j) {  // e_i += e_j
    for (std::size_t c = 0; c < n; ++c) a[i][c] += a[j][c];
    for (std::size_t r = 0; r < n; ++r) a[r][i] += a[r][j];
  };

  Inertia out;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].numerator() == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][p].numerator() == 0) ++p;
      if (p < n) {
        swap_basis(k, p);
      } else {
        std::size_t q = k + 1;
        while (q < n && a[k][q].numerator() == 0) ++q;
        if (q < n) add_basis(k, q);  // a_kk becomes 2 a_kq
      }
    }
    if (a[k][k].numerator() == 0) {
      // whole row is zero: a radical direction
      ++out.zero;
      continue;
    }
    (a[k][k].numerator() > 0 ? out.positive : out.negative)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].numerator() == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][k];
    }
  }
  return out;
}

Inertia signature(const GramMatrix3& g) { return signature(g.to_matrix()); }

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& d = s.d;
  IntMatrix& u = s.u;
  IntMatrix& v = s.v;

  auto row_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < n; ++j) d(dst, j) = checked(static_cast<__int128>(d(dst, j)) - static_cast<__int128>(q) * d(src, j));
    for (std::size_t j = 0; j < m; ++j) u(dst, j) = checked(static_cast<__int128>(u(dst, j)) - static_cast<__int128>(q) * u(src, j));
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t i = 0; i < m; ++i) d(i, dst) = checked(static_cast<__int128>(d(i, dst)) - static_cast<__int128>(q) * d(i, src));
    for (std::size_t i = 0; i < n; ++i) v(i, dst) = checked(static_cast<__int128>(v(i, dst)) - static_cast<__int128>(q) * v(i, src));
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < m; ++c) std::swap(u(i, c), u(j, c));
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m; ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (bi == m || std::llabs(d(i, j)) < std::llabs(d(bi, bj)))) bi = i, bj = j;
      if (bi == m) return s;  // remaining block is zero
      row_swap(t, bi);
      col_swap(t, bj);
      const std::int64_t piv = d(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        row_axpy(i, t, floor_div(d(i, t), piv));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_axpy(j, t, floor_div(d(t, j), piv));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % piv != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_axpy(t, bad, -1);
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
    }
  }
  return s;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse_unimodular: matrix not square");
  std::int64_t det = determinant(a);
  if (det != 1 && det != -1) throw std::invalid_argument("inverse_unimodular: |det| != 1");
  RatMatrix inv = rational_inverse(a);
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (inv[i][j].denominator() != 1) throw std::logic_error("inverse_unimodular: non-integral inverse");
      out(i, j) = inv[i][j].numerator();
    }
  return out;
}

std::int64_t FiniteAbelianGroup::order() const {
  std::int64_t o = 1;
  for (auto d : invariant_factors) o = checked(static_cast<__int128>(o) * d);
  return o;
}

Rational mod_rational(const Rational& r, std::int64_t m) {
  std::int64_t num = r.numerator(), den = r.denominator();
  __int128 md = static_cast<__int128>(m) * den;
  __int128 rem = num % md;
  if (rem < 0) rem += md;
  return Rational(checked(rem), den);
}

Rational dual_pairing(const IntMatrix& g, std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  RatMatrix inv = rational_inverse(g);
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (x[i] != 0 && y[j] != 0) acc += Rational(x[i]) * inv[i][j] * Rational(y[j]);
  return acc;
}

DiscriminantForm discriminant_form(const IntMatrix& g) {
  if (!g.is_square()) throw std::invalid_argument("discriminant_form: matrix not square");
  if (determinant(g) == 0) throw std::invalid_argument("discriminant_form: degenerate Gram matrix");
  // u g v = d, so Z^r / g Z^r is identified with Z^r / d Z^r via x -> u x.
  SmithForm s = smith_normal_form(g);
  IntMatrix uinv = inverse_unimodular(s.u);
  DiscriminantForm out;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (s.d(i, i) <= 1) continue;
    out.group.invariant_factors.push_back(s.d(i, i));
    std::vector<std::int64_t> lift(g.rows());
    for (std::size_t r = 0; r < g.rows(); ++r) lift[r] = uinv(r, i);
    out.group.generator_lifts.push_back(std::move(lift));
  }
  const auto& lifts = out.group.generator_lifts;
  for (const auto& x : lifts) out.q_values.push_back(mod_rational(dual_pairing(g, x, x), 2));
  for (const auto& x : lifts) {
    std::vector<Rational> row;
    for (const auto& y : lifts) row.push_back(mod_rational(dual_pairing(g, x, y), 1));
    out.bilinear_values.push_back(std::move(row));
  }
  return out;
}

DiscriminantForm discriminant_form(const GramMatrix3& g) { return discriminant_form(g.to_matrix()); }

bool is_genus_U_plus(const GramMatrix3& g, std::int64_t k) {
  if (k <= 0 || !g.is_even()) return false;
  if (signature(g) != Inertia{1, 2, 0}) return false;
  if (determinant(g) != 2 * k) return false;
  DiscriminantForm f = discriminant_form(g);
  if (!f.group.is_cyclic() || f.group.order() != 2 * k) return false;
  if (f.q_values.empty()) return false;  // 2k >= 2 so the group is nontrivial
  const Rational q = f.q_values[0];
  const std::int64_t n = 2 * k;
  for (std::int64_t c = 1; c < n; ++c) {
    if (std::gcd(c, n) != 1) continue;
    if (mod_rational(Rational(-c * c, n), 2) == q) return true;
  }
  return false;
}

namespace {

IntVec3 complement_of(const GramMatrix3& g, const IntVec3& e, const IntVec3& f) {
  IntVec3 d = make_primitive(cross(gram_times(g, e), gram_times(g, f)));
  if (d == IntVec3{0, 0, 0}) throw std::invalid_argument("orthogonal complement: dependent classes");
  return d;
}

}  // namespace

IntVec3 orthogonal_complement_generator(const GramMatrix3& g, std::pair<int, int> pair) {
  auto [i, j] = pair;
  if (i < 0 || i > 2 || j < 0 || j > 2 || i == j) throw std::invalid_argument("orthogonal complement: bad index pair");
  std::int64_t det2 = g.at(i, i) * g.at(j, j) - g.at(i, j) * g.at(j, i);
  if (det2 != 1 && det2 != -1) throw std::invalid_argument("orthogonal complement: pair is not unimodular");
  IntVec3 e{}, f{};
  e[i] = 1;
  f[j] = 1;
  return complement_of(g, e, f);
}

std::optional<std::pair<IntVec3, IntVec3>> find_hyperbolic_pair(const GramMatrix3& g, int radius) {
  auto try_e = [&](const IntVec3& e) -> std::optional<std::pair<IntVec3, IntVec3>> {
    if (e == IntVec3{0, 0, 0} || g.square(e) != 0) return std::nullopt;
    IntVec3 row = gram_times(g, e);
    // Extended gcd over the three entries of row gives f0 with e.f0 = gcd.
    std::int64_t g01, x0, x1;
    {
      std::int64_t a = row[0], b = row[1];
      std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
      }
      g01 = old_r, x0 = old_s, x1 = old_t;
    }
    std::int64_t old_r = g01, r = row[2], old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
      std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
      std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r != 1 && old_r != -1) return std::nullopt;  // divisibility of e is not 1
    IntVec3 f0{old_s * x0 * old_r, old_s * x1 * old_r, old_t * old_r};
    std::int64_t s0 = g.square(f0);
    IntVec3 f{f0[0] - (s0 / 2) * e[0], f0[1] - (s0 / 2) * e[1], f0[2] - (s0 / 2) * e[2]};
    if (g.pairing(e, f) != 1 || g.square(f) != 0) return std::nullopt;
    return std::make_pair(e, f);
  };

  if (g.at(2, 2) == 0) {
    if (auto p = try_e({0, 0, 1})) return p;
  }
  for (int rad = 0; rad <= radius; ++rad) {
    for (int a = -rad; a <= rad; ++a)
      for (int b = -rad; b <= rad; ++b) {
        if (std::max(std::abs(a), std::abs(b)) != rad) continue;
        const std::int64_t c22 = g.at(2, 2);
        const std::int64_t bb = g.at(0, 2) * a + g.at(1, 2) * b;
        const std::int64_t cc = g.at(0, 0) * a * a + 2 * g.at(0, 1) * a * b + g.at(1, 1) * b * b;
        if (c22 == 0) {
          if (bb == 0) continue;
          if (cc % (2 * bb) != 0) continue;
          if (auto p = try_e({a, b, -cc / (2 * bb)})) return p;
          continue;
        }
        std::int64_t s = isqrt_exact(bb * bb - c22 * cc);
        if (s < 0) continue;
        for (std::int64_t num : {-bb + s, -bb - s}) {
          if (num % c22 != 0) continue;
          if (auto p = try_e({a, b, num / c22})) return p;
        }
      }
  }
  return std::nullopt;
}

std::vector<IntVec3> classes_of_degree(const GramMatrix3& g, std::int64_t degree, std::int64_t min_square) {
  if (g.at(0, 0) <= 0) throw std::invalid_argument("classes_of_degree: H^2 must be positive");
  // Solutions of row . v = degree, row = (H.e_i): v = v0 + x k1 + y k2.
  IntMatrix row(1, 3);
  for (int j = 0; j < 3; ++j) row(0, j) = g.at(0, j);
  SmithForm s = smith_normal_form(row);
  const std::int64_t gcd = s.d(0, 0);
  std::vector<IntVec3> out;
  if (gcd == 0 || degree % gcd != 0) return out;
  const std::int64_t scale = (degree / gcd) * s.u(0, 0);
  IntVec3 v0{s.v(0, 0) * scale, s.v(1, 0) * scale, s.v(2, 0) * scale};
  IntVec3 k1{s.v(0, 1), s.v(1, 1), s.v(2, 1)};
  IntVec3 k2{s.v(0, 2), s.v(1, 2), s.v(2, 2)};

  // f(x, y) = A x^2 + 2B xy + C y^2 + 2D x + 2E y + F, negative definite quadratic part.
  const long double A = g.pairing(k1, k1), B = g.pairing(k1, k2), C = g.pairing(k2, k2);
  const long double D = g.pairing(v0, k1), E = g.pairing(v0, k2), F = g.pairing(v0, v0);
  if (!(C < 0 && A * C - B * B > 0)) throw std::logic_error("classes_of_degree: H^perp not negative definite");
  const long double s_min = static_cast<long double>(min_square);
  // max over y: A x^2 + 2Dx + F - (Bx+E)^2/C >= s_min, a concave quadratic in x
  const long double qa = A - B * B / C, qb = 2 * D - 2 * B * E / C, qc = F - E * E / C - s_min;
  const long double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return out;
  const long double r1 = (-qb + std::sqrt(disc)) / (2 * qa), r2 = (-qb - std::sqrt(disc)) / (2 * qa);
  const auto xlo = static_cast<std::int64_t>(std::floor(std::min(r1, r2))) - 1;
  const auto xhi = static_cast<std::int64_t>(std::ceil(std::max(r1, r2))) + 1;
  for (std::int64_t x = xlo; x <= xhi; ++x) {
    const long double ya = C, yb = 2 * (B * x + E), yc = A * x * x + 2 * D * x + F - s_min;
    const long double yd = yb * yb - 4 * ya * yc;
    if (yd < 0) continue;
    const long double y1 = (-yb + std::sqrt(yd)) / (2 * ya), y2 = (-yb - std::sqrt(yd)) / (2 * ya);
    const auto ylo = static_cast<std::int64_t>(std::floor(std::min(y1, y2))) - 1;
    const auto yhi = static_cast<std::int64_t>(std::ceil(std::max(y1, y2))) + 1;
    for (std::int64_t y = ylo; y <= yhi; ++y) {
      IntVec3 v{v0[0] + x * k1[0] + y * k2[0], v0[1] + x * k1[1] + y * k2[1], v0[2] + x * k1[2] + y * k2[2]};
      if (g.square(v) >= min_square) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<VeryAmpleObstruction> very_ample_obstruction(const GramMatrix3& g, ModelCase c, int n) {
  const bool nodal = is_nodal(c);
  for (const auto& v : classes_of_degree(g, 0, -2)) {
    if (g.square(v) != -2) continue;
    if (nodal && (v == IntVec3{0, 1, 0} || v == IntVec3{0, -1, 0})) continue;
    return VeryAmpleObstruction{"SD1", v};
  }
  for (std::int64_t deg : {1, 2}) {
    for (const auto& v : classes_of_degree(g, deg, 0))
      if (g.square(v) == 0) return VeryAmpleObstruction{"SD2", v};
  }
  if (n == 5) {
    for (const auto& v : classes_of_degree(g, 3, 0))
      if (g.square(v) == 0) return VeryAmpleObstruction{"SD3", v};
  }
  return std::nullopt;
}

std::vector<std::int64_t> primes_with_square_dividing(std::int64_t k) {
  std::vector<std::int64_t> out;
  std::int64_t r = std::llabs(k);
  for (std::int64_t p = 2; p * p <= r; ++p) {
    if (r % p != 0) continue;
    int e = 0;
    while (r % p == 0) r /= p, ++e;
    if (e >= 2) out.push_back(p);
  }
  return out;
}

bool PrimitivityVerdict::primitive() const {
  for (const auto& o : per_prime)
    if (o.rule == "unresolved") return false;
  return true;
}

namespace {

std::vector<int> nef_indices(ModelCase c) {
  switch (c) {
    case ModelCase::case2: return {0, 1};
    case ModelCase::nodal_elliptic: return {0, 2};
    default: return {0};
  }
}

bool congruent_to_multiple(const IntVec3& v, const IntVec3& target, std::int64_t r) {
  for (std::int64_t lambda = 1; lambda < r; ++lambda) {
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      if (mod_pos(v[i] - lambda * target[i], r) != 0) ok = false;
    if (ok) return true;
  }
  return false;
}

// Rules that depend on the chosen representative of the class c/r.
std::string representative_rule(const GramMatrix3& g, const std::vector<int>& nef, const IntVec3& c, std::int64_t r) {
  const std::int64_t sq = g.square(c), deg = g.degree(c);
  if (sq % (r * r) != 0 || deg % r != 0) return {};
  const std::int64_t csq = sq / (r * r), cdeg = deg / r;
  if (csq == 0 && cdeg != 0 && std::llabs(cdeg) <= 2) return "R1";
  if (csq == -2 && cdeg == 0) return "R2";
  if (csq == -2 && nef.size() >= 2) {
    bool pos = false, neg = false;
    for (int idx : nef) {
      IntVec3 e{};
      e[idx] = 1;
      std::int64_t p = g.pairing(c, e);
      if (p > 0) pos = true;
      if (p < 0) neg = true;
    }
    if (pos && neg) return "R3";
  }
  return {};
}

std::string congruence_rule(const GramMatrix3& g, ModelCase mc, const IntVec3& c, std::int64_t r) {
  if (mc == ModelCase::case1 && g.at(1, 2) == 2 && congruent_to_multiple(c, {0, 1, 1}, r)) return "R4";
  if (congruent_to_multiple(c, {1, 0, 0}, r)) return "R5";
  return {};
}

}  // namespace

PrimitivityVerdict primitivity_report(const GramMatrix3& g, std::int64_t k, ModelCase mc) {
  PrimitivityVerdict out;
  out.k = k;
  out.tested_primes = primes_with_square_dividing(k);
  if (mc == ModelCase::case2) {
    out.complement_generator = orthogonal_complement_generator(g, {1, 2});
  } else if (mc == ModelCase::nodal_elliptic) {
    out.complement_generator = orthogonal_complement_generator(g, {1, 2});
  } else if (auto hp = find_hyperbolic_pair(g)) {
    out.complement_generator = complement_of(g, hp->first, hp->second);
  }
  const auto nef = nef_indices(mc);
  for (std::int64_t r : out.tested_primes) {
    // a generator of the r-torsion of L^*/L, as the class v/r
    IntVec3 v{};
    bool found = false;
    for (std::int64_t a = 0; a < r && !found; ++a)
      for (std::int64_t b = 0; b < r && !found; ++b)
        for (std::int64_t c = 0; c < r && !found; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          IntVec3 w{a, b, c};
          IntVec3 gw = gram_times(g, w);
          if (mod_pos(gw[0], r) == 0 && mod_pos(gw[1], r) == 0 && mod_pos(gw[2], r) == 0) v = w, found = true;
        }
    PrimeOutcome o;
    o.prime = r;
    if (!found) {
      o.rule = "unresolved";
      out.per_prime.push_back(o);
      continue;
    }
    // Scale so the first non-zero coordinate is 1; others in (-r, 0].
    int lead = v[0] != 0 ? 0 : (v[1] != 0 ? 1 : 2);
    std::int64_t inv = 1;
    while (mod_pos(v[lead] * inv, r) != 1) ++inv;
    for (int i = 0; i < 3; ++i) {
      std::int64_t x = mod_pos(v[i] * inv, r);
      v[i] = (i == lead) ? 1 : (x == 0 ? 0 : x - r);
    }
    o.class_numerator = v;
    std::string rule = representative_rule(g, nef, v, r);
    if (rule.empty()) rule = congruence_rule(g, mc, v, r);
    if (rule.empty()) {
      o.canonical = false;
      std::string best;
      IntVec3 best_c{};
      for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
          for (int c = -6; c <= 6; ++c) {
            IntVec3 cand{v[0] + r * a, v[1] + r * b, v[2] + r * c};
            std::string rr = representative_rule(g, nef, cand, r);
            if (!rr.empty() && (best.empty() || rr < best)) best = rr, best_c = cand;
          }
      if (!best.empty()) rule = best, o.class_numerator = best_c;
    }
    o.rule = rule.empty() ? "unresolved" : rule;
    out.per_prime.push_back(o);
  }
  return out;
}

}  // namespace k3
