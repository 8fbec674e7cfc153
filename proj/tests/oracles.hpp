#pragma once

// Test-side oracles written without the library's lattice code: Gram
// matrices from the intersection numbers, cofactor determinants, and a
// brute-force comparison of discriminant forms.

#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

inline std::int64_t det3(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline Mat3 adjugate(const Mat3& a) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      c[i][j] = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    }
  return c;
}

// H^2 = 2n-2; curves of genus g have square 2g-2.
inline Mat3 gram_case1(int n, int g1, int g2, int m) { return Mat3{{{2 * n - 2, g1, g2}, {g1, -2, m}, {g2, m, -2}}}; }
inline Mat3 gram_case2(int n, int d, int gamma) { return Mat3{{{2 * n - 2, d, gamma}, {d, 0, 1}, {gamma, 1, -2}}}; }
inline Mat3 gram_nodal_e(int n, int d) { return Mat3{{{2 * n - 2, 0, d}, {0, -2, 1}, {d, 1, 0}}}; }

// Sign changes of the characteristic polynomial count positive eigenvalues.
inline std::array<int, 3> inertia(const Mat3& a) {
  const std::int64_t c2 = -(a[0][0] + a[1][1] + a[2][2]);
  const std::int64_t c1 = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) + (a[0][0] * a[2][2] - a[0][2] * a[2][0]) +
                          (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
  const std::int64_t c0 = -det3(a);
  auto changes = [](std::vector<std::int64_t> v) {
    std::vector<std::int64_t> nz;
    for (auto x : v)
      if (x != 0) nz.push_back(x);
    int s = 0;
    for (std::size_t i = 1; i < nz.size(); ++i) s += (nz[i] > 0) != (nz[i - 1] > 0);
    return s;
  };
  int zero = 0;
  if (c0 == 0) zero = (c1 == 0) ? ((c2 == 0) ? 3 : 2) : 1;
  const int pos = changes({1, c2, c1, c0});
  const int neg = changes({-1, c2, -c1, c0});
  return {pos, neg, zero};
}

// Coset representatives of Z^3 / A Z^3 from a lower-triangular column basis.
inline std::array<std::int64_t, 3> hermite_diagonal(Mat3 a) {
  std::array<std::int64_t, 3> diag{};
  for (int r = 0; r < 3; ++r) {
    for (int c = r + 1; c < 3; ++c) {
      while (a[r][c] != 0) {
        const std::int64_t q = a[r][r] / a[r][c];
        for (int i = 0; i < 3; ++i) a[i][r] -= q * a[i][c];
        for (int i = 0; i < 3; ++i) std::swap(a[i][r], a[i][c]);
      }
    }
    diag[r] = a[r][r] < 0 ? -a[r][r] : a[r][r];
  }
  return diag;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Numerators (mod 2|det|) of q over the generators of L^*/L, denominator |det|.
// Empty when the group is not cyclic.
inline std::set<std::int64_t> generator_q_numerators(const Mat3& g) {
  const std::int64_t det = det3(g);
  const std::int64_t n = det < 0 ? -det : det;
  const int sign = det < 0 ? -1 : 1;
  const Mat3 adj = adjugate(g);
  const auto box = hermite_diagonal(g);
  std::set<std::int64_t> out;
  for (std::int64_t a = 0; a < box[0]; ++a)
    for (std::int64_t b = 0; b < box[1]; ++b)
      for (std::int64_t c = 0; c < box[2]; ++c) {
        const std::int64_t x[3] = {a, b, c};
        std::int64_t y[3];
        for (int i = 0; i < 3; ++i) y[i] = sign * (adj[i][0] * x[0] + adj[i][1] * x[1] + adj[i][2] * x[2]);
        // element G^{-1} x = y / n; its order is n / gcd(n, y)
        std::int64_t gg = n;
        for (auto v : y) gg = std::gcd(gg, v);
        if (gg != 1) continue;
        out.insert(mod(x[0] * y[0] + x[1] * y[1] + x[2] * y[2], 2 * n));
      }
  return out;
}

// Even, signature (1,2), |disc| = 2k and generator q-values equal to those of U + <-2k>.
inline bool in_genus_of_u_plus(const Mat3& g, std::int64_t k) {
  for (int i = 0; i < 3; ++i)
    if (g[i][i] % 2 != 0) return false;
  if (inertia(g) != std::array<int, 3>{1, 2, 0}) return false;
  if (det3(g) != 2 * k) return false;
  const auto ours = generator_q_numerators(g);
  if (ours.empty()) return false;
  const auto model = generator_q_numerators(Mat3{{{0, 1, 0}, {1, 0, 0}, {0, 0, -2 * k}}});
  return ours == model;
}

}  // namespace oracle
