#include <random>

#include "doctest.h"
#include "k3/lattice.hpp"
#include "oracles.hpp"
#include "published_tables.hpp"

using namespace k3;

namespace {

GramMatrix3 to_gram(const oracle::Mat3& m) {
  GramMatrix3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.entries[i][j] = m[i][j];
  return g;
}

oracle::Mat3 to_mat(const IntMatrix& a) {
  oracle::Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a(i, j);
  return m;
}

// Every table Gram, built from the intersection numbers.
std::vector<std::pair<oracle::Mat3, int>> table_grams() {
  std::vector<std::pair<oracle::Mat3, int>> out;
  for (const auto& r : published::table1) out.push_back({oracle::gram_case1(r.n, r.gamma1, r.gamma2, r.m), r.k});
  for (const auto& r : published::table2) out.push_back({oracle::gram_case2(r.n, r.d, r.gamma), r.k});
  for (const auto& r : published::table3) out.push_back({oracle::gram_nodal_e(r.n, r.d), r.k});
  return out;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("build_gram examples") {
    const int case2[] = {3, 1};
    auto b = build_gram(ModelCase::case2, 3, case2, 1);
    CHECK(b.gram == to_gram({{{4, 3, 1}, {3, 0, 1}, {1, 1, -2}}}));
    CHECK(b.k == 10);

    const int nodal[] = {3};
    b = build_gram(ModelCase::nodal_elliptic, 3, nodal, 1);
    CHECK(b.gram == to_gram({{{4, 0, 3}, {0, -2, 1}, {3, 1, 0}}}));
    CHECK(b.k == 7);

    const int lines[] = {1, 1};
    b = build_gram(ModelCase::case1, 3, lines, 0);
    CHECK(b.gram == to_gram({{{4, 1, 1}, {1, -2, 0}, {1, 0, -2}}}));
    CHECK(b.k == 10);

    CHECK_THROWS_AS(build_gram(ModelCase::case2, 3, case2, 2), std::invalid_argument);
  }

  TEST_CASE("build_gram agrees with the intersection numbers on every table row") {
    for (const auto& r : published::table1) {
      const int d[] = {r.gamma1, r.gamma2};
      auto b = build_gram(ModelCase::case1, r.n, d, r.m);
      CHECK(b.gram == to_gram(oracle::gram_case1(r.n, r.gamma1, r.gamma2, r.m)));
      CHECK(b.k == r.k);
    }
    for (const auto& r : published::table2) {
      const int d[] = {r.d, r.gamma};
      auto b = build_gram(ModelCase::case2, r.n, d, 1);
      CHECK(b.k == r.k);
      CHECK(b.k == r.d * r.d + r.d * r.gamma - r.n + 1);
    }
    for (const auto& r : published::table3) {
      const int d[] = {r.d};
      auto b = build_gram(ModelCase::nodal_elliptic, r.n, d, 1);
      CHECK(b.k == r.k);
      CHECK(b.k == r.d * r.d - r.n + 1);
    }
  }

  TEST_CASE("determinant and signature") {
    CHECK(determinant(IntMatrix::identity(3)) == 1);
    CHECK(determinant(to_gram({{{4, 3, 1}, {3, 0, 1}, {1, 1, -2}}})) == 20);
    CHECK(determinant(to_gram({{{0, 1, 0}, {1, 0, 0}, {0, 0, -10}}})) == 10);
    CHECK(signature(to_gram({{{2, 0, 0}, {0, -2, 0}, {0, 0, -4}}})) == Inertia{1, 2, 0});
    CHECK(signature(to_gram({{{4, 3, 1}, {3, 0, 1}, {1, 1, -2}}})) == Inertia{1, 2, 0});
    CHECK(signature(to_gram({{{0, 0, 0}, {0, 2, 0}, {0, 0, -2}}})) == Inertia{1, 1, 1});

    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> e(-6, 6);
    for (int i = 0; i < 300; ++i) {
      oracle::Mat3 m{};
      for (int r = 0; r < 3; ++r)
        for (int c = r; c < 3; ++c) m[r][c] = m[c][r] = e(gen);
      const auto s = signature(to_gram(m));
      const auto o = oracle::inertia(m);
      CHECK(s == Inertia{o[0], o[1], o[2]});
      CHECK(determinant(to_gram(m)) == oracle::det3(m));
    }
  }

  TEST_CASE("smith normal form examples") {
    auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 4}});
    CHECK(s.diagonal() == std::vector<std::int64_t>{2, 4});
    s = smith_normal_form(IntMatrix{{2, 1}, {1, 2}});
    CHECK(s.diagonal() == std::vector<std::int64_t>{1, 3});
    s = smith_normal_form(IntMatrix{{4, 3, 1}, {3, 0, 1}, {1, 1, -2}});
    CHECK(s.diagonal() == std::vector<std::int64_t>{1, 1, 20});
  }

  TEST_CASE("smith normal form on 1000 random matrices") {
    std::mt19937_64 gen(20240601);
    std::uniform_int_distribution<int> e(-50, 50);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
      IntMatrix a(3, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = e(gen);
      const auto s = smith_normal_form(a);
      bool ok = s.u * a * s.v == s.d;
      const auto dm = to_mat(s.d);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          if (r != c && dm[r][c] != 0) ok = false;
      const auto du = oracle::det3(to_mat(s.u)), dv = oracle::det3(to_mat(s.v));
      ok = ok && (du == 1 || du == -1) && (dv == 1 || dv == -1);
      ok = ok && std::abs(oracle::det3(dm)) == std::abs(oracle::det3(to_mat(a)));
      for (int r = 0; r < 3; ++r) ok = ok && dm[r][r] >= 0;
      for (int r = 0; r + 1 < 3; ++r) {
        if (dm[r][r] == 0) ok = ok && dm[r + 1][r + 1] == 0;
        else ok = ok && dm[r + 1][r + 1] % dm[r][r] == 0;
      }
      failures += !ok;
    }
    CHECK(failures == 0);
  }

  TEST_CASE("discriminant form examples") {
    auto f = discriminant_form(IntMatrix{{-2}});
    REQUIRE(f.group.invariant_factors == std::vector<std::int64_t>{2});
    CHECK(f.q_values[0] == Rational(3, 2));  // -1/2 mod 2

    f = discriminant_form(to_gram({{{0, 1, 0}, {1, 0, 0}, {0, 0, -14}}}));
    REQUIRE(f.group.invariant_factors == std::vector<std::int64_t>{14});
    CHECK(f.q_values[0] == Rational(27, 14));

    f = discriminant_form(to_gram({{{4, 3, 1}, {3, 0, 1}, {1, 1, -2}}}));
    REQUIRE(f.group.invariant_factors == std::vector<std::int64_t>{20});
    bool found = false;
    for (int c = 1; c < 20; ++c)
      if (std::gcd(c, 20) == 1 && mod_rational(Rational(-c * c, 20), 2) == f.q_values[0]) found = true;
    CHECK(found);

    CHECK_THROWS_AS(discriminant_form(to_gram({{{0, 0, 0}, {0, 2, 0}, {0, 0, -2}}})), std::invalid_argument);
  }

  TEST_CASE("discriminant congruence q(x+y) - q(x) - q(y) = 2b(x,y) mod 2") {
    std::vector<oracle::Mat3> grams;
    for (const auto& [m, k] : table_grams()) grams.push_back(m);
    grams.push_back({{{2, 0, 0}, {0, -2, 0}, {0, 0, -2}}});
    grams.push_back({{{2, 1, 0}, {1, -4, 2}, {0, 2, -6}}});
    int failures = 0, pairs = 0;
    for (const auto& m : grams) {
      const auto g = to_gram(m);
      const auto f = discriminant_form(g);
      const auto& lifts = f.group.generator_lifts;
      for (std::size_t i = 0; i < lifts.size(); ++i) {
        CHECK(mod_rational(dual_pairing(g.to_matrix(), lifts[i], lifts[i]), 2) == f.q_values[i]);
        for (std::size_t j = 0; j < lifts.size(); ++j) {
          std::vector<std::int64_t> s(lifts[i].size());
          for (std::size_t c = 0; c < s.size(); ++c) s[c] = lifts[i][c] + lifts[j][c];
          const auto q = [&](const std::vector<std::int64_t>& v) { return dual_pairing(g.to_matrix(), v, v); };
          const Rational lhs = q(s) - q(lifts[i]) - q(lifts[j]);
          const Rational rhs = 2 * f.bilinear_values[i][j];
          ++pairs;
          failures += mod_rational(lhs - rhs, 2) != Rational(0);
        }
      }
    }
    CHECK(pairs > 75);
    CHECK(failures == 0);
  }

  TEST_CASE("genus of U + <-2k>: examples and every table Gram") {
    CHECK(is_genus_U_plus(to_gram({{{4, 3, 1}, {3, 0, 1}, {1, 1, -2}}}), 10));
    CHECK_FALSE(is_genus_U_plus(to_gram({{{2, 0, 0}, {0, -2, 0}, {0, 0, -2}}}), 2));
    for (const auto& [m, k] : table_grams()) {
      CHECK(is_genus_U_plus(to_gram(m), k));
      CHECK(oracle::in_genus_of_u_plus(m, k));
    }
  }

  TEST_CASE("genus test agrees with the brute-force oracle for discriminants up to 200") {
    std::set<std::int64_t> orders_seen;
    int compared = 0, disagreements = 0, true_count = 0, cyclic_false = 0;
    auto compare = [&](const oracle::Mat3& m) {
      const std::int64_t det = oracle::det3(m);
      if (det <= 0 || det > 200 || det % 2 != 0) return;
      const std::int64_t k = det / 2;
      const bool lib = is_genus_U_plus(to_gram(m), k);
      const bool ora = oracle::in_genus_of_u_plus(m, k);
      ++compared;
      disagreements += lib != ora;
      true_count += ora;
      if (!ora && !oracle::generator_q_numerators(m).empty() && oracle::inertia(m) == std::array<int, 3>{1, 2, 0})
        ++cyclic_false;
      if (!oracle::generator_q_numerators(m).empty()) orders_seen.insert(det);
    };
    for (std::int64_t k = 1; k <= 100; ++k) {
      compare({{{0, 1, 0}, {1, 0, 0}, {0, 0, -2 * k}}});
      compare({{{2, 1, 0}, {1, -2 * k, 0}, {0, 0, -2}}});
      compare({{{2, 0, 0}, {0, -2, 1}, {0, 1, -2 * ((k + 1) / 2)}}});
    }
    for (int a = -3; a <= 3; ++a)
      for (int d = -3; d <= 3; ++d)
        for (int f = -3; f <= 3; ++f)
          for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
              for (int e = -2; e <= 2; ++e) compare({{{2 * a, b, c}, {b, 2 * d, e}, {c, e, 2 * f}}});
    MESSAGE("compared " << compared << " Gram matrices, " << true_count << " in the genus, " << cyclic_false
                        << " cyclic but not in the genus");
    CHECK(disagreements == 0);
    CHECK(cyclic_false > 0);
    for (std::int64_t order = 2; order <= 200; order += 2) CHECK(orders_seen.count(order) == 1);
  }

  TEST_CASE("orthogonal complement generator") {
    for (const auto& r : published::table2) {
      const auto g = to_gram(oracle::gram_case2(r.n, r.d, r.gamma));
      const auto dvec = orthogonal_complement_generator(g, {1, 2});
      const IntVec3 expected{1, -(r.gamma + 2 * r.d), -r.d};
      const IntVec3 neg{-1, r.gamma + 2 * r.d, r.d};
      CHECK((dvec == expected || dvec == neg));
      CHECK(g.square(dvec) == -2 * r.k);
    }
    for (const auto& r : published::table3) {
      const auto g = to_gram(oracle::gram_nodal_e(r.n, r.d));
      const auto dvec = orthogonal_complement_generator(g, {1, 2});
      CHECK(g.pairing(dvec, {0, 1, 0}) == 0);
      CHECK(g.pairing(dvec, {0, 0, 1}) == 0);
      CHECK(g.square(dvec) == -2 * r.k);
    }
    CHECK_THROWS_AS(orthogonal_complement_generator(to_gram({{{4, 1, 1}, {1, -2, 0}, {1, 0, -2}}}), {1, 2}),
                    std::invalid_argument);
  }

  TEST_CASE("primes with square dividing k") {
    CHECK(primes_with_square_dividing(10).empty());
    CHECK(primes_with_square_dividing(72) == std::vector<std::int64_t>{2, 3});
    CHECK(primes_with_square_dividing(50) == std::vector<std::int64_t>{5});
  }

  TEST_CASE("primitivity report examples") {
    auto report = [](ModelCase c, int n, std::vector<int> d, int m) {
      auto b = build_gram(c, n, d, m);
      return primitivity_report(b.gram, b.k, c);
    };
    auto v = report(ModelCase::case2, 3, {3, 1}, 1);
    CHECK(v.tested_primes.empty());
    CHECK(v.primitive());

    v = report(ModelCase::case2, 5, {4, 3}, 1);
    REQUIRE(v.k == 24);
    REQUIRE(v.per_prime.size() == 1);
    CHECK(v.per_prime[0].prime == 2);
    CHECK(v.per_prime[0].rule == "R1");

    v = report(ModelCase::case2, 3, {6, 1}, 1);
    REQUIRE(v.k == 40);
    REQUIRE(v.per_prime.size() == 1);
    CHECK(v.per_prime[0].rule == "R3");

    v = report(ModelCase::case1, 5, {5, 3}, 0);
    REQUIRE(v.k == 50);
    REQUIRE(v.per_prime.size() == 1);
    CHECK(v.per_prime[0].prime == 5);
    CHECK(v.per_prime[0].rule == "R1");  // (H - Gamma2)/5: square 0, degree 1
  }

  TEST_CASE("primitivity never unresolved on table rows") {
    auto check = [](ModelCase c, int n, std::vector<int> d, int m, int k) {
      auto b = build_gram(c, n, d, m);
      auto v = primitivity_report(b.gram, b.k, c);
      CHECK(v.tested_primes == primes_with_square_dividing(k));
      CHECK_MESSAGE(v.primitive(), "k=" << k);
    };
    for (const auto& r : published::table1) check(ModelCase::case1, r.n, {r.gamma1, r.gamma2}, r.m, r.k);
    for (const auto& r : published::table2) check(ModelCase::case2, r.n, {r.d, r.gamma}, 1, r.k);
    for (const auto& r : published::table3) check(ModelCase::nodal_elliptic, r.n, {r.d}, 1, r.k);
  }

  TEST_CASE("Saint-Donat obstructions") {
    // two lines meeting twice in P^3 span a plane: not an admissible model
    auto b = build_gram(ModelCase::case1, 3, std::vector<int>{1, 1}, 2);
    CHECK(very_ample_obstruction(b.gram, ModelCase::case1, 3).has_value());
    b = build_gram(ModelCase::case2, 3, std::vector<int>{3, 1}, 1);
    CHECK_FALSE(very_ample_obstruction(b.gram, ModelCase::case2, 3).has_value());
  }
}
