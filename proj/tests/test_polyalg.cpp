#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "k3/curves.hpp"
#include "k3/linalg.hpp"
#include "k3/polyalg.hpp"

using namespace k3;

namespace {

MultiPoly monomial(const PrimeField& f, int nvars, std::initializer_list<int> exps, Fp c = 1) {
  Exponent e{};
  int i = 0, deg = 0;
  for (int x : exps) {
    e[i++] = static_cast<std::uint8_t>(x);
    deg += x;
  }
  MultiPoly p(nvars, deg);
  p.add_term(f, e, c);
  return p;
}

MultiPoly random_form(const PrimeField& f, int nvars, int deg, Rng& rng) {
  const auto& b = monomial_basis(nvars, deg);
  return MultiPoly::from_dense(nvars, deg, rng.vector(f, b.size()));
}

FpMatrix random_matrix(const PrimeField& f, std::size_t r, std::size_t c, Rng& rng) {
  FpMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.element(f);
  return m;
}

// rank r matrix as a product (r x k)(k x c)
FpMatrix low_rank(const PrimeField& f, std::size_t rows, std::size_t cols, std::size_t r, Rng& rng) {
  auto a = random_matrix(f, rows, r, rng), b = random_matrix(f, r, cols, rng);
  FpMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Fp s = 0;
      for (std::size_t k = 0; k < r; ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
      m(i, j) = s;
    }
  return m;
}

RationalMap line_in_p3() {
  RationalMap l;
  l.degree = 1;
  l.forms = {BinaryForm{1, UPoly({1})}, BinaryForm{1, UPoly({0, 1})}, BinaryForm{1, UPoly()}, BinaryForm{1, UPoly()}};
  return l;
}

}  // namespace

TEST_SUITE("polyalg") {
  TEST_CASE("prime field") {
    PrimeField f(10007);
    CHECK(is_prime(10007));
    CHECK_FALSE(is_prime(10005));
    for (Fp a = 1; a < 200; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS(f.inv(0));
    for (Fp a = 0; a < 200; ++a) {
      auto r = f.sqrt(a);
      CHECK(r.has_value() == f.is_square(a));
      if (r) CHECK(f.mul(*r, *r) == a);
    }
    CHECK(f.lift(10006) == -1);
    CHECK(f.from_int(-3) == 10004);
    CHECK(f.pow(3, 10006) == 1);
  }

  TEST_CASE("rng streams are reproducible") {
    Rng a(1), b(1);
    CHECK(a.next() == b.next());
    auto s1 = Rng(5).split(2), s2 = Rng(5).split(2), s3 = Rng(5).split(3);
    const auto x = s1.next();
    CHECK(x == s2.next());
    CHECK(x != s3.next());
    for (int i = 0; i < 1000; ++i) CHECK(a.below(17) < 17);
  }

  TEST_CASE("kernel basis examples") {
    PrimeField f(10007);
    FpMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id(i, i) = 1;
    CHECK(kernel_basis(f, id).empty());
    CHECK(kernel_basis(f, FpMatrix(2, 3)).size() == 3);

    Rng rng(3);
    auto m = low_rank(f, 10, 35, 10, rng);
    const auto ker = kernel_basis(f, m);
    CHECK(rank(f, m) == 10);
    REQUIRE(ker.size() == 25);
    for (const auto& v : ker) {
      const auto mv = m.apply(f, v);
      CHECK(std::all_of(mv.begin(), mv.end(), [](Fp x) { return x == 0; }));
    }
  }

  TEST_CASE("row reduction properties on random matrices") {
    PrimeField f(10007);
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t rows = 2 + rng.below(12), cols = 2 + rng.below(12);
      const std::size_t r = 1 + rng.below(std::min(rows, cols));
      auto m = low_rank(f, rows, cols, r, rng);
      CHECK(rank(f, m) == r);
      CHECK(kernel_basis(f, m).size() == cols - r);
      CHECK(rank_capped(f, m, 1) == 1);

      std::vector<std::vector<Fp>> perm_rows;
      for (std::size_t i = 0; i < rows; ++i) perm_rows.emplace_back(m.row(i).begin(), m.row(i).end());
      std::reverse(perm_rows.begin(), perm_rows.end());
      CHECK(rank(f, FpMatrix::from_rows(perm_rows, cols)) == r);

      const auto once = rref(f, m);
      const auto twice = rref(f, FpMatrix::from_rows(once, cols));
      CHECK(once == twice);

      RowEchelon re(f, cols);
      for (std::size_t i = 0; i < rows; ++i) re.add_row(m.row(i));
      CHECK(re.rank() == r);
      CHECK(re.reduced_rows() == once);
      for (std::size_t i = 0; i < rows; ++i) CHECK(re.contains(m.row(i)));
    }
  }

  TEST_CASE("polynomial arithmetic") {
    PrimeField f(10007);
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const int nv = 3 + static_cast<int>(rng.below(4));
      auto a = random_form(f, nv, 2, rng), b = random_form(f, nv, 3, rng);
      auto ab = multiply(f, a, b);
      CHECK(ab.degree() == 5);
      const auto pt = rng.vector(f, static_cast<std::size_t>(nv));
      CHECK(evaluate(f, ab, pt) == f.mul(evaluate(f, a, pt), evaluate(f, b, pt)));
      // Euler: sum x_i d/dx_i g = deg(g) g
      MultiPoly euler(nv, 5);
      for (int i = 0; i < nv; ++i) euler = add(f, euler, multiply(f, MultiPoly::variable(nv, i), derivative(f, ab, i)));
      CHECK(euler == scale(f, ab, 5));
      CHECK(MultiPoly::from_dense(nv, 5, ab.dense()) == ab);
      CHECK(add(f, ab, scale(f, ab, f.neg(1))).is_zero());
    }
    const auto& b = monomial_basis(4, 2);
    CHECK(b.size() == 10);
    CHECK(b[0] == Exponent{2, 0, 0, 0, 0, 0});
    CHECK(b.index_of(Exponent{0, 0, 0, 2, 0, 0}) == 9);
  }

  TEST_CASE("univariate polynomials") {
    PrimeField f(10007);
    UPoly a({f.neg(1), 0, 1});  // t^2 - 1
    UPoly b({1, 1});            // t + 1
    CHECK(mod(f, a, b).is_zero());
    CHECK(gcd(f, a, b).degree() == 1);
    CHECK(gcd(f, a, UPoly({2, 1})).degree() == 0);
    // s^2 - t^2 and s*t share no zero; s^2 - t^2 and s - t do
    std::vector<BinaryForm> forms{{2, a}, {2, UPoly({0, 1})}};
    CHECK_FALSE(have_common_zero(f, forms));
    forms = {{2, a}, {1, UPoly({1, f.neg(1)})}};
    CHECK(have_common_zero(f, forms));
    // both vanish at (0:1)
    forms = {{2, UPoly({0, 1})}, {1, UPoly({1})}};
    CHECK(have_common_zero(f, forms));
  }

  TEST_CASE("graded ideal pieces") {
    PrimeField f(10007);
    std::vector<MultiPoly> coords{MultiPoly::variable(3, 0), MultiPoly::variable(3, 1), MultiPoly::variable(3, 2)};
    CHECK(graded_piece_dim(f, coords, 2) == 6);
    std::vector<MultiPoly> x0{MultiPoly::variable(2, 0)};
    CHECK(graded_ideal_piece(f, x0, 3).size() == 3);
    const auto q = add(f, monomial(f, 4, {1, 1, 0, 0}), monomial(f, 4, {0, 0, 1, 1}, f.neg(1)));
    std::vector<MultiPoly> jac;
    for (int i = 0; i < 4; ++i) jac.push_back(derivative(f, q, i));
    CHECK(graded_piece_dim(f, jac, 1) == 4);
  }

  TEST_CASE("vanishing forms at points") {
    PrimeField f(10007);
    CHECK(vanishing_forms_at_points(f, {{1, 2, 3, 4}}, 1, 3).size() == 3);
    std::vector<std::vector<Fp>> conic;
    for (Fp t = 1; t <= 5; ++t) conic.push_back({1, t, f.mul(t, t)});
    auto forms = vanishing_forms_at_points(f, conic, 2, 2);
    REQUIRE(forms.size() == 1);
    for (Fp t = 6; t < 20; ++t) CHECK(evaluate(f, forms[0], std::vector<Fp>{1, t, f.mul(t, t)}) == 0);
  }

  TEST_CASE("quartics through a cubic and a line meeting once") {
    PrimeField f(10007);
    Rng rng(1);
    const auto cfg = make_configuration(ModelCase::case2, 3, {3, 1}, 1);
    const auto pair = build_pair(f, cfg, rng);
    std::vector<std::vector<Fp>> pts;
    for (const auto& c : pair.curves) {
      const std::size_t count = static_cast<std::size_t>(curve_degree(c) * 4 + 2);
      for (const auto& p : sample_params(f, c, count)) pts.push_back(point_at(f, c, p));
    }
    const auto forms = vanishing_forms_at_points(f, pts, 4, 3);
    CHECK(forms.size() == 19);
    for (const auto& g : forms)
      for (const auto& c : pair.curves) CHECK(exact_containment(f, g, c));
  }

  TEST_CASE("exact containment") {
    PrimeField f(10007);
    const CurveMap line = line_in_p3();
    CHECK(exact_containment(f, MultiPoly::variable(4, 2), line));
    CHECK_FALSE(exact_containment(f, MultiPoly::variable(4, 0), line));
  }

  TEST_CASE("projective emptiness") {
    PrimeField f(10007);
    std::vector<MultiPoly> coords;
    for (int i = 0; i < 4; ++i) coords.push_back(MultiPoly::variable(4, i));
    auto r = empty_projective_check(f, coords, 3, 7);
    REQUIRE(r.empty());
    CHECK(*r.degree == 1);

    std::vector<MultiPoly> x0{MultiPoly::variable(2, 0)};
    for (int t = 1; t <= 12; ++t) CHECK_FALSE(empty_projective_check(f, x0, 1, t).empty());

    const auto q = add(f, monomial(f, 4, {1, 1, 0, 0}), monomial(f, 4, {0, 0, 1, 1}, f.neg(1)));
    std::vector<MultiPoly> gens{q};
    for (int i = 0; i < 4; ++i) gens.push_back(derivative(f, q, i));
    r = empty_projective_check(f, gens, 3, 8);
    REQUIRE(r.empty());
    CHECK(*r.degree <= 2);
    CHECK(default_t_max(gens) == 8);
  }

  TEST_CASE("adding generators never makes an empty locus inconclusive") {
    PrimeField f(10007);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<MultiPoly> gens;
      for (int i = 0; i < 3; ++i) gens.push_back(random_form(f, 3, 2, rng));
      const auto base = empty_projective_check(f, gens, 2, 6);
      gens.push_back(random_form(f, 3, 1, rng));
      const auto more = empty_projective_check(f, gens, 2, 6);
      if (base.empty()) {
        REQUIRE(more.empty());
        CHECK(*more.degree <= *base.degree);
      }
    }
  }

  TEST_CASE("evaluation rank is et+1-g, capped by the monomial count, for random curves, t = 1..4") {
    PrimeField f(10007);
    Rng rng(42);
    int failures = 0, checked = 0;
    auto check_curve = [&](const CurveMap& c) {
      const int e = curve_degree(c), g = curve_genus(c);
      for (int t = 1; t <= 4; ++t) {
        std::vector<std::vector<Fp>> pts;
        for (const auto& p : random_params(f, c, static_cast<std::size_t>(e * t + 2), rng)) pts.push_back(point_at(f, c, p));
        const auto m = evaluation_matrix(f, pts, t);
        // a curve that is not linearly normal cannot beat the number of monomials
        const std::size_t expected =
            std::min<std::size_t>(binomial(ambient_n(c) + t, t), static_cast<std::size_t>(e * t + 1 - g));
        ++checked;
        failures += rank(f, m) != expected;
        failures += curve_evaluation_rank(f, {c}, t) != expected;
      }
    };
    for (int n = 3; n <= 5; ++n) {
      for (int e = 1; e <= 5; ++e) check_curve(rational_through_points(f, n, e, {}, rng).map);
      for (int d = 3; d <= 6; ++d)
        if (d >= 3 && (n < 5 || d >= 4)) check_curve(random_elliptic_curve(f, n, d, rng));
    }
    CHECK(checked > 80);
    CHECK(failures == 0);
  }
}
