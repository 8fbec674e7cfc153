#include "doctest.h"
#include "k3/curves.hpp"
#include "k3/linalg.hpp"
#include "k3/polyalg.hpp"

using namespace k3;

namespace {

std::size_t span_rank(const PrimeField& f, const CurveMap& c) {
  std::vector<std::vector<Fp>> pts;
  for (const auto& p : sample_params(f, c, 40)) pts.push_back(point_at(f, c, p));
  return rank(f, FpMatrix::from_rows(pts, pts[0].size()));
}

PairWitness pair_for(const PrimeField& f, ModelCase kind, int n, std::vector<int> d, int m, std::uint64_t seed = 1) {
  Rng rng(seed);
  return build_pair(f, make_configuration(kind, n, std::move(d), m), rng);
}

}  // namespace

TEST_SUITE("curves") {
  TEST_CASE("weierstrass monomials") {
    CHECK(weierstrass_monomials(3) == std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}});
    CHECK(weierstrass_monomials(5).size() == 5);
    for (int d = 3; d <= 9; ++d) {
      const auto m = weierstrass_monomials(d);
      CHECK(m.size() == static_cast<std::size_t>(d));
      for (auto [i, j] : m) CHECK((2 * i + 3 * j <= d && j <= 1));
    }
  }

  TEST_CASE("random elliptic curves") {
    PrimeField f(10007);
    Rng rng(5);
    auto e = random_elliptic_curve(f, 3, 3, rng);
    CHECK(span_rank(f, e) == 3);  // a plane cubic
    CHECK(curve_evaluation_rank(f, {CurveMap(e)}, 1) == 3);
    CHECK(curve_evaluation_rank(f, {CurveMap(e)}, 2) == 6);
    CHECK(embedding_certified(f, e));
    // 4a^3 + 27b^2 != 0
    const Fp disc = f.add(f.mul(4, f.pow(e.a, 3)), f.mul(27, f.mul(e.b, e.b)));
    CHECK(disc != 0);

    auto e4 = random_elliptic_curve(f, 5, 4, rng);
    CHECK(span_rank(f, e4) == 4);
    const auto p = random_cubic_point(f, e4, rng);
    CHECK(e4.on_curve(f, p));
    CHECK(p.y != 0);
  }

  TEST_CASE("rational curves through points") {
    PrimeField f(10007);
    Rng rng(8);
    std::vector<std::vector<Fp>> pts{{1, 2, 3, 4}};
    auto r = rational_through_points(f, 3, 1, pts, rng);
    CHECK(same_projective_point(f, r.map.point(f, r.params[0]), pts[0]));

    pts = {{1, 5, 7, 11}, {3, 1, 4, 1}};
    r = rational_through_points(f, 3, 3, pts, rng);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(same_projective_point(f, r.map.point(f, r.params[i]), pts[i]));
    CHECK(embedding_certified(f, r.map));

    pts.clear();
    for (int i = 0; i < 4; ++i) pts.push_back(rng.vector(f, 6));
    r = rational_through_points(f, 5, 3, pts, rng);
    CHECK(r.params.size() == 4);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(same_projective_point(f, r.map.point(f, r.params[i]), pts[i]));

    CHECK_THROWS_AS(rational_through_points(f, 3, 1, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, rng),
                    std::invalid_argument);
  }

  TEST_CASE("general position") {
    PrimeField f(10007);
    CHECK(in_general_position(f, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
    CHECK_FALSE(in_general_position(f, {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}}));
  }

  TEST_CASE("pairs from the tables") {
    PrimeField f(10007);
    auto w = pair_for(f, ModelCase::case2, 3, {3, 1}, 1);
    REQUIRE(w.curves.size() == 2);
    CHECK(curve_genus(w.curves[0]) == 1);
    CHECK(curve_degree(w.curves[0]) == 3);
    CHECK(curve_degree(w.curves[1]) == 1);
    REQUIRE(w.meets.size() == 1);
    CHECK(w.meets[0].transversal);
    CHECK_FALSE(pair_defect(f, w).has_value());
    auto len = intersection_length(f, w.curves, intersection_start_degree(w.curves));
    REQUIRE(len.value);
    CHECK(*len.value == 1);

    w = pair_for(f, ModelCase::case1, 3, {1, 1}, 0);
    CHECK(w.meets.empty());
    len = intersection_length(f, w.curves, intersection_start_degree(w.curves));
    REQUIRE(len.value);
    CHECK(*len.value == 0);

    w = pair_for(f, ModelCase::case1, 5, {3, 3}, 2);
    CHECK(w.meets.size() == 2);
    CHECK_FALSE(pair_defect(f, w).has_value());

    w = pair_for(f, ModelCase::case1, 5, {5, 3}, 4);
    CHECK(w.meets.size() == 4);
    len = intersection_length(f, w.curves, intersection_start_degree(w.curves));
    REQUIRE(len.value);
    CHECK(*len.value == 4);
    std::vector<std::vector<Fp>> pts;
    for (const auto& m : w.meets) {
      CHECK(m.transversal);
      pts.push_back(m.point);
    }
    CHECK(in_general_position(f, pts));
  }

  TEST_CASE("coordinate lines meeting at a point") {
    PrimeField f(10007);
    RationalMap a, b;
    a.degree = b.degree = 1;
    // (s : t : 0 : 0) and (s : 0 : t : 0) meet at (1:0:0:0)
    a.forms = {BinaryForm{1, UPoly({1})}, BinaryForm{1, UPoly({0, 1})}, BinaryForm{1, UPoly()}, BinaryForm{1, UPoly()}};
    b.forms = {BinaryForm{1, UPoly({1})}, BinaryForm{1, UPoly()}, BinaryForm{1, UPoly({0, 1})}, BinaryForm{1, UPoly()}};
    std::vector<CurveMap> curves{a, b};
    auto len = intersection_length(f, curves, 1);
    REQUIRE(len.value);
    CHECK(*len.value == 1);
    CHECK(transversal(f, a.point(f, 0), a.tangent(f, 0), b.tangent(f, 0)));
    // same line twice is not transversal
    CHECK_FALSE(transversal(f, a.point(f, 0), a.tangent(f, 0), a.tangent(f, 0)));
  }

  TEST_CASE("nodal pairs place the node") {
    PrimeField f(10007);
    auto w = pair_for(f, ModelCase::nodal_elliptic, 3, {3}, 1);
    REQUIRE(w.node);
    REQUIRE(w.node_param);
    CHECK(same_projective_point(f, point_at(f, w.curves[0], *w.node_param), *w.node));
    CHECK_FALSE(pair_defect(f, w).has_value());
  }

  TEST_CASE("hilbert scheme tangent dimensions") {
    PrimeField f(10007);
    RationalMap twisted;
    twisted.degree = 3;
    for (int i = 0; i < 4; ++i) {
      std::vector<Fp> c(4, 0);
      c[static_cast<std::size_t>(i)] = 1;
      twisted.forms.push_back(BinaryForm{3, UPoly(c)});
    }
    PairWitness single;
    single.kind = ModelCase::case1;
    single.n = 3;
    single.curves = {twisted};
    auto t = hilbert_tangent_dim(f, single);
    REQUIRE(t.value);
    CHECK(*t.value == 12);

    Rng rng(4);
    PairWitness plane;
    plane.kind = ModelCase::case2;
    plane.n = 3;
    plane.curves = {random_elliptic_curve(f, 3, 3, rng)};
    t = hilbert_tangent_dim(f, plane);
    REQUIRE(t.value);
    CHECK(*t.value == 12);

    auto w = pair_for(f, ModelCase::case2, 3, {3, 1}, 1);
    t = hilbert_tangent_dim(f, w);
    REQUIRE(t.value);
    CHECK(*t.value == 15);
  }

  TEST_CASE("curve ideals contain the curve") {
    PrimeField f(10007);
    auto w = pair_for(f, ModelCase::case2, 4, {4, 2}, 1);
    for (const auto& c : w.curves) {
      const auto gens = curve_ideal_generators(f, c);
      CHECK_FALSE(gens.empty());
      for (const auto& g : gens) CHECK(vanishes_on(f, g, c));
    }
  }

  TEST_CASE("pair construction is deterministic in the seed") {
    PrimeField f(10007);
    auto a = pair_for(f, ModelCase::case1, 4, {2, 2}, 1, 7);
    auto b = pair_for(f, ModelCase::case1, 4, {2, 2}, 1, 7);
    REQUIRE(a.meets.size() == b.meets.size());
    CHECK(a.meets[0].point == b.meets[0].point);
    CHECK(std::get<RationalMap>(a.curves[0]).forms == std::get<RationalMap>(b.curves[0]).forms);
  }
}
