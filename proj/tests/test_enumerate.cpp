#include <algorithm>
#include <memory>
#include <set>

#include "doctest.h"
#include "k3/enumerate.hpp"
#include "oracles.hpp"
#include "published_tables.hpp"

using namespace k3;

namespace {

const Configuration* find(const std::vector<Configuration>& all, ModelCase c, int n, std::vector<int> d, int m) {
  for (const auto& cfg : all)
    if (cfg.kind == c && cfg.n == n && cfg.degrees == d && cfg.m == m) return &cfg;
  return nullptr;
}

std::uint64_t choose(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("hilbert scheme dimensions") {
    CHECK(hilbert_scheme_dim(3, 1, 3) == 12);
    CHECK(hilbert_scheme_dim(1, 0, 3) == 4);
    CHECK(hilbert_scheme_dim(5, 0, 5) == 32);
    CHECK_THROWS_AS(hilbert_scheme_dim(3, 2, 3), std::invalid_argument);
  }

  TEST_CASE("incidence, target and required fiber") {
    auto c = make_configuration(ModelCase::case2, 3, {3, 1}, 1);
    CHECK(incidence_dim(c) == 15);
    CHECK(required_fiber_dim(c) == 18);
    c = make_configuration(ModelCase::case1, 3, {1, 1}, 0);
    CHECK(incidence_dim(c) == 8);
    CHECK(required_fiber_dim(c) == 24);
    c = make_configuration(ModelCase::nodal_elliptic, 3, {3}, 1);
    CHECK(incidence_dim(c) == 13);
    c = make_configuration(ModelCase::case2, 4, {3, 1}, 1);
    CHECK(required_fiber_dim(c) == 23);
    CHECK(target_dim(ModelCase::case1) == 17);
    CHECK(target_dim(ModelCase::case2) == 18);
    CHECK(target_dim(ModelCase::nodal_elliptic) == 18);
  }

  TEST_CASE("expected h0 of the ideal") {
    const std::vector<std::pair<int, int>> lines{{1, 0}, {1, 0}};
    const std::vector<std::pair<int, int>> cubic_line{{3, 1}, {1, 0}};
    CHECK(expected_h0_ideal(3, 4, lines, 0) == 25);
    CHECK(expected_h0_ideal(3, 4, cubic_line, 1) == 19);
    CHECK(expected_h0_ideal(4, 2, cubic_line, 1) == 7);
    // maximal-rank formula against a direct count
    for (int n = 3; n <= 5; ++n)
      for (int t = 1; t <= 4; ++t) {
        const std::vector<std::pair<int, int>> comps{{4, 1}, {2, 0}};
        const long v = static_cast<long>(choose(n + t, t)) - (4 * t) - (2 * t + 1) + 1;
        CHECK(expected_h0_ideal(n, t, comps, 1) == std::max(0L, v));
      }
  }

  TEST_CASE("enumerate examples") {
    const auto c1 = enumerate(ModelCase::case1, 3);
    auto* r = find(c1, ModelCase::case1, 3, {2, 1}, 0);
    REQUIRE(r != nullptr);
    CHECK(r->k == 13);

    const auto c2 = enumerate(ModelCase::case2, 5);
    r = find(c2, ModelCase::case2, 5, {8, 1}, 1);
    REQUIRE(r != nullptr);
    CHECK(r->k == 68);
    CHECK(r->ledger.required_fiber_dim == 0);

    const auto ne = enumerate(ModelCase::nodal_elliptic, 3);
    r = find(ne, ModelCase::nodal_elliptic, 3, {8}, 1);
    REQUIRE(r != nullptr);
    CHECK(r->k == 62);
    CHECK(r->ledger.required_fiber_dim == 0);
  }

  TEST_CASE("enumeration invariants") {
    const auto all = enumerate_all();
    CHECK(std::is_sorted(all.begin(), all.end()));
    for (std::size_t i = 1; i < all.size(); ++i) CHECK_FALSE(same_configuration(all[i - 1], all[i]));
    for (const auto& c : all) {
      CHECK(c.ledger.required_fiber_dim >= 0);
      CHECK(admissibility(c).admissible);
      for (int d : c.degrees) CHECK(d <= kDegreeSafetyCap);
      oracle::Mat3 m{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = c.gram.at(i, j);
      CHECK(oracle::det3(m) == 2 * c.k);
      if (c.kind == ModelCase::case2) CHECK(c.k == c.degrees[0] * c.degrees[0] + c.degrees[0] * c.degrees[1] - c.n + 1);
    }
  }

  TEST_CASE("no admissible nodal curve above the enumerated degrees") {
    // every larger degree up to the safety cap fails the h0 filter or has negative fiber
    for (int n = 3; n <= 5; ++n) {
      int max_d = 0;
      for (const auto& c : enumerate(ModelCase::nodal_elliptic, n)) max_d = std::max(max_d, c.degrees[0]);
      CHECK(max_d < kDegreeSafetyCap);
      for (int d = max_d + 1; d <= kDegreeSafetyCap; ++d) {
        const std::vector<std::pair<int, int>> comps{{d, 1}};
        auto c = make_configuration(ModelCase::nodal_elliptic, n, {d}, 1);
        CHECK((!passes_h0_filter(n, comps, 0) || c.ledger.required_fiber_dim < 0));
      }
    }
  }

  TEST_CASE("table rows appear with their printed columns") {
    const auto all = enumerate_all();
    for (const auto& r : published::table1) {
      auto* c = find(all, ModelCase::case1, r.n, {r.gamma1, r.gamma2}, r.m);
      REQUIRE_MESSAGE(c != nullptr, "table 1 k=" << r.k);
      CHECK(c->k == r.k);
      CHECK(c->ledger.hilb_dims == std::vector<int>{r.hilb1, r.hilb2});
      CHECK(c->ledger.required_fiber_dim == r.fiber);
      CHECK(c->ledger.incidence_dim + r.fiber == 17 + (r.n + 1) * (r.n + 1) - 1);
    }
    for (const auto& r : published::table2) {
      auto* c = find(all, ModelCase::case2, r.n, {r.d, r.gamma}, 1);
      REQUIRE_MESSAGE(c != nullptr, "table 2 k=" << r.k);
      CHECK(c->k == r.k);
      CHECK(c->ledger.hilb_dims == std::vector<int>{r.hilb_e, r.hilb_gamma});
      const int shift = r.n == 3 ? 1 : 0;
      CHECK(c->ledger.required_fiber_dim + shift == r.fiber);
      CHECK(c->ledger.incidence_dim + (r.fiber - shift) == 18 + (r.n + 1) * (r.n + 1) - 1);
    }
    for (const auto& r : published::table3) {
      auto* c = find(all, ModelCase::nodal_elliptic, r.n, {r.d}, 1);
      REQUIRE_MESSAGE(c != nullptr, "table 3 k=" << r.k);
      CHECK(c->k == r.k);
      CHECK(c->ledger.hilb_dims == std::vector<int>{r.hilb});
      CHECK(c->ledger.incidence_dim == r.hilb + 1);
    }
  }

  TEST_CASE("table 3 fiber column: conventions and the k'=14 row") {
    const auto all = enumerate_all();
    for (const auto& r : published::table3) {
      auto* c = find(all, ModelCase::nodal_elliptic, r.n, {r.d}, 1);
      REQUIRE(c != nullptr);
      const int required = 18 + (r.n + 1) * (r.n + 1) - 1 - (r.hilb + 1);
      CHECK(c->ledger.required_fiber_dim == required);
      if (r.k == 14) {
        // printed 18, while its own Hilbert column forces 33 - 17 = 16
        CHECK(required == 16);
        CHECK(r.fiber == 18);
        continue;
      }
      CHECK(required + (r.n == 4 ? -2 : 0) == r.fiber);
    }
  }

  TEST_CASE("theorem_klist is the union over certified configurations") {
    const auto all = enumerate_all();
    std::vector<bool> flags(all.size(), false);
    std::set<std::int64_t> expected;
    for (std::size_t i = 0; i < all.size(); i += 3) {
      flags[i] = true;
      expected.insert(all[i].k);
    }
    std::unique_ptr<bool[]> raw(new bool[flags.size()]);
    for (std::size_t i = 0; i < flags.size(); ++i) raw[i] = flags[i];
    CHECK(theorem_klist(all, std::span<const bool>(raw.get(), flags.size())) == expected);
  }

  TEST_CASE("excluded k have no admissible configuration") {
    const auto all = enumerate_all();
    for (int k : published::excluded_k)
      for (const auto& c : all) CHECK(c.k != k);
    bool has45 = false;
    for (const auto& c : all)
      if (c.k == 45) {
        has45 = true;
        CHECK(c.kind == ModelCase::nodal_elliptic);
        CHECK(c.n == 5);
        CHECK(c.degrees == std::vector<int>{7});
      }
    CHECK(has45);
  }
}
