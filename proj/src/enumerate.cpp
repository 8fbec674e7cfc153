#include "k3/enumerate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "k3/poly.hpp"

namespace k3 {

std::string Configuration::label() const {
  std::ostringstream os;
  os << to_string(kind) << " n=" << n;
  switch (kind) {
    case ModelCase::case1: os << " g1=" << degrees[0] << " g2=" << degrees[1] << " m=" << m; break;
    case ModelCase::case2: os << " d=" << degrees[0] << " gamma=" << degrees[1]; break;
    case ModelCase::nodal_elliptic: os << " d=" << degrees[0]; break;
    case ModelCase::nodal_rational: os << " gamma=" << degrees[0] << " m=" << m; break;
  }
  return os.str();
}

std::vector<std::pair<int, int>> Configuration::components() const {
  switch (kind) {
    case ModelCase::case1: return {{degrees[0], 0}, {degrees[1], 0}};
    case ModelCase::case2: return {{degrees[0], 1}, {degrees[1], 0}};
    case ModelCase::nodal_elliptic: return {{degrees[0], 1}};
    case ModelCase::nodal_rational: return {{degrees[0], 0}};
  }
  return {};
}

int Configuration::pairwise_meets() const {
  switch (kind) {
    case ModelCase::case1: return m;
    case ModelCase::case2: return 1;
    default: return 0;
  }
}

namespace {

auto sort_key(const Configuration& c) { return std::make_tuple(c.k, c.n, c.degrees, c.m, static_cast<int>(c.kind)); }

}  // namespace

bool operator<(const Configuration& a, const Configuration& b) { return sort_key(a) < sort_key(b); }

bool same_configuration(const Configuration& a, const Configuration& b) { return sort_key(a) == sort_key(b); }

int hilbert_scheme_dim(int d, int g, int n) {
  if (g != 0 && g != 1) throw std::invalid_argument("hilbert_scheme_dim: genus must be 0 or 1");
  if (d < 1) throw std::invalid_argument("hilbert_scheme_dim: degree must be positive");
  return g == 0 ? (n + 1) * d + (n - 3) : (n + 1) * d;
}

int incidence_dim(const Configuration& cfg) {
  const int n = cfg.n;
  switch (cfg.kind) {
    case ModelCase::case1:
      return hilbert_scheme_dim(cfg.degrees[0], 0, n) + cfg.m + hilbert_scheme_dim(cfg.degrees[1], 0, n) - cfg.m * (n - 1);
    case ModelCase::case2:
      return hilbert_scheme_dim(cfg.degrees[0], 1, n) + 1 + hilbert_scheme_dim(cfg.degrees[1], 0, n) - (n - 1);
    case ModelCase::nodal_elliptic:
      return hilbert_scheme_dim(cfg.degrees[0], 1, n) + 1;
    case ModelCase::nodal_rational: {
      const int h = hilbert_scheme_dim(cfg.degrees[0], 0, n);
      if (cfg.m == 0) return h + n;        // node anywhere off the curve
      if (cfg.m == 1) return h + 1;        // node on the curve
      return h - (n - 2);                  // curve with a double point at the node
    }
  }
  return 0;
}

int target_dim(ModelCase c) {
  // the elliptic pencil adds one dimension to the moduli count
  return (c == ModelCase::case2 || c == ModelCase::nodal_elliptic) ? 18 : 17;
}

int required_fiber_dim(const Configuration& cfg) {
  return target_dim(cfg.kind) + (cfg.n + 1) * (cfg.n + 1) - 1 - incidence_dim(cfg);
}

int nodal_hyperplane_params(const Configuration& cfg) {
  int tangents = 0;
  if (cfg.kind == ModelCase::nodal_elliptic) tangents = 1;
  if (cfg.kind == ModelCase::nodal_rational) tangents = cfg.m;
  return cfg.n - 1 - tangents;
}

int expected_h0_ideal(int n, int t, std::span<const std::pair<int, int>> components, int pairwise_meets) {
  if (components.empty()) throw std::invalid_argument("expected_h0_ideal: no components");
  long v = static_cast<long>(binomial(n + t, t)) + pairwise_meets;
  for (auto [e, g] : components) {
    if (g != 0 && g != 1) throw std::invalid_argument("expected_h0_ideal: genus must be 0 or 1");
    v -= e * t + 1 - g;
  }
  return static_cast<int>(std::max(0L, v));
}

bool passes_h0_filter(int n, std::span<const std::pair<int, int>> comps, int meets) {
  switch (n) {
    case 3: return expected_h0_ideal(3, 4, comps, meets) >= 1;
    case 4: return expected_h0_ideal(4, 2, comps, meets) >= 1 && expected_h0_ideal(4, 3, comps, meets) >= n + 2;
    case 5: return expected_h0_ideal(5, 2, comps, meets) >= 3;
    default: throw std::invalid_argument("passes_h0_filter: n must be 3, 4 or 5");
  }
}

Configuration make_configuration(ModelCase c, int n, std::vector<int> degrees, int m) {
  Configuration cfg;
  cfg.kind = c;
  cfg.n = n;
  cfg.m = m;
  if (c == ModelCase::case1 && degrees.size() == 2 && degrees[0] < degrees[1]) std::swap(degrees[0], degrees[1]);
  cfg.degrees = std::move(degrees);
  BuiltGram bg = build_gram(c, n, cfg.degrees, m);
  cfg.gram = bg.gram;
  cfg.k = bg.k;
  for (auto [e, g] : cfg.components()) cfg.ledger.hilb_dims.push_back(hilbert_scheme_dim(e, g, n));
  cfg.ledger.incidence_dim = incidence_dim(cfg);
  cfg.ledger.pgl_dim = (n + 1) * (n + 1) - 1;
  cfg.ledger.target = target_dim(c);
  cfg.ledger.required_fiber_dim = required_fiber_dim(cfg);
  return cfg;
}

Admissibility admissibility(const Configuration& cfg) {
  if (cfg.kind == ModelCase::case1) {
    const int g1 = cfg.degrees[0], g2 = cfg.degrees[1];
    if (cfg.m > std::min(cfg.n + 1, g2 + 1) || cfg.m > 2 * g1) return {false, "m-bound"};
  }
  const auto comps = cfg.components();
  if (!passes_h0_filter(cfg.n, comps, cfg.pairwise_meets())) return {false, "h0-filter"};
  if (cfg.k <= 0 || !is_genus_U_plus(cfg.gram, cfg.k)) return {false, "genus"};
  if (cfg.ledger.required_fiber_dim < 0) return {false, "negative-fiber"};
  if (auto ob = very_ample_obstruction(cfg.gram, cfg.kind, cfg.n)) return {false, ob->rule};
  if (!primitivity_report(cfg.gram, cfg.k, cfg.kind).primitive()) return {false, "primitivity"};
  return {true, ""};
}

std::vector<Configuration> enumerate(ModelCase c, int n) {
  if (n < 3 || n > 5) throw std::invalid_argument("enumerate: n must be 3, 4 or 5");
  std::vector<Configuration> out;
  auto consider = [&](std::vector<int> degrees, int m, int largest) {
    Configuration cfg = make_configuration(c, n, std::move(degrees), m);
    if (largest >= kDegreeSafetyCap && passes_h0_filter(n, cfg.components(), cfg.pairwise_meets()))
      throw std::logic_error("enumerate: degree filter reached the safety cap");
    if (admissibility(cfg).admissible) out.push_back(std::move(cfg));
  };
  switch (c) {
    case ModelCase::case1:
      for (int g1 = 1; g1 <= kDegreeSafetyCap; ++g1)
        for (int g2 = 1; g2 <= g1; ++g2)
          for (int m = 0; m <= std::min({n + 1, g2 + 1, 2 * g1}); ++m) consider({g1, g2}, m, g1);
      break;
    case ModelCase::case2:
      for (int d = 3; d <= kDegreeSafetyCap; ++d)
        for (int g = 1; g <= kDegreeSafetyCap; ++g) consider({d, g}, 1, std::max(d, g));
      break;
    case ModelCase::nodal_elliptic:
      for (int d = 3; d <= kDegreeSafetyCap; ++d) consider({d}, 1, d);
      break;
    case ModelCase::nodal_rational:
      for (int g = 1; g <= kDegreeSafetyCap; ++g)
        for (int m = 0; m <= 2; ++m) consider({g}, m, g);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), same_configuration), out.end());
  return out;
}

std::vector<Configuration> enumerate_all() {
  std::vector<Configuration> all;
  for (auto c : {ModelCase::case1, ModelCase::case2, ModelCase::nodal_elliptic, ModelCase::nodal_rational})
    for (int n = 3; n <= 5; ++n) {
      auto part = enumerate(c, n);
      all.insert(all.end(), part.begin(), part.end());
    }
  std::sort(all.begin(), all.end());
  return all;
}

std::set<std::int64_t> theorem_klist(std::span<const Configuration> configs, std::span<const bool> certified) {
  if (configs.size() != certified.size()) throw std::invalid_argument("theorem_klist: size mismatch");
  std::set<std::int64_t> ks;
  for (std::size_t i = 0; i < configs.size(); ++i)
    if (certified[i]) ks.insert(configs[i].k);
  return ks;
}

}  // namespace k3
