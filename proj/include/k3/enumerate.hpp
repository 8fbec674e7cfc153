#pragma once

// Candidate projective models and their dimension bookkeeping.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k3/lattice.hpp"
#include "k3/model_case.hpp"

namespace k3 {

struct DimensionLedger {
  std::vector<int> hilb_dims;  // one per curve
  int incidence_dim = 0;
  int pgl_dim = 0;
  int target = 0;
  int required_fiber_dim = 0;
};

struct Configuration {
  ModelCase kind = ModelCase::case2;
  int n = 3;
  std::vector<int> degrees;  // (g1, g2), (d, gamma), (d) or (gamma)
  int m = 1;
  std::int64_t k = 0;
  GramMatrix3 gram;
  DimensionLedger ledger;

  /// e.g. "case2 n=3 d=3 gamma=1"
  std::string label() const;
  /// (degree, genus) of each curve in the order of `degrees`.
  std::vector<std::pair<int, int>> components() const;
  /// Number of points shared by the two curves (0 for the nodal cases).
  int pairwise_meets() const;
};

bool operator<(const Configuration& a, const Configuration& b);
bool same_configuration(const Configuration& a, const Configuration& b);

/// (n+1)d + (n-3) for g = 0, (n+1)d for g = 1.
int hilbert_scheme_dim(int d, int g, int n);
int incidence_dim(const Configuration& cfg);
int target_dim(ModelCase c);
int required_fiber_dim(const Configuration& cfg);

/// Number of hyperplane parameters in the n = 4 nodal construction: the
/// hyperplanes through the node containing the curve's tangent directions there.
int nodal_hyperplane_params(const Configuration& cfg);

/// max(0, C(n+t, t) - sum (e_i t + 1 - g_i) + meets).
int expected_h0_ideal(int n, int t, std::span<const std::pair<int, int>> components, int pairwise_meets);

/// Existence filter for the space of surfaces through the curves.
bool passes_h0_filter(int n, std::span<const std::pair<int, int>> components, int pairwise_meets);

/// Builds the Gram matrix and ledger; no admissibility filtering.
Configuration make_configuration(ModelCase c, int n, std::vector<int> degrees, int m);

struct Admissibility {
  bool admissible = false;
  std::string reason;  // empty when admissible
};

/// Filters in order: m-bounds, h0 filter, genus of U + <-2k>,
/// required fiber >= 0, very-ampleness obstructions, primitivity.
Admissibility admissibility(const Configuration& cfg);

constexpr int kDegreeSafetyCap = 12;

/// Every admissible configuration of a case in P^n, sorted by (k, n, degrees, m).
std::vector<Configuration> enumerate(ModelCase c, int n);
std::vector<Configuration> enumerate_all();

/// Union of k over the configurations flagged as certified.
std::set<std::int64_t> theorem_klist(std::span<const Configuration> configs, std::span<const bool> certified);

}  // namespace k3
