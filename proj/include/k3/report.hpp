#pragma once

// Tables of configurations and the certified k-list, rendered as
// markdown, CSV or JSON.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3/enumerate.hpp"
#include "k3/witness.hpp"

namespace k3 {

enum class Format { md, csv, json };
Format parse_format(const std::string& s);

/// A row of the published tables: 1 (two rational curves), 2 (elliptic and
/// rational curve) or 3 (nodal, elliptic curve through the node).
struct TableKey {
  int table = 0;
  ModelCase kind = ModelCase::case1;
  int n = 3;
  std::vector<int> degrees;
  int m = 1;
};

const std::vector<TableKey>& published_rows();
/// 0 when the configuration is not one of the published rows.
int table_of(const Configuration& cfg);

/// Fiber column as printed: required + 1 for case2 in P^3, required - 2 for
/// nodal elliptic in P^4, the required value otherwise.
int printed_fiber(const Configuration& cfg);

struct RowResult {
  Configuration cfg;
  int table = 0;
  bool witnessed = false;
  ExitCode code = ExitCode::pass;
  std::string message;
  std::map<int, int> h0_values;
  std::map<int, int> h0_nodal;
  int fiber_dim = 0;
  std::string certificate;  // smooth / node / inconclusive, empty when not built
  bool certified = false;   // witness passes every check
};

RowResult witness_row(const Configuration& cfg, std::uint32_t prime, std::uint64_t seed, std::optional<int> t_max);

struct KEntry {
  std::int64_t k = 0;
  std::string provenance;
};

struct TablesReport {
  std::uint32_t prime = 10007;
  std::uint64_t seed = 1;
  bool witnessed = false;
  std::vector<RowResult> rows;    // published rows, in table order
  std::vector<RowResult> others;  // other admissible configurations, witnessed on request
  std::vector<TableKey> missing;  // published rows absent from the enumeration
  std::vector<KEntry> klist;      // union of k over certified published rows
  std::vector<KEntry> absent;     // k up to the largest listed or admissible value, not in klist
  std::set<std::int64_t> certified_outside;  // k certified only by configurations outside the tables
};

struct TablesOptions {
  std::uint32_t prime = 10007;
  std::uint64_t seed = 1;
  bool witnesses = true;           // false: k-list from the lattice data alone
  bool all_configurations = false;  // also witness configurations outside the tables
  std::optional<int> t_max;
};

TablesReport build_tables_report(const TablesOptions& opt);
std::set<std::int64_t> klist_values(const TablesReport& r);

std::string render_tables(const TablesReport& r, Format fmt);
std::string render_configurations(const std::vector<Configuration>& configs, Format fmt);

}  // namespace k3
