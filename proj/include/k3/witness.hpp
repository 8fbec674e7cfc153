#pragma once

// The full construction for one configuration, its canonical JSON form,
// and an independent replay of every check from the JSON alone.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "k3/curves.hpp"
#include "k3/enumerate.hpp"
#include "k3/surfaces.hpp"

namespace k3 {

constexpr int kSchemaVersion = 1;

/// Process exit codes shared by `witness` and `verify`.
enum class ExitCode : int {
  pass = 0,
  retry_exhausted = 2,
  inconclusive = 3,
  ledger_mismatch = 4,
  schema = 5,
};

struct Witness {
  Configuration cfg;
  std::uint32_t prime = 10007;
  std::uint64_t seed = 1;
  PairWitness pair;
  std::optional<int> intersection_length;  // two-curve cases
  SurfaceWitness surface;
  int t_max = 0;  // bound handed to the certificate
  LedgerVerdict ledger;

  /// Certificate conclusive, tangent dimension as expected, fiber as required.
  bool passes() const;
};

struct WitnessRun {
  std::optional<Witness> witness;  // absent when nothing could be built
  ExitCode code = ExitCode::pass;
  std::string message;
};

/// build_pair -> tangent dimension -> ideal pieces -> surface -> certificate -> ledger.
/// Exceptions from the construction become exit codes.
WitnessRun build_witness(const Configuration& cfg, std::uint32_t prime, std::uint64_t seed,
                         std::optional<int> t_max = std::nullopt);

nlohmann::json to_json(const Witness& w);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize(const Witness& w);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural validation only; no algebra. Throws SchemaError.
Witness parse_witness(const nlohmann::json& j);

struct VerifyResult {
  ExitCode code = ExitCode::pass;
  std::string failed_check;  // empty on pass
  std::string detail;
};

/// Re-derives every certificate from the serialized data and checks that
/// the text is in canonical form.
VerifyResult verify_witness_text(const std::string& text);
VerifyResult verify_witness(const Witness& w);

/// File stem such as "case2_n3_d3_gamma1_seed1".
std::string witness_file_stem(const Configuration& cfg, std::uint64_t seed);

}  // namespace k3
