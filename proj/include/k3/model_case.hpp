#pragma once

#include <string>
#include <string_view>

namespace k3 {

/// The four families of projective models.
///   case1           two rational curves meeting transversely at m points
///   case2           an elliptic and a rational curve meeting at one point
///   nodal_elliptic  elliptic curve through the node of a one-nodal K3
///   nodal_rational  rational curve on a one-nodal K3, m = C_p . Gamma
enum class ModelCase { case1, case2, nodal_elliptic, nodal_rational };

std::string to_string(ModelCase c);
/// CLI spelling: "1", "2", "nodal-e", "nodal-r".
std::string cli_name(ModelCase c);
/// Accepts both the CLI spelling and to_string() output.
ModelCase parse_model_case(std::string_view text);

inline bool is_nodal(ModelCase c) {
  return c == ModelCase::nodal_elliptic || c == ModelCase::nodal_rational;
}

}  // namespace k3
