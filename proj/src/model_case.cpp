#include "k3/model_case.hpp"

#include <stdexcept>

namespace k3 {

std::string to_string(ModelCase c) {
  switch (c) {
    case ModelCase::case1: return "case1";
    case ModelCase::case2: return "case2";
    case ModelCase::nodal_elliptic: return "nodal_elliptic";
    case ModelCase::nodal_rational: return "nodal_rational";
  }
  return "?";
}

std::string cli_name(ModelCase c) {
  switch (c) {
    case ModelCase::case1: return "1";
    case ModelCase::case2: return "2";
    case ModelCase::nodal_elliptic: return "nodal-e";
    case ModelCase::nodal_rational: return "nodal-r";
  }
  return "?";
}

ModelCase parse_model_case(std::string_view text) {
  if (text == "1" || text == "case1") return ModelCase::case1;
  if (text == "2" || text == "case2") return ModelCase::case2;
  if (text == "nodal-e" || text == "nodal_elliptic") return ModelCase::nodal_elliptic;
  if (text == "nodal-r" || text == "nodal_rational") return ModelCase::nodal_rational;
  throw std::invalid_argument("unknown case '" + std::string(text) + "'");
}

}  // namespace k3
