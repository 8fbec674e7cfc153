#include "k3/witness.hpp"

#include <algorithm>
#include <sstream>

#include "k3/errors.hpp"
#include "k3/polyalg.hpp"

namespace k3 {

using nlohmann::json;

bool Witness::passes() const {
  return surface.certificate.kind != Certificate::Kind::inconclusive && ledger.pass &&
         surface.fiber_dim == ledger.required_fiber_dim;
}

namespace {

constexpr std::uint64_t kPairStream = 1;
constexpr std::uint64_t kSurfaceStream = 2;

// Largest degree among the surface equations and the Jacobian minors, plus 6.
int default_certificate_bound(int n) {
  const auto degs = surface_degrees(n);
  int minor = 0;
  for (int d : degs) minor += d - 1;
  return std::max(*std::max_element(degs.begin(), degs.end()), minor) + 6;
}

ExitCode verdict_code(const Witness& w) {
  if (w.surface.certificate.kind == Certificate::Kind::inconclusive) return ExitCode::inconclusive;
  if (!w.passes()) return ExitCode::ledger_mismatch;
  return ExitCode::pass;
}

}  // namespace

WitnessRun build_witness(const Configuration& cfg, std::uint32_t prime, std::uint64_t seed, std::optional<int> t_max) {
  WitnessRun run;
  try {
    const PrimeField f(prime);
    const Rng root(seed);
    Witness w;
    w.cfg = cfg;
    w.prime = prime;
    w.seed = seed;
    Rng pair_rng = root.split(kPairStream);
    w.pair = build_pair(f, cfg, pair_rng);
    if (w.pair.curves.size() == 2)
      w.intersection_length = intersection_length(f, w.pair.curves, intersection_start_degree(w.pair.curves)).value;
    const auto tangent = hilbert_tangent_dim(f, w.pair);
    Rng surface_rng = root.split(kSurfaceStream);
    w.t_max = t_max.value_or(default_certificate_bound(cfg.n));
    w.surface = pick_surface(f, cfg, w.pair, surface_rng, w.t_max);
    w.ledger = dimension_ledger(cfg, tangent.value.value_or(-1), w.surface.fiber_dim);
    run.code = verdict_code(w);
    if (run.code == ExitCode::inconclusive) run.message = "certificate inconclusive: " + w.surface.certificate.failure;
    if (run.code == ExitCode::ledger_mismatch) run.message = "dimension ledger does not balance";
    run.witness = std::move(w);
  } catch (const RetryExhausted& e) {
    run.code = ExitCode::retry_exhausted;
    run.message = e.what();
  } catch (const NoSurface& e) {
    run.code = ExitCode::ledger_mismatch;
    run.message = std::string("no surface: ") + e.what();
  } catch (const Unsupported& e) {
    run.code = ExitCode::inconclusive;
    run.message = std::string("unsupported: ") + e.what();
  }
  return run;
}

// ---------------------------------------------------------------- writing

namespace {

json params_json(const Configuration& c) {
  switch (c.kind) {
    case ModelCase::case1: return {{"gamma1", c.degrees[0]}, {"gamma2", c.degrees[1]}, {"m", c.m}};
    case ModelCase::case2: return {{"d", c.degrees[0]}, {"gamma", c.degrees[1]}};
    case ModelCase::nodal_elliptic: return {{"d", c.degrees[0]}};
    case ModelCase::nodal_rational: return {{"gamma", c.degrees[0]}, {"m", c.m}};
  }
  return json::object();
}

json curve_json(const CurveMap& c) {
  if (auto r = std::get_if<RationalMap>(&c)) {
    json forms = json::array();
    for (const auto& b : r->forms) {
      json coeffs = json::array();
      for (int i = 0; i <= r->degree; ++i) coeffs.push_back(b.poly[static_cast<std::size_t>(i)]);
      forms.push_back(coeffs);
    }
    return {{"type", "rational"}, {"degree", r->degree}, {"forms", forms}};
  }
  const auto& e = std::get<EllipticMap>(c);
  return {{"type", "elliptic"}, {"degree", e.degree}, {"weierstrass", {e.a, e.b}}, {"linear_map", e.linear_map}};
}

json param_json(const CurveParam& p) {
  if (auto t = std::get_if<Fp>(&p)) return {{"t", *t}};
  const auto& c = std::get<CubicPoint>(p);
  return {{"x", c.x}, {"y", c.y}};
}

std::string exponent_key(const Exponent& e, int nvars) {
  std::string s;
  for (int i = 0; i < nvars; ++i) {
    if (i) s += ',';
    s += std::to_string(e[static_cast<std::size_t>(i)]);
  }
  return s;
}

json poly_json(const MultiPoly& g) {
  json out = json::object();
  for (const auto& [e, c] : g.terms()) out[exponent_key(e, g.nvars())] = c;
  return out;
}

json dims_json(const std::map<int, int>& m) {
  json out = json::object();
  for (auto [t, v] : m) out[std::to_string(t)] = v;
  return out;
}

}  // namespace

json to_json(const Witness& w) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["case"] = to_string(w.cfg.kind);
  j["n"] = w.cfg.n;
  j["params"] = params_json(w.cfg);
  j["k"] = w.cfg.k;
  j["prime"] = w.prime;
  j["seed"] = w.seed;

  json curves = json::array();
  for (const auto& c : w.pair.curves) curves.push_back(curve_json(c));
  j["curves"] = curves;
  json meets = json::array();
  for (const auto& m : w.pair.meets) {
    json params = json::array();
    for (const auto& p : m.params) params.push_back(param_json(p));
    meets.push_back({{"params", params}, {"point", m.point}, {"transversal", m.transversal}});
  }
  j["meets"] = meets;
  if (w.pair.node) j["node"] = *w.pair.node;
  if (w.pair.node_param) j["node_param"] = param_json(*w.pair.node_param);
  if (w.intersection_length) j["intersection_length"] = *w.intersection_length;

  json gens = json::array();
  for (const auto& g : w.surface.generators) gens.push_back(poly_json(g));
  j["surface_generators"] = gens;
  j["h0_values"] = dims_json(w.surface.h0_values);
  if (is_nodal(w.cfg.kind)) j["h0_nodal"] = dims_json(w.surface.h0_nodal);
  if (!w.surface.hyperplane.empty()) j["hyperplane"] = w.surface.hyperplane;
  j["fiber_dim"] = w.surface.fiber_dim;

  const auto& c = w.surface.certificate;
  json cert = {{"kind", to_string(c.kind)}, {"t_max", w.t_max}};
  if (c.degree) cert["degree_t"] = *c.degree;
  if (!c.node_point.empty()) cert["node_point"] = c.node_point;
  if (c.kind == Certificate::Kind::node) cert["hessian_rank"] = c.hessian_rank;
  if (!c.failure.empty()) cert["failure"] = c.failure;
  j["certificate"] = cert;

  const auto& l = w.ledger;
  j["ledger"] = {{"incidence_dim", l.incidence_dim}, {"tangent_dim", l.tangent_dim},
                 {"fiber_dim", l.fiber_dim},         {"required_fiber_dim", l.required_fiber_dim},
                 {"target", l.target},               {"pgl_dim", l.pgl_dim},
                 {"pass", l.pass}};
  return j;
}

std::string serialize(const Witness& w) { return to_json(w).dump(2) + "\n"; }

// ---------------------------------------------------------------- reading

namespace {

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError(what); }

const json& field(const json& j, const std::string& key) {
  if (!j.is_object()) schema_fail("expected an object around '" + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema_fail("missing key '" + key + "'");
  return *it;
}

std::int64_t integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) schema_fail("'" + what + "' must be an integer");
  return j.get<std::int64_t>();
}

int small_int(const json& j, const std::string& what, int lo, int hi) {
  const auto v = integer(j, what);
  if (v < lo || v > hi) schema_fail("'" + what + "' out of range");
  return static_cast<int>(v);
}

Fp element(const json& j, std::uint32_t p, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    schema_fail("'" + what + "' must be a field element");
  const auto v = j.get<std::uint64_t>();
  if (v >= p) schema_fail("'" + what + "' is not reduced modulo the prime");
  return static_cast<Fp>(v);
}

std::vector<Fp> elements(const json& j, std::uint32_t p, std::size_t size, const std::string& what) {
  if (!j.is_array() || j.size() != size) schema_fail("'" + what + "' must be an array of " + std::to_string(size));
  std::vector<Fp> out;
  for (const auto& x : j) out.push_back(element(x, p, what));
  return out;
}

std::vector<Fp> point(const json& j, std::uint32_t p, int n, const std::string& what) {
  auto v = elements(j, p, static_cast<std::size_t>(n + 1), what);
  if (std::all_of(v.begin(), v.end(), [](Fp x) { return x == 0; })) schema_fail("'" + what + "' is the zero vector");
  return v;
}

CurveMap parse_curve(const json& j, std::uint32_t p, int n) {
  const auto& type = field(j, "type");
  if (!type.is_string()) schema_fail("curve 'type' must be a string");
  const int degree = small_int(field(j, "degree"), "degree", 1, kDegreeSafetyCap);
  if (type == "rational") {
    const auto& forms = field(j, "forms");
    if (!forms.is_array() || forms.size() != static_cast<std::size_t>(n + 1)) schema_fail("rational curve needs n+1 forms");
    RationalMap r;
    r.degree = degree;
    for (const auto& fj : forms)
      r.forms.push_back({degree, UPoly(elements(fj, p, static_cast<std::size_t>(degree + 1), "form"))});
    return r;
  }
  if (type == "elliptic") {
    if (degree < 3) schema_fail("elliptic curve degree below 3");
    EllipticMap e;
    const auto ab = elements(field(j, "weierstrass"), p, 2, "weierstrass");
    e.a = ab[0];
    e.b = ab[1];
    e.degree = degree;
    e.monomials = weierstrass_monomials(degree);
    const auto& lm = field(j, "linear_map");
    if (!lm.is_array() || lm.size() != static_cast<std::size_t>(n + 1)) schema_fail("linear_map needs n+1 rows");
    for (const auto& row : lm) e.linear_map.push_back(elements(row, p, static_cast<std::size_t>(degree), "linear_map"));
    return e;
  }
  schema_fail("unknown curve type");
}

CurveParam parse_param(const json& j, std::uint32_t p, const CurveMap& c) {
  if (std::holds_alternative<RationalMap>(c)) return element(field(j, "t"), p, "t");
  return CubicPoint{element(field(j, "x"), p, "x"), element(field(j, "y"), p, "y")};
}

MultiPoly parse_poly(const json& j, std::uint32_t p, int n, int degree, const PrimeField& f) {
  if (!j.is_object() || j.empty()) schema_fail("surface generator must be a nonempty coefficient map");
  MultiPoly g(n + 1, degree);
  for (const auto& [key, value] : j.items()) {
    Exponent e{};
    std::istringstream is(key);
    std::string part;
    int i = 0, total = 0;
    while (std::getline(is, part, ',')) {
      if (i > n || part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        schema_fail("bad exponent key '" + key + "'");
      const int v = std::stoi(part);
      e[static_cast<std::size_t>(i++)] = static_cast<std::uint8_t>(v);
      total += v;
    }
    if (i != n + 1 || total != degree) schema_fail("exponent key '" + key + "' has the wrong shape");
    const Fp c = element(value, p, "coefficient");
    if (c == 0) schema_fail("zero coefficient stored");
    g.add_term(f, e, c);
  }
  return g;
}

std::map<int, int> parse_dims(const json& j, const std::string& what) {
  if (!j.is_object()) schema_fail("'" + what + "' must be an object");
  std::map<int, int> out;
  for (const auto& [key, value] : j.items()) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) schema_fail("bad degree key in " + what);
    out[std::stoi(key)] = small_int(value, what, 0, 1 << 20);
  }
  return out;
}

bool boolean(const json& j, const std::string& what) {
  if (!j.is_boolean()) schema_fail("'" + what + "' must be a boolean");
  return j.get<bool>();
}

}  // namespace

Witness parse_witness(const json& j) {
  if (!j.is_object()) schema_fail("witness must be a JSON object");
  if (integer(field(j, "schema_version"), "schema_version") != kSchemaVersion) schema_fail("unsupported schema_version");
  Witness w;
  const auto& kind_j = field(j, "case");
  if (!kind_j.is_string()) schema_fail("'case' must be a string");
  ModelCase kind;
  try {
    kind = parse_model_case(kind_j.get<std::string>());
  } catch (const std::exception&) {
    schema_fail("unknown case");
  }
  const int n = small_int(field(j, "n"), "n", 3, 5);
  const auto& pj = field(j, "params");
  std::vector<int> degrees;
  int m = 1;
  switch (kind) {
    case ModelCase::case1:
      degrees = {small_int(field(pj, "gamma1"), "gamma1", 1, kDegreeSafetyCap),
                 small_int(field(pj, "gamma2"), "gamma2", 1, kDegreeSafetyCap)};
      m = small_int(field(pj, "m"), "m", 0, n + 1);
      break;
    case ModelCase::case2:
      degrees = {small_int(field(pj, "d"), "d", 3, kDegreeSafetyCap), small_int(field(pj, "gamma"), "gamma", 1, kDegreeSafetyCap)};
      break;
    case ModelCase::nodal_elliptic: degrees = {small_int(field(pj, "d"), "d", 3, kDegreeSafetyCap)}; break;
    case ModelCase::nodal_rational:
      degrees = {small_int(field(pj, "gamma"), "gamma", 1, kDegreeSafetyCap)};
      m = small_int(field(pj, "m"), "m", 0, 2);
      break;
  }
  try {
    w.cfg = make_configuration(kind, n, degrees, m);
  } catch (const std::invalid_argument& e) {
    schema_fail(std::string("params do not describe a configuration: ") + e.what());
  }
  if (integer(field(j, "k"), "k") != w.cfg.k) schema_fail("'k' does not match params");

  const auto& prime_j = field(j, "prime");
  const auto prime = integer(prime_j, "prime");
  if (prime < 101 || prime >= (1LL << 31) || !is_prime(static_cast<std::uint64_t>(prime))) schema_fail("'prime' must be a prime in [101, 2^31)");
  w.prime = static_cast<std::uint32_t>(prime);
  const auto& seed_j = field(j, "seed");
  if (!seed_j.is_number_integer() || (seed_j.is_number_integer() && !seed_j.is_number_unsigned() && seed_j.get<std::int64_t>() < 0))
    schema_fail("'seed' must be a nonnegative integer");
  w.seed = seed_j.get<std::uint64_t>();
  const PrimeField f(w.prime);
  const std::uint32_t p = w.prime;

  w.pair.kind = kind;
  w.pair.n = n;
  const auto comps = w.cfg.components();
  const auto& curves = field(j, "curves");
  if (!curves.is_array() || curves.size() != comps.size()) schema_fail("wrong number of curves");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto c = parse_curve(curves[i], p, n);
    if (curve_degree(c) != comps[i].first || curve_genus(c) != comps[i].second) schema_fail("curve does not match params");
    w.pair.curves.push_back(std::move(c));
  }
  const auto& meets = field(j, "meets");
  if (!meets.is_array()) schema_fail("'meets' must be an array");
  for (const auto& mj : meets) {
    Meet m2;
    const auto& params = field(mj, "params");
    if (!params.is_array() || params.size() != w.pair.curves.size()) schema_fail("meet needs one parameter per curve");
    for (std::size_t i = 0; i < params.size(); ++i) m2.params.push_back(parse_param(params[i], p, w.pair.curves[i]));
    m2.point = point(field(mj, "point"), p, n, "meet point");
    m2.transversal = boolean(field(mj, "transversal"), "transversal");
    w.pair.meets.push_back(std::move(m2));
  }
  if (j.contains("node")) w.pair.node = point(j["node"], p, n, "node");
  if (j.contains("node_param")) {
    if (w.pair.curves.size() != 1) schema_fail("'node_param' without a nodal curve");
    w.pair.node_param = parse_param(j["node_param"], p, w.pair.curves[0]);
  }
  if (is_nodal(kind) && !w.pair.node) schema_fail("nodal witness without 'node'");
  if (j.contains("intersection_length")) w.intersection_length = small_int(j["intersection_length"], "intersection_length", 0, 1 << 20);

  const auto& gens = field(j, "surface_generators");
  const auto degs = surface_degrees(n);
  if (!gens.is_array() || gens.size() != degs.size())
    schema_fail("expected " + std::to_string(degs.size()) + " surface generators");
  w.surface.n = n;
  for (std::size_t i = 0; i < degs.size(); ++i) w.surface.generators.push_back(parse_poly(gens[i], p, n, degs[i], f));
  w.surface.h0_values = parse_dims(field(j, "h0_values"), "h0_values");
  if (is_nodal(kind)) w.surface.h0_nodal = parse_dims(field(j, "h0_nodal"), "h0_nodal");
  if (j.contains("hyperplane")) w.surface.hyperplane = point(j["hyperplane"], p, n, "hyperplane");
  if (is_nodal(kind) && n == 4 && w.surface.hyperplane.empty()) schema_fail("nodal witness in P^4 without 'hyperplane'");
  w.surface.fiber_dim = static_cast<int>(integer(field(j, "fiber_dim"), "fiber_dim"));

  const auto& cj = field(j, "certificate");
  const auto& kj = field(cj, "kind");
  if (kj == "smooth") w.surface.certificate.kind = Certificate::Kind::smooth;
  else if (kj == "node") w.surface.certificate.kind = Certificate::Kind::node;
  else if (kj == "inconclusive") w.surface.certificate.kind = Certificate::Kind::inconclusive;
  else schema_fail("unknown certificate kind");
  auto& cert = w.surface.certificate;
  w.t_max = small_int(field(cj, "t_max"), "t_max", 1, 64);
  if (cj.contains("degree_t")) cert.degree = small_int(cj["degree_t"], "degree_t", 1, 64);
  if (cj.contains("node_point")) cert.node_point = point(cj["node_point"], p, n, "node_point");
  if (cj.contains("hessian_rank")) cert.hessian_rank = small_int(cj["hessian_rank"], "hessian_rank", -1, 6);
  if (cj.contains("failure")) {
    if (!cj["failure"].is_string()) schema_fail("'failure' must be a string");
    cert.failure = cj["failure"].get<std::string>();
  }
  if (cert.kind != Certificate::Kind::inconclusive && !cert.degree) schema_fail("conclusive certificate without 'degree_t'");
  if (cert.kind == Certificate::Kind::node && cert.node_point.empty()) schema_fail("node certificate without 'node_point'");

  const auto& lj = field(j, "ledger");
  auto& l = w.ledger;
  l.incidence_dim = static_cast<int>(integer(field(lj, "incidence_dim"), "incidence_dim"));
  l.tangent_dim = static_cast<int>(integer(field(lj, "tangent_dim"), "tangent_dim"));
  l.fiber_dim = static_cast<int>(integer(field(lj, "fiber_dim"), "fiber_dim"));
  l.required_fiber_dim = static_cast<int>(integer(field(lj, "required_fiber_dim"), "required_fiber_dim"));
  l.target = static_cast<int>(integer(field(lj, "target"), "target"));
  l.pgl_dim = static_cast<int>(integer(field(lj, "pgl_dim"), "pgl_dim"));
  l.pass = boolean(field(lj, "pass"), "pass");
  return w;
}

// ---------------------------------------------------------------- replay

namespace {

VerifyResult mismatch(const std::string& check, const std::string& detail) {
  return {ExitCode::ledger_mismatch, check, detail};
}

std::string dims_text(const std::map<int, int>& m) { return dims_json(m).dump(); }

}  // namespace

VerifyResult verify_witness(const Witness& w) {
  const PrimeField f(w.prime);
  const auto& cfg = w.cfg;
  const int n = cfg.n;
  const auto& curves = w.pair.curves;

  // curves, meets, node placement
  if (auto defect = pair_defect(f, w.pair)) return mismatch("pair:" + *defect, "curve data fails a pair check");

  // the witness reproduces the intersection matrix
  {
    GramMatrix3 g;
    g.entries[0][0] = 2 * n - 2;
    if (is_nodal(cfg.kind)) {
      const int pairing = w.pair.node_param ? 1 : 0;
      g.entries[1][1] = -2;
      g.entries[0][2] = g.entries[2][0] = curve_degree(curves[0]);
      g.entries[2][2] = 2 * curve_genus(curves[0]) - 2;
      g.entries[1][2] = g.entries[2][1] = pairing;
    } else {
      if (!w.intersection_length) return mismatch("lattice", "missing intersection_length");
      for (int i = 0; i < 2; ++i) {
        g.entries[0][i + 1] = g.entries[i + 1][0] = curve_degree(curves[static_cast<std::size_t>(i)]);
        g.entries[i + 1][i + 1] = 2 * curve_genus(curves[static_cast<std::size_t>(i)]) - 2;
      }
      const auto len = intersection_length(f, curves, intersection_start_degree(curves));
      if (len.value != w.intersection_length) return mismatch("intersection-length", "recomputed value differs");
      g.entries[1][2] = g.entries[2][1] = *w.intersection_length;
    }
    if (!(g == cfg.gram)) return mismatch("lattice", "curve data does not reproduce the intersection matrix");
  }

  // every generator contains every curve
  for (const auto& g : w.surface.generators)
    for (const auto& c : curves)
      if (!vanishes_on(f, g, c)) return mismatch("containment", "a surface generator does not vanish on a curve");

  // h0 values and fiber dimension
  int fiber = 0;
  if (!is_nodal(cfg.kind)) {
    const auto dims = pair_ideal_dims(f, w.pair);
    if (dims != w.surface.h0_values)
      return mismatch("h0", "recorded " + dims_text(w.surface.h0_values) + ", recomputed " + dims_text(dims));
    fiber = fiber_dimension(n, dims);
  } else {
    if (n == 4) {
      const auto& l = w.surface.hyperplane;
      const auto& p = *w.pair.node;
      std::uint64_t at_p = 0;
      for (std::size_t i = 0; i < l.size(); ++i) at_p += static_cast<std::uint64_t>(f.mul(l[i], p[i]));
      if (at_p % f.p() != 0) return mismatch("hyperplane", "hyperplane misses the node");
      if (w.pair.node_param) {
        const auto t = tangent_at(f, curves[0], *w.pair.node_param);
        std::uint64_t at_t = 0;
        for (std::size_t i = 0; i < l.size(); ++i) at_t += static_cast<std::uint64_t>(f.mul(l[i], t[i]));
        if (at_t % f.p() != 0) return mismatch("hyperplane", "hyperplane is not tangent to the curve");
      }
    }
    const auto sys = nodal_linear_system(f, curves[0], *w.pair.node, n, w.surface.hyperplane);
    const auto nodal = sys.nodal_dims();
    const auto all = n == 5 ? sys.all_dims() : nodal;
    if (nodal != w.surface.h0_nodal)
      return mismatch("h0", "recorded nodal " + dims_text(w.surface.h0_nodal) + ", recomputed " + dims_text(nodal));
    if (all != w.surface.h0_values)
      return mismatch("h0", "recorded " + dims_text(w.surface.h0_values) + ", recomputed " + dims_text(all));
    fiber = nodal_fiber_dimension(n, nodal_hyperplane_params(cfg), nodal, sys.all_dims());
    // the generators come from the nodal systems
    const auto& gens = w.surface.generators;
    auto in_span = [&](const MultiPoly& g, const std::vector<MultiPoly>& basis) {
      RowEchelon e(f, binomial(n + g.degree(), g.degree()));
      for (const auto& b : basis) e.add_row(b.dense());
      return e.contains(g.dense());
    };
    const bool ok = n == 5 ? in_span(gens[0], sys.nodal.at(2)) && in_span(gens[1], sys.all.at(2)) && in_span(gens[2], sys.all.at(2))
                           : std::all_of(gens.begin(), gens.end(), [&](const MultiPoly& g) { return in_span(g, sys.nodal.at(g.degree())); });
    if (!ok) return mismatch("nodal-system", "a generator lies outside its nodal linear system");
  }
  if (fiber != w.surface.fiber_dim) return mismatch("fiber", "recomputed fiber dimension " + std::to_string(fiber));

  if (!generators_independent(f, w.surface.generators, n)) return mismatch("independence", "generators are dependent");
  if (!complete_intersection_check(f, w.surface.generators, n))
    return mismatch("complete-intersection", "quotient Hilbert function is not (n-1)t^2+2");

  // certificate replay at the recorded bound
  const auto cert = is_nodal(cfg.kind) ? node_certificate(f, w.surface.generators, n, *w.pair.node, w.t_max)
                                       : smoothness_certificate(f, w.surface.generators, n, w.t_max);
  const auto& rec = w.surface.certificate;
  if (cert.kind != rec.kind || cert.degree != rec.degree || cert.hessian_rank != rec.hessian_rank ||
      (cert.kind == Certificate::Kind::node && !same_projective_point(f, cert.node_point, rec.node_point)))
    return mismatch("certificate", "replay gives " + to_string(cert.kind) + (cert.failure.empty() ? "" : " (" + cert.failure + ")"));

  // tangent dimension and ledger
  const auto tangent = hilbert_tangent_dim(f, w.pair);
  const auto ledger = dimension_ledger(cfg, tangent.value.value_or(-1), fiber);
  const auto& l = w.ledger;
  if (ledger.tangent_dim != l.tangent_dim) return mismatch("tangent", "recomputed tangent dimension " + std::to_string(ledger.tangent_dim));
  if (ledger.incidence_dim != l.incidence_dim || ledger.fiber_dim != l.fiber_dim || ledger.required_fiber_dim != l.required_fiber_dim ||
      ledger.target != l.target || ledger.pgl_dim != l.pgl_dim || ledger.pass != l.pass)
    return mismatch("ledger", "recorded ledger differs from the recomputed one");

  if (cert.kind == Certificate::Kind::inconclusive) return {ExitCode::inconclusive, "certificate", cert.failure};
  if (!w.passes()) return mismatch("ledger", "dimension ledger does not balance");
  return {};
}

VerifyResult verify_witness_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return {ExitCode::schema, "schema", std::string("not JSON: ") + e.what()};
  }
  Witness w;
  try {
    w = parse_witness(j);
  } catch (const SchemaError& e) {
    return {ExitCode::schema, "schema", e.what()};
  }
  auto r = verify_witness(w);
  if (r.code != ExitCode::pass && r.code != ExitCode::inconclusive) return r;
  if (serialize(w) != text) return {ExitCode::schema, "canonical-form", "re-serialization differs from the file"};
  return r;
}

std::string witness_file_stem(const Configuration& cfg, std::uint64_t seed) {
  std::string s = cfg.label() + " seed=" + std::to_string(seed);
  std::string out;
  for (char c : s) {
    if (c == ' ') out += '_';
    else if (c != '=') out += c;
  }
  return out;
}

}  // namespace k3
