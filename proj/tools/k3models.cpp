// k3models: enumerate projective models, build and verify witnesses, and
// regenerate the tables with the certified k-list.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "k3/enumerate.hpp"
#include "k3/field.hpp"
#include "k3/report.hpp"
#include "k3/witness.hpp"

namespace fs = std::filesystem;
using namespace k3;

namespace {

constexpr const char* kOutEnv = "K3MODELS_OUT";

struct Options {
  std::uint32_t prime = 10007;
  std::uint64_t seed = 1;
  std::string kind;
  std::optional<int> n;
  std::optional<std::int64_t> k;
  std::vector<int> degrees;
  std::optional<int> m;
  std::optional<int> t_max;
  std::string out;
  std::string format = "md";
  bool no_witness = false;
  bool all = false;
  std::vector<std::string> paths;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--prime", o.prime, "prime field characteristic")->default_val(10007);
  app->add_option("--seed", o.seed, "random seed")->default_val(1);
  app->add_option("--t-max", o.t_max, "degree bound for the emptiness and node certificates");
}

void add_filters(CLI::App* app, Options& o) {
  app->add_option("--case", o.kind, "1, 2, nodal-e or nodal-r");
  app->add_option("--n", o.n, "ambient dimension")->check(CLI::Range(3, 5));
  app->add_option("--k", o.k, "value of k");
  app->add_option("--degrees", o.degrees, "curve degrees, e.g. --degrees 3 1")->expected(1, 2);
  app->add_option("--m", o.m, "intersection number (case 1, nodal-r)");
}

std::vector<Configuration> selected(const Options& o) {
  std::vector<Configuration> out;
  std::optional<ModelCase> kind;
  if (!o.kind.empty()) kind = parse_model_case(o.kind);
  for (const auto& c : enumerate_all()) {
    if (kind && c.kind != *kind) continue;
    if (o.n && c.n != *o.n) continue;
    if (o.k && c.k != *o.k) continue;
    if (!o.degrees.empty() && c.degrees != o.degrees) {
      // case 1 stores the larger degree first
      auto d = o.degrees;
      std::sort(d.rbegin(), d.rend());
      if (c.kind != ModelCase::case1 || c.degrees != d) continue;
    }
    if (o.m && (c.kind == ModelCase::case1 || c.kind == ModelCase::nodal_rational) && c.m != *o.m) continue;
    out.push_back(c);
  }
  return out;
}

void check_prime(std::uint32_t p) {
  if (p < 101 || !is_prime(p) || p >= (1u << 31)) throw CLI::ValidationError("--prime", "must be a prime in [101, 2^31)");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::string default_dir(const std::string& out) {
  if (!out.empty()) return out;
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return ".";
}

int run_enumerate(const Options& o) {
  const auto configs = selected(o);
  if (configs.empty()) {
    std::cerr << "no admissible configuration matches the filters\n";
    return 1;
  }
  emit(render_configurations(configs, parse_format(o.format)), o.out);
  return 0;
}

int run_witness(const Options& o) {
  check_prime(o.prime);
  const auto configs = selected(o);
  if (configs.empty()) {
    std::cerr << "no admissible configuration matches the filters\n";
    return 1;
  }
  const fs::path dir = default_dir(o.out);
  fs::create_directories(dir);
  int worst = 0;
  for (const auto& cfg : configs) {
    const auto run = build_witness(cfg, o.prime, o.seed, o.t_max);
    std::cout << cfg.label() << " k=" << cfg.k << ": ";
    if (run.witness) {
      const auto path = dir / (witness_file_stem(cfg, o.seed) + ".json");
      std::ofstream(path) << serialize(*run.witness);
      const auto& w = *run.witness;
      std::cout << "h0";
      for (auto [t, v] : w.surface.h0_values) std::cout << ' ' << t << ':' << v;
      if (!w.surface.h0_nodal.empty()) {
        std::cout << " nodal";
        for (auto [t, v] : w.surface.h0_nodal) std::cout << ' ' << t << ':' << v;
      }
      std::cout << ", fiber " << w.surface.fiber_dim << '/' << w.ledger.required_fiber_dim << ", "
                << to_string(w.surface.certificate.kind) << ", ledger " << w.ledger.incidence_dim << '+' << w.surface.fiber_dim
                << " = " << w.ledger.target << '+' << w.ledger.pgl_dim << " -> " << path.string();
    }
    std::cout << (run.code == ExitCode::pass ? " [pass]" : " [exit " + std::to_string(static_cast<int>(run.code)) + ": " + run.message + "]")
              << '\n';
    worst = std::max(worst, static_cast<int>(run.code));
  }
  return worst;
}

int run_verify(const Options& o) {
  int worst = 0;
  for (const auto& p : o.paths) {
    std::ifstream f(p);
    if (!f) {
      std::cout << "FAIL " << p << ": schema: cannot read file\n";
      worst = std::max(worst, static_cast<int>(ExitCode::schema));
      continue;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    const auto r = verify_witness_text(ss.str());
    if (r.code == ExitCode::pass) std::cout << "PASS " << p << '\n';
    else std::cout << "FAIL " << p << ": " << r.failed_check << ": " << r.detail << '\n';
    worst = std::max(worst, static_cast<int>(r.code));
  }
  return worst;
}

int run_tables(const Options& o) {
  check_prime(o.prime);
  TablesOptions opt;
  opt.prime = o.prime;
  opt.seed = o.seed;
  opt.witnesses = !o.no_witness;
  opt.all_configurations = o.all;
  opt.t_max = o.t_max;
  const auto rep = build_tables_report(opt);
  emit(render_tables(rep, parse_format(o.format)), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective models of elliptic K3 surfaces of Picard rank 3"};
  app.require_subcommand(1);
  Options o;

  auto* en = app.add_subcommand("enumerate", "list admissible configurations");
  add_filters(en, o);
  en->add_option("--format", o.format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));
  en->add_option("--out", o.out, "output file (default stdout)");

  auto* wi = app.add_subcommand("witness", "construct and certify witnesses for the selected configurations");
  add_filters(wi, o);
  add_common(wi, o);
  wi->add_option("--out", o.out, std::string("output directory (default $") + kOutEnv + " or .)");

  auto* ve = app.add_subcommand("verify", "replay every check of witness files");
  ve->add_option("paths", o.paths, "witness JSON files")->required();

  auto* ta = app.add_subcommand("tables", "render the three tables and the certified k-list");
  add_common(ta, o);
  ta->add_option("--format", o.format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));
  ta->add_option("--out", o.out, "output file (default stdout)");
  ta->add_flag("--no-witness", o.no_witness, "skip witness construction");
  ta->add_flag("--all", o.all, "also witness configurations outside the tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (en->parsed()) return run_enumerate(o);
    if (wi->parsed()) return run_witness(o);
    if (ve->parsed()) return run_verify(o);
    if (ta->parsed()) return run_tables(o);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
