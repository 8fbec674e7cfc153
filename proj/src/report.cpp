#include "k3/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace k3 {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "md") return Format::md;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + s + "' (md, csv, json)");
}

const std::vector<TableKey>& published_rows() {
  static const std::vector<TableKey> rows = [] {
    std::vector<TableKey> out;
    // n, gamma1, gamma2, m
    const int t1[][4] = {{3, 1, 1, 0}, {3, 2, 1, 0}, {4, 2, 1, 0}, {3, 3, 1, 1}, {4, 2, 2, 1}, {3, 4, 1, 0}, {3, 3, 3, 0},
                         {4, 4, 1, 0}, {5, 3, 2, 1}, {3, 5, 1, 0}, {5, 3, 3, 2}, {3, 5, 1, 1}, {5, 3, 3, 1}, {5, 4, 3, 0},
                         {3, 4, 3, 1}, {5, 5, 3, 4}, {3, 6, 1, 1}, {5, 5, 3, 0}, {5, 6, 1, 0}, {5, 5, 3, 3}, {5, 5, 3, 1},
                         {3, 5, 3, 2}, {5, 6, 3, 4}, {5, 5, 4, 4}, {5, 6, 3, 3}, {5, 6, 3, 2}, {5, 7, 3, 4}, {3, 5, 4, 4}};
    for (const auto& r : t1) out.push_back({1, ModelCase::case1, r[0], {r[1], r[2]}, r[3]});
    // n, d, gamma
    const int t2[][3] = {{4, 3, 1}, {3, 3, 1}, {4, 3, 2}, {3, 3, 2}, {4, 3, 3}, {3, 3, 3}, {5, 4, 1}, {4, 4, 1},
                         {3, 4, 1}, {5, 4, 2}, {4, 4, 2}, {3, 4, 2}, {5, 4, 3}, {3, 4, 3}, {5, 5, 1}, {4, 5, 1},
                         {3, 5, 1}, {5, 4, 4}, {3, 4, 4}, {5, 5, 2}, {4, 5, 2}, {3, 5, 2}, {3, 5, 3}, {5, 6, 1},
                         {4, 6, 1}, {3, 6, 1}, {5, 6, 2}, {3, 6, 2}, {5, 7, 1}, {3, 7, 1}, {5, 7, 2}, {5, 8, 1}};
    for (const auto& r : t2) out.push_back({2, ModelCase::case2, r[0], {r[1], r[2]}, 1});
    // n, d
    const int t3[][2] = {{4, 3}, {3, 3}, {5, 4}, {4, 4}, {3, 4}, {5, 5}, {4, 5}, {3, 5},
                         {5, 6}, {4, 6}, {3, 6}, {5, 7}, {3, 7}, {5, 8}, {3, 8}};
    for (const auto& r : t3) out.push_back({3, ModelCase::nodal_elliptic, r[0], {r[1]}, 1});
    return out;
  }();
  return rows;
}

namespace {

bool matches(const TableKey& t, const Configuration& c) {
  return t.kind == c.kind && t.n == c.n && t.degrees == c.degrees && t.m == c.m;
}

std::string dims_text(const std::map<int, int>& m) {
  std::string s;
  for (auto [t, v] : m) {
    if (!s.empty()) s += ' ';
    s += std::to_string(t) + ":" + std::to_string(v);
  }
  return s;
}

std::string status_text(const RowResult& r) {
  if (!r.witnessed) return "not witnessed";
  if (r.certified) return "certified";
  return "exit " + std::to_string(static_cast<int>(r.code)) + ": " + r.message;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int table_of(const Configuration& cfg) {
  for (const auto& t : published_rows())
    if (matches(t, cfg)) return t.table;
  return 0;
}

int printed_fiber(const Configuration& cfg) {
  const int req = cfg.ledger.required_fiber_dim;
  if (cfg.kind == ModelCase::case2 && cfg.n == 3) return req + 1;
  if (cfg.kind == ModelCase::nodal_elliptic && cfg.n == 4) return req - 2;
  return req;
}

RowResult witness_row(const Configuration& cfg, std::uint32_t prime, std::uint64_t seed, std::optional<int> t_max) {
  RowResult r;
  r.cfg = cfg;
  r.table = table_of(cfg);
  r.witnessed = true;
  auto run = build_witness(cfg, prime, seed, t_max);
  r.code = run.code;
  r.message = run.message;
  if (run.witness) {
    const auto& w = *run.witness;
    r.h0_values = w.surface.h0_values;
    r.h0_nodal = w.surface.h0_nodal;
    r.fiber_dim = w.surface.fiber_dim;
    r.certificate = to_string(w.surface.certificate.kind);
    r.certified = run.code == ExitCode::pass && w.passes();
  }
  return r;
}

TablesReport build_tables_report(const TablesOptions& opt) {
  TablesReport rep;
  rep.prime = opt.prime;
  rep.seed = opt.seed;
  rep.witnessed = opt.witnesses;
  const auto configs = enumerate_all();

  for (const auto& key : published_rows()) {
    auto it = std::find_if(configs.begin(), configs.end(), [&](const Configuration& c) { return matches(key, c); });
    if (it == configs.end()) {
      rep.missing.push_back(key);
      continue;
    }
    if (opt.witnesses) {
      rep.rows.push_back(witness_row(*it, opt.prime, opt.seed, opt.t_max));
    } else {
      RowResult r;
      r.cfg = *it;
      r.table = key.table;
      rep.rows.push_back(std::move(r));
    }
  }
  for (const auto& c : configs) {
    if (table_of(c)) continue;
    if (opt.witnesses && opt.all_configurations) {
      rep.others.push_back(witness_row(c, opt.prime, opt.seed, opt.t_max));
    } else {
      RowResult r;
      r.cfg = c;
      rep.others.push_back(std::move(r));
    }
  }

  // k-list: certified published rows (every published row when witnesses are skipped)
  std::map<std::int64_t, std::vector<std::string>> sources;
  for (const auto& r : rep.rows)
    if (r.certified || !opt.witnesses)
      sources[r.cfg.k].push_back("Table " + std::to_string(r.table) + ": " + r.cfg.label());
  for (const auto& [k, src] : sources) {
    std::string p;
    for (const auto& s : src) p += (p.empty() ? "" : "; ") + s;
    if (!opt.witnesses) p += " (lattice data only, not witnessed)";
    rep.klist.push_back({k, p});
  }

  std::map<std::int64_t, std::vector<const RowResult*>> by_k;
  for (const auto& r : rep.rows) by_k[r.cfg.k].push_back(&r);
  for (const auto& r : rep.others) by_k[r.cfg.k].push_back(&r);
  std::int64_t top = sources.empty() ? 0 : sources.rbegin()->first;
  if (!by_k.empty()) top = std::max(top, by_k.rbegin()->first);
  for (std::int64_t k = 1; k <= top; ++k) {
    if (sources.count(k)) continue;
    auto it = by_k.find(k);
    if (it == by_k.end()) {
      rep.absent.push_back({k, "no admissible configuration"});
      continue;
    }
    std::string p;
    bool outside_certified = false;
    for (const auto* r : it->second) {
      p += p.empty() ? "" : "; ";
      p += (r->table ? "Table " + std::to_string(r->table) + ": " : std::string("outside the tables: ")) + r->cfg.label() +
           " [" + status_text(*r) + "]";
      if (!r->table && r->certified) outside_certified = true;
    }
    if (outside_certified) rep.certified_outside.insert(k);
    rep.absent.push_back({k, p});
  }
  return rep;
}

std::set<std::int64_t> klist_values(const TablesReport& r) {
  std::set<std::int64_t> out;
  for (const auto& e : r.klist) out.insert(e.k);
  return out;
}

namespace {

struct Column {
  std::string name;
  std::string (*value)(const RowResult&);
};

std::string deg(const RowResult& r, std::size_t i) { return i < r.cfg.degrees.size() ? std::to_string(r.cfg.degrees[i]) : ""; }
std::string hilb(const RowResult& r, std::size_t i) {
  const auto& h = r.cfg.ledger.hilb_dims;
  if (r.cfg.kind == ModelCase::nodal_elliptic || r.cfg.kind == ModelCase::nodal_rational) return i == 0 ? std::to_string(h[0]) : "";
  return i < h.size() ? std::to_string(h[i]) : "";
}
std::string measured(const RowResult& r) { return r.certificate.empty() ? "" : std::to_string(r.fiber_dim); }
std::string h0(const RowResult& r) {
  if (r.h0_nodal.empty()) return dims_text(r.h0_values);
  if (r.cfg.n == 5) return "nodal " + dims_text(r.h0_nodal) + ", all " + dims_text(r.h0_values);
  return dims_text(r.h0_nodal);
}

const std::vector<Column>& columns(int table) {
  static const std::vector<Column> common_tail = {
      {"printed fiber", [](const RowResult& r) { return std::to_string(printed_fiber(r.cfg)); }},
      {"required fiber", [](const RowResult& r) { return std::to_string(r.cfg.ledger.required_fiber_dim); }},
      {"measured fiber", measured},
      {"h0", h0},
      {"certificate", [](const RowResult& r) { return r.certificate; }},
      {"status", status_text},
  };
  auto with_tail = [&](std::vector<Column> head) {
    head.insert(head.end(), common_tail.begin(), common_tail.end());
    return head;
  };
  static const std::vector<Column> t1 = with_tail({
      {"k", [](const RowResult& r) { return std::to_string(r.cfg.k); }},
      {"n", [](const RowResult& r) { return std::to_string(r.cfg.n); }},
      {"gamma1", [](const RowResult& r) { return deg(r, 0); }},
      {"gamma2", [](const RowResult& r) { return deg(r, 1); }},
      {"m", [](const RowResult& r) { return std::to_string(r.cfg.m); }},
      {"h1", [](const RowResult& r) { return hilb(r, 0); }},
      {"h2", [](const RowResult& r) { return hilb(r, 1); }},
  });
  static const std::vector<Column> t2 = with_tail({
      {"k", [](const RowResult& r) { return std::to_string(r.cfg.k); }},
      {"n", [](const RowResult& r) { return std::to_string(r.cfg.n); }},
      {"d", [](const RowResult& r) { return deg(r, 0); }},
      {"gamma", [](const RowResult& r) { return deg(r, 1); }},
      {"hE", [](const RowResult& r) { return hilb(r, 0); }},
      {"hGamma", [](const RowResult& r) { return hilb(r, 1); }},
  });
  static const std::vector<Column> t3 = with_tail({
      {"k'", [](const RowResult& r) { return std::to_string(r.cfg.k); }},
      {"n", [](const RowResult& r) { return std::to_string(r.cfg.n); }},
      {"d", [](const RowResult& r) { return deg(r, 0); }},
      {"hilb", [](const RowResult& r) { return hilb(r, 0); }},
  });
  static const std::vector<Column> other = with_tail({
      {"case", [](const RowResult& r) { return to_string(r.cfg.kind); }},
      {"k", [](const RowResult& r) { return std::to_string(r.cfg.k); }},
      {"n", [](const RowResult& r) { return std::to_string(r.cfg.n); }},
      {"degrees", [](const RowResult& r) {
         std::string s;
         for (int d : r.cfg.degrees) s += (s.empty() ? "" : " ") + std::to_string(d);
         return s;
       }},
      {"m", [](const RowResult& r) { return std::to_string(r.cfg.m); }},
      {"hilb", [](const RowResult& r) {
         std::string s;
         for (int h : r.cfg.ledger.hilb_dims) s += (s.empty() ? "" : " ") + std::to_string(h);
         return s;
       }},
  });
  switch (table) {
    case 1: return t1;
    case 2: return t2;
    case 3: return t3;
    default: return other;
  }
}

const char* table_title(int t) {
  switch (t) {
    case 1: return "Table 1: two rational curves";
    case 2: return "Table 2: an elliptic and a rational curve";
    case 3: return "Table 3: nodal surfaces through an elliptic curve";
    default: return "Other admissible configurations";
  }
}

void md_table(std::ostream& os, const std::vector<Column>& cols, const std::vector<const RowResult*>& rows) {
  os << '|';
  for (const auto& c : cols) os << ' ' << c.name << " |";
  os << "\n|";
  for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
  os << '\n';
  for (const auto* r : rows) {
    os << '|';
    for (const auto& c : cols) os << ' ' << c.value(*r) << " |";
    os << '\n';
  }
}

std::vector<const RowResult*> rows_of(const TablesReport& rep, int t) {
  std::vector<const RowResult*> out;
  if (t == 0) {
    for (const auto& r : rep.others) out.push_back(&r);
  } else {
    for (const auto& r : rep.rows)
      if (r.table == t) out.push_back(&r);
  }
  return out;
}

json row_json(const RowResult& r, const std::vector<Column>& cols) {
  json j = json::object();
  for (const auto& c : cols) j[c.name] = c.value(r);
  j["case"] = to_string(r.cfg.kind);
  j["certified"] = r.certified;
  return j;
}

}  // namespace

std::string render_tables(const TablesReport& rep, Format fmt) {
  std::ostringstream os;
  const int tables[] = {1, 2, 3, 0};
  switch (fmt) {
    case Format::md: {
      os << "# Projective models (prime " << rep.prime << ", seed " << rep.seed << ")\n";
      for (int t : tables) {
        const auto rows = rows_of(rep, t);
        if (rows.empty()) continue;
        os << "\n## " << table_title(t) << "\n\n";
        md_table(os, columns(t), rows);
      }
      if (!rep.missing.empty()) {
        os << "\n## Published rows missing from the enumeration\n\n";
        for (const auto& m : rep.missing) os << "- " << make_configuration(m.kind, m.n, m.degrees, m.m).label() << '\n';
      }
      os << "\n## k-list\n\n";
      std::string ks;
      for (const auto& e : rep.klist) ks += (ks.empty() ? "" : ", ") + std::to_string(e.k);
      os << ks << "\n\n| k | provenance |\n|---|---|\n";
      for (const auto& e : rep.klist) os << "| " << e.k << " | " << e.provenance << " |\n";
      os << "\n## Absent values\n\n| k | provenance |\n|---|---|\n";
      for (const auto& e : rep.absent) os << "| " << e.k << " | " << e.provenance << " |\n";
      if (!rep.certified_outside.empty()) {
        os << "\nCertified only by configurations outside the tables:";
        for (auto k : rep.certified_outside) os << ' ' << k;
        os << '\n';
      }
      break;
    }
    case Format::csv: {
      os << "table,case,k,n,deg1,deg2,m,hilb1,hilb2,printed_fiber,required_fiber,measured_fiber,h0,certificate,status\n";
      for (int t : tables)
        for (const auto* r : rows_of(rep, t)) {
          os << t << ',' << to_string(r->cfg.kind) << ',' << r->cfg.k << ',' << r->cfg.n << ',' << deg(*r, 0) << ','
             << deg(*r, 1) << ',' << r->cfg.m << ',' << hilb(*r, 0) << ',' << hilb(*r, 1) << ',' << printed_fiber(r->cfg)
             << ',' << r->cfg.ledger.required_fiber_dim << ',' << measured(*r) << ',' << csv_field(h0(*r)) << ','
             << r->certificate << ',' << csv_field(status_text(*r)) << '\n';
        }
      os << "\nk,in_list,provenance\n";
      std::vector<std::pair<KEntry, bool>> all;
      for (const auto& e : rep.klist) all.push_back({e, true});
      for (const auto& e : rep.absent) all.push_back({e, false});
      std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first.k < b.first.k; });
      for (const auto& [e, in] : all) os << e.k << ',' << (in ? 1 : 0) << ',' << csv_field(e.provenance) << '\n';
      break;
    }
    case Format::json: {
      json j;
      j["prime"] = rep.prime;
      j["seed"] = rep.seed;
      j["witnessed"] = rep.witnessed;
      for (int t : tables) {
        json rows = json::array();
        for (const auto* r : rows_of(rep, t)) rows.push_back(row_json(*r, columns(t)));
        j[t ? "table" + std::to_string(t) : std::string("other")] = rows;
      }
      json kl = json::array(), ab = json::array();
      for (const auto& e : rep.klist) kl.push_back({{"k", e.k}, {"provenance", e.provenance}});
      for (const auto& e : rep.absent) ab.push_back({{"k", e.k}, {"provenance", e.provenance}});
      j["klist"] = kl;
      j["absent"] = ab;
      j["certified_outside"] = rep.certified_outside;
      json missing = json::array();
      for (const auto& m : rep.missing) missing.push_back(make_configuration(m.kind, m.n, m.degrees, m.m).label());
      j["missing"] = missing;
      os << j.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

std::string render_configurations(const std::vector<Configuration>& configs, Format fmt) {
  std::ostringstream os;
  auto degrees = [](const Configuration& c) {
    std::string s;
    for (int d : c.degrees) s += (s.empty() ? "" : " ") + std::to_string(d);
    return s;
  };
  auto hilbs = [](const Configuration& c) {
    std::string s;
    for (int h : c.ledger.hilb_dims) s += (s.empty() ? "" : " ") + std::to_string(h);
    return s;
  };
  switch (fmt) {
    case Format::md:
      os << "| case | k | n | degrees | m | hilb | incidence | target | pgl | required fiber | printed fiber | table |\n"
         << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
      for (const auto& c : configs)
        os << "| " << to_string(c.kind) << " | " << c.k << " | " << c.n << " | " << degrees(c) << " | " << c.m << " | "
           << hilbs(c) << " | " << c.ledger.incidence_dim << " | " << c.ledger.target << " | " << c.ledger.pgl_dim << " | "
           << c.ledger.required_fiber_dim << " | " << printed_fiber(c) << " | " << (table_of(c) ? std::to_string(table_of(c)) : "")
           << " |\n";
      break;
    case Format::csv:
      os << "case,k,n,deg1,deg2,m,hilb1,hilb2,incidence_dim,target,pgl_dim,required_fiber,printed_fiber,table\n";
      for (const auto& c : configs) {
        const auto& h = c.ledger.hilb_dims;
        os << to_string(c.kind) << ',' << c.k << ',' << c.n << ',' << c.degrees[0] << ','
           << (c.degrees.size() > 1 ? std::to_string(c.degrees[1]) : "") << ',' << c.m << ',' << h[0] << ','
           << (h.size() > 1 ? std::to_string(h[1]) : "") << ',' << c.ledger.incidence_dim << ',' << c.ledger.target << ','
           << c.ledger.pgl_dim << ',' << c.ledger.required_fiber_dim << ',' << printed_fiber(c) << ',' << table_of(c) << '\n';
      }
      break;
    case Format::json: {
      json arr = json::array();
      for (const auto& c : configs)
        arr.push_back({{"case", to_string(c.kind)},
                       {"k", c.k},
                       {"n", c.n},
                       {"degrees", c.degrees},
                       {"m", c.m},
                       {"hilb_dims", c.ledger.hilb_dims},
                       {"incidence_dim", c.ledger.incidence_dim},
                       {"target", c.ledger.target},
                       {"pgl_dim", c.ledger.pgl_dim},
                       {"required_fiber_dim", c.ledger.required_fiber_dim},
                       {"printed_fiber", printed_fiber(c)},
                       {"table", table_of(c)}});
      os << arr.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace k3
