#include "l2a/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace l2a {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, size_t i) { return base + "/" + std::to_string(i); }

void require_object(const Json& j, const std::string& p, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InputError(p, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw InputError(at(p, k), "unknown key");
}

const Json& array_of(const Json& j, const std::string& p, int size = -1) {
  if (!j.is_array()) throw InputError(p, "expected an array");
  if (size >= 0 && static_cast<int>(j.size()) != size)
    throw InputError(p, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  return j;
}

int get_int(const Json& j, const std::string& p, int lo, int hi) {
  if (!j.is_number_integer()) throw InputError(p, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi) throw InputError(p, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

Poly get_poly(const Json& j, const std::string& p, int m) {
  if (!j.is_string()) throw InputError(p, "expected a polynomial string");
  try {
    return Poly::parse(j.get<std::string>(), m);
  } catch (const std::exception& e) {
    throw InputError(p, e.what());
  }
}

Sec get_sec(const Json& j, const std::string& p, int rank, int m) {
  array_of(j, p, rank);
  Sec s;
  for (int i = 0; i < rank; ++i) s.push_back(get_poly(j[i], at(p, i), m));
  return s;
}

// rows x cols matrix of polynomials
std::vector<std::vector<Poly>> get_matrix(const Json& j, const std::string& p, int rows, int cols, int m) {
  array_of(j, p, rows);
  std::vector<std::vector<Poly>> out;
  for (int r = 0; r < rows; ++r) out.push_back(get_sec(j[r], at(p, r), cols, m));
  return out;
}

Json sec_json(const Sec& s) {
  Json a = Json::array();
  for (const auto& f : s) a.push_back(f.str());
  return a;
}

Json matrix_json(const std::vector<std::vector<Poly>>& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(sec_json(row));
  return a;
}

Json christoffels_json(const Connection& c) {
  Json a = Json::array();
  for (const auto& row : c.G) {
    Json r = Json::array();
    for (const auto& s : row) r.push_back(sec_json(s));
    a.push_back(r);
  }
  return a;
}

void read_christoffels(const Json& j, const std::string& p, Connection& c, int m) {
  array_of(j, p, c.source_rank);
  for (int i = 0; i < c.source_rank; ++i) {
    array_of(j[i], at(p, i), c.rank);
    for (int a = 0; a < c.rank; ++a) c.G[i][a] = get_sec(j[i][a], at(at(p, i), a), c.rank, m);
  }
}

// 1-based basis index
int get_index(const Json& j, const std::string& p, int n) {
  if (n == 0) throw InputError(p, "bundle has rank 0");
  return get_int(j, p, 1, n) - 1;
}

GradedPoissonData read_poisson(const Json& j, const std::string& p, const SplitLie2Data& d, bool* symplectic) {
  require_object(j, p, {"degree", "symplectic", "brackets"});
  if (!j.contains("degree")) throw InputError(at(p, "degree"), "missing");
  int k = get_int(j["degree"], at(p, "degree"), -2, 0);
  if (j.contains("symplectic")) {
    if (!j["symplectic"].is_boolean()) throw InputError(at(p, "symplectic"), "expected a boolean");
    *symplectic = j["symplectic"].get<bool>();
  }
  GenSetPtr gs = lie2_genset(d.nvars(), d.rank_q(), d.rank_b);
  int n = atom_count(*gs);
  auto atom = [&](const Json& v, const std::string& q) {
    if (!v.is_string()) throw InputError(q, "expected an atom name");
    for (int a = 0; a < n; ++a)
      if (atom_name(*gs, a) == v.get<std::string>()) return a;
    throw InputError(q, "unknown atom " + v.get<std::string>());
  };
  std::map<std::pair<int, int>, AlgebraElement> entries;
  if (j.contains("brackets")) {
    const auto& b = array_of(j["brackets"], at(p, "brackets"));
    for (size_t e = 0; e < b.size(); ++e) {
      std::string q = at(at(p, "brackets"), e);
      require_object(b[e], q, {"a", "b", "value"});
      if (!b[e].contains("a") || !b[e].contains("b") || !b[e].contains("value"))
        throw InputError(q, "entries need a, b and value");
      int x = atom(b[e]["a"], at(q, "a")), y = atom(b[e]["b"], at(q, "b"));
      if (entries.count({x, y}) || entries.count({y, x})) throw InputError(q, "duplicate pair");
      if (!b[e]["value"].is_string()) throw InputError(at(q, "value"), "expected a string");
      try {
        entries[{x, y}] = AlgebraElement::parse(gs, b[e]["value"].get<std::string>());
      } catch (const std::exception& ex) {
        throw InputError(at(q, "value"), ex.what());
      }
    }
  }
  try {
    return GradedPoissonData(gs, k, entries);
  } catch (const std::exception& ex) {
    throw InputError(at(p, "brackets"), ex.what());
  }
}

}  // namespace

StructureFile structure_from_json(const Json& j) {
  require_object(j, "", {"name", "base_dim", "bundles", "Q", "ell", "nabla", "omega", "connections", "poisson",
                         "options"});
  StructureFile s;
  for (const char* key : {"base_dim", "bundles"})
    if (!j.contains(key)) throw InputError(at("", key), "missing");
  int m = get_int(j["base_dim"], "/base_dim", 0, 16);
  int rq = 0, rb = 0;
  {
    const auto& b = array_of(j["bundles"], "/bundles");
    std::set<std::string> seen;
    for (size_t e = 0; e < b.size(); ++e) {
      std::string p = at("/bundles", e);
      require_object(b[e], p, {"name", "degree", "rank"});
      if (!b[e].contains("name") || !b[e]["name"].is_string()) throw InputError(at(p, "name"), "expected a string");
      std::string name = b[e]["name"].get<std::string>();
      if (!seen.insert(name).second) throw InputError(at(p, "name"), "duplicate bundle " + name);
      if (!b[e].contains("degree") || !b[e].contains("rank")) throw InputError(p, "bundles need degree and rank");
      int deg = get_int(b[e]["degree"], at(p, "degree"), 1, 2);
      int rank = get_int(b[e]["rank"], at(p, "rank"), 0, 16);
      if (name == "Q" && deg == 1) rq = rank;
      else if (name == "B*" && deg == 2) rb = rank;
      else throw InputError(p, "expected Q of degree 1 or B* of degree 2");
    }
  }
  SplitLie2Data& d = s.data;
  d = SplitLie2Data::zero(m, rq, rb);
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("/name", "expected a string");
    d.name = j["name"].get<std::string>();
  }
  if (j.contains("Q")) {
    const auto& q = j["Q"];
    require_object(q, "/Q", {"anchor", "bracket"});
    if (q.contains("anchor")) d.q.rho = get_matrix(q["anchor"], "/Q/anchor", rq, m, m);
    if (q.contains("bracket")) {
      const auto& b = array_of(q["bracket"], "/Q/bracket");
      for (size_t e = 0; e < b.size(); ++e) {
        std::string p = at("/Q/bracket", e);
        require_object(b[e], p, {"a", "b", "value"});
        if (!b[e].contains("a") || !b[e].contains("b") || !b[e].contains("value"))
          throw InputError(p, "entries need a, b and value");
        int x = get_index(b[e]["a"], at(p, "a"), rq), y = get_index(b[e]["b"], at(p, "b"), rq);
        if (x >= y) throw InputError(p, "expected a < b");
        Sec v = get_sec(b[e]["value"], at(p, "value"), rq, m);
        d.q.C[x][y] = v;
        d.q.C[y][x] = -v;
      }
    }
  }
  if (j.contains("ell")) d.ell = get_matrix(j["ell"], "/ell", rb, rq, m);
  if (j.contains("nabla")) {
    array_of(j["nabla"], "/nabla", rq);
    for (int a = 0; a < rq; ++a) {
      std::string p = at("/nabla", a);
      array_of(j["nabla"][a], p, rb);
      for (int mu = 0; mu < rb; ++mu) d.nabla.G[a][mu] = get_sec(j["nabla"][a][mu], at(p, mu), rb, m);
    }
  }
  if (j.contains("omega")) {
    const auto& o = array_of(j["omega"], "/omega");
    for (size_t e = 0; e < o.size(); ++e) {
      std::string p = at("/omega", e);
      require_object(o[e], p, {"args", "value"});
      if (!o[e].contains("args") || !o[e].contains("value")) throw InputError(p, "entries need args and value");
      array_of(o[e]["args"], at(p, "args"), 3);
      std::vector<int> t;
      for (int i = 0; i < 3; ++i) t.push_back(get_index(o[e]["args"][i], at(at(p, "args"), i), rq));
      if (!(t[0] < t[1] && t[1] < t[2])) throw InputError(at(p, "args"), "expected increasing indices");
      d.omega.set(t, get_sec(o[e]["value"], at(p, "value"), rb, m));
    }
  }
  if (j.contains("connections")) {
    const auto& c = j["connections"];
    require_object(c, "/connections", {"Q", "Bdual"});
    if (c.contains("Q")) {
      require_object(c["Q"], "/connections/Q", {"christoffels"});
      if (c["Q"].contains("christoffels"))
        read_christoffels(c["Q"]["christoffels"], "/connections/Q/christoffels", d.tm.q, m);
    }
    if (c.contains("Bdual")) {
      require_object(c["Bdual"], "/connections/Bdual", {"christoffels"});
      if (c["Bdual"].contains("christoffels"))
        read_christoffels(c["Bdual"]["christoffels"], "/connections/Bdual/christoffels", d.tm.bdual, m);
    }
  }
  try {
    d.validate();
  } catch (const std::exception& e) {
    throw InputError("", e.what());
  }
  if (j.contains("poisson")) s.poisson = read_poisson(j["poisson"], "/poisson", d, &s.symplectic);
  if (j.contains("options")) {
    const auto& o = j["options"];
    require_object(o, "/options", {"seed", "mutations", "cutoff"});
    if (o.contains("seed")) s.options.seed = get_int(o["seed"], "/options/seed", 0, 1 << 30);
    if (o.contains("mutations")) s.options.mutations = get_int(o["mutations"], "/options/mutations", 0, 10000);
    if (o.contains("cutoff")) s.options.cutoff = get_int(o["cutoff"], "/options/cutoff", 0, 12);
  }
  return s;
}

Json structure_to_json(const StructureFile& s) {
  const SplitLie2Data& d = s.data;
  int rq = d.rank_q(), rb = d.rank_b;
  Json j;
  j["name"] = d.name;
  j["base_dim"] = d.nvars();
  j["bundles"] = Json::array({Json{{"name", "Q"}, {"degree", 1}, {"rank", rq}},
                              Json{{"name", "B*"}, {"degree", 2}, {"rank", rb}}});
  Json br = Json::array();
  for (int a = 0; a < rq; ++a)
    for (int b = a + 1; b < rq; ++b)
      if (!is_zero(d.q.C[a][b])) br.push_back(Json{{"a", a + 1}, {"b", b + 1}, {"value", sec_json(d.q.C[a][b])}});
  j["Q"] = Json{{"anchor", matrix_json(d.q.rho)}, {"bracket", br}};
  j["ell"] = matrix_json(d.ell);
  Json nab = Json::array();
  for (const auto& row : d.nabla.G) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(sec_json(v));
    nab.push_back(r);
  }
  j["nabla"] = nab;
  Json om = Json::array();
  for (const auto& [t, v] : d.omega.values)
    if (!is_zero(v)) om.push_back(Json{{"args", {t[0] + 1, t[1] + 1, t[2] + 1}}, {"value", sec_json(v)}});
  j["omega"] = om;
  j["connections"] = Json{{"Q", {{"christoffels", christoffels_json(d.tm.q)}}},
                          {"Bdual", {{"christoffels", christoffels_json(d.tm.bdual)}}}};
  if (s.poisson) {
    const auto& p = *s.poisson;
    Json b = Json::array();
    for (const auto& [ab, v] : p.table())
      if (ab.first <= ab.second)
        b.push_back(Json{{"a", atom_name(*p.genset(), ab.first)},
                         {"b", atom_name(*p.genset(), ab.second)},
                         {"value", v.str()}});
    j["poisson"] = Json{{"degree", p.degree()}, {"symplectic", s.symplectic}, {"brackets", b}};
  }
  j["options"] = Json{{"seed", s.options.seed}, {"mutations", s.options.mutations}, {"cutoff", s.options.cutoff}};
  return j;
}

StructureFile load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("", std::string("JSON parse error: ") + e.what());
  }
  return structure_from_json(j);
}

Json report_to_json(const Report& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses) {
    Json w = Json::array();
    for (const auto& x : c.witnesses) w.push_back(Json{{"where", x.where}, {"value", x.value}});
    clauses.push_back(Json{{"id", c.id}, {"pass", c.pass}, {"witnesses", w}});
  }
  return Json{{"check", r.check}, {"pass", r.pass()}, {"clauses", clauses}};
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"FX-ABELIAN", "FX-AFF1DER", "FX-STRING-SO3", "FX-TANGENT-R2",
                                              "FX-SO3-PAIR"};
  return names;
}

std::string fixture_file_stem(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return c == '-' ? '_' : std::tolower(c); });
  return s;
}

StructureFile named_fixture(const std::string& name) {
  std::string key;
  for (const auto& n : fixture_names())
    if (n == name || fixture_file_stem(n) == name) key = n;
  StructureFile s;
  if (key == "FX-ABELIAN") s.data = fx_abelian();
  else if (key == "FX-AFF1DER") s.data = fx_aff1der();
  else if (key == "FX-STRING-SO3") s.data = fx_string_so3();
  else if (key == "FX-TANGENT-R2") s.data = fx_tangent_r2();
  else if (key == "FX-SO3-PAIR") {
    auto p = fx_so3_pair();
    s.data = p.data;
    s.poisson = p.poisson;
    s.symplectic = true;
  } else
    throw InputError("", "unknown fixture " + name);
  return s;
}

}  // namespace l2a
