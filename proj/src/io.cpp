#include "wildhodge/io.hpp"

#include <fstream>
#include <sstream>

namespace wildhodge::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) fail(std::string("field '") + key + "' must be an array");
  return a;
}

long integer_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<long>();
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    fail(std::string(what) + " has size " + std::to_string(got) + ", expected " + std::to_string(want));
}

// 1-based root label e_i - e_j
std::string root_label(const Root& r) { return "e" + std::to_string(r.i + 1) + "-e" + std::to_string(r.j + 1); }

}  // namespace

Json parse_document(const std::string& text, const std::string& origin) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = e.byte == 0 ? 0 : e.byte - 1, line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << origin << ": malformed JSON at line " << line << ", column " << col << " (byte " << e.byte << ")";
    throw InputError(os.str());
  }
  if (j.is_object() && j.contains("format") && j["format"] != kFormat)
    fail(origin + ": unsupported format " + j["format"].dump() + ", expected \"" + kFormat + "\"");
  return j;
}

Json read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

Json report(const std::string& command) {
  Json j;
  j["format"] = kFormat;
  j["command"] = command;
  return j;
}

// ------------------------------------------------------------------ writers

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const GaussRat& z) {
  Json j;
  j["re"] = to_string(z.re());
  j["im"] = to_string(z.im());
  return j;
}

Json to_json(const LaurentSeries& s) {
  Json j;
  j["order_min"] = s.order_min();
  Json c = Json::array();
  for (const auto& x : s.coeffs()) c.push_back(to_json(x));
  j["coeffs"] = c;
  if (!s.is_exact()) j["trunc"] = s.trunc();
  return j;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const LaurentMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Weight& w) {
  Json a = Json::array();
  for (const auto& x : w.v) a.push_back(to_json(x));
  return a;
}

Json to_json(const Character& c) { return Json(c.v); }

Json to_json(const ParabolicSpec& p) {
  Json j;
  j["blocks"] = p.blocks();
  Json members = Json::array();
  for (const auto& b : p.block_members()) {
    Json m = Json::array();
    for (auto i : b) m.push_back(i + 1);
    members.push_back(m);
  }
  j["block_members"] = members;
  return j;
}

Json to_json(const Root& r) { return root_label(r); }

Json to_json(const IrregularType& q) {
  Json d = Json::array();
  for (std::size_t i = 0; i < q.size(); ++i) d.push_back(to_json(q.entry(i)));
  Json j;
  j["Q"] = d;
  j["degree"] = q.degree;
  j["trivial"] = q.trivial;
  return j;
}

Json to_json(const ExactAngle& a) {
  Json j;
  j["base"] = to_json(a.base);
  j["k"] = a.k;
  j["pi_offset"] = to_json(a.pi_offset);
  j["radians"] = a.radians();
  return j;
}

Json to_json(const StokesDiagram& d) {
  Json j;
  j["k"] = d.k;
  j["common_order"] = d.common_order;
  j["l"] = d.l ? Json(*d.l) : Json(nullptr);
  Json dirs = Json::array();
  for (const auto& dir : d.directions) {
    Json x;
    x["angle"] = to_json(dir.angle);
    Json roots = Json::array();
    for (const auto& r : dir.roots) roots.push_back(to_json(r));
    x["roots"] = roots;
    dirs.push_back(x);
  }
  j["directions"] = dirs;
  Json levi = Json::array();
  for (const auto& r : d.levi_roots) levi.push_back(to_json(r));
  j["levi_roots"] = levi;
  return j;
}

Json to_json(const HalfPeriods& h) {
  Json j;
  j["d1"] = h.base;
  j["half_period_plus"] = h.plus_directions;
  j["half_period_minus"] = h.minus_directions;
  Json up = Json::array(), um = Json::array();
  for (const auto& r : h.U_plus) up.push_back(to_json(r));
  for (const auto& r : h.U_minus) um.push_back(to_json(r));
  j["U_plus_roots"] = up;
  j["U_minus_roots"] = um;
  j["P_plus"] = to_json(h.P_plus);
  j["P_minus"] = to_json(h.P_minus);
  return j;
}

Json to_json(const TPoly& p) {
  Json a = Json::array();
  for (const auto& [k, m] : p.terms()) {
    Json t;
    t["power"] = k;
    t["coefficient"] = to_json(m);
    a.push_back(t);
  }
  return a;
}

Json to_json(const StokesRep& rho) {
  Json j;
  j["n"] = rho.n;
  Json hs = Json::array();
  for (const auto& [a, b] : rho.handles) hs.push_back(Json{{"A", to_json(a)}, {"B", to_json(b)}});
  j["handles"] = hs;
  Json ps = Json::array();
  for (const auto& x : rho.punctures) {
    Json p;
    if (x.diagram) p["Q"] = to_json(x.diagram->Q)["Q"];
    p["C"] = to_json(x.C);
    p["h"] = to_json(x.h);
    Json s = Json::array();
    for (const auto& m : x.S) s.push_back(to_json(m));
    p["S"] = s;
    ps.push_back(p);
  }
  j["punctures"] = ps;
  return j;
}

// ------------------------------------------------------------------ readers

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail("rational must be a \"p/q\" string or an integer, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

GaussRat gauss_from(const Json& j) {
  if (j.is_object()) {
    Rational re = j.contains("re") ? rational_from(j["re"]) : Rational(0);
    Rational im = j.contains("im") ? rational_from(j["im"]) : Rational(0);
    for (const auto& [key, value] : j.items())
      if (key != "re" && key != "im") fail("unexpected field '" + key + "' in a Gaussian rational");
    return {re, im};
  }
  return GaussRat(rational_from(j));
}

LaurentSeries series_from(const Json& j) {
  int lo = static_cast<int>(integer_from(field(j, "order_min"), "order_min"));
  std::vector<GaussRat> c;
  for (const auto& x : array_field(j, "coeffs")) c.push_back(gauss_from(x));
  int trunc = kExact;
  if (j.contains("trunc") && !j["trunc"].is_null()) trunc = static_cast<int>(integer_from(j["trunc"], "trunc"));
  try {
    return LaurentSeries(lo, c, trunc);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Matrix matrix_from(const Json& j) {
  if (!j.is_array()) fail("matrix must be an array of rows");
  std::size_t n = j.size();
  std::vector<GaussRat> e;
  for (const auto& row : j) {
    if (!row.is_array()) fail("matrix row must be an array");
    check_size(row.size(), n, "matrix row");
    for (const auto& x : row) e.push_back(gauss_from(x));
  }
  return Matrix(n, e);
}

LaurentMatrix laurent_matrix_from(const Json& j) {
  if (!j.is_array()) fail("series matrix must be an array of rows");
  std::size_t n = j.size();
  std::vector<LaurentSeries> e;
  for (const auto& row : j) {
    if (!row.is_array()) fail("series matrix row must be an array");
    check_size(row.size(), n, "series matrix row");
    for (const auto& x : row) e.push_back(series_from(x));
  }
  return LaurentMatrix(n, e);
}

Weight weight_from(const Json& j) {
  const Json& a = j.is_object() ? array_field(j, "weight") : j;
  if (!a.is_array()) fail("weight must be an array of rationals");
  std::vector<Rational> v;
  for (const auto& x : a) v.push_back(rational_from(x));
  return Weight(v);
}

IrregularType irregular_type_from(const Json& j) {
  const Json* a = &j;
  if (j.is_object()) a = j.contains("diagonal") ? &array_field(j, "diagonal") : &array_field(j, "Q");
  if (!a->is_array()) fail("irregular type must be an array of diagonal series");
  std::vector<LaurentSeries> d;
  for (const auto& x : *a) d.push_back(series_from(x));
  try {
    return IrregularType::from_diagonal(d);
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

MeroConnection connection_from(const Json& j) { return MeroConnection(laurent_matrix_from(field(j, "B"))); }

DeRhamLocal de_rham_from(const Json& j) {
  DeRhamLocal d;
  d.residue = matrix_from(field(j, "residue"));
  d.beta = j.contains("beta") ? weight_from(j["beta"]) : Weight::zero(d.residue.size());
  check_size(d.beta.size(), d.residue.size(), "beta");
  if (j.contains("Q")) {
    d.Q = irregular_type_from(j["Q"]);
    check_size(d.Q.size(), d.residue.size(), "Q");
  }
  return d;
}

StokesRep stokes_rep_from(const Json& j) {
  StokesRep rho;
  rho.n = static_cast<std::size_t>(integer_from(field(j, "n"), "n"));
  if (rho.n == 0) fail("n must be positive");
  auto sized = [&](const Json& m, const char* what) {
    Matrix x = matrix_from(m);
    check_size(x.size(), rho.n, what);
    return x;
  };
  if (j.contains("handles"))
    for (const auto& h : array_field(j, "handles")) rho.handles.emplace_back(sized(field(h, "A"), "A"), sized(field(h, "B"), "B"));
  if (j.contains("punctures")) {
    for (const auto& p : array_field(j, "punctures")) {
      PunctureData x;
      if (p.contains("Q") && !p["Q"].is_null()) {
        IrregularType q = irregular_type_from(p["Q"]);
        check_size(q.size(), rho.n, "Q");
        try {
          x.diagram = anti_stokes(q);
        } catch (const Error&) {
          // central Q: no Stokes directions, same as a tame puncture
        }
      }
      x.C = sized(field(p, "C"), "C");
      x.h = sized(field(p, "h"), "h");
      if (p.contains("S"))
        for (const auto& s : array_field(p, "S")) x.S.push_back(sized(s, "S"));
      std::size_t want = x.diagram ? x.diagram->directions.size() : 0;
      check_size(x.S.size(), want, "Stokes factor list");
      rho.punctures.push_back(std::move(x));
    }
  }
  return rho;
}

std::vector<Weight> weights_from(const Json& j) {
  const Json& a = j.is_object() ? array_field(j, "weights") : j;
  if (!a.is_array()) fail("weights must be an array of weights");
  std::vector<Weight> out;
  for (const auto& w : a) out.push_back(weight_from(w));
  return out;
}

MetricData metric_data_from(const Json& j) {
  Matrix y = matrix_from(field(j, "Y"));
  std::size_t n = y.size();
  Sl2Data t;
  try {
    t = sl2_complete(y);
  } catch (const Error& e) {
    fail(std::string("Y: ") + e.what());
  }
  t.s = j.contains("s") ? matrix_from(j["s"]) : Matrix(n);
  check_size(t.s.size(), n, "s");
  if (j.contains("X")) t.X = matrix_from(j["X"]);
  if (j.contains("H")) t.H = matrix_from(j["H"]);
  check_size(t.X.size(), n, "X");
  check_size(t.H.size(), n, "H");
  Weight beta = j.contains("beta") ? weight_from(j["beta"]) : Weight::zero(n);
  check_size(beta.size(), n, "beta");
  MetricData d = MetricData::from(beta, t);
  if (j.contains("s_bar")) {
    d.s_bar = matrix_from(j["s_bar"]);
    check_size(d.s_bar.size(), n, "s_bar");
  }
  if (j.contains("Q")) {
    d.Q = irregular_type_from(j["Q"]);
    check_size(d.Q.size(), n, "Q");
  }
  return d;
}

}  // namespace wildhodge::io
