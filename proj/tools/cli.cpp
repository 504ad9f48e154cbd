#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>

#include "wildhodge/io.hpp"
#include "wildhodge/selftest.hpp"

namespace wildhodge {

namespace {

using io::Json;

constexpr int kOk = 0, kViolation = 1, kInputError = 2;
constexpr double kOracleTolerance = 1e-8;

struct Options {
  int trunc = kDefaultTrunc;
  unsigned precision = 128;
  std::uint64_t seed = 42;
  std::string input, weight, irregular_type, rep, weights, plot_path, from = "dR", to;
  std::string b = "0";
  std::optional<std::size_t> d1;
  bool numeric = false;
  int rounds = SelftestOptions{}.rounds;
};

struct Result {
  Json report;
  int status = kOk;
};

void require(const std::string& path, const char* flag) {
  if (path.empty()) throw io::InputError(std::string("missing required option ") + flag);
}

Result canonical_form(const Options& o) {
  require(o.input, "--input");
  MeroConnection c = io::connection_from(io::read_document(o.input));
  Weight theta = o.weight.empty() ? Weight::zero(c.size()) : io::weight_from(io::read_document(o.weight));
  if (theta.size() != c.size()) throw io::InputError("weight and connection sizes differ");
  if (o.trunc < 1) throw io::InputError("--trunc must be positive");
  Reduction red = canonical_reduce(c, theta, o.trunc);

  Json r = io::report("canonical-form");
  Json polar = Json::array();
  for (const auto& m : red.form.polar) polar.push_back(io::to_json(m));
  r["canonical"] = {{"pole_order", red.form.pole_order()}, {"polar", polar}, {"residue", io::to_json(red.form.residue)}};
  r["gauge"] = io::to_json(red.gauge);
  r["trunc"] = red.trunc;
  r["gauge_steps"] = red.gauge_steps;
  r["irregular_type"] = io::to_json(irregular_type_of(red.form));
  bool inv = red.form.invariants_hold();
  bool orbit = gauge_orbit_equal(c, red.canonical_connection(), red.gauge);
  bool para = parahoric_member(red.gauge, theta);
  r["checks"] = {{"invariants_hold", inv}, {"gauge_orbit_equal", orbit}, {"gauge_parahoric", para}};
  return {r, inv && orbit && para ? kOk : kViolation};
}

Json diagram_report(const std::string& command, const StokesDiagram& d) {
  Json r = io::report(command);
  r["irregular_type"] = io::to_json(d.Q);
  r["diagram"] = io::to_json(d);
  return r;
}

Result antistokes(const Options& o) {
  require(o.irregular_type, "--irregular-type");
  StokesDiagram d = anti_stokes(io::irregular_type_from(io::read_document(o.irregular_type)));
  Json r = diagram_report("antistokes", d);
  r["rotation_invariant"] = rotation_invariant(d);
  if (d.common_order && d.l) {
    std::size_t base = o.d1.value_or(0);
    if (base >= d.directions.size()) throw io::InputError("--d1 out of range");
    r["half_periods"] = io::to_json(half_periods(d, base));
  }
  if (!o.plot_path.empty()) {
    std::ofstream csv(o.plot_path, std::ios::binary);
    if (!csv) throw io::InputError("cannot write '" + o.plot_path + "'");
    csv << plot_data_csv(d);
    r["plot_data"] = o.plot_path;
  }
  return {r, kOk};
}

Result stokes_dim(const Options& o) {
  require(o.irregular_type, "--irregular-type");
  StokesDiagram d = anti_stokes(io::irregular_type_from(io::read_document(o.irregular_type)));
  std::size_t base = o.d1.value_or(0);
  if (base >= d.directions.size()) throw io::InputError("--d1 out of range");
  HalfPeriods h = half_periods(d, base);
  DimensionCount c = stokes_dim_check(d, h);
  Json r = io::report("stokes-dim");
  r["k"] = d.k;
  r["l"] = d.l ? Json(*d.l) : Json(nullptr);
  r["directions"] = d.directions.size();
  r["half_periods"] = io::to_json(h);
  r["lhs"] = c.lhs;
  r["rhs"] = c.rhs;
  r["equal"] = c.lhs == c.rhs;
  return {r, c.lhs == c.rhs ? kOk : kViolation};
}

Result translate(const Options& o) {
  require(o.input, "--input");
  if (o.from != "dR") throw io::InputError("--from must be dR");
  DeRhamLocal d = io::de_rham_from(io::read_document(o.input));
  Json r = io::report("translate");
  r["from"] = o.from;
  r["to"] = o.to;
  if (o.to == "dol") {
    DolbeaultLocal dol = dR_to_Dol(d);
    r["alpha"] = io::to_json(dol.alpha);
    r["residue"] = io::to_json(dol.residue);
    r["Q"] = io::to_json(dol.Q)["Q"];
  } else if (o.to == "betti") {
    BettiLocal b = dR_to_Betti(d, o.precision);
    r["precision"] = o.precision;
    r["gamma"] = io::to_json(b.gamma);
    Json ev = Json::array();
    for (const auto& e : b.semisimple) {
      Json x = {{"re", e.re}, {"im", e.im}};
      if (e.turns) x["turns"] = io::to_json(*e.turns);
      if (e.exact) x["exact"] = io::to_json(*e.exact);
      ev.push_back(x);
    }
    r["semisimple_eigenvalues"] = ev;
    Json u = Json::array();
    for (std::size_t k = 0; k < b.unipotent.size(); ++k) u.push_back({{"pi_power", k}, {"coefficient", io::to_json(b.unipotent[k])}});
    r["unipotent"] = u;
    r["Q"] = io::to_json(b.Q)["Q"];
  } else {
    throw io::InputError("--to must be dol or betti");
  }
  r["weights_round_trip"] = roundtrip_weight_check(d, o.precision);
  return {r, r["weights_round_trip"].get<bool>() ? kOk : kViolation};
}

Json rep_summary(const StokesRep& rho) {
  std::vector<StokesDiagram> ds;
  for (const auto& p : rho.punctures) ds.push_back(p.diagram ? *p.diagram : StokesDiagram{});
  Json s;
  s["n"] = rho.n;
  s["genus"] = rho.genus();
  s["punctures"] = rho.punctures.size();
  s["relation"] = groupoid_presentation(rho.genus(), ds).relation;
  return s;
}

Result check_relation_cmd(const Options& o) {
  require(o.rep, "--rep");
  StokesRep rho = io::stokes_rep_from(io::read_document(o.rep));
  bool holds = check_relation(rho);
  bool valid = rho.structurally_valid();
  Json r = io::report("check-relation");
  r["representation"] = rep_summary(rho);
  r["relation_holds"] = holds;
  r["structurally_valid"] = valid;
  return {r, holds && valid ? kOk : kViolation};
}

Result stability(const Options& o) {
  require(o.rep, "--rep");
  require(o.weights, "--weights");
  FilteredStokesRep f;
  f.rep = io::stokes_rep_from(io::read_document(o.rep));
  f.weights = io::weights_from(io::read_document(o.weights));
  if (f.weights.size() != f.rep.punctures.size()) throw io::InputError("need one weight per puncture");
  for (const auto& w : f.weights)
    if (w.size() != f.rep.n) throw io::InputError("weight size differs from n");
  StabilityVerdict v = check_stability(f);
  Json r = io::report("stability");
  r["representation"] = rep_summary(f.rep);
  r["filtered"] = f.filtered();
  r["degree_zero"] = degree_zero(f);
  r["status"] = to_string(v.status);
  r["compatible_parabolics"] = v.compatible_parabolics;
  Json ws = Json::array();
  for (const auto& w : v.witnesses)
    ws.push_back({{"parabolic", io::to_json(w.P)}, {"character", io::to_json(w.chi)}, {"degree", io::to_json(w.degree)}});
  r["witnesses"] = ws;
  return {r, v.status == Stability::kUnstable ? kViolation : kOk};
}

Result verify_metric(const Options& o) {
  require(o.input, "--input");
  MetricData d = io::metric_data_from(io::read_document(o.input));
  Json r = io::report("verify-metric");
  bool all = true;
  Json checks = Json::array();
  // a broken triple can make a computation throw; that is a failed check
  auto add = [&](const std::string& name, const std::function<bool()>& f) {
    Json c = {{"name", name}, {"passed", false}};
    try {
      c["passed"] = f();
    } catch (const Error& e) {
      c["error"] = e.what();
    }
    all = all && c["passed"].get<bool>();
    checks.push_back(c);
  };
  add("triple valid", [&] { return d.valid(); });
  for (const auto& c : sl2_identity_suite(d.triple)) add(c.name, [&] { return c.holds; });
  add("pseudo-curvature vanishes", [&] {
    TPoly pc = pseudo_curvature(d);
    r["pseudo_curvature"] = io::to_json(pc);
    return pc.is_zero();
  });
  add("curvature in e_0 equals 2H t^2", [&] {
    TPoly f0 = curvature_e0(d);
    r["curvature_e0"] = io::to_json(f0);
    return f0 == TPoly::monomial(d.triple.H * GaussRat(2), 2);
  });
  add("curvature in e is -dbar of the Chern coefficient",
      [&] { return curvature_e(d) == t_derivative(chern_coefficient(d)) * GaussRat(-1); });
  add("Higgs residue matches the Dolbeault dictionary", [&] {
    HiggsExtraction h = higgs_extraction(d);
    r["higgs"] = {{"phi", io::to_json(h.phi)},
                  {"phi_star", io::to_json(h.phi_star)},
                  {"dbar", io::to_json(h.dbar)},
                  {"residue", io::to_json(h.residue)},
                  {"frame_change_residue", io::to_json(h.frame_change_residue)}};
    DeRhamLocal local{d.beta, d.triple.s + d.triple.Y, d.Q};
    return dR_to_Dol(local).residue == h.residue;
  });
  if (o.numeric) {
    add("weight jump", [&] {
      WeightJumpReport w = weight_jump_check(d);
      r["weight_jump"] = {{"de_rham_exponents", w.de_rham_exponents},
                          {"de_rham_expected", w.de_rham_expected},
                          {"dolbeault_exponents", w.dolbeault_exponents},
                          {"dolbeault_expected", w.dolbeault_expected},
                          {"tolerance", w.tolerance},
                          {"passed", w.passed}};
      return w.passed;
    });
  }
  r["checks"] = checks;
  r["passed"] = all;
  return {r, all ? kOk : kViolation};
}

Result oracle_monodromy(const Options& o) {
  GaussRat b;
  IrregularType q = IrregularType::from_diagonal({LaurentSeries::zero()});
  if (!o.input.empty()) {
    Json j = io::read_document(o.input);
    if (!j.is_object() || !j.contains("b")) throw io::InputError("oracle input needs a field 'b'");
    b = io::gauss_from(j["b"]);
    if (j.contains("Q")) q = io::irregular_type_from(j["Q"]);
  } else {
    b = io::gauss_from(Json(o.b));
  }
  if (q.size() != 1) throw io::InputError("the oracle needs a scalar irregular type");
  std::complex<double> m = rank1_monodromy_oracle(b, q);
  const double pi = std::acos(-1.0);
  std::complex<double> expect = std::exp(std::complex<double>(0, kLoopOrientation * 2 * pi) * std::complex<double>(b.re_double(), b.im_double()));
  double err = std::abs(m - expect);
  Json r = io::report("oracle-monodromy");
  r["b"] = io::to_json(b);
  r["Q"] = io::to_json(q)["Q"];
  r["orientation"] = kLoopOrientation;
  r["multiplier"] = {{"re", m.real()}, {"im", m.imag()}};
  r["expected"] = {{"re", expect.real()}, {"im", expect.imag()}};
  r["error"] = err;
  r["tolerance"] = kOracleTolerance;
  r["agrees"] = err < kOracleTolerance;
  return {r, err < kOracleTolerance ? kOk : kViolation};
}

Result selftest(const Options& o) {
  SelftestOptions so;
  so.seed = o.seed;
  so.trunc = o.trunc;
  so.precision_bits = o.precision;
  so.rounds = o.rounds;
  SelftestOutcome out = run_selftest(so);
  return {out.report, out.failed == 0 ? kOk : kViolation};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with wild local systems, connections and Higgs data"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--trunc", o.trunc, "truncation order for series")->capture_default_str();
  app.add_option("--precision", o.precision, "bits for the numeric layers")->capture_default_str()->check(CLI::Range(16u, 100000u));
  app.add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();

  auto* cf = app.add_subcommand("canonical-form", "reduce a connection to canonical form");
  cf->add_option("--input", o.input, "connection JSON")->required();
  cf->add_option("--weight", o.weight, "parahoric weight JSON");

  auto* as = app.add_subcommand("antistokes", "anti-Stokes directions of an irregular type");
  as->add_option("--irregular-type", o.irregular_type, "irregular type JSON")->required();
  as->add_option("--emit-plot-data", o.plot_path, "write angle,roots CSV");
  as->add_option("--d1", o.d1, "index of the first direction of the half period");

  auto* sd = app.add_subcommand("stokes-dim", "dimension count of the Stokes data");
  sd->add_option("--irregular-type", o.irregular_type, "irregular type JSON")->required();
  sd->add_option("--d1", o.d1, "index of the first direction of the half period");

  auto* tr = app.add_subcommand("translate", "local de Rham data to Dolbeault or Betti data");
  tr->add_option("--from", o.from, "source side")->capture_default_str();
  tr->add_option("--to", o.to, "dol or betti")->required();
  tr->add_option("--input", o.input, "local de Rham data JSON")->required();

  auto* cr = app.add_subcommand("check-relation", "check the defining relation of a Stokes representation");
  cr->add_option("--rep", o.rep, "representation JSON")->required();

  auto* st = app.add_subcommand("stability", "stability of a filtered Stokes representation");
  st->add_option("--rep", o.rep, "representation JSON")->required();
  st->add_option("--weights", o.weights, "Betti weights JSON")->required();

  auto* vm = app.add_subcommand("verify-metric", "symbolic checks of the local model metric");
  vm->add_option("--input", o.input, "metric data JSON")->required();
  vm->add_flag("--numeric", o.numeric, "also fit the weight jump numerically");

  auto* om = app.add_subcommand("oracle-monodromy", "rank one monodromy by numerical continuation");
  om->add_option("--input", o.input, "JSON with b and Q");
  om->add_option("--b", o.b, "residue b as p/q");

  auto* sf = app.add_subcommand("selftest", "worked examples and seeded property checks");
  sf->add_option("--rounds", o.rounds, "random cases per property")->capture_default_str()->check(CLI::Range(0, 1000));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Result res;
  try {
    if (command == "canonical-form") res = canonical_form(o);
    else if (command == "antistokes") res = antistokes(o);
    else if (command == "stokes-dim") res = stokes_dim(o);
    else if (command == "translate") res = translate(o);
    else if (command == "check-relation") res = check_relation_cmd(o);
    else if (command == "stability") res = stability(o);
    else if (command == "verify-metric") res = verify_metric(o);
    else if (command == "oracle-monodromy") res = oracle_monodromy(o);
    else res = selftest(o);
  } catch (const io::InputError& e) {
    res = {io::report(command), kInputError};
    res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
  } catch (const nlohmann::json::exception& e) {
    res = {io::report(command), kInputError};
    res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    res = {io::report(command), kInputError};
    res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
  } catch (const Error& e) {
    // preconditions of the mathematics (shape, resonance, field) are input errors too
    res = {io::report(command), kInputError};
    res.report["error"] = {{"kind", "domain"}, {"message", e.what()}};
  }
  if (res.status == kInputError) err << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
  out << res.report.dump(2) << "\n";
  return res.status;
}

}  // namespace wildhodge
