#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "wildhodge/io.hpp"

using wildhodge::io::Json;

namespace {

struct Run {
  int status;
  Json report;
  std::string text, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int s = wildhodge::run_cli(args, out, err);
  Json j;
  if (!out.str().empty() && out.str()[0] == '{') j = Json::parse(out.str());
  return {s, j, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(WH_DATA_DIR) + "/" + name; }

Json re(const std::string& x) { return Json{{"re", x}, {"im", "0"}}; }

}  // namespace

TEST_CASE("canonical-form on the GL2 worked example") {
  auto r = run({"canonical-form", "--input", data("gl2_example.json")});
  CHECK(r.status == 0);
  CHECK(r.report["format"] == "wildhodge/1");
  CHECK(r.report["canonical"]["pole_order"] == 1);
  CHECK(r.report["canonical"]["polar"][0] == Json::array({Json::array({re("1"), re("0")}), Json::array({re("0"), re("-1")})}));
  CHECK(r.report["canonical"]["residue"] == Json::array({Json::array({re("0"), re("0")}), Json::array({re("0"), re("0")})}));
  CHECK(r.report["gauge"][0][1]["coeffs"][0] == Json{{"re", "1/2"}, {"im", "0"}});
  CHECK(r.report["checks"]["gauge_orbit_equal"] == true);
  CHECK(r.report["trunc"] == 12);
  auto r6 = run({"--trunc", "6", "canonical-form", "--input", data("gl2_example.json")});
  CHECK(r6.report["trunc"] == 6);
}

TEST_CASE("antistokes lists four directions with supports") {
  std::string csv = std::string(WH_BUILD_DIR) + "/antistokes_plot.csv";
  auto r = run({"antistokes", "--irregular-type", data("q_diag_1_m1_z2.json"), "--emit-plot-data", csv});
  CHECK(r.status == 0);
  const auto& dirs = r.report["diagram"]["directions"];
  REQUIRE(dirs.size() == 4);
  CHECK(dirs[0]["roots"] == Json::array({"e2-e1"}));
  CHECK(dirs[1]["roots"] == Json::array({"e1-e2"}));
  CHECK(r.report["diagram"]["l"] == 1);
  CHECK(r.report["half_periods"]["U_plus_roots"].size() == 1);
}

TEST_CASE("stokes-dim") {
  auto r = run({"stokes-dim", "--irregular-type", data("q_diag_123_z1.json")});
  CHECK(r.status == 0);
  CHECK(r.report["lhs"] == 6);
  CHECK(r.report["rhs"] == 6);
}

TEST_CASE("translate") {
  auto d = run({"translate", "--from", "dR", "--to", "dol", "--input", data("local_nilpotent.json")});
  CHECK(d.status == 0);
  CHECK(d.report["alpha"] == Json::array({"0", "0"}));
  CHECK(d.report["residue"] == Json::array({Json::array({re("-1"), re("1")}), Json::array({re("1"), re("1")})}));
  auto b = run({"--precision", "200", "translate", "--to", "betti", "--input", data("local_half.json")});
  CHECK(b.status == 0);
  CHECK(b.report["gamma"] == Json::array({"-1/2", "0"}));
  CHECK(b.report["semisimple_eigenvalues"][0]["exact"] == re("-1"));
  CHECK(b.report["weights_round_trip"] == true);
  auto bad = run({"translate", "--to", "hodge", "--input", data("local_half.json")});
  CHECK(bad.status == 2);
}

TEST_CASE("check-relation and stability") {
  auto r = run({"check-relation", "--rep", data("rep_genus0_gl2.json")});
  CHECK(r.status == 0);
  CHECK(r.report["relation_holds"] == true);
  auto u = run({"stability", "--rep", data("rep_diagonal.json"), "--weights", data("weights_unstable.json")});
  CHECK(u.status == 1);
  CHECK(u.report["status"] == "unstable");
  REQUIRE(u.report["witnesses"].size() == 1);
  CHECK(u.report["witnesses"][0]["degree"] == "-1/2");
  auto s = run({"stability", "--rep", data("rep_diagonal.json"), "--weights", data("weights_zero.json")});
  CHECK(s.status == 0);
  CHECK(s.report["status"] == "semistable");
}

TEST_CASE("verify-metric") {
  auto ok = run({"verify-metric", "--input", data("metric_standard.json"), "--numeric"});
  CHECK(ok.status == 0);
  CHECK(ok.report["passed"] == true);
  CHECK(ok.report["curvature_e0"][0]["power"] == 2);
  auto bad = run({"verify-metric", "--input", data("metric_corrupted.json")});
  CHECK(bad.status == 1);
  CHECK(bad.report["passed"] == false);
}

TEST_CASE("oracle-monodromy") {
  auto r = run({"oracle-monodromy", "--input", data("oracle_third.json")});
  CHECK(r.status == 0);
  CHECK(r.report["agrees"] == true);
  CHECK(r.report["orientation"] == -1);
}

TEST_CASE("input errors") {
  auto m = run({"canonical-form", "--input", data("malformed.json")});
  CHECK(m.status == 2);
  std::string msg = m.report["error"]["message"];
  CHECK(msg.find("line 2, column") != std::string::npos);
  CHECK(run({"canonical-form", "--input", data("missing.json")}).status == 2);
  CHECK(run({"no-such-command"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"--help"}).status == 0);
  // a non-diagonal polar part violates the reduction's precondition
  auto pre = run({"canonical-form", "--input", data("nondiagonal.json")});
  CHECK(pre.status == 2);
  CHECK(pre.report["error"]["kind"] == "domain");
}

TEST_CASE("selftest is deterministic") {
  auto a = run({"selftest", "--seed", "42"});
  auto b = run({"selftest", "--seed", "42"});
  CHECK(a.status == 0);
  CHECK(a.text == b.text);
  CHECK(a.report["failed"] == 0);
  auto c = run({"selftest", "--seed", "43"});
  CHECK(c.status == 0);
  CHECK(c.text != a.text);
}
