#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "codec.hpp"
#include "doctest.h"
#include "hermikit/unitary.hpp"

using namespace hermikit;
using io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("hermikit_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

FMat f1(long x) { return FMat{{FieldElem(x)}}; }

}  // namespace

TEST_CASE("documented examples") {
  Run v = run({"bounds", "vanish", "--k", "12", "--diag", "1", "--nu", "3"});
  CHECK(v.code == 0);
  CHECK(v.report() == json::parse(R"({"forces_zero": true, "lhs": "9/4", "rhs": "1"})"));
  CHECK(run({"bounds", "vanish", "--k", "12", "--diag", "1", "--nu", "2"}).report()["forces_zero"] == false);

  std::string zero = write_temp("zero.json", R"({"disc": -4, "genus": 2, "cogenus": 1, "weight": 4, "level": 1,
    "module": "rational", "trunc_trace": "3", "coeffs": []})");
  Run z = run({"validate-sfjs", zero});
  CHECK(z.code == 0);
  CHECK(z.report()["pass"] == true);

  Run tp = run({"torsion-points", "--primes", "2", "--h", "1", "--orbit-check"});
  CHECK(tp.code == 0);
  CHECK(tp.report()["count"] == 3);
  CHECK(tp.report()["points"].size() == 3);
  CHECK(tp.report()["orbit"]["transitive"] == true);
  CHECK(run({"torsion-points", "--primes", "2,3"}).report()["count"] == 24);
}

TEST_CASE("bounds subcommands") {
  std::string one = write_temp("one.json", R"([["1"]])");
  Run h = run({"bounds", "herm", "--disc", "-4", "--index", one, "--k", "12"});
  CHECK(h.code == 0);
  CHECK(h.report()["first_nu"] == 6);
  CHECK(run({"bounds", "herm", "--disc", "-4", "--index", one, "--k", "12", "--nu", "5"}).report()["forces_zero"] == false);
  CHECK(run({"bounds", "dim", "--k", "10", "--index", one}).report()["dim_upper"] == 10);
  Run g = run({"bounds", "vanish", "--k", "12", "--index", one, "--nu", "3"});
  CHECK(g.report()["rank_used"] == 1);
  Run in = run({"bounds", "integral", "--nu", "1", "--weights", "1/2"});
  CHECK(in.code == 0);
  CHECK(in.report().contains("integral"));
  CHECK(run({"bounds", "criterion", "--k", "12", "--ords", "1,2"}).report()["holds"] == true);
  CHECK(run({"bounds", "criterion", "--k", "12", "--ords", "1/2,1/2"}).report()["holds"] == false);
}

TEST_CASE("reduce and enumerate") {
  std::string m = write_temp("m.json", R"([["6", ["0","1"]], [["-4","-1"], "1"]])");
  Run r = run({"reduce", "--disc", "-4", "--matrix", m});
  REQUIRE(r.code == 0);
  FMat red = io::fmat_from(r.report()["reduced"], -4, "reduced");
  FMat u = io::fmat_from(r.report()["u"], -4, "u");
  FMat in = io::fmat_from(r.report()["input"], -4, "input");
  CHECK(adjoint(u) * in * u == red);
  CHECK(red(0, 0) == FieldElem(1));
  Run e = run({"enumerate-m", "--disc", "-4", "--diag", "1,1"});
  CHECK(e.code == 0);
  CHECK(e.report()["count"] == e.report()["matrices"].size());
}

TEST_CASE("exit codes") {
  // usage
  CHECK(run({}).code == 2);
  CHECK(run({"bounds"}).code == 2);
  CHECK(run({"identities", "--disc", "5", "--g", "2"}).code == 2);
  CHECK(run({"torsion-points", "--primes", "4"}).code == 2);
  CHECK(run({"torsion-points", "--primes", "2", "--h", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  // malformed JSON names the field
  std::string bad = write_temp("bad.json", R"({"disc": -4, "genus": 2, "weight": 2, "module": "rational",
    "trunc_trace": "2", "coeffs": [{"t": [["1", "0"], ["0"]], "value": "1"}]})");
  Run b = run({"validate-sfjs", bad});
  CHECK(b.code == 2);
  CHECK(b.err.find("coeffs[0].t[1]") != std::string::npos);
  std::string nomod = write_temp("nomod.json", R"({"disc": -4, "genus": 2, "weight": 2, "trunc_trace": "2", "coeffs": []})");
  Run n = run({"validate-sfjs", nomod});
  CHECK(n.code == 2);
  CHECK(n.err.find("module") != std::string::npos);
  std::string garbage = write_temp("garbage.json", "{ not json");
  CHECK(run({"validate-sfjs", garbage}).code == 2);
  CHECK(run({"validate-sfjs", "/nonexistent/file.json"}).code == 2);

  // validation failure: lone coefficient at an index moved by the swap
  std::string lone = write_temp("lone.json", R"({"disc": -4, "genus": 2, "weight": 2, "module": "rational",
    "trunc_trace": "3", "coeffs": [{"t": [["1", "0"], ["0", "2"]], "value": "1"}]})");
  Run l = run({"validate-sfjs", lone});
  CHECK(l.code == 1);
  CHECK(l.report()["pass"] == false);
  CHECK(l.report()["symmetry"]["violations"].size() > 0);
  std::string notpsd = write_temp("notpsd.json", R"({"disc": -4, "genus": 1, "weight": 2, "module": "rational",
    "trunc_trace": "3", "coeffs": [{"t": [["-1"]], "value": "1"}]})");
  CHECK(run({"validate-sfjs", notpsd}).code == 1);
}

TEST_CASE("lattice theta output validates and round-trips") {
  std::string one = write_temp("lat.json", R"([["1"]])");
  for (bool scalar : {false, true}) {
    std::vector<std::string> args = {"herm-theta", "--disc", "-4", "--lattice", one, "--genus", "2", "--trunc", "3"};
    if (scalar) args.push_back("--scalar");
    Run r = run(args);
    REQUIRE(r.code == 0);
    json j = r.report();
    SFJSeries f = io::sfjs_from(j);
    CHECK(io::to_json(f) == j);
    CHECK(io::same_series(f, scalar ? herm_lattice_theta_scalar(f1(1), -4, 2, 3) : herm_lattice_theta(f1(1), -4, 2, 3)));
    std::string file = write_temp(scalar ? "theta_s.json" : "theta_v.json", r.out);
    Run v = run({"validate-sfjs", file});
    CHECK(v.code == 0);
    CHECK(v.report()["symmetry"]["checked"] > 0);
  }
}

TEST_CASE("theta decomposition through the tool") {
  std::string one = write_temp("lat3.json", R"([["1"]])");
  Run r = run({"herm-theta", "--disc", "-4", "--lattice", one, "--genus", "3", "--trunc", "3", "--scalar"});
  REQUIRE(r.code == 0);
  std::string f = write_temp("theta3.json", r.out);
  Run d = run({"theta-decompose", "--input", f, "--mprime", one});
  CHECK(d.code == 0);
  CHECK(d.report()["reassembly"]["exact"] == true);
  // disc((1))^2 for the two remaining rows
  CHECK(d.report()["components"].size() == 16);
  CHECK(run({"theta-decompose", "--input", f, "--mprime", write_temp("neg.json", R"([["-1"]])")}).code == 2);
}

TEST_CASE("herm-theta components") {
  std::string one = write_temp("idx.json", R"([["1"]])");
  Run r = run({"herm-theta", "--disc", "-4", "--index", one, "--trunc", "2"});
  REQUIRE(r.code == 0);
  json j = r.report();
  CHECK(j["order"] == 4);
  REQUIRE(j["components"].size() == 4);
  HermJacobiExpansion phi = io::herm_jacobi_from(j["components"][0]["expansion"]);
  CHECK(phi.coeff(FMat(1, 1), FMat(1, 1)) == ModValue::scalar(1));
  CHECK(io::to_json(phi, ModuleKind::rational) == j["components"][0]["expansion"]);
  CHECK(run({"herm-theta", "--disc", "-4", "--index", one, "--trunc", "2", "--mu", "9"}).code == 2);
}

TEST_CASE("theta and weil") {
  std::string a1 = write_temp("a1.json", R"([["2"]])");
  std::string a1a1 = write_temp("a1a1.json", R"([["2", "0"], ["0", "2"]])");
  std::string v = write_temp("v.json", R"([["1"], ["0"]])");
  Run t = run({"theta", "--gram", a1a1, "--vectors", v, "--nmax", "3"});
  REQUIRE(t.code == 0);
  JacobiExpansion phi = io::jacobi_from(t.report());
  CHECK(io::to_json(phi) == [&] { json j = t.report(); j.erase("ord"); return j; }());
  CHECK(phi.coeff(0, {0}) == CycNum(1));

  std::string idx = write_temp("jidx.json", R"([["1", "1/2"], ["1/2", "1"]])");
  Run s1 = run({"theta", "--synthetic", "--index", idx, "--seed", "7", "--nmax", "2"});
  Run s2 = run({"theta", "--synthetic", "--index", idx, "--seed", "7", "--nmax", "2"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);

  Run w = run({"weil", "--gram", a1, "--genus", "1", "--emit", "trans,rot,sinv1"});
  REQUIRE(w.code == 0);
  json j = w.report();
  CHECK(j["numeric"] == true);
  CHECK(j["card"] == 2);
  CMat s = io::cmat_from(j["matrices"]["sinv1"]["matrix"], "sinv1");
  CHECK(io::to_json(s) == j["matrices"]["sinv1"]["matrix"]);
  CHECK(unitarity_defect(s) < 1e-12);
  CHECK(std::abs(s(0, 0) - std::complex<double>(0.5, -0.5)) < 1e-12);
  CHECK(run({"weil", "--gram", a1, "--emit", "nope"}).code == 2);
  CHECK(run({"weil", "--gram", write_temp("odd.json", R"([["1"]])")}).code == 2);
  std::string herm = write_temp("hg.json", R"([["1"]])");
  Run wh = run({"weil", "--gram", herm, "--disc", "-4", "--genus", "2", "--emit", "rot"});
  CHECK(wh.code == 0);
  CHECK(wh.report()["dimension"] == 16);
}

TEST_CASE("identities") {
  Run r = run({"identities", "--disc", "-3", "--g", "3"});
  CHECK(r.code == 0);
  CHECK(r.report()["pass"] == true);
  CHECK(io::fmat_from(r.report()["sinv"], -3, "sinv") == make_sinv(3));
}

TEST_CASE("codec round trips") {
  const long D = -7;
  FieldElem w = FieldElem::omega(D);
  for (const FieldElem& x : {FieldElem(0), FieldElem(make_q(-3, 4)), w, FieldElem(D, make_q(1, 3), make_q(-5, 2))})
    CHECK(io::field_from(io::to_json(x), D, "x") == x);
  FMat m{{FieldElem(2), w}, {conj(w), FieldElem(make_q(7, 3))}};
  CHECK(io::fmat_from(json::parse(io::to_json(m).dump()), D, "m") == m);
  CycNum c = CycNum::phase(make_q(1, 5), 3) + CycNum(make_q(-1, 2));
  CycNum c2 = io::cyc_from(io::to_json(c), "c");
  CHECK(c2 == c);
  CHECK(io::to_json(c2) == io::to_json(c));
  ModValue mv = ModValue::basis(3, 2);
  mv.add(1, CycNum::phase(make_q(1, 4)));
  CHECK(io::modvalue_from(io::to_json(mv, ModuleKind::disc_algebra), ModuleKind::disc_algebra, "v") == mv);
  SFJSeries f = herm_lattice_theta(FMat::diagonal({1, 2}), -3, 1, 4);
  json j = io::to_json(f);
  SFJSeries g = io::sfjs_from(json::parse(j.dump()));
  CHECK(io::same_series(f, g));
  CHECK(io::to_json(g) == j);
  TorsionPoint tp{{make_q(1, 2), 0}, {make_q(1, 3), make_q(2, 3)}};
  CHECK(io::torsion_point_from(io::to_json(tp), "p") == tp);
  CHECK_THROWS_AS(io::rational_from(json("1/0x"), "q"), io::JsonError);
  CHECK_THROWS_AS(io::field_from(json::array({"1"}), D, "x"), io::JsonError);
}

TEST_CASE("output is independent of the thread count") {
  std::string g = write_temp("g2.json", R"([["1", "0"], ["0", "1"]])");
  std::vector<std::string> args = {"herm-theta", "--disc", "-3", "--lattice", g, "--genus", "2", "--trunc", "2"};
  setenv("HERMIKIT_THREADS", "1", 1);
  Run a = run(args);
  setenv("HERMIKIT_THREADS", "4", 1);
  Run b = run(args);
  unsetenv("HERMIKIT_THREADS");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("output file") {
  auto p = std::filesystem::temp_directory_path() / "hermikit_cli_out.json";
  std::filesystem::remove(p);
  Run r = run({"identities", "--disc", "-4", "--g", "2", "--output", p.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(p);
  CHECK(json::parse(in)["pass"] == true);
}
