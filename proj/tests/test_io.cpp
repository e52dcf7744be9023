#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "conicfo/io.hpp"

using namespace conicfo;

namespace {

const char* kCanonical = R"({
  "n": 2, "m": 1,
  "G": [[1, 1]],
  "g": [-1],
  "cone": {"type": "zero", "dim": 1},
  "set": {"type": "box", "lower": [-1, -1], "upper": [1, 1]},
  "objective": {"kind": "quadratic_diag", "d": [1, 1], "c": [0, 0]},
  "known": {"f_star": 0.25, "f_lower": 0.0, "x_star": [-0.5], "u_star": [0.5, 0.5]}
})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("parse the canonical problem") {
  const LoadedProblem lp = parse_problem_json(kCanonical);
  CHECK(lp.problem.n() == 2);
  CHECK(lp.problem.m() == 1);
  CHECK(lp.problem.norm_G() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(*lp.known.delta_star() == doctest::Approx(0.25));
  CHECK(kkt_residual(lp.problem, *lp.known.u_star, *lp.known.x_star) < 1e-14);
}

TEST_CASE("round trip through text") {
  const std::string text = R"({
    "n": 3, "m": 4,
    "G": [1, 0, 2, 0, 1, 0, -1, 1, 1, 0.5, 0, 0],
    "g": [0.1, 0.2, 0.3, 0.4],
    "cone": {"type": "product", "parts": [{"type": "nonneg", "dim": 1}, {"type": "soc", "dim": 3}]},
    "set": {"type": "ball", "center": [0, 1, 0], "radius": 2.5},
    "objective": {"kind": "linear", "c": [1, -1, 0.3], "c0": 2}
  })";
  const LoadedProblem a = parse_problem_json(text);
  CHECK(a.problem.G()(0, 2) == 2.0);
  CHECK(a.problem.G()(3, 0) == 0.5);
  const LoadedProblem b = parse_problem_json(problem_to_json(a.problem, a.known));
  CHECK((a.problem.G().array() == b.problem.G().array()).all());
  CHECK((a.problem.g().array() == b.problem.g().array()).all());
  CHECK(b.problem.K().kind() == Cone::Kind::Product);
  CHECK(b.problem.K().parts().size() == 2);
  CHECK(b.problem.U().kind() == SimpleSet::Kind::Ball);
  CHECK(b.problem.U().radius() == 2.5);
  const Vec u = Vec::Constant(3, 0.7);
  CHECK(a.problem.f().value(u) == b.problem.f().value(u));

  const std::string path =
      (std::filesystem::temp_directory_path() / "conicfo_test_problem.json").string();
  save_problem_json(a.problem, a.known, path);
  const LoadedProblem c = load_problem_json(path);
  CHECK((c.problem.G().array() == a.problem.G().array()).all());
  std::filesystem::remove(path);
}

TEST_CASE("sets with open bounds and the epigraph") {
  const LoadedProblem lp = parse_problem_json(R"({
    "n": 2, "m": 1, "G": [[1, 0]], "g": [0],
    "cone": {"type": "zero", "dim": 1},
    "set": {"type": "p_power_epigraph", "p": 2, "u1_max": 10},
    "objective": {"kind": "linear", "c": [0, 1]}
  })");
  CHECK(lp.problem.U().kind() == SimpleSet::Kind::PPowerEpigraph);
  CHECK(lp.problem.U().u1_max() == 10.0);
  const LoadedProblem open = parse_problem_json(R"({
    "n": 2, "m": 1, "G": [[1, 0]], "g": [0],
    "cone": {"type": "nonneg", "dim": 1},
    "set": {"type": "box", "lower": [0, null], "upper": [null, 1]},
    "objective": {"kind": "zero"}
  })");
  CHECK(std::isinf(open.problem.U().lower()[1]));
  CHECK_FALSE(open.problem.U().bounded());
}

TEST_CASE("validation errors") {
  auto bad = [](const std::string& s) { CHECK_THROWS_AS(parse_problem_json(s), InputError); };
  bad("not json");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1, 1]], "g": [-1], "cone": {"type": "zero", "dim": 1},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "zero"}})");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1]], "g": [-1, 2], "cone": {"type": "zero", "dim": 1},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "zero"}})");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1]], "g": [-1], "cone": {"type": "zero", "dim": 2},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "zero"}})");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1]], "g": [-1], "cone": {"type": "psd", "dim": 1},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "zero"}})");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1]], "g": [-1], "cone": {"type": "zero", "dim": 1},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "linear", "c": [1]}})");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1]], "g": [-1], "cone": {"type": "zero", "dim": 1},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "zero"},
         "known": {"x_star": [1, 2]}})");
  bad(R"({"n": 2, "m": 1, "G": [[1, 1]], "cone": {"type": "zero", "dim": 1},
         "set": {"type": "full", "dim": 2}, "objective": {"kind": "zero"}})");
  CHECK_THROWS_AS(load_problem_json("/nonexistent_dir/p.json"), IoError);
}

TEST_CASE("report serialization") {
  SolveReport r;
  r.method = "qp";
  r.u = Vec::Constant(2, 0.5);
  r.subopt_gap = 1e-3;
  r.counters.proj_U = 12;
  const std::string s = report_to_json(r);
  CHECK(s.find("\"method\"") != std::string::npos);
  CHECK(s.find("\"qp\"") != std::string::npos);
  CHECK(s.find("12") != std::string::npos);
}

}  // TEST_SUITE
