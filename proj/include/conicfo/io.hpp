#pragma once

#include <string>

#include "conicfo/bench.hpp"

namespace conicfo {

// Problem file schema:
// {
//   "n": 2, "m": 1,
//   "G": [[1, 1]] or row-major flat [1, 1],
//   "g": [-1],
//   "cone": {"type": "zero"|"nonneg"|"soc", "dim": k} | {"type": "product", "parts": [...]},
//   "set": {"type": "box", "lower": [...], "upper": [...]}
//        | {"type": "ball", "center": [...], "radius": r}
//        | {"type": "p_power_epigraph", "p": 2, "u1_max": 10}
//        | {"type": "full", "dim": n},
//   "objective": {"kind": "linear", "c": [...]}
//              | {"kind": "quadratic_diag", "d": [...], "c": [...]}
//              | {"kind": "zero"},          optional "c0" constant
//   "known": {"f_star": .., "f_lower": .., "x_star": [..], "u_star": [..], "R_d": ..}
// }
struct LoadedProblem {
  ConicProblem problem;
  KnownSolution known;
};

LoadedProblem load_problem_json(const std::string& path);
LoadedProblem parse_problem_json(const std::string& text);
// Serializes problems whose objective is a SeparableQuadratic.
std::string problem_to_json(const ConicProblem& problem, const KnownSolution& known);
void save_problem_json(const ConicProblem& problem, const KnownSolution& known,
                       const std::string& path);

std::string report_to_json(const SolveReport& report);

}  // namespace conicfo
