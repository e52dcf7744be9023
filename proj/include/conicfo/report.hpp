#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conicfo/types.hpp"

namespace conicfo {

// Inner-problem path: prox of f (simple) or gradient of f with projection
// onto U (smooth). Auto picks the prox path whenever f is simple on U.
enum class InnerPath { Auto, Simple, Smooth };

struct IterationRecord {
  long k = 0;
  double infeas = 0.0;              // dist_K(G u + g) at the reported primal point
  std::optional<double> subopt_gap;  // f(u) - f*, when f* is known
  double param = 0.0;               // mu or rho in force at this iteration
  Counters counters;                // cumulative
  Vec x;                            // dual iterate, dual methods with history only
};

struct SolveReport {
  std::string method;
  Vec u;  // returned primal point
  Vec x;  // final multiplier (dual methods)
  long outer_iterations = 0;
  int doublings = 0;
  double final_param = 0.0;
  double infeas = 0.0;
  std::optional<double> subopt_gap;
  Counters counters;
  bool precondition_warning = false;
  std::vector<std::string> notes;
  std::vector<IterationRecord> history;
};

}  // namespace conicfo
