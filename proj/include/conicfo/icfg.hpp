#pragma once

#include <functional>
#include <vector>

#include "conicfo/types.hpp"

namespace conicfo {

struct OracleValue {
  double value = 0.0;
  Vec grad;
};

// Inexact first-order (delta, L)-oracle of a convex function phi:
//   0 <= phi(x) - (value(y) + <grad(y), x - y>) <= L/2 ||x - y||^2 + delta.
struct DeltaLOracle {
  std::function<OracleValue(const Vec&)> eval;
  double delta = 0.0;
  double L = 1.0;
};

// argmin_{z in Q} psi(z) + ||z - v||^2 / (2t)
using ProxFn = std::function<Vec(const Vec& v, double t)>;

enum class ThetaSchedule { Constant, Accelerated };

double theta_next(double theta);

// One step of the composite scheme from w: prox of psi with step 1/L at
// w - grad(w)/L. The oracle output at w is written to *at_w when given.
Vec composite_step(const DeltaLOracle& oracle, const ProxFn& psi_prox, const Vec& w,
                   OracleValue* at_w = nullptr);

// Per-iteration view handed to the observer after z^k is formed.
struct IcfgStep {
  long k;            // 1-based iteration index
  double theta;      // theta_k, the weight of the oracle call at w^k
  const Vec& w;      // evaluation point w^k
  const Vec& z;      // new iterate z^k
  const OracleValue& at_w;
};

struct IcfgOptions {
  ThetaSchedule schedule = ThetaSchedule::Accelerated;
  long max_iterations = 1;
  bool record_history = false;
  // Invoked after every iteration; returning true stops the loop.
  std::function<bool(const IcfgStep&)> observer;
};

struct IcfgResult {
  Vec last;     // z^k
  Vec average;  // (1/k) sum_{i=1..k} z^i
  long iterations = 0;
  std::vector<Vec> history;  // z^1..z^k when requested
};

IcfgResult icfg_run(const DeltaLOracle& oracle, const ProxFn& psi_prox, const Vec& z0,
                    const IcfgOptions& options);

// Running weighted average sum theta_i u^i / sum theta_i.
class PrimalAverage {
 public:
  void add(const Vec& u, double weight);
  Vec value() const;
  double weight_sum() const { return weight_sum_; }
  bool empty() const { return weight_sum_ == 0.0; }

 private:
  Vec sum_;
  double weight_sum_ = 0.0;
};

}  // namespace conicfo
