#include "conicfo/icfg.hpp"

#include <cmath>
#include <string>

namespace conicfo {

double theta_next(double theta) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta)); }

Vec composite_step(const DeltaLOracle& oracle, const ProxFn& psi_prox, const Vec& w,
                   OracleValue* at_w) {
  if (!(oracle.L > 0.0)) throw ParameterError("composite step: L must be positive");
  OracleValue o = oracle.eval(w);
  if (o.grad.size() != w.size()) throw InputError("composite step: oracle gradient has wrong size");
  const double t = 1.0 / oracle.L;
  Vec z = psi_prox(w - t * o.grad, t);
  if (at_w) *at_w = std::move(o);
  return z;
}

IcfgResult icfg_run(const DeltaLOracle& oracle, const ProxFn& psi_prox, const Vec& z0,
                    const IcfgOptions& options) {
  if (options.max_iterations < 1) throw ParameterError("icfg: iteration budget must be >= 1");
  IcfgResult res;
  Vec z_prev = z0;
  Vec w = z0;
  Vec sum = Vec::Zero(z0.size());
  double theta = 1.0;
  OracleValue at_w;
  for (long k = 1; k <= options.max_iterations; ++k) {
    Vec z = composite_step(oracle, psi_prox, w, &at_w);
    if (!std::isfinite(at_w.value) || !z.allFinite()) {
      throw NumericalError("icfg: non-finite value at iteration " + std::to_string(k));
    }
    sum += z;
    res.iterations = k;
    if (options.record_history) res.history.push_back(z);
    bool stop = false;
    if (options.observer) stop = options.observer(IcfgStep{k, theta, w, z, at_w});
    const double theta_new =
        options.schedule == ThetaSchedule::Accelerated ? theta_next(theta) : 1.0;
    if (stop || k == options.max_iterations) {
      z_prev = std::move(z);
      break;
    }
    w = z + ((theta - 1.0) / theta_new) * (z - z_prev);
    z_prev = std::move(z);
    theta = theta_new;
  }
  res.last = std::move(z_prev);
  res.average = sum / static_cast<double>(res.iterations);
  return res;
}

void PrimalAverage::add(const Vec& u, double weight) {
  if (weight_sum_ == 0.0) {
    sum_ = weight * u;
  } else {
    sum_ += weight * u;
  }
  weight_sum_ += weight;
}

Vec PrimalAverage::value() const {
  if (weight_sum_ == 0.0) throw ConfigError("primal average: no points accumulated");
  return sum_ / weight_sum_;
}

}  // namespace conicfo
