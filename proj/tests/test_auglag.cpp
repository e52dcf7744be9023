#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "doctest.h"
#include "conicfo/auglag.hpp"
#include "conicfo/bench.hpp"
#include "support/random.hpp"
#include "support/reference.hpp"

using namespace conicfo;
using conicfo::testing::randn;
using conicfo::testing::randu;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Instance canonical_qp() {
  Mat A(1, 2);
  A << 1, 1;
  return make_equality_qp(A, vec({1}), Vec::Zero(2), 1.0);
}

class AbsSum final : public Objective {
 public:
  explicit AbsSum(Index n) : n_(n) {}
  Index dim() const override { return n_; }
  double value(const Vec& u) const override { return u.cwiseAbs().sum(); }

 private:
  Index n_;
};

ConicProblem box_problem(std::shared_ptr<const Objective> f, const Mat& G, const Vec& g,
                         const Cone& K) {
  const Index n = G.cols();
  return ConicProblem(std::move(f), SimpleSet::box(Vec::Constant(n, -1), Vec::Ones(n)), G, g, K);
}

// Canonical QP: for |x| small the minimizer of L^ag(., x) is c (1, 1) with
// c = (mu - x) / (1 + 2 mu), inside the box.
double canonical_dag(double x, double mu) {
  const double c = (mu - x) / (1.0 + 2.0 * mu);
  const double r = 2.0 * c - 1.0 + x / mu;
  return c * c + 0.5 * mu * r * r - x * x / (2.0 * mu);
}

}  // namespace

TEST_SUITE("auglag") {

TEST_CASE("augmented Lagrangian evaluation") {
  std::mt19937_64 rng(1);
  const Mat G = randn(3, 4, rng);
  const Vec g = randn(3, rng);
  const Vec u = randn(4, rng);
  {
    const ConicProblem p = box_problem(SeparableQuadratic::zero(4), G, g, Cone::zero(3));
    RunContext ctx(p);
    CHECK((auglag_eval(ctx, u, randn(3, rng), 2.0).grad_x - (G * u + g)).norm() < 1e-12);
    CHECK(ctx.counters().proj_K == 1);
  }
  {
    const auto f = SeparableQuadratic::linear(randn(4, rng));
    const Vec gf = Vec::Constant(3, 5.0) - G * u;
    const ConicProblem p = box_problem(f, G, gf, Cone::nonneg(3));
    RunContext ctx(p);
    const LagrangianEval e = auglag_eval(ctx, u, Vec::Zero(3), 0.7);
    CHECK(e.grad_x.norm() == 0.0);
    CHECK(e.value == doctest::Approx(f->value(u)));
  }
  for (int i = 0; i < 20; ++i) {
    const ConicProblem p = box_problem(SeparableQuadratic::zero(4), randn(3, 4, rng),
                                       randn(3, rng), Cone::nonneg(3));
    RunContext ctx(p);
    const Vec ui = randn(4, rng), x = randn(3, rng);
    const double mu = 0.5 + i * 0.1;
    auto F = [&](const Vec& xx) { return auglag_eval(ctx, ui, xx, mu).value; };
    CHECK((ref::fd_gradient(F, x) - auglag_eval(ctx, ui, x, mu).grad_x).cwiseAbs().maxCoeff() <
          1e-5);
  }
  CHECK(AugLagConfig{7.0}.L_d() * 7.0 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("inner budget") {
  CHECK(inner_budget(InnerMode::SimpleF, 1.0, 1.0, 2.0, 0.0, 1.0) == 2);
  CHECK(inner_budget(InnerMode::SmoothF, 1.0, 1.0, 1.0, 2.0, 2.0) == 2);
  CHECK(inner_budget(InnerMode::SimpleF, 1.0, 1.0, 2.0, 5.0, 1.0) == 2);  // L_f ignored
  for (double delta : {1e-1, 1e-3, 1e-6}) {
    const long a = inner_budget(InnerMode::SmoothF, 1.3, 2.0, 3.0, 1.0, delta);
    const long b = inner_budget(InnerMode::SmoothF, 1.3, 2.0, 3.0, 1.0, delta / 2);
    CHECK(b >= a);
    CHECK(b <= std::sqrt(2.0) * a + 1.0);
  }
  CHECK_THROWS_AS(inner_budget(InnerMode::SimpleF, 1.0, 1.0, 1.0, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(inner_budget(InnerMode::SimpleF, 1.0, 1.0, 1.0, 0.0, -1.0), ParameterError);
}

TEST_CASE("inner solve accuracy") {
  std::mt19937_64 rng(2);
  SUBCASE("zero cone, zero objective, against a reference solve") {
    const ConicProblem p =
        box_problem(SeparableQuadratic::zero(3), randn(2, 3, rng), randn(2, rng), Cone::zero(2));
    for (double mu : {0.5, 4.0}) {
      for (double delta : {1e-2, 1e-4}) {
        RunContext ctx(p);
        const Vec u = inner_solve(ctx, Vec::Zero(2), mu, delta);
        const auto r = ref::auglag_dual(p, Vec::Zero(2), mu);
        REQUIRE(r.certificate <= 1e-10);
        CHECK(auglag_eval(ctx, u, Vec::Zero(2), mu).value - r.value <= delta);
      }
    }
  }
  SUBCASE("feasible unconstrained instance recovers u*") {
    const Mat G = randn(3, 3, rng) + 3.0 * Mat::Identity(3, 3);
    const Vec us = vec({0.2, -0.4, 0.1});
    const ConicProblem p = box_problem(SeparableQuadratic::zero(3), G, -G * us, Cone::zero(3));
    RunContext ctx(p);
    const double mu = 1.0, delta = 1e-10;
    const Vec u = inner_solve(ctx, Vec::Zero(3), mu, delta);
    const double smin = Eigen::JacobiSVD<Mat>(G).singularValues().minCoeff();
    CHECK((u - us).norm() <= std::sqrt(2.0 * delta / mu) / smin + 1e-12);
  }
  SUBCASE("larger delta does less work") {
    const Instance inst = gen_equality_qp(6, 3);
    RunContext a(inst.problem), b(inst.problem);
    inner_solve(a, Vec::Zero(inst.problem.m()), 2.0, 1e-2);
    inner_solve(b, Vec::Zero(inst.problem.m()), 2.0, 1e-6);
    CHECK(a.counters().proj_K < b.counters().proj_K);
    CHECK(a.counters().proj_U < b.counters().proj_U);
  }
  SUBCASE("objective with neither prox nor gradient") {
    const ConicProblem p = box_problem(std::make_shared<AbsSum>(2), Mat::Ones(1, 2),
                                       Vec::Zero(1), Cone::zero(1));
    RunContext ctx(p);
    CHECK_THROWS_AS(inner_solve(ctx, Vec::Zero(1), 1.0, 1e-3), CapabilityError);
    CHECK_THROWS_AS(inner_solve(ctx, Vec::Zero(1), 1.0, 1e-3, InnerPath::Smooth), CapabilityError);
  }
}

TEST_CASE("dual oracle") {
  const Instance inst = canonical_qp();
  const auto& p = inst.problem;
  SUBCASE("near-exact inner solve gives the closed-form dual") {
    for (double mu : {1.0, 10.0}) {
      RunContext ctx(p);
      AugLagDualOracle o(ctx, mu, 1e-11);
      CHECK(o.L_out() == doctest::Approx(2.0 / mu));
      for (double x : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
        const OracleValue v = o(Vec::Constant(1, x));
        CHECK(v.value == doctest::Approx(-canonical_dag(x, mu)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("sandwich and gradient error against reference dual values") {
    std::mt19937_64 rng(5);
    const Instance qp = gen_equality_qp(6, 11);
    const auto& q = qp.problem;
    const double mu = 1.0;
    for (double delta : {1e-2, 1e-4}) {
      RunContext ctx(q);
      AugLagDualOracle o(ctx, mu, delta);
      CHECK(o.delta_out() == doctest::Approx(3.0 * delta));
      for (int i = 0; i < 10; ++i) {
        const Vec x = randn(q.m(), rng), y = randn(q.m(), rng);
        const OracleValue at_y = o(y);
        const auto rx = ref::auglag_dual(q, x, mu);
        const auto ry = ref::auglag_dual(q, y, mu);
        // Dual maximization: L^ag(u(y), y) + <grad, x - y> - d(x).
        const double lhs = -at_y.value - at_y.grad.dot(x - y) - rx.value;
        CHECK(lhs >= -1e-8);
        CHECK(lhs <= (x - y).squaredNorm() / mu + 3.0 * delta + 1e-8);
        const Vec vref = q.G() * ry.u + q.g() + y / mu;
        const Vec grad_ref = q.G() * ry.u + q.g() - q.K().project(vref);
        const double err = (-at_y.grad - grad_ref).norm();
        CHECK(err <= std::sqrt(4.0 * delta / mu) + std::sqrt(4.0 * 1e-12 / mu) + 1e-8);
      }
    }
  }
}

TEST_CASE("optimal parameters") {
  auto g = optimal_params_auglag(AugLagVariant::Gradient, 0.1, 1.0, 0.0, 1.0);
  CHECK(g.mu == doctest::Approx(160.0).epsilon(1e-12));
  CHECK(g.delta == doctest::Approx(1.0 / 30.0).epsilon(1e-12));
  auto f = optimal_params_auglag(AugLagVariant::Fast, 0.1, 1.0, 0.0, 1.0);
  CHECK(f.mu == doctest::Approx(160.0).epsilon(1e-12));
  CHECK(f.delta == doctest::Approx(1.0 / 240.0).epsilon(1e-12));
  auto m = optimal_params_auglag(AugLagVariant::Gradient, 0.1, 1.0, 1000.0, 2.0);
  CHECK(m.mu == doctest::Approx(250.0).epsilon(1e-12));
  CHECK_THROWS_AS(optimal_params_auglag(AugLagVariant::Gradient, 0.1, 1.0, 1.0, 0.0),
                  ParameterError);
  CHECK_THROWS_AS(optimal_params_auglag(AugLagVariant::Fast, 0.0, 1.0, 0.0, 1.0), ParameterError);

  // At the optimal mu the outer budget collapses to one iteration and the
  // fast-variant inner accuracy reduces to eps / 24.
  CHECK(auglag_outer_budget(AugLagVariant::Gradient, 160.0, 0.1, 1.0) == 1);
  CHECK(auglag_outer_budget(AugLagVariant::Fast, 160.0, 0.1, 1.0) == 1);
  CHECK(auglag_inner_accuracy(AugLagVariant::Fast, 160.0, 0.1, 1.0, 1) ==
        doctest::Approx(0.1 / 24.0).epsilon(1e-12));
  CHECK(auglag_outer_budget(AugLagVariant::Gradient, 20.0, 0.1, 1.0) == 8);
  CHECK(auglag_outer_budget(AugLagVariant::Fast, 10.0, 0.1, 1.0) == 4);
}

TEST_CASE("outer trajectory bounds") {
  const Instance inst = gen_equality_qp(6, 21);
  const auto& p = inst.problem;
  const double Rd = inst.known.x_star->norm();
  const double fs = *inst.known.f_star;
  const double delta = 1e-4;
  for (double mu : {1.0, 10.0}) {
    const double Ld = 1.0 / mu;
    for (auto sched : {ThetaSchedule::Constant, ThetaSchedule::Accelerated}) {
      RunContext ctx(p);
      AugLagConfig cfg;
      cfg.mu = mu;
      cfg.delta = delta;
      cfg.outer_budget = 40;
      cfg.schedule = sched;
      cfg.f_star = fs;
      const SolveReport rep = ial_run(ctx, cfg);
      REQUIRE(rep.history.size() == 40);
      for (const auto& h : rep.history) {
        double feas, lo, hi;
        if (sched == ThetaSchedule::Constant) {
          const double k = static_cast<double>(h.k);
          feas = 4 * Ld * Rd / k + std::sqrt(12 * Ld * delta / k);
          lo = -4 * Ld * Rd * Rd / k - Rd * std::sqrt(12 * Ld * delta / k);
          hi = 3 * delta;
        } else {
          const double k = static_cast<double>(h.k + 1);
          feas = 8 * Ld * Rd / (k * k) + 8 * std::sqrt(3 * Ld * delta / k);
          lo = -8 * Ld * Rd * Rd / (k * k) - 8 * Rd * std::sqrt(3 * Ld * delta / k);
          hi = 3 * k * delta;
        }
        CHECK(h.infeas <= feas + 1e-12);
        CHECK(*h.subopt_gap <= hi + 1e-12);
        CHECK(*h.subopt_gap >= lo - 1e-12);
      }
    }
  }
}

TEST_CASE("adaptive augmented Lagrangian") {
  const Instance inst = canonical_qp();
  const auto& p = inst.problem;
  const double eps = 1e-3;
  const double Rd = inst.known.x_star->norm();
  const double mu_star = 16.0 * Rd * Rd / eps;
  AialOptions opt;
  opt.f_star = inst.known.f_star;
  {
    RunContext ctx(p);
    const SolveReport r = a_ial_run(ctx, mu_star, eps, opt);
    CHECK(r.outer_iterations == 1);
    CHECK(r.doublings == 0);
  }
  {
    RunContext ctx(p);
    const SolveReport r = a_ial_run(ctx, mu_star / 8.0, eps, opt);
    CHECK(r.doublings <= 3);
    const auto chk = check_eps_optimal(p, inst.known, r.u, eps, OptimalityMode::OneSided);
    CHECK(chk.pass);
    CHECK(chk.subopt_gap >= -eps * Rd - 1e-12);
    CHECK(r.final_param == doctest::Approx(mu_star / 8.0 * std::pow(2.0, r.doublings)));
  }
  {
    // Infeasible: u1 = 5 with |u1| <= 1.
    Mat G(1, 2);
    G << 1, 0;
    const ConicProblem bad = box_problem(SeparableQuadratic::zero(2), G, vec({-5}), Cone::zero(1));
    RunContext ctx(bad);
    AialOptions o;
    o.max_doublings = 3;
    CHECK_THROWS_AS(a_ial_run(ctx, 1.0, 1e-2, o), NonConvergenceError);
  }
}

TEST_CASE("total projections track the complexity formulas") {
  // Gradient: ceil(sqrt(24 L_f D^2 / eps) + 6 |G| D R / eps).
  // Fast:     ceil(14 L_f^{1/2} D / eps^{1/2} + 56 R |G| D / eps).
  // Counted as U-projections, one per inner iteration; a 4x band either way.
  const Instance inst = gen_equality_qp(10, 1);
  const auto& p = inst.problem;
  const double R = std::max(1.0, inst.known.x_star->norm());
  const double G = p.norm_G(), D = p.D_U();
  for (InnerPath path : {InnerPath::Simple, InnerPath::Smooth}) {
    const double Lf = path == InnerPath::Simple ? 0.0 : p.f().lipschitz();
    SweepParams sp;
    sp.inner = path;
    for (double eps : {1e-1, 1e-2}) {
      const double grad_k = std::ceil(std::sqrt(24 * Lf * D * D / eps) + 6 * G * D * R / eps);
      const double fast_k = std::ceil(14 * std::sqrt(Lf) * D / std::sqrt(eps) + 56 * R * G * D / eps);
      const double ial = static_cast<double>(run_method(inst, "ial", eps, sp).counters.proj_U);
      const double fial = static_cast<double>(run_method(inst, "fial", eps, sp).counters.proj_U);
      CHECK(ial <= 4 * grad_k);
      CHECK(ial >= grad_k / 4);
      CHECK(fial <= 4 * fast_k);
      CHECK(fial >= fast_k / 4);
    }
  }
}

}  // TEST_SUITE
