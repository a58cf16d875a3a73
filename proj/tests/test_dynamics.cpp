#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "lepsim/dynamics.hpp"
#include "lepsim/liouville.hpp"
#include "lepsim/qops.hpp"

using namespace lepsim;

namespace {

DensityMatrix driven_start(const LindbladModel& model) {
  CMat rho0 = CMat::Zero(3, 3);
  rho0(1, 1) = 1.0;
  return DensityMatrix{model.space, rho0};
}

}  // namespace

TEST_CASE("closed-form curves hit the spot-check value") {
  ThreeLevelCurves c = analytic_three_level(1.0, 0.3, {5.0});
  CHECK(c.y[0] == doctest::Approx(0.0637691708).epsilon(1e-7));
  ThreeLevelCurves zero = analytic_three_level(1.0, 0.3, {0.0});
  CHECK(zero.x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(zero.y[0]) < 1e-14);
  CHECK(std::abs(zero.z[0]) < 1e-14);
}

TEST_CASE("RK4 matches the closed form across damping regimes") {
  for (double ratio : {0.2, 2.0, 10.0}) {
    CAPTURE(ratio);
    double gamma = 1.0, omega = gamma / ratio;
    LindbladModel model = three_level_model(gamma, omega);
    Trajectory traj = integrate(model, driven_start(model), 10.0, 0.002);
    ThreeLevelCurves ref = analytic_three_level(gamma, omega, traj.times);
    double worst = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
      const CMat& rho = traj.states[i];
      worst = std::max(worst, std::abs(rho(1, 1).real() - ref.x[i]));
      worst = std::max(worst, std::abs(rho(2, 2).real() - ref.y[i]));
      double z = (cxd(0.0, 1.0) * (rho(2, 1) - rho(1, 2))).real();
      worst = std::max(worst, std::abs(z - ref.z[i]));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("the series branch joins the exact branch at the critical point") {
  LindbladModel model = three_level_model(2.0, 1.0);
  Trajectory traj = integrate(model, driven_start(model), 3.0, 0.002);
  ThreeLevelCurves ref = analytic_three_level(2.0, 1.0, traj.times);
  size_t last = traj.times.size() - 1;
  CHECK(traj.states[last](1, 1).real() ==
        doctest::Approx(ref.x[last]).epsilon(1e-9));
  CHECK(traj.states[last](2, 2).real() ==
        doctest::Approx(ref.y[last]).epsilon(1e-9));
}

TEST_CASE("RK4 and the exponential propagator agree") {
  LindbladModel model = three_level_model(1.0, 0.5);
  Superoperator sup = build_superoperator(model);
  Trajectory rk = integrate(model, driven_start(model), 8.0, 0.01);
  Trajectory ex = evolve_expm(sup, driven_start(model), rk.times);
  double worst = 0.0;
  for (size_t i = 0; i < rk.times.size(); ++i)
    worst = std::max(worst, (rk.states[i] - ex.states[i]).norm());
  CHECK(worst < 1e-7);
}

TEST_CASE("halving the step shrinks the error like a fourth-order method") {
  LindbladModel model = three_level_model(1.0, 0.7);
  auto error_at = [&](double dt) {
    Trajectory traj = integrate(model, driven_start(model), 4.0, dt);
    ThreeLevelCurves ref = analytic_three_level(1.0, 0.7, traj.times);
    size_t last = traj.times.size() - 1;
    return std::abs(traj.states[last](2, 2).real() - ref.y[last]);
  };
  double coarse = error_at(0.06);
  double fine = error_at(0.03);
  CHECK(coarse / fine > 8.0);
}

TEST_CASE("integrate rejects an unstable step with a suggestion") {
  LindbladModel model = three_level_model(40.0, 1.0);
  CHECK_THROWS_WITH_AS(integrate(model, driven_start(model), 1.0, 0.5),
                       doctest::Contains("dt"), ModelError);
}

TEST_CASE("conservation diagnostics stay tight along the flow") {
  LindbladModel model = three_level_model(1.0, 0.5);
  Trajectory traj = integrate(model, driven_start(model), 10.0, 0.01);
  CHECK(traj.max_trace_dev < 1e-10);
  CHECK(traj.max_herm_dev < 1e-10);
  CHECK(traj.min_eigenvalue > -1e-8);
}

TEST_CASE("fit recovers a pure exponential rate") {
  std::vector<double> times, dists;
  for (int i = 0; i <= 200; ++i) {
    double t = 0.1 * i;
    times.push_back(t);
    dists.push_back(2.7 * std::exp(-0.3 * t));
  }
  CHECK(fit_asymptotic_rate(times, dists) ==
        doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("fit refuses a window with too few usable points") {
  std::vector<double> times = {0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> dists = {1.0, 0.5, 1e-14, 1e-14, 1e-14};
  CHECK_THROWS_AS(fit_asymptotic_rate(times, dists), NumericsError);
}

TEST_CASE("Hilbert-Schmidt distance on known pairs") {
  HilbertSpace space = three_level_model(1.0, 0.3).space;
  CMat a = CMat::Zero(3, 3), b = CMat::Zero(3, 3);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(hs_distance(DensityMatrix{space, a}, DensityMatrix{space, b}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CMat mixed = CMat::Identity(3, 3) / 3.0;
  CHECK(hs_distance(DensityMatrix{space, a}, DensityMatrix{space, mixed}) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  HilbertSpace other = make_space({{"sys", 4}});
  CHECK_THROWS_AS(hs_distance(DensityMatrix{space, a},
                              DensityMatrix{other, CMat::Identity(4, 4) / 4.0}),
                  ModelError);
}

TEST_CASE("reduced three-vector generator carries the slow rates") {
  double gamma = 1.0, omega = 0.3;
  Eigen::Matrix3d g = reduced_three_vector_generator(gamma, omega);
  Eigen::EigenSolver<Eigen::Matrix3d> es(g);
  std::vector<double> re;
  for (int i = 0; i < 3; ++i) re.push_back(es.eigenvalues()(i).real());
  std::sort(re.begin(), re.end());
  double kappa = std::sqrt(gamma * gamma - 4.0 * omega * omega);
  CHECK(re[2] == doctest::Approx(-(gamma - kappa) / 2.0).epsilon(1e-12));
  CHECK(re[1] == doctest::Approx(-gamma / 2.0).epsilon(1e-12));
  CHECK(re[0] == doctest::Approx(-(gamma + kappa) / 2.0).epsilon(1e-12));
}
