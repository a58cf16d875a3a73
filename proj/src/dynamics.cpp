#include "lepsim/dynamics.hpp"

#include <cmath>

#include "lepsim/expm.hpp"
#include "lepsim/qops.hpp"

namespace lepsim {

namespace {

double op_norm_hermitian(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

void check_step_health(const Trajectory& tr) {
  if (tr.max_trace_dev > 1e-10)
    throw NumericsError("trace drift " + std::to_string(tr.max_trace_dev) +
                        " exceeds 1e-10");
  if (tr.min_eigenvalue < -1e-6)
    throw NumericsError("positivity violation: eigenvalue " +
                        std::to_string(tr.min_eigenvalue));
}

}  // namespace

Trajectory integrate(const LindbladModel& model, const DensityMatrix& rho0,
                     double t_final, double dt, bool store_states) {
  if (!same_space(model.space, rho0.space))
    throw ModelError("integrate: state lives on a different space");
  if (t_final <= 0 || dt <= 0)
    throw ModelError("integrate: t_final and dt must be positive");
  double scale = op_norm_hermitian(model.hamiltonian);
  for (const CMat& j : model.jumps)
    scale += op_norm_hermitian(j.adjoint() * j);
  if (scale > 0) {
    double bound = 0.1 / scale;
    if (dt > bound)
      throw ModelError("integrate: dt = " + std::to_string(dt) +
                       " exceeds the stability bound; use dt <= " +
                       std::to_string(bound));
  }
  const int n = int(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / n;

  Trajectory tr;
  tr.times.reserve(n + 1);
  if (store_states) tr.states.reserve(n + 1);
  CMat rho = rho0.matrix;
  for (int k = 0; k <= n; ++k) {
    tr.times.push_back(k * h);
    accumulate_conservation(tr, rho);
    check_step_health(tr);
    if (store_states) tr.states.push_back(rho);
    if (k == n) break;
    CMat k1 = lindblad_action(model, rho);
    CMat k2 = lindblad_action(model, rho + 0.5 * h * k1);
    CMat k3 = lindblad_action(model, rho + 0.5 * h * k2);
    CMat k4 = lindblad_action(model, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return tr;
}

Trajectory evolve_expm(const Superoperator& superop, const DensityMatrix& rho0,
                       const std::vector<double>& times) {
  if (!same_space(superop.model.space, rho0.space))
    throw ModelError("evolve_expm: state lives on a different space");
  if (times.empty()) throw ModelError("evolve_expm: empty time grid");

  Trajectory tr;
  tr.times = times;
  tr.states.reserve(times.size());

  bool uniform = times.size() >= 2 && std::abs(times[0]) <= 1e-12;
  double dt0 = uniform ? times[1] - times[0] : 0.0;
  if (uniform && dt0 > 0) {
    for (size_t k = 1; k + 1 < times.size() && uniform; ++k)
      if (std::abs(times[k + 1] - times[k] - dt0) > 1e-9 * std::max(dt0, 1.0))
        uniform = false;
  } else {
    uniform = false;
  }

  if (uniform) {
    CMat prop = expm(superop.matrix * dt0);
    CVec v = vec(rho0.matrix);
    for (size_t k = 0; k < times.size(); ++k) {
      if (k > 0) v = prop * v;
      CMat rho = unvec(v);
      accumulate_conservation(tr, rho);
      tr.states.push_back(std::move(rho));
    }
  } else {
    CVec v0 = vec(rho0.matrix);
    for (double t : times) {
      CMat rho = (t == 0.0) ? rho0.matrix : unvec(expm(superop.matrix * t) * v0);
      accumulate_conservation(tr, rho);
      tr.states.push_back(std::move(rho));
    }
  }
  return tr;
}

double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!same_space(a.space, b.space))
    throw ModelError("hs_distance: states live on different spaces");
  return (a.matrix - b.matrix).norm();
}

double fit_asymptotic_rate(const std::vector<double>& times,
                           const std::vector<double>& distances,
                           double window_fraction) {
  if (times.size() != distances.size())
    throw ModelError("fit_asymptotic_rate: length mismatch");
  if (window_fraction <= 0 || window_fraction > 1)
    throw ModelError("fit_asymptotic_rate: window_fraction out of (0, 1]");
  size_t start = size_t(std::floor(times.size() * (1.0 - window_fraction)));
  std::vector<double> t, ln;
  for (size_t k = start; k < times.size(); ++k) {
    if (distances[k] > 1e-13) {
      t.push_back(times[k]);
      ln.push_back(std::log(distances[k]));
    }
  }
  if (t.size() < 4)
    throw NumericsError(
        "fit_asymptotic_rate: fewer than 4 usable points in the fit window");
  double mt = 0, ml = 0;
  for (size_t k = 0; k < t.size(); ++k) mt += t[k], ml += ln[k];
  mt /= t.size();
  ml /= t.size();
  double cov = 0, var = 0;
  for (size_t k = 0; k < t.size(); ++k) {
    cov += (t[k] - mt) * (ln[k] - ml);
    var += (t[k] - mt) * (t[k] - mt);
  }
  if (var == 0) throw NumericsError("fit_asymptotic_rate: degenerate window");
  return -cov / var;
}

ThreeLevelCurves analytic_three_level(double gamma, double omega,
                                      const std::vector<double>& times) {
  const double g = gamma, om = omega;
  const double k2 = g * g - 4 * om * om;
  const cxd kap = std::sqrt(cxd(k2));
  const double gg = g * g - 2 * om * om;
  ThreeLevelCurves c;
  c.x.reserve(times.size());
  c.y.reserve(times.size());
  c.z.reserve(times.size());
  const bool series = std::abs(kap) <= 1e-3 * std::max(g, om);
  for (double t : times) {
    if (series) {
      double e = std::exp(-g * t / 2);
      double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
      double x =
          e * (1 + g * t / 2 + gg * t2 / 8 +
               k2 * (g * t3 / 48 + gg * t4 / 384) +
               k2 * k2 * (g * t3 * t2 / 3840 + gg * t4 * t2 / 46080));
      double ring = 1 + k2 * t2 / 48 + k2 * k2 * t4 / 5760;
      double y = e * om * om * t2 / 4 * ring;
      double z = e * om *
                 (g * t2 / 4 * ring +
                  t * (1 + k2 * t2 / 24 + k2 * k2 * t4 / 1920));
      c.x.push_back(x);
      c.y.push_back(y);
      c.z.push_back(z);
    } else {
      cxd em = std::exp((kap - g) * t / 2.0);
      cxd ep = std::exp(-(kap + g) * t / 2.0);
      double e0 = std::exp(-g * t / 2);
      cxd x = (0.5 * gg * (em + ep) + 0.5 * g * kap * (em - ep) -
               2 * om * om * e0) /
              k2;
      cxd y = om * om * (em - 2 * e0 + ep) / k2;
      cxd z = (om * (g * (em - 2 * e0 + ep) + kap * (em - ep))) / k2;
      c.x.push_back(x.real());
      c.y.push_back(y.real());
      c.z.push_back(z.real());
    }
  }
  return c;
}

Eigen::Matrix3d reduced_three_vector_generator(double gamma, double omega) {
  Eigen::Matrix3d m;
  m << 0, 0, -omega / 2, 0, -gamma, omega / 2, omega, -omega, -gamma / 2;
  return m;
}

}  // namespace lepsim
