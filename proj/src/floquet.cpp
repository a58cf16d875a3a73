#include "lepsim/floquet.hpp"

#include <algorithm>
#include <cmath>

#include "lepsim/expm.hpp"
#include "lepsim/parallel.hpp"
#include "lepsim/qops.hpp"

namespace lepsim {

namespace {

constexpr double kStationaryTol = 1e-9;
constexpr double kClusterTol = 1e-9;

std::vector<cxd> nonstationary_multipliers(const Monodromy& p) {
  Eigen::ComplexEigenSolver<CMat> es(p.matrix, false);
  if (es.info() != Eigen::Success)
    throw NumericsError("monodromy eigenvalues failed");
  std::vector<cxd> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    cxd z = es.eigenvalues()(i);
    if (std::abs(z - 1.0) > kStationaryTol) keep.push_back(z);
  }
  return keep;
}

}  // namespace

Monodromy monodromy(const LindbladModel& on, const LindbladModel& off,
                    const FloquetProtocol& protocol) {
  if (!same_space(on.space, off.space))
    throw ModelError("monodromy: models live on different spaces");
  if ((on.hamiltonian - off.hamiltonian).cwiseAbs().maxCoeff() > 1e-12)
    throw ModelError("monodromy: on/off Hamiltonians differ");
  for (const CMat& j : off.jumps)
    if (j.cwiseAbs().maxCoeff() > 0)
      throw ModelError("monodromy: off model carries dissipation");
  if (protocol.omega <= 0) throw ModelError("monodromy: omega <= 0");
  const double period = 2.0 * M_PI / protocol.omega;
  if (protocol.tau < 0 || protocol.tau >= period)
    throw ModelError("monodromy: tau outside [0, T)");

  CMat lon = build_superoperator(on).matrix;
  CMat p = expm(lon * (period - protocol.tau));
  if (protocol.tau > 0) {
    CMat loff = build_superoperator(off).matrix;
    p = p * expm(loff * protocol.tau);
  }
  return Monodromy{std::move(p), period, on.space};
}

Monodromy monodromy(const LindbladModel& on, const FloquetProtocol& protocol) {
  LindbladModel off = on;
  off.jumps.clear();
  return monodromy(on, off, protocol);
}

double floquet_gap(const Monodromy& p) {
  auto keep = nonstationary_multipliers(p);
  if (keep.empty())
    throw NumericsError("floquet_gap: no nonstationary multiplier");
  double r = 0.0;
  for (cxd z : keep) r = std::max(r, std::abs(z));
  if (r < 1e-300)
    throw NumericsError("floquet_gap: multipliers numerically zero");
  return -std::log(r) / p.period;
}

double mu_parameter(const Monodromy& p) {
  auto keep = nonstationary_multipliers(p);
  if (keep.size() < 2)
    throw NumericsError("mu_parameter: fewer than two nonstationary "
                        "multipliers");
  double top = 0.0;
  for (cxd z : keep) top = std::max(top, std::abs(z));
  if (top < 1e-12)
    throw NumericsError("mu_parameter: nonstationary spectrum numerically "
                        "degenerate");
  std::sort(keep.begin(), keep.end(), [](cxd a, cxd b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<std::vector<cxd>> clusters;
  for (cxd z : keep) {
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(z - c.front()) <= kClusterTol) {
        c.push_back(z);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({z});
  }
  if (clusters.size() < 2)
    throw NumericsError("mu_parameter: all nonstationary multipliers "
                        "coincide");
  std::vector<double> mods;
  for (const auto& c : clusters) {
    cxd mean = 0.0;
    for (cxd z : c) mean += z;
    mods.push_back(std::abs(mean / double(c.size())));
  }
  std::sort(mods.rbegin(), mods.rend());
  return (mods[0] - mods[1]) / (mods[0] + mods[1]);
}

CMat floquet_generator(const Monodromy& p) {
  CMat g = logm(p.matrix);
  return g / p.period;
}

PhaseDiagram phase_diagram(
    const std::function<LindbladModel(double)>& family_of_gamma,
    const std::vector<double>& omegas, const std::vector<double>& gammas,
    double fraction, int workers) {
  if (fraction < 0 || fraction >= 1)
    throw ModelError("phase_diagram: fraction outside [0, 1)");
  PhaseDiagram pd;
  pd.omegas = omegas;
  pd.gammas = gammas;
  pd.points.resize(omegas.size() * gammas.size());
  const int ng = int(gammas.size());
  parallel_for(int(pd.points.size()), workers, [&](int idx) {
    PhasePoint& pt = pd.points[idx];
    pt.omega = omegas[idx / ng];
    pt.gamma = gammas[idx % ng];
    pt.mu = pt.gap = std::nan("");
    try {
      FloquetProtocol proto{pt.omega, fraction * 2.0 * M_PI / pt.omega};
      Monodromy p = monodromy(family_of_gamma(pt.gamma), proto);
      pt.gap = floquet_gap(p);
      pt.mu = mu_parameter(p);
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  });
  return pd;
}

}  // namespace lepsim
