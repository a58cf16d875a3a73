#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "lepsim/expm.hpp"
#include "lepsim/liouville.hpp"
#include "lepsim/qops.hpp"

using namespace lepsim;

namespace {

// Generator of the lambda system written out entry by entry in the
// row-stacking basis (aa, ab, ac, ba, bb, bc, ca, cb, cc).
CMat three_level_matrix(double gamma, double omega) {
  CMat m = CMat::Zero(9, 9);
  cxd w(0.0, omega / 2.0);
  m(0, 8) = gamma;
  m(1, 2) = w;
  m(2, 1) = w;
  m(2, 2) = -gamma / 2.0;
  m(3, 6) = -w;
  m(4, 5) = w;
  m(4, 7) = -w;
  m(5, 4) = w;
  m(5, 5) = -gamma / 2.0;
  m(5, 8) = -w;
  m(6, 3) = -w;
  m(6, 6) = -gamma / 2.0;
  m(7, 4) = -w;
  m(7, 7) = -gamma / 2.0;
  m(7, 8) = w;
  m(8, 5) = -w;
  m(8, 7) = w;
  m(8, 8) = -gamma;
  return m;
}

std::vector<cxd> three_level_eigenvalues(double gamma, double omega) {
  cxd kappa = std::sqrt(cxd(gamma * gamma - 4.0 * omega * omega, 0.0));
  cxd lm = -(gamma - kappa) / 4.0;
  cxd lp = -(gamma + kappa) / 4.0;
  return {0.0, lm, lm, lp, lp, 2.0 * lm, 2.0 * lp, -gamma / 2.0,
          -gamma / 2.0};
}

CMat fixed_density3() {
  CMat rho = CMat::Zero(3, 3);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.2;
  rho(0, 1) = cxd(0.1, 0.05);
  rho(1, 0) = std::conj(rho(0, 1));
  rho(1, 2) = cxd(-0.02, 0.08);
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

}  // namespace

TEST_CASE("vec and unvec follow the row-stacking convention") {
  CMat rho = fixed_density3();
  CVec v = vec(rho);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(v(3 * i + j) - rho(i, j)) == 0.0);
  CHECK((unvec(v) - rho).norm() == 0.0);
}

TEST_CASE("superoperator matrix matches the entry-by-entry generator") {
  for (auto [gamma, omega] :
       {std::pair{1.0, 0.3}, std::pair{2.0, 1.0}, std::pair{3.0, 1.0}}) {
    Superoperator sup = build_superoperator(three_level_model(gamma, omega));
    CMat expected = three_level_matrix(gamma, omega);
    CHECK((sup.matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("superoperator action agrees with the direct commutator form") {
  LindbladModel model = three_level_model(1.0, 0.3);
  Superoperator sup = build_superoperator(model);
  CMat rho = fixed_density3();
  CMat direct = lindblad_action(model, rho);
  CMat via_matrix = unvec(sup.matrix * vec(rho));
  CHECK((direct - via_matrix).norm() < 1e-14);
}

TEST_CASE("build_superoperator rejects malformed models") {
  LindbladModel model = three_level_model(1.0, 0.3);
  model.hamiltonian(0, 1) = cxd(0.2, 0.1);
  CHECK_THROWS_AS(build_superoperator(model), ModelError);

  LindbladModel bad_jump = three_level_model(1.0, 0.3);
  bad_jump.jumps.push_back(CMat::Zero(2, 2));
  CHECK_THROWS_AS(build_superoperator(bad_jump), ModelError);
}

TEST_CASE("canonical order: real part, then |imag|, positive first") {
  std::vector<cxd> vals = {cxd(-0.5, -1.0), cxd(0.0, 0.0), cxd(-0.5, 1.0),
                           cxd(-0.5, 0.0),  cxd(-1.0, 0.3), cxd(-0.5, -0.2),
                           cxd(-0.5, 0.2)};
  std::vector<cxd> sorted = canonical_sort(vals);
  CHECK(sorted[0] == cxd(0.0, 0.0));
  CHECK(sorted[1] == cxd(-0.5, 0.0));
  CHECK(sorted[2] == cxd(-0.5, 0.2));
  CHECK(sorted[3] == cxd(-0.5, -0.2));
  CHECK(sorted[4] == cxd(-0.5, 1.0));
  CHECK(sorted[5] == cxd(-0.5, -1.0));
  CHECK(sorted[6] == cxd(-1.0, 0.3));
}

TEST_CASE("spectrum reproduces the closed-form eigenvalues") {
  for (auto [gamma, omega] :
       {std::pair{1.0, 0.3}, std::pair{1.0, 2.0}, std::pair{3.0, 1.0}}) {
    CAPTURE(gamma);
    CAPTURE(omega);
    Superoperator sup = build_superoperator(three_level_model(gamma, omega));
    Spectrum spec = spectrum(sup);
    std::vector<cxd> expected =
        canonical_sort(three_level_eigenvalues(gamma, omega));
    REQUIRE(spec.eigenvalues.size() == 9);
    for (int i = 0; i < 9; ++i)
      CHECK(std::abs(spec.eigenvalues[i] - expected[i]) < 1e-9);
  }
}

TEST_CASE("left and right modes are biorthonormal off the degeneracy") {
  Superoperator sup = build_superoperator(three_level_model(1.0, 0.3));
  Spectrum spec = spectrum(sup);
  for (int i = 0; i < 9; ++i) {
    CHECK(spec.biorth_condition[i] > 1e-3);
    for (int j = 0; j < 9; ++j) {
      cxd pairing = (spec.left_modes[i] * spec.right_modes[j]).trace();
      CHECK(std::abs(pairing - (i == j ? cxd(1.0, 0.0) : cxd(0.0, 0.0))) <
            1e-8);
    }
  }
}

TEST_CASE("modes satisfy the eigenvalue equations of the generator") {
  Superoperator sup = build_superoperator(three_level_model(1.0, 2.0));
  Spectrum spec = spectrum(sup);
  double scale = sup.matrix.norm();
  for (int i = 0; i < 9; ++i) {
    CVec r = vec(spec.right_modes[i]);
    CHECK((sup.matrix * r - spec.eigenvalues[i] * r).norm() < 1e-9 * scale);
    CVec l = vec(spec.left_modes[i].transpose());
    CHECK((sup.matrix.transpose() * l - spec.eigenvalues[i] * l).norm() <
          1e-9 * scale);
  }
}

TEST_CASE("gap matches (gamma - Re kappa) / 4") {
  Superoperator a = build_superoperator(three_level_model(1.0, 0.3));
  CHECK(liouvillian_gap(spectrum(a)) == doctest::Approx(0.05).epsilon(1e-9));

  double expected = (10.0 - std::sqrt(96.0)) / 4.0;
  CHECK(gap_of_matrix(build_superoperator(three_level_model(10.0, 1.0)).matrix)
        == doctest::Approx(expected).epsilon(1e-9));

  // In the underdamped regime kappa is imaginary, so the gap is gamma / 4.
  CHECK(gap_of_matrix(build_superoperator(three_level_model(1.0, 2.0)).matrix)
        == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("stationary state is the dark state") {
  Superoperator sup = build_superoperator(three_level_model(1.0, 0.3));
  DensityMatrix from_spec = stationary_state(spectrum(sup));
  DensityMatrix from_solve = stationary_state_direct(sup);
  CMat dark = CMat::Zero(3, 3);
  dark(0, 0) = 1.0;
  CHECK((from_spec.matrix - dark).norm() < 1e-10);
  CHECK((from_solve.matrix - dark).norm() < 1e-10);
}

TEST_CASE("mode decomposition reconstructs and propagates the state") {
  Superoperator sup = build_superoperator(three_level_model(1.0, 0.3));
  Spectrum spec = spectrum(sup);
  CMat rho0 = CMat::Zero(3, 3);
  rho0(1, 1) = 1.0;
  DensityMatrix state{sup.model.space, rho0};
  ModeDecomposition dec = mode_decomposition(spec, state);

  CMat rebuilt = dec.stationary.matrix;
  for (int i = 1; i < 9; ++i)
    rebuilt += dec.coefficients[i - 1] * spec.right_modes[i];
  CHECK((rebuilt - rho0).norm() < 1e-8);

  std::vector<double> times = {0.0, 0.85, 1.7};
  Trajectory traj = evolve_spectral(spec, dec, times);
  CMat direct = unvec(
      (expm(sup.matrix * 1.7) * vec(rho0)).eval());
  CHECK((traj.states[2] - direct).norm() < 1e-8);
  CHECK(traj.max_trace_dev < 1e-9);
}

TEST_CASE("mode decomposition refuses the defective point") {
  Superoperator sup = build_superoperator(three_level_model(2.0, 1.0));
  Spectrum spec = spectrum(sup);
  CMat rho0 = CMat::Zero(3, 3);
  rho0(1, 1) = 1.0;
  CHECK_THROWS_AS(mode_decomposition(spec, DensityMatrix{sup.model.space, rho0}),
                  NumericsError);
}

TEST_CASE("split_mode returns PSD parts for a real-eigenvalue mode") {
  CMat mode = CMat::Zero(3, 3);
  mode(1, 2) = 1.0;
  mode(2, 1) = 1.0;
  SplitMode split = split_mode(mode, cxd(-0.5, 0.0));
  CHECK(split.real_branch);
  Eigen::SelfAdjointEigenSolver<CMat> plus(split.plus);
  Eigen::SelfAdjointEigenSolver<CMat> minus(split.minus);
  CHECK(plus.eigenvalues().minCoeff() > -1e-12);
  CHECK(minus.eigenvalues().minCoeff() > -1e-12);
  CHECK((split.plus - split.minus - mode).norm() < 1e-12);
}

TEST_CASE("split_mode pairs a complex mode with its conjugate content") {
  CMat mode = CMat::Zero(2, 2);
  mode(0, 1) = cxd(0.3, -0.4);
  SplitMode split = split_mode(mode, cxd(-0.2, 1.3));
  CHECK_FALSE(split.real_branch);
  CHECK((split.plus - (mode + mode.adjoint())).norm() < 1e-14);
  CHECK((split.minus - cxd(0.0, 1.0) * (mode - mode.adjoint())).norm() <
        1e-14);
}

TEST_CASE("detect_ep reports simple clusters away from the critical point") {
  Superoperator sup = build_superoperator(three_level_model(1.0, 0.3));
  EPReport report = detect_ep(sup.matrix, 1e-6);
  int total = 0;
  for (const auto& c : report.clusters) {
    total += c.algebraic;
    CHECK(c.geometric == c.algebraic);
    for (int b : c.blocks) CHECK(b == 1);
  }
  CHECK(total == 9);
  REQUIRE(report.clusters.size() == 6);
  CHECK(report.clusters[0].algebraic == 1);   // 0
  CHECK(report.clusters[1].algebraic == 2);   // -(gamma - kappa)/4 twice
  CHECK(report.clusters[2].algebraic == 1);   // -(gamma - kappa)/2
  CHECK(report.clusters[3].algebraic == 2);   // -(gamma + kappa)/4 twice
  CHECK(report.clusters[4].algebraic == 2);   // -gamma/2 twice
  CHECK(report.clusters[5].algebraic == 1);   // -(gamma + kappa)/2
}

TEST_CASE("detect_ep resolves the Jordan structure at the critical point") {
  Superoperator sup = build_superoperator(three_level_model(2.0, 1.0));
  EPReport report = detect_ep(sup.matrix, 1e-4);
  REQUIRE(report.clusters.size() == 3);

  CHECK(std::abs(report.clusters[0].center) < 1e-6);

  CHECK(std::abs(report.clusters[1].center - cxd(-0.5, 0.0)) < 1e-6);
  CHECK(report.clusters[1].algebraic == 4);
  CHECK(report.clusters[1].geometric == 2);
  CHECK(report.clusters[1].blocks == std::vector<int>{2, 2});

  CHECK(std::abs(report.clusters[2].center - cxd(-1.0, 0.0)) < 1e-6);
  CHECK(report.clusters[2].algebraic == 4);
  CHECK(report.clusters[2].geometric == 2);
  CHECK(report.clusters[2].blocks == std::vector<int>{3, 1});
}

TEST_CASE("closed-form reference modes satisfy the eigenvalue equations") {
  for (auto [gamma, omega] : {std::pair{1.0, 0.3}, std::pair{1.0, 2.0}}) {
    CAPTURE(gamma);
    CAPTURE(omega);
    Superoperator sup = build_superoperator(three_level_model(gamma, omega));
    ThreeLevelReference ref = three_level_reference(gamma, omega);
    double scale = sup.matrix.norm();
    REQUIRE(ref.eigenvalues.size() == 9);
    for (int i = 0; i < 9; ++i) {
      CVec r = vec(ref.right_modes[i]);
      CHECK((sup.matrix * r - ref.eigenvalues[i] * r).norm() <
            1e-12 * scale * r.norm());
      CVec l = vec(ref.left_modes[i].transpose());
      CHECK((sup.matrix.transpose() * l - ref.eigenvalues[i] * l).norm() <
            1e-12 * scale * l.norm());
    }
  }
}

TEST_CASE("reference normalization gives a biorthonormal family off the EP") {
  ThreeLevelReference ref = three_level_reference(1.0, 0.3);
  for (int i = 0; i < 9; ++i) {
    REQUIRE(ref.normalizable[i]);
    for (int j = 0; j < 9; ++j) {
      if (!ref.normalizable[j]) continue;
      if (std::abs(ref.eigenvalues[i] - ref.eigenvalues[j]) < 1e-12 && i != j)
        continue;  // degenerate pairs are orthogonalized only within index
      cxd pairing =
          (ref.left_normalized[i] * ref.right_normalized[j]).trace();
      if (i == j)
        CHECK(std::abs(pairing - cxd(1.0, 0.0)) < 1e-10);
      else if (std::abs(ref.eigenvalues[i] - ref.eigenvalues[j]) > 1e-12)
        CHECK(std::abs(pairing) < 1e-10);
    }
  }
  CHECK(ref.gap == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("spectrum handles the degenerate quadruples by cluster means") {
  Superoperator sup = build_superoperator(three_level_model(2.0, 1.0));
  Spectrum spec = spectrum(sup);
  // The defective quadruple scatters individual eigenvalues by the
  // eigensolver's cube-root noise, but the cluster means stay sharp.
  cxd mean_quarter = 0.0, mean_half = 0.0;
  int n_quarter = 0, n_half = 0;
  for (const auto& v : spec.eigenvalues) {
    if (std::abs(v) < 1e-4) continue;
    if (std::abs(v - cxd(-0.5, 0.0)) < 1e-2) {
      mean_quarter += v;
      ++n_quarter;
    } else if (std::abs(v - cxd(-1.0, 0.0)) < 1e-2) {
      mean_half += v;
      ++n_half;
    }
  }
  CHECK(n_quarter == 4);
  CHECK(n_half == 4);
  CHECK(std::abs(mean_quarter / 4.0 - cxd(-0.5, 0.0)) < 1e-9);
  CHECK(std::abs(mean_half / 4.0 - cxd(-1.0, 0.0)) < 1e-9);
}
