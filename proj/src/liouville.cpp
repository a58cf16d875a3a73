#include "lepsim/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lepsim/qops.hpp"

namespace lepsim {

CVec vec(const CMat& rho) {
  const Eigen::Index d = rho.rows();
  CVec v(d * rho.cols());
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
  return v;
}

CMat unvec(const CVec& v) {
  const auto d = Eigen::Index(std::lround(std::sqrt(double(v.size()))));
  if (d * d != v.size()) throw ModelError("unvec: length is not a square");
  CMat rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  return rho;
}

CMat lindblad_action(const LindbladModel& model, const CMat& rho) {
  const cxd im(0.0, 1.0);
  CMat out = -im * (model.hamiltonian * rho - rho * model.hamiltonian);
  for (const CMat& j : model.jumps) {
    CMat jj = j.adjoint() * j;
    out += j * rho * j.adjoint() - 0.5 * (jj * rho + rho * jj);
  }
  return out;
}

Superoperator build_superoperator(const LindbladModel& model) {
  const Eigen::Index d = model.hamiltonian.rows();
  if (d != model.hamiltonian.cols())
    throw ModelError("Hamiltonian is not square");
  if (d != model.space.total_dim)
    throw ModelError("Hamiltonian dimension does not match the space");
  if (d * d > 1024)
    throw ModelError("superoperator dimension " + std::to_string(d * d) +
                     " exceeds the 1024 limit");
  if ((model.hamiltonian - model.hamiltonian.adjoint()).cwiseAbs().maxCoeff() >
      1e-12)
    throw ModelError("Hamiltonian is not Hermitian");
  for (const CMat& j : model.jumps)
    if (j.rows() != d || j.cols() != d)
      throw ModelError("jump operator dimension mismatch");

  const cxd im(0.0, 1.0);
  CMat id = CMat::Identity(d, d);
  CMat sup = -im * (kron(model.hamiltonian, id) -
                    kron(id, model.hamiltonian.transpose()));
  for (const CMat& j : model.jumps) {
    CMat jj = j.adjoint() * j;
    sup += kron(j, j.conjugate()) -
           0.5 * (kron(jj, id) + kron(id, jj.transpose()));
  }
  return Superoperator{model, std::move(sup)};
}

namespace {

constexpr double kTieTol = 1e-9;

// Chained tie runs: consecutive sorted values closer than kTieTol in the
// active key belong to one run.
template <typename Key, typename Sub>
void refine_runs(std::vector<int>& idx, const std::vector<cxd>& vals, Key key,
                 Sub sub) {
  size_t s = 0;
  while (s < idx.size()) {
    size_t e = s + 1;
    while (e < idx.size() &&
           std::abs(key(vals[idx[e]]) - key(vals[idx[e - 1]])) <= kTieTol)
      ++e;
    if (e - s > 1) sub(idx.begin() + s, idx.begin() + e);
    s = e;
  }
}

}  // namespace

std::vector<int> canonical_order(const std::vector<cxd>& vals) {
  std::vector<int> idx(vals.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return vals[a].real() > vals[b].real();
  });
  refine_runs(
      idx, vals, [](cxd z) { return z.real(); },
      [&](auto first, auto last) {
        std::stable_sort(first, last, [&](int a, int b) {
          return std::abs(vals[a].imag()) < std::abs(vals[b].imag());
        });
        std::vector<int> run(first, last);
        refine_runs(
            run, vals, [](cxd z) { return std::abs(z.imag()); },
            [&](auto f2, auto l2) {
              std::stable_sort(f2, l2, [&](int a, int b) {
                return vals[a].imag() > vals[b].imag();
              });
            });
        std::copy(run.begin(), run.end(), first);
      });
  return idx;
}

std::vector<cxd> canonical_sort(std::vector<cxd> vals) {
  auto idx = canonical_order(vals);
  std::vector<cxd> out(vals.size());
  for (size_t i = 0; i < idx.size(); ++i) out[i] = vals[idx[i]];
  return out;
}

std::vector<cxd> eigenvalues_only(const CMat& supermatrix) {
  Eigen::ComplexEigenSolver<CMat> es(supermatrix, false);
  if (es.info() != Eigen::Success)
    throw NumericsError("eigenvalue computation failed");
  std::vector<cxd> vals(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  return canonical_sort(std::move(vals));
}

Spectrum spectrum_of_matrix(const CMat& supermatrix, const HilbertSpace& space) {
  const Eigen::Index n = supermatrix.rows();
  if (n != supermatrix.cols()) throw ModelError("supermatrix is not square");
  const auto d = Eigen::Index(std::lround(std::sqrt(double(n))));
  if (d * d != n) throw ModelError("supermatrix size is not a square");
  if (space.total_dim != d)
    throw ModelError("supermatrix does not match the space dimension");

  Eigen::ComplexEigenSolver<CMat> es(supermatrix, true);
  if (es.info() != Eigen::Success)
    throw NumericsError("right eigensystem failed");
  Eigen::ComplexEigenSolver<CMat> est(supermatrix.transpose(), true);
  if (est.info() != Eigen::Success)
    throw NumericsError("left eigensystem failed");

  std::vector<cxd> raw(es.eigenvalues().data(), es.eigenvalues().data() + n);
  auto order = canonical_order(raw);

  const double fro = supermatrix.norm();
  Spectrum spec;
  spec.space = space;
  spec.eigenvalues.resize(n);
  spec.right_modes.resize(n);
  spec.left_modes.resize(n);
  spec.biorth_condition.resize(n);
  spec.degenerate.assign(n, false);

  std::vector<CVec> rvec(n), lvec(n);
  std::vector<bool> used(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cxd lam = raw[order[i]];
    spec.eigenvalues[i] = lam;
    rvec[i] = es.eigenvectors().col(order[i]);
    double resid = (supermatrix * rvec[i] - lam * rvec[i]).norm();
    if (resid > 1e-8 * std::max(fro, 1.0))
      throw NumericsError("eigenmode residual " + std::to_string(resid) +
                          " too large");
    // transpose eigenvector at the nearest unused copy of lam
    int best = -1;
    double bestd = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (used[k]) continue;
      double dist = std::abs(est.eigenvalues()(k) - lam);
      if (best < 0 || dist < bestd) {
        best = int(k);
        bestd = dist;
      }
    }
    used[best] = true;
    lvec[i] = est.eigenvectors().col(best);
  }

  // provisional pairing of the raw unit-norm modes; refined below once the
  // cluster correction has fixed the left-mode scale
  for (Eigen::Index i = 0; i < n; ++i)
    spec.biorth_condition[i] = std::abs((lvec[i].transpose() * rvec[i])(0, 0));

  // chained degeneracy clusters in canonical order
  std::vector<std::pair<int, int>> clusters;
  {
    int s = 0;
    while (s < n) {
      int e = s + 1;
      while (e < n && std::abs(spec.eigenvalues[e] - spec.eigenvalues[e - 1]) <=
                          kTieTol)
        ++e;
      clusters.emplace_back(s, e);
      if (e - s > 1)
        for (int k = s; k < e; ++k) spec.degenerate[k] = true;
      s = e;
    }
  }

  // fix right-mode gauge: unit trace for the stationary mode, largest
  // entry real positive otherwise
  for (Eigen::Index i = 0; i < n; ++i) {
    CMat r = unvec(rvec[i]);
    if (i == 0 && std::abs(spec.eigenvalues[0]) <= kTieTol &&
        std::abs(r.trace()) > 1e-9) {
      r /= r.trace();
    } else {
      Eigen::Index bi = 0, bj = 0;
      double bm = -1.0;
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          if (std::abs(r(a, b)) > bm) {
            bm = std::abs(r(a, b));
            bi = a;
            bj = b;
          }
      if (bm > 0.0) r /= (r(bi, bj) / bm);
    }
    spec.right_modes[i] = r;
    rvec[i] = vec(r);
  }
  for (Eigen::Index i = 0; i < n; ++i)
    spec.left_modes[i] = unvec(lvec[i]).transpose();

  // scale lefts per cluster so Tr[L_i R_j] = delta_ij where resolvable
  for (auto [s, e] : clusters) {
    int m = e - s;
    CMat g(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        g(a, b) = (vec(spec.left_modes[s + a].transpose()).transpose() *
                   rvec[s + b])(0, 0);
    Eigen::JacobiSVD<CMat> svd(g);
    if (svd.singularValues()(m - 1) < 1e-10) continue;
    CMat gi = g.inverse();
    std::vector<CMat> fixed(m);
    for (int a = 0; a < m; ++a) {
      fixed[a] = CMat::Zero(d, d);
      for (int b = 0; b < m; ++b) fixed[a] += gi(a, b) * spec.left_modes[s + b];
    }
    for (int a = 0; a < m; ++a) spec.left_modes[s + a] = fixed[a];
  }

  // pairing quality of the final pairs at unit Frobenius scale; a cluster
  // whose correction was skipped (defective) keeps a near-zero value, and a
  // quasi-defective singleton shows up through its blown-up left norm
  for (Eigen::Index i = 0; i < n; ++i) {
    double denom = spec.left_modes[i].norm() * spec.right_modes[i].norm();
    cxd t = (spec.left_modes[i] * spec.right_modes[i]).trace();
    spec.biorth_condition[i] = denom > 0.0 ? std::abs(t) / denom : 0.0;
  }
  return spec;
}

Spectrum spectrum(const Superoperator& superop) {
  return spectrum_of_matrix(superop.matrix, superop.model.space);
}

namespace {

int stationary_index(const std::vector<cxd>& vals) {
  double scale = 1.0;
  for (cxd z : vals) scale = std::max(scale, std::abs(z));
  int i0 = -1, count = 0;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i]) <= 1e-9 * scale) {
      ++count;
      if (i0 < 0) i0 = int(i);
    }
  }
  if (count == 0) throw NumericsError("no stationary eigenvalue found");
  if (count > 1)
    throw NumericsError("stationary eigenvalue is not unique (" +
                        std::to_string(count) + " near zero)");
  return i0;
}

}  // namespace

DensityMatrix stationary_state(const Spectrum& spec) {
  int i0 = stationary_index(spec.eigenvalues);
  CMat r = spec.right_modes[i0];
  r = 0.5 * (r + r.adjoint()).eval();
  cxd tr = r.trace();
  if (std::abs(tr) < 1e-12)
    throw NumericsError("stationary mode is traceless");
  return DensityMatrix{spec.space, r / tr};
}

DensityMatrix stationary_state_direct(const Superoperator& superop) {
  const Eigen::Index n = superop.matrix.rows();
  const Eigen::Index d = superop.model.hamiltonian.rows();
  CMat a = superop.matrix;
  a.row(0).setZero();
  for (Eigen::Index i = 0; i < d; ++i) a(0, i * d + i) = 1.0;
  CVec b = CVec::Zero(n);
  b(0) = 1.0;
  CVec x = a.partialPivLu().solve(b);
  double resid = (superop.matrix * x).norm();
  if (!x.allFinite() ||
      resid > 1e-8 * std::max(1.0, superop.matrix.norm()) * x.norm())
    throw NumericsError("no unique stationary state (solve residual " +
                        std::to_string(resid) + ")");
  CMat rho = unvec(x);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix{superop.model.space, rho / rho.trace()};
}

double liouvillian_gap(const Spectrum& spec) {
  int i0 = stationary_index(spec.eigenvalues);
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < spec.eigenvalues.size(); ++i)
    if (int(i) != i0) worst = std::max(worst, spec.eigenvalues[i].real());
  return -worst;
}

double gap_of_matrix(const CMat& supermatrix) {
  auto vals = eigenvalues_only(supermatrix);
  int i0 = stationary_index(vals);
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vals.size(); ++i)
    if (int(i) != i0) worst = std::max(worst, vals[i].real());
  return -worst;
}

ModeDecomposition mode_decomposition(const Spectrum& spec,
                                     const DensityMatrix& rho0) {
  if (!same_space(spec.space, rho0.space))
    throw ModelError("mode_decomposition: state lives on a different space");
  for (size_t i = 0; i < spec.biorth_condition.size(); ++i) {
    if (spec.biorth_condition[i] < 1e-6)
      throw NumericsError(
          "defective eigenvalue cluster near lambda = (" +
          std::to_string(spec.eigenvalues[i].real()) + ", " +
          std::to_string(spec.eigenvalues[i].imag()) +
          "): mode expansion is ill-defined");
  }
  ModeDecomposition dec;
  dec.stationary = stationary_state(spec);
  CVec v0 = vec(rho0.matrix);
  dec.coefficients.resize(spec.eigenvalues.size() - 1);
  for (size_t i = 1; i < spec.eigenvalues.size(); ++i)
    dec.coefficients[i - 1] =
        (vec(spec.left_modes[i].transpose()).transpose() * v0)(0, 0);
  return dec;
}

void accumulate_conservation(Trajectory& tr, const CMat& rho) {
  tr.max_trace_dev =
      std::max(tr.max_trace_dev, std::abs(rho.trace() - cxd(1.0)));
  tr.max_herm_dev = std::max(
      tr.max_herm_dev, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()),
                                         Eigen::EigenvaluesOnly);
  tr.min_eigenvalue = std::min(tr.min_eigenvalue, es.eigenvalues().minCoeff());
}

Trajectory evolve_spectral(const Spectrum& spec, const ModeDecomposition& dec,
                           const std::vector<double>& times) {
  Trajectory tr;
  tr.times = times;
  tr.states.reserve(times.size());
  for (double t : times) {
    CMat rho = dec.stationary.matrix;
    for (size_t i = 1; i < spec.eigenvalues.size(); ++i)
      rho += dec.coefficients[i - 1] * std::exp(spec.eigenvalues[i] * t) *
             spec.right_modes[i];
    accumulate_conservation(tr, rho);
    tr.states.push_back(std::move(rho));
  }
  return tr;
}

SplitMode split_mode(const CMat& mode, cxd lambda) {
  SplitMode out;
  if (std::abs(lambda.imag()) > 1e-9) {
    out.real_branch = false;
    out.plus = mode + mode.adjoint();
    out.minus = cxd(0, 1) * (mode - mode.adjoint());
    return out;
  }
  out.real_branch = true;
  // gauge: largest entry real positive, then the mode must be Hermitian
  CMat r = mode;
  Eigen::Index bi = 0, bj = 0;
  double bm = -1.0;
  for (Eigen::Index a = 0; a < r.rows(); ++a)
    for (Eigen::Index b = 0; b < r.cols(); ++b)
      if (std::abs(r(a, b)) > bm) {
        bm = std::abs(r(a, b));
        bi = a;
        bj = b;
      }
  if (bm > 0.0) r /= (r(bi, bj) / bm);
  if ((r - r.adjoint()).norm() > 1e-8 * std::max(1.0, r.norm()))
    throw ModelError("split_mode: mode at a real eigenvalue is not "
                     "Hermitizable");
  r = 0.5 * (r + r.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  out.plus = CMat::Zero(r.rows(), r.cols());
  out.minus = CMat::Zero(r.rows(), r.cols());
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    double p = es.eigenvalues()(k);
    CMat proj = es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    if (p >= 0)
      out.plus += p * proj;
    else
      out.minus += (-p) * proj;
  }
  return out;
}

EPReport detect_ep(const CMat& supermatrix, double cluster_tol,
                   double rank_tol) {
  const Eigen::Index n = supermatrix.rows();
  if (n != supermatrix.cols()) throw ModelError("supermatrix is not square");
  if (cluster_tol <= 0) throw ModelError("cluster_tol must be positive");

  Eigen::ComplexEigenSolver<CMat> es(supermatrix, false);
  if (es.info() != Eigen::Success)
    throw NumericsError("eigenvalue computation failed");
  std::vector<cxd> lam(es.eigenvalues().data(), es.eigenvalues().data() + n);

  Eigen::BDCSVD<CMat> lsvd(supermatrix);
  const double norm2 = lsvd.singularValues()(0);
  const double radius = cluster_tol * std::max(norm2, 1.0);

  // union-find clustering at the radius
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(lam[i] - lam[j]) <= radius) {
        int ri = find(i), rj = find(j);
        if (ri != rj) parent[ri] = rj;
      }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<EPCluster> clusters;
  for (const auto& [root, idxs] : groups) {
    EPCluster c;
    cxd sum = 0.0;
    for (int i : idxs) sum += lam[i];
    c.center = sum / double(idxs.size());
    c.algebraic = int(idxs.size());
    clusters.push_back(std::move(c));
  }

  for (size_t i = 0; i < clusters.size(); ++i)
    for (size_t j = i + 1; j < clusters.size(); ++j)
      if (std::abs(clusters[i].center - clusters[j].center) <= 2 * radius)
        throw NumericsError(
            "ambiguous eigenvalue clustering: centers closer than twice the "
            "cluster radius");

  for (EPCluster& c : clusters) {
    const int m = c.algebraic;
    if (m == 1) {
      c.geometric = 1;
      c.blocks = {1};
      continue;
    }
    CMat shifted = supermatrix - c.center * CMat::Identity(n, n);
    CMat power = CMat::Identity(n, n);
    std::vector<int> nullity{0};
    for (int k = 1; k <= m; ++k) {
      power = power * shifted;
      Eigen::BDCSVD<CMat> svd(power);
      double thr = rank_tol * std::pow(norm2, k);
      int nk = 0;
      for (Eigen::Index s = 0; s < svd.singularValues().size(); ++s)
        if (svd.singularValues()(s) <= thr) ++nk;
      nk = std::min(std::max(nk, nullity.back()), m);
      nullity.push_back(nk);
      if (nk >= m) break;
    }
    std::vector<int> inc;
    for (size_t k = 1; k < nullity.size(); ++k)
      inc.push_back(nullity[k] - nullity[k - 1]);
    for (size_t k = 1; k < inc.size(); ++k) inc[k] = std::min(inc[k], inc[k - 1]);
    int total = std::accumulate(inc.begin(), inc.end(), 0);
    while (total < m && !inc.empty()) {
      int add = std::min(inc.back(), m - total);
      inc.push_back(add);
      total += add;
    }
    c.geometric = nullity.size() > 1 ? nullity[1] : m;
    for (size_t k = 0; k < inc.size(); ++k) {
      int next = (k + 1 < inc.size()) ? inc[k + 1] : 0;
      for (int r = 0; r < inc[k] - next; ++r) c.blocks.push_back(int(k) + 1);
    }
    std::sort(c.blocks.rbegin(), c.blocks.rend());
  }

  std::vector<cxd> centers;
  for (const EPCluster& c : clusters) centers.push_back(c.center);
  auto order = canonical_order(centers);
  EPReport report;
  for (int i : order) report.clusters.push_back(std::move(clusters[i]));
  return report;
}

LindbladModel three_level_model(double gamma, double omega) {
  if (gamma < 0) throw ModelError("three_level_model: gamma < 0");
  if (omega <= 0) throw ModelError("three_level_model: omega <= 0");
  LindbladModel m;
  m.space = make_space({{"atom", 3}});
  m.hamiltonian = CMat::Zero(3, 3);
  m.hamiltonian(1, 2) = 0.5 * omega;
  m.hamiltonian(2, 1) = 0.5 * omega;
  CMat j = CMat::Zero(3, 3);
  j(0, 2) = std::sqrt(gamma);
  m.jumps.push_back(j);
  return m;
}

namespace {

CMat mat3(std::initializer_list<cxd> vals) {
  CMat m(3, 3);
  int k = 0;
  for (cxd v : vals) m(k / 3, k % 3) = v, ++k;
  return m;
}

}  // namespace

ThreeLevelReference three_level_reference(double gamma, double omega) {
  if (omega <= 0) throw ModelError("three_level_reference: omega <= 0");
  const double g = gamma;
  const cxd kappa = std::sqrt(cxd(g * g - 4 * omega * omega));
  const cxd i(0, 1);
  const cxd q = (g + kappa) / (2 * omega);
  const cxd p = (g - kappa) / (2 * omega);

  ThreeLevelReference ref;
  ref.kappa = kappa;
  ref.gap = (g - kappa.real()) / 4;
  ref.eigenvalues = {0.0,
                     -(g - kappa) / 4.0,
                     -(g - kappa) / 4.0,
                     -(g + kappa) / 4.0,
                     -(g + kappa) / 4.0,
                     -(g - kappa) / 2.0,
                     -(g + kappa) / 2.0,
                     cxd(-g / 2),
                     cxd(-g / 2)};

  ref.right_modes.resize(9);
  ref.left_modes.resize(9);
  ref.right_modes[0] = mat3({1, 0, 0, 0, 0, 0, 0, 0, 0});
  ref.left_modes[0] = CMat::Identity(3, 3);
  ref.right_modes[1] = mat3({0, -i * q, 1, i * q, 0, 0, 1, 0, 0});
  ref.left_modes[1] = mat3({0, i * q, 1, -i * q, 0, 0, 1, 0, 0});
  ref.right_modes[2] = mat3({0, q, i, q, 0, 0, -i, 0, 0});
  ref.left_modes[2] = mat3({0, q, -i, q, 0, 0, i, 0, 0});
  ref.right_modes[3] = mat3({0, -i * p, 1, i * p, 0, 0, 1, 0, 0});
  ref.left_modes[3] = mat3({0, i * p, 1, -i * p, 0, 0, 1, 0, 0});
  ref.right_modes[4] = mat3({0, p, i, p, 0, 0, -i, 0, 0});
  ref.left_modes[4] = mat3({0, p, -i, p, 0, 0, i, 0, 0});
  if (std::abs(g - kappa) > 0) {
    const cxd c5 = 2.0 * g / (g - kappa);
    ref.right_modes[5] =
        mat3({-c5, 0, 0, 0, c5 - 1.0, i * q, 0, -i * q, 1});
    ref.left_modes[5] = mat3({0, 0, 0, 0, c5 - 1.0, -i * q, 0, i * q, 1});
  } else {
    ref.right_modes[5] = mat3({0, 0, 0, 0, -1, i * q, 0, -i * q, 1});
    ref.left_modes[5] = mat3({0, 0, 0, 0, -1, -i * q, 0, i * q, 1});
  }
  const cxd c6 = 2.0 * g / (g + kappa);
  ref.right_modes[6] = mat3({-c6, 0, 0, 0, c6 - 1.0, i * p, 0, -i * p, 1});
  ref.left_modes[6] = mat3({0, 0, 0, 0, c6 - 1.0, -i * p, 0, i * p, 1});
  const cxd w = i * g / (2 * omega);
  ref.right_modes[7] = mat3({-2, 0, 0, 0, 1, w, 0, -w, 1});
  ref.left_modes[7] = mat3({0, 0, 0, 0, 1, -w, 0, w, 1});
  ref.right_modes[8] = mat3({0, 0, 0, 0, 0, 1, 0, 1, 0});
  ref.left_modes[8] = mat3({0, 0, 0, 0, 0, 1, 0, 1, 0});

  ref.right_normalized.resize(9);
  ref.left_normalized.resize(9);
  ref.normalizable.assign(9, false);
  for (int k = 0; k < 9; ++k) {
    cxd t = (ref.left_modes[k] * ref.right_modes[k]).trace();
    double scale =
        std::max(1.0, ref.left_modes[k].norm() * ref.right_modes[k].norm());
    ref.right_normalized[k] = ref.right_modes[k];
    if (std::abs(t) >= 1e-10 * scale) {
      ref.normalizable[k] = true;
      ref.left_normalized[k] = ref.left_modes[k] / t;
    } else {
      ref.left_normalized[k] = ref.left_modes[k];
    }
  }
  return ref;
}

}  // namespace lepsim
