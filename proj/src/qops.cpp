#include "lepsim/qops.hpp"

#include <cmath>

namespace lepsim {

bool same_space(const HilbertSpace& a, const HilbertSpace& b) {
  if (a.total_dim != b.total_dim || a.factors.size() != b.factors.size())
    return false;
  for (size_t i = 0; i < a.factors.size(); ++i) {
    if (a.factors[i].label != b.factors[i].label ||
        a.factors[i].dim != b.factors[i].dim)
      return false;
  }
  return true;
}

HilbertSpace make_space(
    const std::vector<std::pair<std::string, int>>& factors) {
  if (factors.empty()) throw ModelError("make_space: no factors");
  HilbertSpace s;
  s.total_dim = 1;
  for (const auto& [label, dim] : factors) {
    if (dim < 2) throw ModelError("make_space: factor '" + label +
                                  "' has dimension " + std::to_string(dim));
    for (const auto& f : s.factors)
      if (f.label == label)
        throw ModelError("make_space: duplicate factor label '" + label + "'");
    s.factors.push_back({label, dim});
    s.total_dim *= dim;
  }
  return s;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator annihilation_operator(int cutoff) {
  if (cutoff < 1) throw ModelError("annihilation_operator: cutoff < 1");
  int d = cutoff + 1;
  CMat a = CMat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  Operator op;
  op.space = make_space({{"fock", d}});
  op.matrix = a;
  return op;
}

CMat number_matrix(int cutoff) {
  int d = cutoff + 1;
  CMat n = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = double(k);
  return n;
}

static int factor_index(const HilbertSpace& space, const std::string& factor) {
  for (size_t i = 0; i < space.factors.size(); ++i)
    if (space.factors[i].label == factor) return int(i);
  throw ModelError("no factor named '" + factor + "' in space");
}

Operator embed(const CMat& op, const HilbertSpace& space,
               const std::string& factor) {
  int idx = factor_index(space, factor);
  if (op.rows() != op.cols() || op.rows() != space.factors[idx].dim)
    throw ModelError("embed: operator shape does not match factor '" + factor +
                     "'");
  CMat out = CMat::Identity(1, 1);
  for (size_t i = 0; i < space.factors.size(); ++i) {
    if (int(i) == idx)
      out = kron(out, op);
    else
      out = kron(out, CMat::Identity(space.factors[i].dim,
                                     space.factors[i].dim));
  }
  Operator full;
  full.space = space;
  full.matrix = out;
  return full;
}

Operator transition_operator(const HilbertSpace& space, int from_state,
                             int to_state, const std::string& factor) {
  int idx = factor_index(space, factor);
  int d = space.factors[idx].dim;
  if (from_state < 0 || from_state >= d || to_state < 0 || to_state >= d)
    throw ModelError("transition_operator: state index out of range for '" +
                     factor + "'");
  CMat t = CMat::Zero(d, d);
  t(to_state, from_state) = 1.0;
  return embed(t, space, factor);
}

cxd expectation(const DensityMatrix& rho, const Operator& op) {
  if (!same_space(rho.space, op.space))
    throw ModelError("expectation: state and operator live on different spaces");
  return (rho.matrix * op.matrix).trace();
}

CMat pauli_x() {
  CMat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

CMat pauli_y() {
  CMat s(2, 2);
  s << 0, cxd(0, -1), cxd(0, 1), 0;
  return s;
}

CMat pauli_z() {
  CMat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

CMat thermal_matrix(double nbar, int cutoff) {
  if (nbar < 0) throw ModelError("thermal_matrix: nbar < 0");
  int d = cutoff + 1;
  CMat rho = CMat::Zero(d, d);
  if (nbar == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  double r = nbar / (1.0 + nbar);
  double w = 1.0, norm = 0.0;
  for (int n = 0; n < d; ++n, w *= r) {
    rho(n, n) = w;
    norm += w;
  }
  rho /= norm;
  return rho;
}

void check_density(const CMat& rho) {
  if (rho.rows() != rho.cols()) throw ModelError("state is not square");
  double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw ModelError("state is not Hermitian (deviation " +
                     std::to_string(herm) + ")");
  cxd tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-10)
    throw ModelError("state trace differs from 1 by " +
                     std::to_string(std::abs(tr - 1.0)));
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()),
                                         Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  if (lo < -1e-8)
    throw ModelError("state has eigenvalue " + std::to_string(lo));
}

}  // namespace lepsim
