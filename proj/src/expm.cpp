#include "lepsim/expm.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace lepsim {

// Pade-13 numerator coefficients.
static const double b13[14] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

CMat expm(const CMat& a) {
  if (a.rows() != a.cols()) throw ModelError("expm: matrix is not square");
  const Eigen::Index n = a.rows();
  const double theta13 = 5.371920351148152;
  double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > theta13) s = int(std::ceil(std::log2(norm / theta13)));
  CMat m = a / std::pow(2.0, s);

  CMat m2 = m * m;
  CMat m4 = m2 * m2;
  CMat m6 = m2 * m4;
  CMat id = CMat::Identity(n, n);
  CMat u = m * (m6 * (b13[13] * m6 + b13[11] * m4 + b13[9] * m2) +
                b13[7] * m6 + b13[5] * m4 + b13[3] * m2 + b13[1] * id);
  CMat v = m6 * (b13[12] * m6 + b13[10] * m4 + b13[8] * m2) + b13[6] * m6 +
           b13[4] * m4 + b13[2] * m2 + b13[0] * id;
  CMat r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

CMat logm(const CMat& a) {
  if (a.rows() != a.cols()) throw ModelError("logm: matrix is not square");
  Eigen::ComplexEigenSolver<CMat> es(a, false);
  if (es.info() != Eigen::Success)
    throw NumericsError("logm: eigenvalue computation failed");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    cxd z = es.eigenvalues()(i);
    if (z.real() <= 0.0 && std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z)))
      throw NumericsError(
          "logm: eigenvalue on the negative real axis, principal branch "
          "undefined");
  }
  return a.log();
}

}  // namespace lepsim
