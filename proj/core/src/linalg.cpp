#include "mqc/linalg.hpp"

#include <stdexcept>

#include "mqc/errors.hpp"

namespace mqc {

SymmetricEigensystem symmetric_eigensystem(const RMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("symmetric_eigensystem: matrix not square");
  if (h.rows() == 0) return {RVector(0), RMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix spectral_propagator(const SymmetricEigensystem& eig, double t) {
  const RMatrix& u = eig.vectors;
  const RVector c = (eig.values * t).array().cos().matrix();
  const RVector s = (eig.values * t).array().sin().matrix();
  // Two real products instead of one complex one: V = U cos U^T - i U sin U^T.
  const RMatrix re = (u * c.asDiagonal()) * u.transpose();
  const RMatrix im = (u * s.asDiagonal()) * u.transpose();
  CMatrix v(u.rows(), u.cols());
  v.real() = re;
  v.imag() = -im;
  return v;
}

CMatrix hermitian_exp_i(const CMatrix& h, double scale) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CVector phases =
      (es.eigenvalues() * scale).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_error(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

}  // namespace mqc
