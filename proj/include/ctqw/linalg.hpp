#pragma once

// Dense linear-algebra helpers shared by the walk and spin modules.
// Everything here is small (dimension <= a few dozen), so propagators are
// computed by exact self-adjoint eigendecomposition rather than series
// methods: the orthonormal eigenbasis gives unitarity (and probability
// conservation for the stochastic case) by construction.

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace ctqw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex im{0.0, 1.0};

template <typename A, typename B>
auto kron(const A& a, const B& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// max-entry norm of U U† − I
inline double unitarity_defect(const ComplexMatrix& u) {
  ComplexMatrix g = u * u.adjoint();
  g -= ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs(g);
}

// complex square matrix validated to satisfy U U† = I within 1e-10 (max entry)
class UnitaryMatrix {
 public:
  static constexpr double kDefectTolerance = 1e-10;

  explicit UnitaryMatrix(ComplexMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols()) throw std::invalid_argument("unitary matrix must be square");
    if (unitarity_defect(u_) > kDefectTolerance)
      throw std::invalid_argument("matrix is not unitary within tolerance");
  }

  Eigen::Index dim() const { return u_.rows(); }
  const ComplexMatrix& matrix() const { return u_; }

 private:
  ComplexMatrix u_;
};

// global-phase-invariant fidelity |tr(U† V)| / dim between equal-size unitaries
inline double phase_invariant_fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("fidelity requires equal dimensions");
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

namespace detail {

inline Eigen::SelfAdjointEigenSolver<Matrix> symmetric_eigensolver(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigendecomposition failed");
  return solver;
}

}  // namespace detail

// exp(-H t) v for real symmetric H
inline Vector markov_propagate(const Matrix& h, const Vector& v, double t) {
  const auto eig = detail::symmetric_eigensolver(h);
  Vector phases = (-eig.eigenvalues() * t).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * (eig.eigenvectors().transpose() * v);
}

// exp(-i H t) v for real symmetric H
inline ComplexVector schrodinger_propagate(const Matrix& h, const ComplexVector& v, double t) {
  const auto eig = detail::symmetric_eigensolver(h);
  ComplexVector phases(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases[k] = std::polar(1.0, -eig.eigenvalues()[k] * t);
  return eig.eigenvectors().cast<Complex>() *
         (phases.asDiagonal() * (eig.eigenvectors().transpose().cast<Complex>() * v));
}

// dense exp(-i H t) for real symmetric H
inline ComplexMatrix schrodinger_propagator(const Matrix& h, double t) {
  const auto eig = detail::symmetric_eigensolver(h);
  ComplexVector phases(eig.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases[k] = std::polar(1.0, -eig.eigenvalues()[k] * t);
  ComplexMatrix q = eig.eigenvectors().cast<Complex>();
  return q * phases.asDiagonal() * q.adjoint();
}

}  // namespace ctqw
