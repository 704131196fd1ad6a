#pragma once

// Independent numerical routes used only to cross-check the main
// implementation: a fixed-step RK4 integrator for the classical master
// equation and a scaling-and-squaring Taylor exponential.  Neither goes
// through the eigendecomposition path the library itself uses.

#include <cmath>
#include <stdexcept>

#include "ctqw/linalg.hpp"

namespace ctqw::oracle {

// integrate dp/dt = -H p from 0 to t_final with classic RK4, step <= max_step
inline Vector rk4_master_equation(const Matrix& h, Vector p, double t_final, double max_step) {
  if (t_final < 0.0 || !(max_step > 0.0)) throw std::invalid_argument("bad integration bounds");
  if (t_final == 0.0) return p;
  const long steps = static_cast<long>(std::ceil(t_final / max_step));
  const double dt = t_final / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const Vector k1 = -(h * p);
    const Vector k2 = -(h * (p + 0.5 * dt * k1));
    const Vector k3 = -(h * (p + 0.5 * dt * k2));
    const Vector k4 = -(h * (p + dt * k3));
    p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return p;
}

// exp(A) by scaling and squaring with a Taylor series on the scaled matrix
inline ComplexMatrix expm_series(ComplexMatrix a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("matrix must be square");
  double norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) norm = std::max(norm, a.row(i).cwiseAbs().sum());
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  a /= std::pow(2.0, squarings);
  ComplexMatrix sum = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 32; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// exp(-i H t) via the series route
inline ComplexMatrix schrodinger_propagator_series(const Matrix& h, double t) {
  return expm_series((-im * t) * h.cast<Complex>());
}

}  // namespace ctqw::oracle
