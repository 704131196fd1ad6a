#pragma once

// Classical and quantum continuous-time walks.
//
// The classical walk obeys the master equation dP/dt = -H P, solved exactly
// as P(t) = exp(-H t) P(0).  The quantum walk treats the same generator as a
// Hamiltonian: |psi(t)> = exp(-i H t) |psi(0)>.  Both propagators go through
// the symmetric eigendecomposition of H (see linalg.hpp).
//
// Distributions and states are validated on construction, not on every
// operation, to keep the inner loops branch-free.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "ctqw/graph.hpp"
#include "ctqw/linalg.hpp"

namespace ctqw {

// probability vector: entries >= 0 (tiny negative floating-point noise down
// to -1e-12 is clamped to zero), sum within 1e-9 of one
class ProbabilityDistribution {
 public:
  static constexpr double kClampThreshold = 1e-12;
  static constexpr double kSumTolerance = 1e-9;

  explicit ProbabilityDistribution(Vector probs) : p_(std::move(probs)) {
    if (p_.size() == 0) throw std::invalid_argument("distribution must be non-empty");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < p_.size(); ++k) {
      if (p_[k] < -kClampThreshold)
        throw std::invalid_argument("distribution entry is negative beyond clamping threshold");
      if (p_[k] < 0.0) p_[k] = 0.0;
      sum += p_[k];
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw std::invalid_argument("distribution entries must sum to one");
  }

  static ProbabilityDistribution point_mass(Eigen::Index n, Eigen::Index node) {
    if (node < 0 || node >= n) throw std::invalid_argument("node index out of range");
    Vector p = Vector::Zero(n);
    p[node] = 1.0;
    return ProbabilityDistribution(std::move(p));
  }

  static ProbabilityDistribution uniform(Eigen::Index n) {
    return ProbabilityDistribution(Vector::Constant(n, 1.0 / static_cast<double>(n)));
  }

  Eigen::Index size() const { return p_.size(); }
  double operator[](Eigen::Index k) const { return p_[k]; }
  const Vector& values() const { return p_; }

 private:
  Vector p_;
};

// complex amplitude vector with unit norm (within 1e-10)
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-10;

  explicit StateVector(ComplexVector amps) : a_(std::move(amps)) {
    if (a_.size() == 0) throw std::invalid_argument("state must be non-empty");
    if (std::abs(a_.squaredNorm() - 1.0) > kNormTolerance)
      throw std::invalid_argument("state vector must be normalized");
  }

  static StateVector basis(Eigen::Index n, Eigen::Index node) {
    if (node < 0 || node >= n) throw std::invalid_argument("node index out of range");
    ComplexVector a = ComplexVector::Zero(n);
    a[node] = 1.0;
    return StateVector(std::move(a));
  }

  Eigen::Index size() const { return a_.size(); }
  Complex operator[](Eigen::Index k) const { return a_[k]; }
  const ComplexVector& amplitudes() const { return a_; }

 private:
  ComplexVector a_;
};

inline ProbabilityDistribution classical_evolve(const GeneratorMatrix& h,
                                                const ProbabilityDistribution& p0, double t) {
  if (t < 0.0) throw std::invalid_argument("evolution time must be non-negative");
  if (p0.size() != h.dim()) throw std::invalid_argument("dimension mismatch");
  return ProbabilityDistribution(markov_propagate(h.matrix(), p0.values(), t));
}

inline StateVector quantum_evolve(const GeneratorMatrix& h, const StateVector& psi0, double t) {
  if (t < 0.0) throw std::invalid_argument("evolution time must be non-negative");
  if (psi0.size() != h.dim()) throw std::invalid_argument("dimension mismatch");
  return StateVector(schrodinger_propagate(h.matrix(), psi0.amplitudes(), t));
}

// classical 4-cycle walk from node 0:
//   P0 = 1/4 + e^{-2 gamma t}/2 + e^{-4 gamma t}/4
//   P1 = P3 = 1/4 - e^{-4 gamma t}/4
//   P2 = 1/4 - e^{-2 gamma t}/2 + e^{-4 gamma t}/4
inline ProbabilityDistribution classical_closed_form_cycle4(double gamma, double t) {
  if (!(gamma > 0.0)) throw std::invalid_argument("jump rate must be positive");
  if (t < 0.0) throw std::invalid_argument("time must be non-negative");
  const double e2 = std::exp(-2.0 * gamma * t);
  const double e4 = std::exp(-4.0 * gamma * t);
  Vector p(4);
  p[0] = 0.25 + 0.5 * e2 + 0.25 * e4;
  p[1] = 0.25 - 0.25 * e4;
  p[2] = 0.25 - 0.5 * e2 + 0.25 * e4;
  p[3] = 0.25 - 0.25 * e4;
  return ProbabilityDistribution(std::move(p));
}

// quantum 4-cycle walk from node 0, global phase included:
//   e^{-2i gamma t} [ cos^2(gamma t)|0> - sin^2(gamma t)|2>
//                     + (i/2) sin(2 gamma t)(|1> + |3>) ]
inline StateVector quantum_closed_form_cycle4(double gamma, double t) {
  if (!(gamma > 0.0)) throw std::invalid_argument("jump rate must be positive");
  if (t < 0.0) throw std::invalid_argument("time must be non-negative");
  const double a = gamma * t;
  const Complex phase = std::polar(1.0, -2.0 * a);
  const double c = std::cos(a);
  const double s = std::sin(a);
  ComplexVector amps(4);
  amps[0] = phase * (c * c);
  amps[1] = phase * im * (0.5 * std::sin(2.0 * a));
  amps[2] = -phase * (s * s);
  amps[3] = amps[1];
  return StateVector(std::move(amps));
}

// Born rule: entry k is |<k|psi>|^2
inline ProbabilityDistribution measurement_probabilities(const StateVector& psi) {
  Vector p(psi.size());
  for (Eigen::Index k = 0; k < psi.size(); ++k) p[k] = std::norm(psi[k]);
  return ProbabilityDistribution(std::move(p));
}

}  // namespace ctqw
