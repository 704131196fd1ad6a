#pragma once

// Mixing and entanglement observables of a walk state.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "ctqw/linalg.hpp"
#include "ctqw/walk.hpp"

namespace ctqw {

// half the L1 distance between two distributions of equal length
inline double total_variation_distance(const ProbabilityDistribution& p,
                                       const ProbabilityDistribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution lengths differ");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) sum += std::abs(p[k] - q[k]);
  return 0.5 * sum;
}

namespace detail {

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline int log2_exact(Eigen::Index n) {
  int q = 0;
  while ((Eigen::Index{1} << q) < n) ++q;
  return q;
}

}  // namespace detail

// Von Neumann entropy (base-2) of the reduced state of the first
// `split_qubits` qubits of a pure state, with the 0 log 0 := 0 convention.
// The state dimension must be a power of two.
inline double entanglement_entropy(const StateVector& psi, int split_qubits = 1) {
  const Eigen::Index dim = psi.size();
  if (!detail::is_power_of_two(dim) || dim < 4)
    throw UnsupportedDimensionError("entropy needs a multi-qubit state dimension (power of two)");
  const int qubits = detail::log2_exact(dim);
  if (split_qubits < 1 || split_qubits >= qubits)
    throw std::invalid_argument("subsystem split out of range");

  const Eigen::Index rows = Eigen::Index{1} << split_qubits;          // first subsystem
  const Eigen::Index cols = Eigen::Index{1} << (qubits - split_qubits);  // traced out
  ComplexMatrix reduced = ComplexMatrix::Zero(rows, rows);
  for (Eigen::Index a = 0; a < rows; ++a)
    for (Eigen::Index b = 0; b < rows; ++b)
      for (Eigen::Index j = 0; j < cols; ++j)
        reduced(a, b) += psi[a * cols + j] * std::conj(psi[b * cols + j]);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(reduced);
  if (solver.info() != Eigen::Success) throw std::runtime_error("reduced-state eigensolve failed");
  double s = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lambda = solver.eigenvalues()[k];
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

// one time point of the 4-cycle quantum walk started at node 0
struct WalkObservables {
  double time = 0.0;
  double tvd_to_uniform = 0.0;
  std::optional<double> entanglement;  // absent when the node count is not a power of two
};

inline WalkObservables observables_at(double gamma, double t) {
  const GeneratorMatrix h = cycle_generator(4, gamma);
  const StateVector psi = quantum_evolve(h, StateVector::basis(4, 0), t);
  WalkObservables obs;
  obs.time = t;
  obs.tvd_to_uniform =
      total_variation_distance(measurement_probabilities(psi), ProbabilityDistribution::uniform(4));
  obs.entanglement = entanglement_entropy(psi, 1);
  return obs;
}

}  // namespace ctqw
