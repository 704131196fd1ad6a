#pragma once

// Two-qubit encoding of the 4-node cycle.
//
// Nodes are written in binary, big-endian: node k corresponds to the
// computational basis ket |q1 q2> where q1 is the most significant bit
// (node 2 -> |10>).  Under this encoding the cycle generator factors over
// Pauli operators as
//
//   H = 2 gamma (I @ I) - gamma (I @ sx + sx @ sx)
//
// and, because the two non-identity terms commute, the propagator splits:
//
//   exp(-i H t) = e^{-2 i gamma t} exp(i gamma t sx @ sx) exp(i gamma t I @ sx).
//
// Each factor is evaluated with the involution identity
// exp(i a G) = cos(a) I + i sin(a) G, valid whenever G^2 = I.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "ctqw/graph.hpp"
#include "ctqw/linalg.hpp"

namespace ctqw {

enum class PauliLabel { identity, x, y, z };

inline Eigen::Matrix2cd pauli_matrix(PauliLabel label) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (label) {
    case PauliLabel::identity:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case PauliLabel::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliLabel::y:
      m(0, 1) = -im;
      m(1, 0) = im;
      break;
    case PauliLabel::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

// big-endian bit string of a node index; qubit 1 is the most significant bit
inline std::string encode_node(int node, int width) {
  if (width < 1 || width >= 63) throw std::invalid_argument("width out of range");
  if (node < 0 || node >= (1LL << width)) throw std::invalid_argument("node index out of range");
  std::string bits(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b)
    if (node & (1 << (width - 1 - b))) bits[static_cast<std::size_t>(b)] = '1';
  return bits;
}

// Pauli form of the 4-cycle generator.  All entries are exact multiples of
// gamma built from integer-valued tensor factors, so the result equals
// cycle_generator(4, gamma) entry for entry, exactly.
inline GeneratorMatrix pauli_hamiltonian_cycle4(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("jump rate must be positive");
  Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d sx;
  sx << 0.0, 1.0, 1.0, 0.0;
  Matrix h = 2.0 * gamma * kron(id, id) - gamma * kron(id, sx) - gamma * kron(sx, sx);
  return GeneratorMatrix(std::move(h));
}

// e^{-2 i gamma t} exp(i gamma t sx @ sx) exp(i gamma t I @ sx),
// the factored propagator of the encoded walk (global phase included)
inline UnitaryMatrix factored_unitary_cycle4(double gamma, double t) {
  if (!(gamma > 0.0)) throw std::invalid_argument("jump rate must be positive");
  if (t < 0.0) throw std::invalid_argument("time must be non-negative");
  const double a = gamma * t;
  const Eigen::Matrix2cd id = pauli_matrix(PauliLabel::identity);
  const Eigen::Matrix2cd sx = pauli_matrix(PauliLabel::x);
  const Eigen::Matrix4cd eye = Eigen::Matrix4cd::Identity();
  const Eigen::Matrix4cd xx = kron(sx, sx);
  const Eigen::Matrix4cd ix = kron(id, sx);
  const Complex phase = std::polar(1.0, -2.0 * a);
  const Complex cos_a{std::cos(a), 0.0};
  const Complex isin_a = im * std::sin(a);
  ComplexMatrix u = phase * ((cos_a * eye + isin_a * xx) * (cos_a * eye + isin_a * ix));
  return UnitaryMatrix(std::move(u));
}

}  // namespace ctqw
