#pragma once

// Two-spin NMR emulation: deviation density matrices, pulse-event semantics,
// pseudo-pure state preparation, the walk experiment, T2 dephasing, and
// diagonal population readout.
//
// Conventions (spin 1 = proton, spin 2 = carbon, qubit 1 = most significant
// bit of the node index):
//   * I_z = sigma_z / 2, so the thermal deviation 4 I_z^1 + I_z^2 is
//     diag(2.5, 1.5, -1.5, -2.5).
//   * RF rotations are U = exp(-i (angle/2) sigma_axis) on each targeted
//     spin; pulses and gradients are instantaneous.
//   * Free evolution uses H = (pi J / 2) sz@sz + pi off1 sz@I + pi off2 I@sz
//     (doubly rotating frame), which is diagonal, so a delay only phases the
//     off-diagonal elements.
//   * T2 noise is independent per-spin transverse dephasing: element (i, j)
//     decays at rate sum over spins of [that spin's bit differs]/T2.  It is
//     applied after the unitary part of each delay; with noise off every
//     operation is exactly unitary.

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ctqw/errors.hpp"
#include "ctqw/linalg.hpp"
#include "ctqw/observables.hpp"
#include "ctqw/pauli.hpp"
#include "ctqw/pulse.hpp"
#include "ctqw/walk.hpp"

namespace ctqw::nmr {

struct SpinSystem {
  double j_coupling_hz = 215.0;
  double offset_1_hz = 0.0;
  double offset_2_hz = 0.0;
  double t2_spin1_s = 0.4;  // proton
  double t2_spin2_s = 0.3;  // carbon
};

inline void validate(const SpinSystem& s) {
  if (!(s.j_coupling_hz > 0.0)) throw std::invalid_argument("J coupling must be positive");
  if (!(s.t2_spin1_s > 0.0) || !(s.t2_spin2_s > 0.0))
    throw std::invalid_argument("T2 times must be positive");
}

struct NoiseModel {
  bool enabled = false;
  static NoiseModel off() { return {false}; }
  static NoiseModel on() { return {true}; }
};

// traceless Hermitian 4x4 deviation from the identity part of the state
class DeviationMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit DeviationMatrix(Eigen::Matrix4cd m) : m_(std::move(m)) {
    const double scale = std::max(1.0, max_abs(ComplexMatrix(m_)));
    if (max_abs(ComplexMatrix(m_ - m_.adjoint())) > kTolerance * scale)
      throw std::invalid_argument("deviation matrix must be Hermitian");
    if (std::abs(m_.trace()) > kTolerance * scale)
      throw std::invalid_argument("deviation matrix must be traceless");
  }

  const Eigen::Matrix4cd& matrix() const { return m_; }

 private:
  Eigen::Matrix4cd m_;
};

namespace detail {

inline int bit1(int k) { return (k >> 1) & 1; }  // spin 1, msb
inline int bit2(int k) { return k & 1; }         // spin 2, lsb

inline Eigen::Matrix2cd rotation(pulse::Axis axis, double angle) {
  const PauliLabel label = axis == pulse::Axis::x   ? PauliLabel::x
                           : axis == pulse::Axis::y ? PauliLabel::y
                                                    : PauliLabel::z;
  return std::cos(angle / 2.0) * Eigen::Matrix2cd::Identity() -
         im * std::sin(angle / 2.0) * pauli_matrix(label);
}

inline Eigen::Matrix4cd rf_unitary(pulse::Targets targets, pulse::Axis axis, double angle) {
  const Eigen::Matrix2cd u = rotation(axis, angle);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return kron(pulse::targets_spin1(targets) ? u : id, pulse::targets_spin2(targets) ? u : id);
}

// diagonal of the free-evolution Hamiltonian in angular frequency units
inline Eigen::Vector4d free_hamiltonian_diagonal(const SpinSystem& s) {
  Eigen::Vector4d h;
  const double pi = std::numbers::pi;
  for (int k = 0; k < 4; ++k) {
    const double z1 = bit1(k) ? -1.0 : 1.0;
    const double z2 = bit2(k) ? -1.0 : 1.0;
    h[k] = (pi * s.j_coupling_hz / 2.0) * z1 * z2 + pi * s.offset_1_hz * z1 +
           pi * s.offset_2_hz * z2;
  }
  return h;
}

}  // namespace detail

// thermal equilibrium deviation 4 I_z^1 + I_z^2
inline DeviationMatrix thermal_state() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 2.5;
  m(1, 1) = 1.5;
  m(2, 2) = -1.5;
  m(3, 3) = -2.5;
  return DeviationMatrix(std::move(m));
}

inline DeviationMatrix apply_rf(const DeviationMatrix& rho, pulse::Targets targets,
                                pulse::Axis axis, double angle) {
  const Eigen::Matrix4cd u = detail::rf_unitary(targets, axis, angle);
  return DeviationMatrix(u * rho.matrix() * u.adjoint());
}

// the T2 channel alone: diagonal untouched, off-diagonal (i, j) scaled by
// exp(-t [bit1 differs]/T2_1 - t [bit2 differs]/T2_2)
inline DeviationMatrix dephase(const DeviationMatrix& rho, double duration,
                               const SpinSystem& system) {
  if (duration < 0.0) throw std::invalid_argument("duration must be non-negative");
  validate(system);
  Eigen::Matrix4cd m = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      double rate = 0.0;
      if (detail::bit1(i) != detail::bit1(j)) rate += 1.0 / system.t2_spin1_s;
      if (detail::bit2(i) != detail::bit2(j)) rate += 1.0 / system.t2_spin2_s;
      m(i, j) *= std::exp(-duration * rate);
    }
  }
  return DeviationMatrix(std::move(m));
}

inline DeviationMatrix apply_delay(const DeviationMatrix& rho, double duration,
                                   const SpinSystem& system, const NoiseModel& noise) {
  if (duration < 0.0) throw std::invalid_argument("duration must be non-negative");
  validate(system);
  const Eigen::Vector4d h = detail::free_hamiltonian_diagonal(system);
  Eigen::Matrix4cd m = rho.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(i, j) *= std::polar(1.0, -(h[i] - h[j]) * duration);
  DeviationMatrix evolved{std::move(m)};
  return noise.enabled ? dephase(evolved, duration, system) : evolved;
}

// pulsed field gradient: keeps the diagonal exactly, zeroes everything else
// (valid for a heteronuclear pair)
inline DeviationMatrix apply_gradient_crush(const DeviationMatrix& rho) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) m(k, k) = rho.matrix()(k, k);
  return DeviationMatrix(std::move(m));
}

// event-by-event interpreter; noise acts during delays only
inline DeviationMatrix apply_sequence(const DeviationMatrix& rho,
                                      const pulse::ConcreteSequence& seq,
                                      const SpinSystem& system, const NoiseModel& noise) {
  DeviationMatrix state = rho;
  for (const auto& event : seq.events) {
    if (const auto* rf = std::get_if<pulse::ConcreteRf>(&event))
      state = apply_rf(state, rf->targets, rf->axis, rf->angle_rad);
    else if (std::get_if<pulse::ConcreteCrush>(&event))
      state = apply_gradient_crush(state);
    else
      state = apply_delay(state, std::get<pulse::ConcreteDelay>(event).seconds, system, noise);
  }
  return state;
}

// preparation program turning the thermal state into the effective pure
// state I_z^1 + I_z^2 + 2 I_z^1 I_z^2 = diag(1.5, -0.5, -0.5, -0.5)
inline pulse::PulseSequence preparation_sequence() {
  pulse::PulseSequence seq = pulse::parse("Rx1(pi/3) - Gz - Rx1(pi/4) - tau - Ry1(-pi/4) - Gz");
  seq.name = "pseudo-pure preparation";
  return seq;
}

inline DeviationMatrix prepare_pseudo_pure(const SpinSystem& system, const NoiseModel& noise) {
  validate(system);
  pulse::Bindings bindings;
  bindings.j = system.j_coupling_hz;
  return apply_sequence(thermal_state(), pulse::evaluate(preparation_sequence(), bindings),
                        system, noise);
}

// Walk program for step index n (coupling angle n pi / 12).
//
// The shape follows the hardware recipe: a spin-2 x pulse sets the
// single-spin rotation angle, a pair of y pulses tilts the z-z coupling into
// the x basis around a spin echo of total length n/(6J), and the echo's pi
// pulse refocuses resonance offsets while leaving the coupling active.
//
// Two details make the compiled propagator reproduce the factored walk
// unitary exactly rather than merely its populations: the tilting pulses use
// opposite signs on the two spins (a same-sign pair flips the sign of the
// compiled coupling phase), and a trailing z pi pulse cancels the two-spin
// phase left behind by the echo's pi pulse.  Both residuals are invisible to
// diagonal readout, which is why the plain echo works on real hardware.
inline pulse::PulseSequence walk_sequence(int n) {
  if (n < 0 || n > 12) throw std::invalid_argument("walk step index must be in 0..12");
  using namespace pulse;
  const ExprPtr n_lit = make_number(static_cast<double>(n));
  const ExprPtr half_pi = make_div(make_pi(), make_number(2.0));
  auto echo_half = [&] {
    return Delay{make_div(n_lit, make_mul(make_number(12.0), make_param_j()))};
  };
  PulseSequence seq;
  seq.name = "walk n=" + std::to_string(n);
  seq.events = {
      RfPulse{Axis::x, Targets::spin2, make_negate(make_div(make_mul(n_lit, make_pi()), make_number(6.0)))},
      RfPulse{Axis::y, Targets::spin1, make_negate(half_pi)},
      RfPulse{Axis::y, Targets::spin2, half_pi},
      echo_half(),
      RfPulse{Axis::x, Targets::both, make_pi()},
      echo_half(),
      RfPulse{Axis::y, Targets::spin1, half_pi},
      RfPulse{Axis::y, Targets::spin2, make_negate(half_pi)},
      RfPulse{Axis::z, Targets::both, make_pi()},
  };
  return seq;
}

// noise-free propagator of a concrete sequence (application order: the first
// event acts first); gradient crushes are not unitary and are rejected
inline UnitaryMatrix sequence_unitary(const pulse::ConcreteSequence& seq,
                                      const SpinSystem& system) {
  validate(system);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  for (const auto& event : seq.events) {
    if (const auto* rf = std::get_if<pulse::ConcreteRf>(&event)) {
      u = detail::rf_unitary(rf->targets, rf->axis, rf->angle_rad) * u;
    } else if (const auto* d = std::get_if<pulse::ConcreteDelay>(&event)) {
      if (d->seconds < 0.0) throw std::invalid_argument("duration must be non-negative");
      const Eigen::Vector4d h = detail::free_hamiltonian_diagonal(system);
      Eigen::Matrix4cd phases = Eigen::Matrix4cd::Zero();
      for (int k = 0; k < 4; ++k) phases(k, k) = std::polar(1.0, -h[k] * d->seconds);
      u = phases * u;
    } else {
      throw NonUnitarySequenceError("sequence contains a gradient crush");
    }
  }
  return UnitaryMatrix(ComplexMatrix(u));
}

struct PopulationReadout {
  Eigen::Vector4d populations;   // normalized, non-negative
  Eigen::Vector4d raw_diagonal;  // deviation diagonal before the affine map
};

// invert the effective-pure embedding d_k = 2 p_k - 1/2, then renormalize
// (the experimental analogue of normalizing integrated peak areas).
//
// Dephasing during the preparation delay legitimately pushes an ideally-zero
// population a few 1e-3 negative (a noise-scale "negative peak area"), so
// the corruption threshold sits at -1e-2: far above anything the dephasing
// channel produces at sane T2, far below the -0.5-scale values seen when a
// state outside the embedding (e.g. the raw thermal state) is read.
inline PopulationReadout read_populations(const DeviationMatrix& rho) {
  constexpr double kCorruptedThreshold = -1e-2;
  double off_diag = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) off_diag = std::max(off_diag, std::abs(rho.matrix()(i, j)));
  if (off_diag > 1e-9)
    std::cerr << "warning: reading populations of a non-diagonal deviation matrix "
                 "(max off-diagonal "
              << off_diag << "); apply a gradient crush first\n";

  PopulationReadout out;
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double d = rho.matrix()(k, k).real();
    out.raw_diagonal[k] = d;
    double p = (d + 0.5) / 2.0;
    if (p < kCorruptedThreshold)
      throw CorruptedStateError("population " + std::to_string(k) + " is negative");
    if (p < 0.0) p = 0.0;
    out.populations[k] = p;
    sum += p;
  }
  if (!(sum > 0.0)) throw CorruptedStateError("populations sum to zero");
  out.populations /= sum;
  return out;
}

// full experiment for one step index: thermal state, pseudo-pure
// preparation, walk program, gradient crush, diagonal readout
inline PopulationReadout run_experiment(int n, const SpinSystem& system, const NoiseModel& noise) {
  DeviationMatrix rho = prepare_pseudo_pure(system, noise);
  pulse::Bindings bindings;
  bindings.j = system.j_coupling_hz;
  rho = apply_sequence(rho, pulse::evaluate(walk_sequence(n), bindings), system, noise);
  rho = apply_gradient_crush(rho);
  return read_populations(rho);
}

inline double experiment_tvd(const PopulationReadout& readout) {
  Vector p(4);
  for (int k = 0; k < 4; ++k) p[k] = readout.populations[k];
  return total_variation_distance(ProbabilityDistribution(std::move(p)),
                                  ProbabilityDistribution::uniform(4));
}

}  // namespace ctqw::nmr
