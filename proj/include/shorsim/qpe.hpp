#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "shorsim/circuit.hpp"
#include "shorsim/contfrac.hpp"
#include "shorsim/modexp.hpp"
#include "shorsim/statevec.hpp"

namespace shorsim {

/// Phase in turns, 0 <= value < 1.
struct PhaseAngle {
  double value = 0.0;
  std::optional<Rational> exact;

  static PhaseAngle from_turns(double value);
  static PhaseAngle from_rational(std::uint64_t s, std::uint64_t r);
};

struct SpectrumTerm {
  std::complex<double> weight;
  PhaseAngle phase;
};

/// Raw qubit indices of each register, least significant bit first.
struct QpeLayout {
  std::vector<Qubit> control;
  std::vector<Qubit> work;
};

struct QpeCircuit {
  Circuit circuit;
  QpeLayout layout;
  /// Input state when the work register does not start in a basis state.
  std::optional<StateVector> initial_state;

  StateVector run() const;
  std::vector<double> control_distribution() const;
};

/// Control k (k = 0 least significant) drives U^(2^k); powers[k].p must equal 2^k.
/// The controlled powers are applied from the highest down.
QpeCircuit assemble_qpe(unsigned m, const StateVector& work_init, const std::vector<MESpec>& powers,
                        Convention convention = Convention::Qiskit);

std::complex<double> analytic_amplitude(const PhaseAngle& theta, BasisIndex ell, std::uint64_t M);
std::vector<double> analytic_distribution(const std::vector<SpectrumTerm>& terms, std::uint64_t M);

}  // namespace shorsim
