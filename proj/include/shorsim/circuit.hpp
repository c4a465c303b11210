#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shorsim/permutation.hpp"
#include "shorsim/statevec.hpp"

namespace shorsim {

/// Qiskit: qubit 0 is the least significant bit. PhysMath: qubit 0 is the most significant.
enum class Convention { Qiskit, PhysMath };

enum class GateKind { H, X, Phase, ControlledPhase, Swap, MultiControlledX, ControlledWorkPermutation };

/// Operand layout by kind:
///   H, X, Phase                 [target]
///   ControlledPhase             [control, target]
///   Swap                        [a, b]
///   MultiControlledX            [controls..., target]
///   ControlledWorkPermutation   [control, work bit 0, work bit 1, ...]
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<Qubit> qubits;
  double theta = 0.0;
  std::vector<bool> polarities;
  std::shared_ptr<const Permutation> perm;
  std::string label;

  static Gate h(Qubit q);
  static Gate x(Qubit q);
  static Gate phase(double theta, Qubit q);
  static Gate cphase(double theta, Qubit control, Qubit target);
  static Gate swap(Qubit a, Qubit b);
  static Gate mcx(std::vector<Qubit> controls, std::vector<bool> polarities, Qubit target);
  static Gate mcx(std::vector<Qubit> controls, Qubit target);
  static Gate controlled_permutation(Qubit control, std::vector<Qubit> work, Permutation perm,
                                     std::string label);

  std::vector<Qubit> controls() const;  // MCX only
  Qubit target() const { return qubits.back(); }

  bool operator==(const Gate& o) const;
};

class Circuit {
 public:
  explicit Circuit(unsigned num_qubits, Convention convention = Convention::Qiskit);

  unsigned num_qubits() const { return num_qubits_; }
  Convention convention() const { return convention_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Validates operands; throws DomainError on bad indices or non-finite angles.
  Circuit& add(Gate g);
  /// Appends `sub` with its qubit i placed on wires[i].
  Circuit& append(const Circuit& sub, const std::vector<Qubit>& wires);

  bool operator==(const Circuit& o) const;

 private:
  unsigned num_qubits_;
  Convention convention_;
  std::vector<Gate> gates_;
};

Circuit compose(const Circuit& a, const Circuit& b);
Circuit convert_convention(const Circuit& c, Convention target);
/// Reversed gate order with conjugated gates.
Circuit inverse(const Circuit& c);

/// X and positive-control MCX gates only. Gates act on work_qubits[j] = bit j.
std::vector<Gate> lower_permutation(const Permutation& perm, const std::vector<Qubit>& work_qubits);
/// Replaces every ControlledWorkPermutation by its lowered form with the extra control.
Circuit lower_circuit(const Circuit& c);

/// Applies gates to raw qubit indices.
void simulate(const Circuit& c, StateVector& state);
StateVector simulate(const Circuit& c);
/// Dense matrix U[row][col] over raw indices; small circuits only.
std::vector<std::vector<Amplitude>> unitary(const Circuit& c);
/// Reverses the bits of `index` within a `bits`-wide field.
BasisIndex reverse_bits(BasisIndex index, unsigned bits);

/// OpenQASM 2.0 text in Qiskit qubit order.
std::string export_circuit_text(const Circuit& c);

}  // namespace shorsim
