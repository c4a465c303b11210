#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "shorsim/permutation.hpp"

namespace shorsim {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;
using Qubit = unsigned;
using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

namespace gates {
Matrix2 hadamard();
Matrix2 pauli_x();
Matrix2 phase(double theta);
}  // namespace gates

// Dense register of 2^q amplitudes. Bit b of an index is raw qubit b.
class StateVector {
 public:
  /// Throws DomainError unless amps.size() is a power of two.
  explicit StateVector(std::vector<Amplitude> amps);

  static StateVector basis(unsigned num_qubits, BasisIndex index);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude operator[](BasisIndex i) const { return amps_[i]; }
  double norm_squared() const;

  void apply_single_qubit(const Matrix2& u, Qubit target);
  void apply_phase(double theta, Qubit target);
  void apply_controlled_phase(double theta, Qubit control, Qubit target);
  void apply_swap(Qubit q1, Qubit q2);
  /// Flips `target` where every control matches its polarity (true = |1>).
  void apply_multi_controlled_x(std::span<const Qubit> controls,
                                const std::vector<bool>& polarities, Qubit target);
  /// work_qubits[j] holds bit j of the work sub-index w.
  void apply_controlled_permutation(Qubit control, std::span<const Qubit> work_qubits,
                                    const Permutation& perm);
  void apply_permutation(std::span<const Qubit> work_qubits, const Permutation& perm);

  std::vector<double> probabilities() const;
  /// qubits[j] becomes bit j of the marginal index.
  std::vector<double> marginal_probabilities(std::span<const Qubit> qubits) const;

 private:
  void check_qubit(Qubit q) const;
  void permute_where(std::uint64_t mask, std::span<const Qubit> work_qubits,
                     const Permutation& perm);

  unsigned num_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

StateVector new_basis_state(unsigned num_qubits, BasisIndex index);

/// i.i.d. draws by inverse CDF on a seeded 64-bit Mersenne twister.
std::vector<BasisIndex> sample(std::span<const double> distribution, std::size_t shots,
                               std::uint64_t seed);
std::vector<BasisIndex> sample(const StateVector& state, std::size_t shots, std::uint64_t seed);

}  // namespace shorsim
