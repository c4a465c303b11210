#include "shorsim/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "shorsim/errors.hpp"

namespace shorsim {

namespace gates {
Matrix2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{{s, s}, {s, -s}}};
}
Matrix2 pauli_x() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }
Matrix2 phase(double theta) { return {{{1.0, 0.0}, {0.0, std::polar(1.0, theta)}}}; }
}  // namespace gates

namespace {

bool is_unitary(const Matrix2& u) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Amplitude s = std::conj(u[0][i]) * u[0][j] + std::conj(u[1][i]) * u[1][j];
      if (std::abs(s - Amplitude(i == j ? 1.0 : 0.0)) > 1e-12) return false;
    }
  return true;
}

}  // namespace

StateVector::StateVector(std::vector<Amplitude> amps) : amps_(std::move(amps)) {
  if (amps_.empty() || !std::has_single_bit(amps_.size()))
    throw DomainError("amplitude count must be a power of two");
  num_qubits_ = static_cast<unsigned>(std::countr_zero(amps_.size()));
}

StateVector StateVector::basis(unsigned num_qubits, BasisIndex index) {
  if (num_qubits >= 48) throw DomainError("register too large");
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (index >= dim)
    throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                      std::to_string(num_qubits) + " qubits");
  std::vector<Amplitude> a(dim, 0.0);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

StateVector new_basis_state(unsigned num_qubits, BasisIndex index) {
  return StateVector::basis(num_qubits, index);
}

double StateVector::norm_squared() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::check_qubit(Qubit q) const {
  if (q >= num_qubits_) throw DomainError("qubit " + std::to_string(q) + " out of range");
}

void StateVector::apply_single_qubit(const Matrix2& u, Qubit target) {
  check_qubit(target);
  if (!is_unitary(u)) throw ContractViolation("single-qubit gate is not unitary");
  const std::uint64_t bit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = amps_[i], a1 = amps_[i | bit];
    amps_[i] = u[0][0] * a0 + u[0][1] * a1;
    amps_[i | bit] = u[1][0] * a0 + u[1][1] * a1;
  }
}

void StateVector::apply_phase(double theta, Qubit target) {
  check_qubit(target);
  const std::uint64_t bit = std::uint64_t{1} << target;
  const Amplitude ph = std::polar(1.0, theta);
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if (i & bit) amps_[i] *= ph;
}

void StateVector::apply_controlled_phase(double theta, Qubit control, Qubit target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw DomainError("controlled phase needs distinct qubits");
  const std::uint64_t mask = (std::uint64_t{1} << control) | (std::uint64_t{1} << target);
  const Amplitude ph = std::polar(1.0, theta);
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if ((i & mask) == mask) amps_[i] *= ph;
}

void StateVector::apply_swap(Qubit q1, Qubit q2) {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw DomainError("swap needs distinct qubits");
  const std::uint64_t b1 = std::uint64_t{1} << q1, b2 = std::uint64_t{1} << q2;
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if ((i & b1) && !(i & b2)) std::swap(amps_[i], amps_[(i ^ b1) | b2]);
}

void StateVector::apply_multi_controlled_x(std::span<const Qubit> controls,
                                           const std::vector<bool>& polarities,
                                           Qubit target) {
  check_qubit(target);
  if (polarities.size() != controls.size())
    throw DomainError("one polarity per control required");
  std::uint64_t mask = 0, want = 0;
  for (std::size_t k = 0; k < controls.size(); ++k) {
    check_qubit(controls[k]);
    const std::uint64_t b = std::uint64_t{1} << controls[k];
    if (controls[k] == target || (mask & b)) throw DomainError("repeated qubit in MCX");
    mask |= b;
    if (polarities[k]) want |= b;
  }
  const std::uint64_t t = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < amps_.size(); ++i)
    if (!(i & t) && (i & mask) == want) std::swap(amps_[i], amps_[i | t]);
}

void StateVector::permute_where(std::uint64_t cmask, std::span<const Qubit> work,
                                const Permutation& perm) {
  std::uint64_t wmask = 0;
  for (auto q : work) {
    check_qubit(q);
    const std::uint64_t b = std::uint64_t{1} << q;
    if ((wmask | cmask) & b) throw DomainError("repeated qubit in permutation gate");
    wmask |= b;
  }
  if (perm.size() != (std::uint64_t{1} << work.size()))
    throw ContractViolation("permutation size does not match work register");

  // Scatter table: work sub-index -> raw bits.
  std::vector<std::uint64_t> spread(perm.size());
  for (std::uint64_t w = 0; w < perm.size(); ++w) {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < work.size(); ++j)
      if ((w >> j) & 1) r |= std::uint64_t{1} << work[j];
    spread[w] = r;
  }
  std::vector<Amplitude> out(amps_.size());
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & cmask) != cmask) {
      out[i] = amps_[i];
      continue;
    }
    std::uint64_t w = 0;
    for (std::size_t j = 0; j < work.size(); ++j) w |= ((i >> work[j]) & 1) << j;
    out[(i & ~wmask) | spread[perm(w)]] = amps_[i];
  }
  amps_ = std::move(out);
}

void StateVector::apply_controlled_permutation(Qubit control, std::span<const Qubit> work,
                                               const Permutation& perm) {
  check_qubit(control);
  permute_where(std::uint64_t{1} << control, work, perm);
}

void StateVector::apply_permutation(std::span<const Qubit> work, const Permutation& perm) {
  permute_where(0, work, perm);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

std::vector<double> StateVector::marginal_probabilities(std::span<const Qubit> qubits) const {
  if (qubits.empty()) throw DomainError("marginal needs at least one qubit");
  std::uint64_t seen = 0;
  for (auto q : qubits) {
    check_qubit(q);
    if (seen & (std::uint64_t{1} << q)) throw DomainError("repeated qubit in marginal");
    seen |= std::uint64_t{1} << q;
  }
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) k |= ((i >> qubits[j]) & 1) << j;
    p[k] += std::norm(amps_[i]);
  }
  return p;
}

std::vector<BasisIndex> sample(std::span<const double> dist, std::size_t shots,
                               std::uint64_t seed) {
  if (shots == 0) throw DomainError("shots must be at least 1");
  if (dist.empty()) throw DomainError("empty distribution");
  std::vector<double> cdf(dist.size());
  double acc = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] < 0) throw DomainError("negative probability");
    acc += dist[i];
    cdf[i] = acc;
  }
  if (!(acc > 0)) throw DomainError("distribution has zero mass");
  std::mt19937_64 rng(seed);
  std::vector<BasisIndex> out(shots);
  for (auto& o : out) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Never land on a zero-probability tail entry.
    auto idx = static_cast<BasisIndex>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    while (dist[idx] == 0 && idx > 0) --idx;
    o = idx;
  }
  return out;
}

std::vector<BasisIndex> sample(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  const auto p = state.probabilities();
  return sample(std::span<const double>(p), shots, seed);
}

}  // namespace shorsim
