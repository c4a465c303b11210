#include "shorsim/qpe.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "shorsim/errors.hpp"
#include "shorsim/qft.hpp"

namespace shorsim {

PhaseAngle PhaseAngle::from_turns(double value) {
  if (!(value >= 0.0 && value < 1.0)) throw DomainError("phase must lie in [0, 1)");
  return {value, std::nullopt};
}

PhaseAngle PhaseAngle::from_rational(std::uint64_t s, std::uint64_t r) {
  const Rational q = Rational::make(s, r);
  if (q.num >= q.den) throw DomainError("phase must lie in [0, 1)");
  return {static_cast<double>(q.num) / static_cast<double>(q.den), q};
}

QpeCircuit assemble_qpe(unsigned m, const StateVector& work_init, const std::vector<MESpec>& powers,
                        Convention convention) {
  if (m < 1) throw DomainError("control register must have at least one qubit");
  if (powers.size() != m)
    throw DomainError("expected " + std::to_string(m) + " ME powers, got " +
                      std::to_string(powers.size()));
  for (unsigned k = 0; k < m; ++k)
    if (powers[k].p != (std::uint64_t{1} << k))
      throw DomainError("power " + std::to_string(k) + " must be 2^" + std::to_string(k));

  const unsigned n = work_init.num_qubits();
  Circuit c(m + n, Convention::Qiskit);
  QpeLayout layout;
  for (unsigned k = 0; k < m; ++k) layout.control.push_back(k);
  for (unsigned j = 0; j < n; ++j) layout.work.push_back(m + j);

  std::optional<StateVector> init;
  std::optional<BasisIndex> basis;
  for (BasisIndex w = 0; w < work_init.dimension(); ++w)
    if (std::abs(work_init[w] - 1.0) < 1e-12) basis = w;
  if (basis) {
    for (unsigned j = 0; j < n; ++j)
      if ((*basis >> j) & 1) c.add(Gate::x(m + j));
  } else {
    std::vector<Amplitude> amps(std::size_t{1} << (m + n), 0.0);
    for (BasisIndex w = 0; w < work_init.dimension(); ++w) amps[w << m] = work_init[w];
    init = StateVector(std::move(amps));
  }

  for (unsigned k = 0; k < m; ++k) c.add(Gate::h(k));
  // Highest power first: a truncated U^p then only ever sees states its cycles retain.
  for (unsigned k = m; k-- > 0;)
    c.add(Gate::controlled_permutation(k, layout.work, build_me_operator(powers[k], n),
                                       me_label(powers[k])));
  c.append(build_iqft({m, Convention::Qiskit, std::nullopt, true}), layout.control);

  if (convention == Convention::PhysMath) {
    c = convert_convention(c, convention);
    const unsigned top = m + n - 1;
    for (auto& q : layout.control) q = top - q;
    for (auto& q : layout.work) q = top - q;
    if (init) {
      std::vector<Amplitude> amps(init->dimension());
      for (BasisIndex i = 0; i < amps.size(); ++i) amps[reverse_bits(i, m + n)] = (*init)[i];
      init = StateVector(std::move(amps));
    }
  }
  return {std::move(c), std::move(layout), std::move(init)};
}

StateVector QpeCircuit::run() const {
  StateVector s = initial_state ? *initial_state : StateVector::basis(circuit.num_qubits(), 0);
  simulate(circuit, s);
  return s;
}

std::vector<double> QpeCircuit::control_distribution() const {
  return run().marginal_probabilities(layout.control);
}

std::complex<double> analytic_amplitude(const PhaseAngle& theta, BasisIndex ell, std::uint64_t M) {
  if (M == 0 || !std::has_single_bit(M)) throw DomainError("M must be a power of two");
  if (ell >= M) throw DomainError("index out of range");
  const double Md = static_cast<double>(M);
  if (theta.exact) {
    // Exact integer test on s*M/r.
    const auto& q = *theta.exact;
    const auto prod = static_cast<unsigned __int128>(q.num) * M;
    if (prod % q.den == 0) return static_cast<std::uint64_t>(prod / q.den) % M == ell ? 1.0 : 0.0;
  } else {
    const double x = Md * theta.value;
    if (std::abs(x - std::round(x)) <= 1e-12) {
      const auto k = static_cast<std::uint64_t>(std::llround(x)) % M;
      return k == ell ? 1.0 : 0.0;
    }
  }
  // delta = theta - ell/M, reduced exactly when the phase is rational.
  double delta;
  if (theta.exact) {
    const auto& q = *theta.exact;
    const __int128 num = static_cast<__int128>(q.num) * M - static_cast<__int128>(ell) * q.den;
    delta = static_cast<double>(num) / (static_cast<double>(q.den) * Md);
  } else {
    delta = theta.value - static_cast<double>(ell) / Md;
  }
  const double pi = std::numbers::pi;
  const double ratio = std::sin(pi * delta * Md) / (Md * std::sin(pi * delta));
  return std::polar(1.0, pi * delta * (Md - 1.0)) * ratio;
}

std::vector<double> analytic_distribution(const std::vector<SpectrumTerm>& terms, std::uint64_t M) {
  double w = 0;
  for (const auto& t : terms) w += std::norm(t.weight);
  if (std::abs(w - 1.0) > 1e-10) throw DomainError("spectrum weights are not normalized");
  std::vector<double> p(M, 0.0);
  for (const auto& t : terms)
    for (BasisIndex ell = 0; ell < M; ++ell)
      p[ell] += std::norm(t.weight * analytic_amplitude(t.phase, ell, M));
  return p;
}

}  // namespace shorsim
