#include "shorsim/circuit.hpp"

#include <cmath>
#include <string>

#include "shorsim/errors.hpp"

namespace shorsim {

namespace {

Gate make_gate(GateKind kind, std::vector<Qubit> qubits, double theta = 0.0) {
  Gate g;
  g.kind = kind;
  g.qubits = std::move(qubits);
  g.theta = theta;
  return g;
}

}  // namespace

Gate Gate::h(Qubit q) { return make_gate(GateKind::H, {q}); }
Gate Gate::x(Qubit q) { return make_gate(GateKind::X, {q}); }
Gate Gate::phase(double theta, Qubit q) { return make_gate(GateKind::Phase, {q}, theta); }
Gate Gate::cphase(double theta, Qubit c, Qubit t) {
  return make_gate(GateKind::ControlledPhase, {c, t}, theta);
}
Gate Gate::swap(Qubit a, Qubit b) { return make_gate(GateKind::Swap, {a, b}); }

Gate Gate::mcx(std::vector<Qubit> controls, std::vector<bool> polarities, Qubit target) {
  if (controls.size() != polarities.size()) throw DomainError("one polarity per control required");
  Gate g = make_gate(GateKind::MultiControlledX, std::move(controls));
  g.qubits.push_back(target);
  g.polarities = std::move(polarities);
  return g;
}

Gate Gate::mcx(std::vector<Qubit> controls, Qubit target) {
  std::vector<bool> pol(controls.size(), true);
  return mcx(std::move(controls), std::move(pol), target);
}

Gate Gate::controlled_permutation(Qubit control, std::vector<Qubit> work, Permutation perm,
                                  std::string label) {
  if (perm.size() != (std::uint64_t{1} << work.size()))
    throw DomainError("permutation size does not match work register");
  Gate g = make_gate(GateKind::ControlledWorkPermutation, {control});
  g.qubits.insert(g.qubits.end(), work.begin(), work.end());
  g.perm = std::make_shared<const Permutation>(std::move(perm));
  g.label = std::move(label);
  return g;
}

std::vector<Qubit> Gate::controls() const {
  return std::vector<Qubit>(qubits.begin(), qubits.end() - 1);
}

bool Gate::operator==(const Gate& o) const {
  if (kind != o.kind || qubits != o.qubits || theta != o.theta || polarities != o.polarities ||
      label != o.label)
    return false;
  if (bool(perm) != bool(o.perm)) return false;
  return !perm || *perm == *o.perm;
}

Circuit::Circuit(unsigned num_qubits, Convention convention)
    : num_qubits_(num_qubits), convention_(convention) {
  if (num_qubits == 0) throw DomainError("circuit needs at least one qubit");
}

Circuit& Circuit::add(Gate g) {
  std::uint64_t seen = 0;
  for (auto q : g.qubits) {
    if (q >= num_qubits_)
      throw DomainError("operand " + std::to_string(q) + " out of range for " +
                        std::to_string(num_qubits_) + " qubits");
    if (seen & (std::uint64_t{1} << q)) throw DomainError("repeated operand in gate");
    seen |= std::uint64_t{1} << q;
  }
  if (!std::isfinite(g.theta)) throw DomainError("non-finite gate angle");
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& sub, const std::vector<Qubit>& wires) {
  if (wires.size() != sub.num_qubits()) throw DomainError("wire map size mismatch");
  for (Gate g : sub.gates()) {
    for (auto& q : g.qubits) q = wires[q];
    add(std::move(g));
  }
  return *this;
}

bool Circuit::operator==(const Circuit& o) const {
  return num_qubits_ == o.num_qubits_ && convention_ == o.convention_ && gates_ == o.gates_;
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.num_qubits() != b.num_qubits() || a.convention() != b.convention())
    throw DomainError("compose needs equal width and convention");
  Circuit c = a;
  for (const auto& g : b.gates()) c.add(g);
  return c;
}

Circuit convert_convention(const Circuit& c, Convention target) {
  if (c.convention() == target) return c;
  Circuit out(c.num_qubits(), target);
  const unsigned top = c.num_qubits() - 1;
  for (Gate g : c.gates()) {
    for (auto& q : g.qubits) q = top - q;
    out.add(std::move(g));
  }
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits(), c.convention());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::Phase || g.kind == GateKind::ControlledPhase) g.theta = -g.theta;
    if (g.kind == GateKind::ControlledWorkPermutation) {
      g.perm = std::make_shared<const Permutation>(g.perm->inverse());
      g.label += "^-1";
    }
    out.add(std::move(g));
  }
  return out;
}

namespace {

struct Lowerer {
  const std::vector<Qubit>& work;
  std::vector<Qubit> extra;
  std::vector<Gate> out;

  void plain_x(Qubit q) {
    if (!out.empty() && out.back().kind == GateKind::X && out.back().qubits[0] == q) {
      out.pop_back();
      return;
    }
    out.push_back(Gate::x(q));
  }

  // Swap basis states g and g ^ (1 << b) of the work register.
  void adjacent(std::uint64_t g, unsigned b) {
    std::vector<Qubit> ctl = extra;
    std::vector<Qubit> zeros;
    for (unsigned j = 0; j < work.size(); ++j) {
      if (j == b) continue;
      ctl.push_back(work[j]);
      if (!((g >> j) & 1)) zeros.push_back(work[j]);
    }
    for (auto q : zeros) plain_x(q);
    if (ctl.empty())
      out.push_back(Gate::x(work[b]));
    else
      out.push_back(Gate::mcx(ctl, work[b]));
    for (auto q : zeros) plain_x(q);
  }

  void transposition(std::uint64_t u, std::uint64_t v) {
    std::vector<std::pair<std::uint64_t, unsigned>> path;
    std::uint64_t g = u;
    for (unsigned b = 0; b < work.size(); ++b)
      if (((u ^ v) >> b) & 1) {
        path.emplace_back(g, b);
        g ^= std::uint64_t{1} << b;
      }
    for (std::size_t i = 0; i < path.size(); ++i) adjacent(path[i].first, path[i].second);
    for (std::size_t i = path.size() - 1; i-- > 0;) adjacent(path[i].first, path[i].second);
  }

  void run(const Permutation& perm) {
    if (perm.size() != (std::uint64_t{1} << work.size()))
      throw ContractViolation("permutation size does not match work register");
    for (const auto& c : perm.cycles())
      for (std::size_t j = c.size() - 1; j-- > 0;) transposition(c[j], c[j + 1]);
  }
};

}  // namespace

std::vector<Gate> lower_permutation(const Permutation& perm, const std::vector<Qubit>& work) {
  Lowerer l{work, {}, {}};
  l.run(perm);
  return std::move(l.out);
}

Circuit lower_circuit(const Circuit& c) {
  Circuit out(c.num_qubits(), c.convention());
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::ControlledWorkPermutation) {
      out.add(g);
      continue;
    }
    std::vector<Qubit> work(g.qubits.begin() + 1, g.qubits.end());
    Lowerer l{work, {g.qubits[0]}, {}};
    l.run(*g.perm);
    for (auto& lg : l.out) out.add(std::move(lg));
  }
  return out;
}

void simulate(const Circuit& c, StateVector& s) {
  if (s.num_qubits() != c.num_qubits()) throw DomainError("state width differs from circuit");
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::H:
        s.apply_single_qubit(gates::hadamard(), g.qubits[0]);
        break;
      case GateKind::X:
        s.apply_single_qubit(gates::pauli_x(), g.qubits[0]);
        break;
      case GateKind::Phase:
        s.apply_phase(g.theta, g.qubits[0]);
        break;
      case GateKind::ControlledPhase:
        s.apply_controlled_phase(g.theta, g.qubits[0], g.qubits[1]);
        break;
      case GateKind::Swap:
        s.apply_swap(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::MultiControlledX: {
        auto ctl = g.controls();
        s.apply_multi_controlled_x(ctl, g.polarities, g.target());
        break;
      }
      case GateKind::ControlledWorkPermutation: {
        std::vector<Qubit> work(g.qubits.begin() + 1, g.qubits.end());
        s.apply_controlled_permutation(g.qubits[0], work, *g.perm);
        break;
      }
    }
  }
}

StateVector simulate(const Circuit& c) {
  StateVector s = StateVector::basis(c.num_qubits(), 0);
  simulate(c, s);
  return s;
}

std::vector<std::vector<Amplitude>> unitary(const Circuit& c) {
  if (c.num_qubits() > 12) throw DomainError("dense unitary limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  std::vector<std::vector<Amplitude>> u(dim, std::vector<Amplitude>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis(c.num_qubits(), col);
    simulate(c, s);
    for (std::size_t row = 0; row < dim; ++row) u[row][col] = s[row];
  }
  return u;
}

BasisIndex reverse_bits(BasisIndex index, unsigned bits) {
  BasisIndex r = 0;
  for (unsigned b = 0; b < bits; ++b) r |= ((index >> b) & 1) << (bits - 1 - b);
  return r;
}

}  // namespace shorsim
