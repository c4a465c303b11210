#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "shorsim/circuit.hpp"
#include "shorsim/errors.hpp"

namespace shorsim {

namespace {

std::string angle_text(double theta) {
  if (theta == 0.0) return "0";
  const double x = theta / std::numbers::pi;
  for (int k = 0; k <= 40; ++k) {
    const double den = std::ldexp(1.0, k);
    const double num = x * den;
    if (num == std::round(num) && std::abs(num) < 1e9) {
      const long long n = std::llabs(std::llround(num));
      std::string s = x < 0 ? "-" : "";
      s += n == 1 ? "pi" : std::to_string(n) + "*pi";
      if (k > 0) s += "/" + std::to_string(std::llround(den));
      return s;
    }
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

struct Emitter {
  std::ostringstream os;

  void q1(const char* name, Qubit q) { os << name << " q[" << q << "];\n"; }
  void p(double t, Qubit q) { os << "p(" << angle_text(t) << ") q[" << q << "];\n"; }
  void cx(Qubit c, Qubit t) { os << "cx q[" << c << "],q[" << t << "];\n"; }

  // exp(i*lambda) on the all-ones pattern of qs, via parity phases.
  void mcphase(double lambda, const std::vector<Qubit>& qs) {
    const std::size_t k = qs.size();
    const double unit = lambda / std::ldexp(1.0, static_cast<int>(k) - 1);
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t count = std::uint64_t{1} << i;
      for (std::uint64_t g = 0; g < count; ++g) {
        if (g > 0) cx(qs[std::countr_zero(g)], qs[i]);
        const std::uint64_t subset = g ^ (g >> 1);
        p(std::popcount(subset) % 2 == 0 ? unit : -unit, qs[i]);
      }
      if (i > 0) cx(qs[i - 1], qs[i]);
    }
  }

  void mcx(const std::vector<Qubit>& ctl, Qubit t) {
    if (ctl.empty()) {
      q1("x", t);
    } else if (ctl.size() == 1) {
      cx(ctl[0], t);
    } else if (ctl.size() == 2) {
      os << "ccx q[" << ctl[0] << "],q[" << ctl[1] << "],q[" << t << "];\n";
    } else {
      std::vector<Qubit> all = ctl;
      all.push_back(t);
      q1("h", t);
      mcphase(std::numbers::pi, all);
      q1("h", t);
    }
  }
};

}  // namespace

std::string export_circuit_text(const Circuit& input) {
  const Circuit c = convert_convention(input, Convention::Qiskit);
  Emitter e;
  e.os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.num_qubits() << "];\n";
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::H:
        e.q1("h", g.qubits[0]);
        break;
      case GateKind::X:
        e.q1("x", g.qubits[0]);
        break;
      case GateKind::Phase:
        e.p(g.theta, g.qubits[0]);
        break;
      case GateKind::ControlledPhase:
        e.os << "cp(" << angle_text(g.theta) << ") q[" << g.qubits[0] << "],q[" << g.qubits[1]
             << "];\n";
        break;
      case GateKind::Swap:
        e.os << "swap q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
        break;
      case GateKind::MultiControlledX: {
        const auto ctl = g.controls();
        for (std::size_t k = 0; k < ctl.size(); ++k)
          if (!g.polarities[k]) e.q1("x", ctl[k]);
        e.mcx(ctl, g.target());
        for (std::size_t k = 0; k < ctl.size(); ++k)
          if (!g.polarities[k]) e.q1("x", ctl[k]);
        break;
      }
      case GateKind::ControlledWorkPermutation:
        throw ExportError("unlowered permutation gate '" + g.label + "'");
    }
  }
  return e.os.str();
}

}  // namespace shorsim
