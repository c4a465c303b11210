#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "shorsim/circuit.hpp"
#include "shorsim/errors.hpp"
#include "shorsim/modexp.hpp"
#include "shorsim/qft.hpp"

using namespace shorsim;

namespace {

oracle::Mat to_mat(const std::vector<std::vector<Amplitude>>& u) { return u; }

Permutation random_permutation(unsigned n, std::mt19937_64& rng) {
  std::vector<std::uint64_t> img(std::size_t{1} << n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

std::vector<Qubit> range(unsigned from, unsigned count) {
  std::vector<Qubit> q(count);
  std::iota(q.begin(), q.end(), from);
  return q;
}

// Basis index reached from |in> by the gate list.
BasisIndex run_basis(unsigned n, const std::vector<Gate>& gates, BasisIndex in) {
  Circuit c(n);
  for (const auto& g : gates) c.add(g);
  auto st = new_basis_state(n, in);
  simulate(c, st);
  for (BasisIndex i = 0; i < st.dimension(); ++i)
    if (std::abs(st[i] - Amplitude(1.0)) < 1e-12) return i;
  return ~BasisIndex{0};
}

}  // namespace

TEST_CASE("compose") {
  Circuit h(1);
  h.add(Gate::h(0));
  CHECK(compose(h, Circuit(1)) == h);

  const auto hh = compose(h, h);
  CHECK(hh.size() == 2);
  const auto st = simulate(hh);
  CHECK(std::abs(st[0] - Amplitude(1.0)) < 1e-15);
  CHECK(std::abs(st[1]) < 1e-15);

  CHECK_THROWS_AS(compose(h, Circuit(2)), DomainError);
  CHECK_THROWS_AS(compose(h, Circuit(1, Convention::PhysMath)), DomainError);
}

TEST_CASE("gate validation") {
  Circuit c(3);
  CHECK_THROWS_AS(c.add(Gate::h(3)), DomainError);
  CHECK_THROWS_AS(c.add(Gate::cphase(0.1, 1, 1)), DomainError);
  CHECK_THROWS_AS(c.add(Gate::phase(std::numeric_limits<double>::infinity(), 0)), DomainError);
  CHECK_THROWS_AS(c.add(Gate::mcx({0, 1}, 1)), DomainError);
  CHECK(c.size() == 0);
}

TEST_CASE("convention conversion") {
  Circuit c(3);
  c.add(Gate::h(0));
  const auto phys = convert_convention(c, Convention::PhysMath);
  CHECK(phys.gates()[0].qubits == std::vector<Qubit>{2});
  CHECK(phys.convention() == Convention::PhysMath);
  CHECK(convert_convention(phys, Convention::Qiskit) == c);
  CHECK(convert_convention(c, Convention::Qiskit) == c);

  std::mt19937_64 rng(17);
  Circuit r(4);
  r.add(Gate::h(1)).add(Gate::cphase(0.3, 0, 3)).add(Gate::swap(1, 2)).add(Gate::mcx({0, 2}, {true, false}, 3));
  r.add(Gate::controlled_permutation(3, {0, 1}, random_permutation(2, rng), "P"));
  const auto back = convert_convention(convert_convention(r, Convention::PhysMath), Convention::Qiskit);
  CHECK(back == r);
  // Simulated action related by bit reversal.
  CHECK(oracle::max_diff(to_mat(unitary(convert_convention(r, Convention::PhysMath))),
                         oracle::conjugate_by_reversal(to_mat(unitary(r)), 4)) < 1e-14);
}

TEST_CASE("convention duality of QFT matrices") {
  for (unsigned m = 1; m <= 5; ++m) {
    const auto q1 = to_mat(unitary(build_qft({m, Convention::Qiskit})));
    const auto q2 = to_mat(unitary(build_qft({m, Convention::PhysMath})));
    CHECK(oracle::max_diff(q1, oracle::conjugate_by_reversal(q2, m)) < 1e-12);
    const auto converted = convert_convention(build_qft({m, Convention::PhysMath}), Convention::Qiskit);
    CHECK(oracle::max_diff(to_mat(unitary(converted)), q1) < 1e-12);
  }
}

TEST_CASE("lowering: small examples") {
  CHECK(lower_permutation(Permutation::identity(8), range(0, 3)).empty());

  const auto t = lower_permutation(Permutation({0, 2, 1, 3}), range(0, 2));
  CHECK(run_basis(2, t, 0) == 0);
  CHECK(run_basis(2, t, 1) == 2);
  CHECK(run_basis(2, t, 2) == 1);
  CHECK(run_basis(2, t, 3) == 3);
  for (const auto& g : t) CHECK((g.kind == GateKind::X || g.kind == GateKind::MultiControlledX));

  const auto u815 = lower_permutation(full_me_permutation(8, 15, 4), range(0, 4));
  CHECK(run_basis(4, u815, 0b0011) == 0b1001);
}

TEST_CASE("lowering agrees with the permutation on every basis state") {
  std::mt19937_64 rng(2024);
  for (unsigned n = 1; n <= 6; ++n)
    for (int trial = 0; trial < (n <= 3 ? 6 : 2); ++trial) {
      const auto p = random_permutation(n, rng);
      // work bits placed on a shuffled subset of n+1 wires
      auto wires = range(0, n + 1);
      std::shuffle(wires.begin(), wires.end(), rng);
      const std::vector<Qubit> work(wires.begin(), wires.begin() + n);
      const auto gates = lower_permutation(p, work);
      for (const auto& g : gates)
        if (g.kind == GateKind::MultiControlledX)
          for (bool pol : g.polarities) CHECK(pol);
      bool ok = true;
      for (BasisIndex i = 0; i < (BasisIndex{1} << (n + 1)); ++i) {
        BasisIndex w = 0;
        for (unsigned j = 0; j < n; ++j) w |= ((i >> work[j]) & 1) << j;
        BasisIndex expect = i;
        for (unsigned j = 0; j < n; ++j) expect = (expect & ~(BasisIndex{1} << work[j])) | (((p(w) >> j) & 1) << work[j]);
        ok = ok && run_basis(n + 1, gates, i) == expect;
      }
      CHECK(ok);
    }
}

TEST_CASE("lower_circuit keeps the control") {
  std::mt19937_64 rng(8);
  for (unsigned n = 1; n <= 4; ++n) {
    Circuit c(n + 1);
    c.add(Gate::h(0));
    c.add(Gate::controlled_permutation(0, range(1, n), random_permutation(n, rng), "U"));
    const auto low = lower_circuit(c);
    for (const auto& g : low.gates()) CHECK(g.kind != GateKind::ControlledWorkPermutation);
    CHECK(oracle::max_diff(to_mat(unitary(low)), to_mat(unitary(c))) < 1e-12);
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(4);
  Circuit c(3);
  c.add(Gate::h(0)).add(Gate::cphase(0.7, 0, 2)).add(Gate::phase(-0.2, 1)).add(Gate::swap(0, 2));
  c.add(Gate::controlled_permutation(0, {1, 2}, random_permutation(2, rng), "V"));
  const auto inv = inverse(c);
  CHECK(inv.gates().front().label == "V^-1");
  CHECK(oracle::max_diff(to_mat(unitary(compose(c, inv))), oracle::identity(8)) < 1e-12);
}

TEST_CASE("export: header and simple gates") {
  const std::string header = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n";
  CHECK(export_circuit_text(Circuit(1)) == header);
  Circuit h(1);
  h.add(Gate::h(0));
  CHECK(export_circuit_text(h) == header + "h q[0];\n");

  Circuit p(2);
  p.add(Gate::cphase(std::numbers::pi / 4, 0, 1)).add(Gate::phase(-3 * std::numbers::pi / 8, 1));
  const auto text = export_circuit_text(p);
  CHECK(text.find("cp(pi/4) q[0],q[1];") != std::string::npos);
  CHECK(text.find("p(-3*pi/8) q[1];") != std::string::npos);
}

TEST_CASE("export: QFT re-imported reproduces the DFT") {
  for (unsigned m = 1; m <= 4; ++m) {
    const auto q = oracle::run_qasm(export_circuit_text(build_qft({m})));
    CHECK(q.n == m);
    CHECK(oracle::max_diff(q.u, oracle::dft(m)) < 1e-12);
  }
  // PhysMath circuits are written in Qiskit order.
  const auto q = oracle::run_qasm(export_circuit_text(build_qft({3, Convention::PhysMath})));
  CHECK(oracle::max_diff(q.u, oracle::dft(3)) < 1e-12);
}

TEST_CASE("export: multi-controlled X decomposition") {
  for (unsigned k = 1; k <= 4; ++k)
    for (unsigned pattern = 0; pattern < (1u << k); pattern += (k > 2 ? 3 : 1)) {
      Circuit c(k + 1);
      std::vector<Qubit> ctl;
      std::vector<bool> pol;
      for (unsigned j = 0; j < k; ++j) {
        ctl.push_back((j + 1) % (k + 1));
        pol.push_back((pattern >> j) & 1);
      }
      c.add(Gate::mcx(ctl, pol, 0));
      const auto q = oracle::run_qasm(export_circuit_text(c));
      CHECK(oracle::max_diff(q.u, to_mat(unitary(c))) < 1e-10);
      for (const auto& op : q.ops) CHECK((op == "h" || op == "x" || op == "p" || op == "cx" || op == "ccx"));
    }
}

TEST_CASE("export: lowered modular exponentiation") {
  Circuit c(5);
  c.add(Gate::h(0));
  c.add(Gate::controlled_permutation(0, range(1, 4), full_me_permutation(7, 15, 4), "7^1 mod 15"));
  CHECK_THROWS_WITH_AS(export_circuit_text(c), doctest::Contains("7^1 mod 15"), ExportError);
  const auto low = lower_circuit(c);
  const auto q = oracle::run_qasm(export_circuit_text(low));
  CHECK(oracle::max_diff(q.u, to_mat(unitary(c))) < 1e-9);
}

TEST_CASE("export is deterministic") {
  const auto a = export_circuit_text(lower_circuit(build_qft({5})));
  const auto b = export_circuit_text(lower_circuit(build_qft({5})));
  CHECK(a == b);
}
