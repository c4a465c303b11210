#pragma once

#include <optional>
#include <vector>

#include "shorsim/circuit.hpp"
#include "shorsim/contfrac.hpp"

namespace shorsim {

struct QftParams {
  unsigned m = 1;
  Convention convention = Convention::Qiskit;
  std::optional<unsigned> angle_cutoff_k;  // drop R_n with n > k
  bool emit_swaps = true;  // false leaves the output bit-reversed
};

struct PartialPhase {
  unsigned r = 0;
  Rational value;
};

Circuit build_qft(const QftParams& params);
Circuit build_iqft(const QftParams& params);

/// Omega_r = (ell mod 2^r) / 2^r for r = 1..m.
std::vector<PartialPhase> partial_phases(BasisIndex ell, unsigned m);

}  // namespace shorsim
