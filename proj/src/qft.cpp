#include "shorsim/qft.hpp"

#include <numbers>

#include "shorsim/errors.hpp"

namespace shorsim {

namespace {

void check(const QftParams& p) {
  if (p.m < 1 || p.m > 62) throw DomainError("QFT size out of range");
  if (p.angle_cutoff_k && *p.angle_cutoff_k < 1) throw DomainError("angle cutoff must be >= 1");
}

}  // namespace

Circuit build_qft(const QftParams& p) {
  check(p);
  Circuit c(p.m, Convention::Qiskit);
  for (unsigned j = p.m; j-- > 0;) {
    c.add(Gate::h(j));
    for (unsigned k = j; k-- > 0;) {
      const unsigned n = j - k + 1;
      if (p.angle_cutoff_k && n > *p.angle_cutoff_k) continue;
      c.add(Gate::cphase(2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << n), k, j));
    }
  }
  if (p.emit_swaps)
    for (unsigned j = 0; j < p.m / 2; ++j) c.add(Gate::swap(j, p.m - 1 - j));
  return convert_convention(c, p.convention);
}

Circuit build_iqft(const QftParams& p) { return inverse(build_qft(p)); }

std::vector<PartialPhase> partial_phases(BasisIndex ell, unsigned m) {
  if (m < 1 || m > 62) throw DomainError("register size out of range");
  if (ell >= (std::uint64_t{1} << m)) throw DomainError("index out of range");
  std::vector<PartialPhase> out;
  for (unsigned r = 1; r <= m; ++r) {
    const std::uint64_t den = std::uint64_t{1} << r;
    out.push_back({r, Rational::make(ell % den, den)});
  }
  return out;
}

}  // namespace shorsim
