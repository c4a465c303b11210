#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shorsim {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Reduces to lowest terms; den == 0 throws DomainError.
  static Rational make(std::uint64_t num, std::uint64_t den);
  bool operator==(const Rational&) const = default;
};

struct ContinuedFraction {
  std::vector<std::uint64_t> coefficients;
  /// Folds the coefficients back into a reduced fraction.
  Rational value() const;
};

struct Convergent {
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  std::size_t index = 0;
  bool operator==(const Convergent&) const = default;
};

enum class Verdict { Factors, OddPeriod, TrivialRoot, NotPeriod };

struct PeriodCheck {
  std::uint64_t r = 0;
  Verdict verdict = Verdict::NotPeriod;
  std::uint64_t f1 = 0;
  std::uint64_t f2 = 0;
};

struct TraceRow {
  Convergent convergent;
  bool tested = false;  // s = 0 rows are listed but never tested
  PeriodCheck check;
};

struct Extraction {
  std::uint64_t ell = 0;
  unsigned m = 0;
  Rational phase;
  ContinuedFraction expansion;
  std::vector<Convergent> convergents;
  std::vector<TraceRow> rows;
  std::optional<std::uint64_t> period;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
};

ContinuedFraction expand(Rational x);
std::vector<Convergent> convergents(const ContinuedFraction& cf);

PeriodCheck check_period(std::uint64_t a, std::uint64_t N, std::uint64_t r);
/// b^2 = 1 and b != +-1 (mod N), else ContractViolation.
std::pair<std::uint64_t, std::uint64_t> factor_from_root(std::uint64_t b, std::uint64_t N);
Extraction extract_period(std::uint64_t ell, unsigned m, std::uint64_t a, std::uint64_t N);

unsigned epsilon_qubits(double epsilon);

const char* verdict_name(Verdict v);
std::string format_coefficients(const ContinuedFraction& cf);
std::string format_convergents(const std::vector<Convergent>& cs);
/// Multi-line block: l_measured, phi_phase_bin, phi_phase_dec, phi, expansion, verdict rows.
std::string format_trace(const Extraction& e, std::optional<std::uint64_t> frequency = {});
std::string binary_digits(std::uint64_t value, unsigned width);
/// Exact decimal expansion of num / 2^m.
std::string dyadic_decimal(std::uint64_t num, unsigned m);

}  // namespace shorsim
