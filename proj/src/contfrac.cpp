#include "shorsim/contfrac.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "shorsim/errors.hpp"
#include "shorsim/modexp.hpp"

namespace shorsim {

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational ContinuedFraction::value() const {
  if (coefficients.empty()) throw DomainError("empty continued fraction");
  auto cs = convergents(*this);
  return Rational::make(cs.back().p, cs.back().q);
}

ContinuedFraction expand(Rational x) {
  if (x.den == 0) throw DomainError("zero denominator");
  ContinuedFraction cf;
  std::uint64_t n = x.num, d = x.den;
  while (d != 0) {
    cf.coefficients.push_back(n / d);
    const std::uint64_t rem = n % d;
    n = d;
    d = rem;
  }
  return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf) {
  std::vector<Convergent> out;
  std::uint64_t p2 = 0, q2 = 1, p1 = 1, q1 = 0;  // p_{-2}, q_{-2}, p_{-1}, q_{-1}
  for (std::size_t i = 0; i < cf.coefficients.size(); ++i) {
    const std::uint64_t a = cf.coefficients[i];
    const std::uint64_t p = a * p1 + p2, q = a * q1 + q2;
    out.push_back({p, q, i});
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  return out;
}

namespace {

std::uint64_t isqrt(std::uint64_t a) {
  auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(a)));
  while (c * c > a) --c;
  while ((c + 1) * (c + 1) <= a) ++c;
  return c;
}

}  // namespace

PeriodCheck check_period(std::uint64_t a, std::uint64_t N, std::uint64_t r) {
  if (r < 1) throw DomainError("candidate period must be at least 1");
  if (N < 3) throw DomainError("modulus must be at least 3");
  PeriodCheck c{r, Verdict::NotPeriod, 0, 0};
  const std::uint64_t root = isqrt(a);
  const bool square = root * root == a;
  if (r % 2 == 1 && !square) {
    c.verdict = Verdict::OddPeriod;
    return c;
  }
  if (mod_exp(a, r, N) != 1) return c;
  const std::uint64_t b = r % 2 == 0 ? mod_exp(a, r / 2, N) : mod_exp(root, r, N);
  if (b == 1 || b == N - 1) {
    c.verdict = Verdict::TrivialRoot;
    return c;
  }
  c.verdict = Verdict::Factors;
  c.f1 = std::gcd(b - 1, N);
  c.f2 = std::gcd(b + 1, N);
  return c;
}

std::pair<std::uint64_t, std::uint64_t> factor_from_root(std::uint64_t b, std::uint64_t N) {
  if (N < 3) throw ContractViolation("modulus must be at least 3");
  b %= N;
  if (mul_mod(b, b, N) != 1 || b == 1 || b == N - 1)
    throw ContractViolation(std::to_string(b) + " is not a proper square root of 1 mod " +
                            std::to_string(N));
  return {std::gcd(b - 1, N), std::gcd(b + 1, N)};
}

Extraction extract_period(std::uint64_t ell, unsigned m, std::uint64_t a, std::uint64_t N) {
  if (m < 1 || m > 62) throw DomainError("control register size out of range");
  if (ell >= (std::uint64_t{1} << m)) throw DomainError("measured index out of range");
  Extraction e;
  e.ell = ell;
  e.m = m;
  e.phase = Rational::make(ell, std::uint64_t{1} << m);
  e.expansion = expand(e.phase);
  e.convergents = convergents(e.expansion);
  for (const auto& cv : e.convergents) {
    TraceRow row{cv, cv.p != 0, {cv.q, Verdict::NotPeriod, 0, 0}};
    if (row.tested) {
      row.check = check_period(a, N, cv.q);
      if (row.check.verdict == Verdict::Factors && !e.period) {
        e.period = cv.q;
        e.factors = {row.check.f1, row.check.f2};
      }
    }
    e.rows.push_back(row);
  }
  return e;
}

unsigned epsilon_qubits(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const double target = 2.0 + 1.0 / (2.0 * epsilon);
  unsigned k = 0;
  while (std::ldexp(1.0, static_cast<int>(k)) < target) ++k;
  return k;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Factors:
      return "factors";
    case Verdict::OddPeriod:
      return "odd_period";
    case Verdict::TrivialRoot:
      return "trivial_root";
    case Verdict::NotPeriod:
      return "not_period";
  }
  return "?";
}

std::string format_coefficients(const ContinuedFraction& cf) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < cf.coefficients.size(); ++i)
    os << (i ? ", " : "") << cf.coefficients[i];
  os << ']';
  return os.str();
}

std::string format_convergents(const std::vector<Convergent>& cs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < cs.size(); ++i)
    os << (i ? ", " : "") << '(' << cs[i].p << ", " << cs[i].q << ')';
  os << ']';
  return os.str();
}

std::string binary_digits(std::uint64_t value, unsigned width) {
  std::string s(width, '0');
  for (unsigned b = 0; b < width; ++b)
    if ((value >> b) & 1) s[width - 1 - b] = '1';
  return s;
}

std::string dyadic_decimal(std::uint64_t num, unsigned m) {
  using boost::multiprecision::cpp_int;
  cpp_int den = cpp_int(1) << m;
  cpp_int whole = num / den;
  cpp_int rem = num % den;
  std::string s = whole.str() + ".";
  if (rem == 0) return s + "0";
  while (rem != 0) {
    rem *= 10;
    s += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return s;
}

std::string format_trace(const Extraction& e, std::optional<std::uint64_t> frequency) {
  std::ostringstream os;
  const std::string bits = binary_digits(e.ell, e.m);
  os << "l_measured   : " << bits << ' ' << e.ell;
  if (frequency) os << " frequency: " << *frequency;
  os << '\n';
  os << "phi_phase_bin: 0." << bits << '\n';
  os << "phi_phase_dec: " << dyadic_decimal(e.ell, e.m) << '\n';
  os << "phi: (" << e.phase.num << ", " << e.phase.den << ")\n";
  os << "cont frac of phi  : " << format_coefficients(e.expansion) << '\n';
  os << "convergents of phi: " << format_convergents(e.convergents) << '\n';
  for (const auto& row : e.rows) {
    os << "conv: (" << row.convergent.p << ", " << row.convergent.q << ") r = " << row.convergent.q;
    if (row.tested && row.check.verdict == Verdict::Factors) {
      os << " : factors\n";
      os << "factor1: " << row.check.f1 << '\n';
      os << "factor2: " << row.check.f2 << '\n';
    } else {
      os << " : no factors found\n";
    }
  }
  return os.str();
}

}  // namespace shorsim
