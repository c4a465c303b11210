#include "shorsim/shor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "shorsim/errors.hpp"

namespace shorsim {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = mod_exp(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s && composite; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Exact integer k-th root (floor).
std::uint64_t iroot(std::uint64_t n, unsigned k) {
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  auto pow_le = [&](std::uint64_t b) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= b;
      if (acc > n) return false;
    }
    return true;
  };
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

}  // namespace

ModulusClass classify_modulus(std::uint64_t N) {
  if (N < 3) return ModulusClass::TooSmall;
  if (N % 2 == 0) return ModulusClass::Even;
  if (is_prime(N)) return ModulusClass::Prime;
  for (unsigned k = 2; k < 64; ++k) {
    const std::uint64_t r = iroot(N, k);
    if (r < 2) break;
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= r;
    if (acc == N && is_prime(r)) return ModulusClass::PrimePower;
  }
  return ModulusClass::Ok;
}

std::string describe(ModulusClass c) {
  switch (c) {
    case ModulusClass::Ok:
      return "ok";
    case ModulusClass::TooSmall:
      return "N must be at least 3";
    case ModulusClass::Even:
      return "N is even: 2 is a factor";
    case ModulusClass::Prime:
      return "N is prime";
    case ModulusClass::PrimePower:
      return "N is a prime power";
  }
  return "?";
}

unsigned default_control_qubits(std::uint64_t N, unsigned n_epsilon) {
  return 2 * bit_width_for(N) + 1 + n_epsilon;
}

void validate(const ShorConfig& cfg) {
  const auto cls = classify_modulus(cfg.N);
  if (cls != ModulusClass::Ok) throw DomainError(describe(cls));
  if (cfg.a) {
    if (*cfg.a <= 1 || *cfg.a >= cfg.N) throw DomainError("base must satisfy 1 < a < N");
    if (std::gcd(*cfg.a, cfg.N) != 1) throw DomainError("base shares a factor with N");
  }
  if (cfg.m && *cfg.m < 1) throw DomainError("control register needs at least one qubit");
  if (cfg.shots && *cfg.shots == 0) throw DomainError("shots must be at least 1");
  const unsigned m = cfg.m ? *cfg.m : default_control_qubits(cfg.N, cfg.n_epsilon);
  if (m + bit_width_for(cfg.N) > 26)
    throw DomainError("register of " + std::to_string(m + bit_width_for(cfg.N)) +
                      " qubits is too large to simulate");
}

BaseChoice choose_base(std::uint64_t N, std::uint64_t seed) {
  if (N < 4) throw DomainError("N too small to choose a base");
  std::mt19937_64 rng(seed);
  const std::uint64_t span = N - 2;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  BaseChoice c{2 + x % span, std::nullopt};
  const std::uint64_t g = std::gcd(c.a, N);
  if (g > 1) c.classical_factor = g;
  return c;
}

std::string PeakReport::reason() const {
  if (extraction.factors) return "factors";
  std::ostringstream os;
  bool first = true;
  for (const auto& row : extraction.rows) {
    if (!row.tested) continue;
    os << (first ? "" : ", ") << "r=" << row.check.r << ':' << verdict_name(row.check.verdict);
    first = false;
  }
  return first ? "no nonzero convergent" : os.str();
}

std::vector<double> simulated_histogram(std::uint64_t a, std::uint64_t N, unsigned m,
                                        MeVersion version, Convention convention) {
  const unsigned n = bit_width_for(N);
  const auto qpe = assemble_qpe(m, StateVector::basis(n, 1), me_schedule(a, N, m, version), convention);
  return qpe.control_distribution();
}

std::vector<double> theoretical_histogram(std::uint64_t a, std::uint64_t N, unsigned m) {
  const std::uint64_t r = order_bruteforce(a, N);
  std::vector<SpectrumTerm> terms;
  const double w = 1.0 / std::sqrt(static_cast<double>(r));
  for (std::uint64_t s = 0; s < r; ++s) terms.push_back({w, PhaseAngle::from_rational(s, r)});
  return analytic_distribution(terms, std::uint64_t{1} << m);
}

BasisIndex inject_lsb_error(BasisIndex ell, unsigned m) {
  if (m < 1 || m > 62 || ell >= (std::uint64_t{1} << m)) throw DomainError("index out of range");
  return (ell + 1) % (std::uint64_t{1} << m);
}

std::vector<BasisIndex> dominant_peaks(std::span<const double> dist, double fraction) {
  const double mx = *std::max_element(dist.begin(), dist.end());
  std::vector<BasisIndex> out;
  for (BasisIndex i = 0; i < dist.size(); ++i)
    if (dist[i] >= fraction * mx) out.push_back(i);
  return out;
}

std::vector<BasisIndex> subdominant_peaks(std::span<const double> dist, double fraction,
                                          double floor) {
  const double mx = *std::max_element(dist.begin(), dist.end());
  const std::size_t M = dist.size();
  auto dominant = [&](std::size_t i) { return dist[i] >= fraction * mx; };
  std::vector<BasisIndex> out;
  for (BasisIndex i = 0; i < M; ++i) {
    if (dominant(i) || dist[i] <= floor * mx) continue;
    if (dominant((i + 1) % M) || dominant((i + M - 1) % M)) out.push_back(i);
  }
  return out;
}

std::vector<BasisIndex> local_maxima(std::span<const double> dist, double floor) {
  const double mx = *std::max_element(dist.begin(), dist.end());
  const std::size_t M = dist.size();
  std::vector<BasisIndex> out;
  for (BasisIndex i = 0; i < M; ++i)
    if (dist[i] > floor * mx && dist[i] >= dist[(i + 1) % M] && dist[i] >= dist[(i + M - 1) % M])
      out.push_back(i);
  return out;
}

std::vector<BasisIndex> ranked_indices(std::span<const double> dist, double cutoff) {
  std::vector<BasisIndex> out;
  for (BasisIndex i = 0; i < dist.size(); ++i)
    if (dist[i] > cutoff) out.push_back(i);
  std::stable_sort(out.begin(), out.end(),
                   [&](BasisIndex x, BasisIndex y) { return dist[x] > dist[y]; });
  return out;
}

double max_abs_difference(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("distributions differ in length");
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

RunReport run(const ShorConfig& cfg) {
  validate(cfg);
  RunReport rep;
  rep.config = cfg;
  rep.n = bit_width_for(cfg.N);
  rep.m = cfg.m ? *cfg.m : default_control_qubits(cfg.N, cfg.n_epsilon);

  if (cfg.a) {
    rep.a = *cfg.a;
  } else {
    const auto choice = choose_base(cfg.N, cfg.seed);
    rep.a = choice.a;
    if (choice.classical_factor) {
      rep.classical = true;
      rep.factors = std::pair{*choice.classical_factor, cfg.N / *choice.classical_factor};
      return rep;
    }
  }

  const auto dist = simulated_histogram(rep.a, cfg.N, rep.m, cfg.me_version, cfg.convention);
  std::vector<std::uint64_t> counts(dist.size(), 0);
  std::vector<BasisIndex> order;
  if (cfg.shots) {
    for (auto s : sample(std::span<const double>(dist), *cfg.shots, cfg.seed)) ++counts[s];
    std::vector<double> freq(counts.begin(), counts.end());
    order = ranked_indices(freq, 0.5);
  } else {
    order = ranked_indices(dist);
  }
  for (BasisIndex i = 0; i < dist.size(); ++i)
    if (dist[i] > 1e-15 || counts[i] > 0) rep.histogram[i] = {dist[i], counts[i]};

  for (auto ell : order) {
    PeakReport pk;
    pk.measured = ell;
    pk.analysed = cfg.error_inject ? inject_lsb_error(ell, rep.m) : ell;
    pk.probability = dist[ell];
    pk.count = counts[ell];
    pk.extraction = extract_period(pk.analysed, rep.m, rep.a, cfg.N);
    const bool ok = pk.extraction.factors.has_value();
    rep.peaks.push_back(std::move(pk));
    if (ok) {
      rep.period = rep.peaks.back().extraction.period;
      rep.factors = rep.peaks.back().extraction.factors;
      return rep;
    }
  }
  rep.failure_reason = "no peak produced a proper square root of unity for a = " + std::to_string(rep.a);
  return rep;
}

RunReport factorize(const ShorConfig& cfg, unsigned max_attempts) {
  if (cfg.a) return run(cfg);
  RunReport rep;
  for (unsigned i = 0; i < std::max(1u, max_attempts); ++i) {
    ShorConfig c = cfg;
    c.seed = cfg.seed + i;
    rep = run(c);
    rep.config = cfg;
    rep.attempts = i + 1;
    if (rep.success()) break;
  }
  return rep;
}

}  // namespace shorsim
