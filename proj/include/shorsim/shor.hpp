#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shorsim/circuit.hpp"
#include "shorsim/contfrac.hpp"
#include "shorsim/modexp.hpp"
#include "shorsim/qpe.hpp"

namespace shorsim {

enum class ModulusClass { Ok, TooSmall, Even, Prime, PrimePower };

ModulusClass classify_modulus(std::uint64_t N);
std::string describe(ModulusClass c);
bool is_prime(std::uint64_t n);

struct ShorConfig {
  std::uint64_t N = 0;
  std::optional<std::uint64_t> a;
  std::optional<unsigned> m;
  unsigned n_epsilon = 0;
  MeVersion me_version = MeVersion::Concatenated;
  std::optional<std::size_t> shots;
  std::uint64_t seed = 0;
  bool error_inject = false;
  Convention convention = Convention::Qiskit;
};

/// Throws DomainError naming the violated condition.
void validate(const ShorConfig& cfg);
/// 2n + 1 + n_epsilon with n = ceil(log2 N).
unsigned default_control_qubits(std::uint64_t N, unsigned n_epsilon = 0);

struct BaseChoice {
  std::uint64_t a = 0;
  std::optional<std::uint64_t> classical_factor;
};

BaseChoice choose_base(std::uint64_t N, std::uint64_t seed);

struct HistogramEntry {
  double probability = 0.0;
  std::uint64_t count = 0;
  bool operator==(const HistogramEntry&) const = default;
};
using Histogram = std::map<BasisIndex, HistogramEntry>;

struct PeakReport {
  BasisIndex measured = 0;
  BasisIndex analysed = 0;  // measured, or measured + 1 under error injection
  double probability = 0.0;
  std::uint64_t count = 0;
  Extraction extraction;
  std::string reason() const;
};

struct RunReport {
  ShorConfig config;
  std::uint64_t a = 0;
  unsigned n = 0;
  unsigned m = 0;
  bool classical = false;
  Histogram histogram;
  std::vector<PeakReport> peaks;
  std::optional<std::uint64_t> period;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
  std::string failure_reason;
  unsigned attempts = 1;

  bool success() const { return factors.has_value(); }
};

RunReport run(const ShorConfig& cfg);
/// Retries with fresh bases (derived from cfg.seed) until success or max_attempts.
RunReport factorize(const ShorConfig& cfg, unsigned max_attempts = 20);

/// Exact control-register marginal of the full simulated circuit.
std::vector<double> simulated_histogram(std::uint64_t a, std::uint64_t N, unsigned m,
                                        MeVersion version = MeVersion::Concatenated,
                                        Convention convention = Convention::Qiskit);
std::vector<double> theoretical_histogram(std::uint64_t a, std::uint64_t N, unsigned m);
BasisIndex inject_lsb_error(BasisIndex ell, unsigned m);

/// Indices with probability >= fraction * max, ascending.
std::vector<BasisIndex> dominant_peaks(std::span<const double> dist, double fraction = 0.5);
/// Non-dominant cyclic neighbours of dominant peaks above `floor` * max, ascending.
std::vector<BasisIndex> subdominant_peaks(std::span<const double> dist, double fraction = 0.5,
                                          double floor = 0.1);
/// Indices not below either cyclic neighbour and above `floor` * max, ascending.
std::vector<BasisIndex> local_maxima(std::span<const double> dist, double floor = 0.1);
/// Nonzero indices by descending probability, ties by ascending index.
std::vector<BasisIndex> ranked_indices(std::span<const double> dist, double cutoff = 1e-12);
double max_abs_difference(std::span<const double> x, std::span<const double> y);

}  // namespace shorsim
