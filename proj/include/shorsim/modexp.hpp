#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shorsim/permutation.hpp"
#include "shorsim/statevec.hpp"

namespace shorsim {

using BigInt = boost::multiprecision::cpp_int;

enum class MeVersion { Concatenated = 0, PerPowerCycles = 1, Truncated = 2 };

struct MESpec {
  std::uint64_t a = 0;
  std::uint64_t N = 0;
  std::uint64_t p = 1;
  MeVersion version = MeVersion::Concatenated;
  std::vector<Cycle> cycles;
  bool operator==(const MESpec&) const = default;
};

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t N);
std::uint64_t mod_exp(std::uint64_t a, std::uint64_t x, std::uint64_t N);
BigInt mod_exp(const BigInt& a, const BigInt& x, const BigInt& N);

std::uint64_t order_bruteforce(std::uint64_t a, std::uint64_t N);
/// Smallest n with 2^n >= N.
unsigned bit_width_for(std::uint64_t N);

Permutation full_me_permutation(std::uint64_t a, std::uint64_t N, unsigned n);
Cycle cycle_of_one(std::uint64_t a, std::uint64_t N);
std::vector<Cycle> power_cycles(std::uint64_t a, std::uint64_t N, std::uint64_t p,
                                const std::vector<std::uint64_t>& seeds);

/// Throws DomainError if `spec` breaks its invariants.
void validate(const MESpec& spec);
Permutation build_me_operator(const MESpec& spec, unsigned n);

/// MESpec for U^p using the built-in presets for the version.
MESpec make_me_spec(std::uint64_t a, std::uint64_t N, std::uint64_t p, MeVersion v);
/// Specs for U^(2^k), k = 0..m-1.
std::vector<MESpec> me_schedule(std::uint64_t a, std::uint64_t N, unsigned m, MeVersion v);
/// Seeds whose orbits under a^p form the per-power cycles.
std::vector<std::uint64_t> default_seeds(std::uint64_t a, std::uint64_t N);

StateVector eigenstate(std::uint64_t a, std::uint64_t N, std::uint64_t s, unsigned n);

std::string me_label(const MESpec& spec);
std::string to_json(const MESpec& spec);
MESpec me_spec_from_json(const std::string& text);

}  // namespace shorsim
