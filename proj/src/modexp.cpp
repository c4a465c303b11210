#include "shorsim/modexp.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "shorsim/errors.hpp"

namespace shorsim {

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t N) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % N);
}

std::uint64_t mod_exp(std::uint64_t a, std::uint64_t x, std::uint64_t N) {
  if (N < 2) throw DomainError("modulus must be at least 2");
  std::uint64_t result = 1, base = a % N;
  while (x) {
    if (x & 1) result = mul_mod(result, base, N);
    base = mul_mod(base, base, N);
    x >>= 1;
  }
  return result;
}

BigInt mod_exp(const BigInt& a, const BigInt& x, const BigInt& N) {
  if (N < 2) throw DomainError("modulus must be at least 2");
  if (x < 0) throw DomainError("exponent must be non-negative");
  return boost::multiprecision::powm(a % N, x, N);
}

namespace {

void require_coprime(std::uint64_t a, std::uint64_t N) {
  if (N < 2) throw DomainError("modulus must be at least 2");
  if (std::gcd(a, N) != 1)
    throw DomainError("gcd(" + std::to_string(a) + ", " + std::to_string(N) + ") != 1");
}

}  // namespace

std::uint64_t order_bruteforce(std::uint64_t a, std::uint64_t N) {
  require_coprime(a, N);
  std::uint64_t r = 1;
  for (std::uint64_t x = a % N; x != 1 % N; x = mul_mod(x, a, N)) ++r;
  return r;
}

unsigned bit_width_for(std::uint64_t N) {
  unsigned n = 0;
  while (n < 64 && (std::uint64_t{1} << n) < N) ++n;
  return n;
}

Permutation full_me_permutation(std::uint64_t a, std::uint64_t N, unsigned n) {
  require_coprime(a, N);
  if (n >= 40 || (std::uint64_t{1} << n) < N)
    throw DomainError("work register of " + std::to_string(n) + " qubits cannot hold N = " +
                      std::to_string(N));
  std::vector<std::uint64_t> map(std::uint64_t{1} << n);
  for (std::uint64_t w = 0; w < map.size(); ++w) map[w] = w < N ? mul_mod(a, w, N) : w;
  return Permutation(std::move(map));
}

Cycle cycle_of_one(std::uint64_t a, std::uint64_t N) {
  require_coprime(a, N);
  Cycle c{1};
  for (std::uint64_t x = a % N; x != 1; x = mul_mod(x, a, N)) c.push_back(x);
  return c;
}

std::vector<Cycle> power_cycles(std::uint64_t a, std::uint64_t N, std::uint64_t p,
                                const std::vector<std::uint64_t>& seeds) {
  require_coprime(a, N);
  if (p < 1) throw DomainError("power must be at least 1");
  const std::uint64_t ap = mod_exp(a, p, N);
  std::vector<Cycle> out;
  std::vector<bool> taken(N, false);
  for (auto s : seeds) {
    if (s >= N) throw DomainError("seed " + std::to_string(s) + " not below N");
    if (taken[s]) continue;
    Cycle c;
    for (std::uint64_t x = s; !taken[x]; x = mul_mod(x, ap, N)) {
      taken[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Concatenated specs list cycles of U itself; the other versions list cycles of U^p.
// A truncated chain may close back to its head without obeying the map.
void validate(const MESpec& s) {
  require_coprime(s.a, s.N);
  if (s.p < 1) throw DomainError("power must be at least 1");
  const std::uint64_t step = s.version == MeVersion::Concatenated ? s.a % s.N : mod_exp(s.a, s.p, s.N);
  std::vector<bool> used(s.N, false);
  for (const auto& c : s.cycles) {
    if (c.empty()) throw DomainError("empty cycle");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= s.N) throw DomainError("cycle element " + std::to_string(c[i]) + " not below N");
      if (used[c[i]]) throw DomainError("cycles overlap at " + std::to_string(c[i]));
      used[c[i]] = true;
      const bool closing = i + 1 == c.size();
      if (closing && s.version == MeVersion::Truncated) continue;
      if (c[(i + 1) % c.size()] != mul_mod(c[i], step, s.N))
        throw DomainError("cycle edge " + std::to_string(c[i]) + " -> " +
                          std::to_string(c[(i + 1) % c.size()]) + " is not multiplication by " +
                          std::to_string(step));
    }
  }
}

Permutation build_me_operator(const MESpec& s, unsigned n) {
  validate(s);
  if (s.version == MeVersion::Concatenated)
    return full_me_permutation(mod_exp(s.a, s.p, s.N), s.N, n);
  if (n >= 40 || (std::uint64_t{1} << n) < s.N) throw DomainError("work register too small");
  return Permutation::from_cycles(std::uint64_t{1} << n, s.cycles);
}

std::vector<std::uint64_t> default_seeds(std::uint64_t a, std::uint64_t N) {
  struct Preset {
    std::uint64_t a, N;
    std::vector<std::uint64_t> seeds;
  };
  static const std::vector<Preset> presets = {
      {2, 21, {1, 2}}, {4, 35, {1, 4}}, {7, 33, {1, 7}}, {5, 143, {1, 5}}, {2, 247, {1, 2, 4, 8}},
  };
  for (const auto& p : presets)
    if (p.a == a && p.N == N) return p.seeds;
  return cycle_of_one(a, N);
}

MESpec make_me_spec(std::uint64_t a, std::uint64_t N, std::uint64_t p, MeVersion v) {
  MESpec s{a, N, p, v, {}};
  switch (v) {
    case MeVersion::Concatenated:
      s.cycles = {cycle_of_one(a, N)};
      break;
    case MeVersion::PerPowerCycles:
      s.cycles = power_cycles(a, N, p, default_seeds(a, N));
      break;
    case MeVersion::Truncated:
      if (a == 7 && N == 33 && p == 1)
        s.cycles = {{1, 7, 16, 13, 25, 10, 4}};
      else
        s.cycles = power_cycles(a, N, p, {1});
      break;
  }
  validate(s);
  return s;
}

std::vector<MESpec> me_schedule(std::uint64_t a, std::uint64_t N, unsigned m, MeVersion v) {
  if (m < 1 || m > 62) throw DomainError("control register size out of range");
  std::vector<MESpec> out;
  for (unsigned k = 0; k < m; ++k) out.push_back(make_me_spec(a, N, std::uint64_t{1} << k, v));
  return out;
}

StateVector eigenstate(std::uint64_t a, std::uint64_t N, std::uint64_t s, unsigned n) {
  const Cycle orbit = cycle_of_one(a, N);
  const std::uint64_t r = orbit.size();
  if (s >= r) throw DomainError("eigenstate index must be below the order");
  if (n >= 40 || (std::uint64_t{1} << n) < N) throw DomainError("work register too small");
  std::vector<Amplitude> amps(std::uint64_t{1} << n, 0.0);
  const double norm = 1.0 / std::sqrt(static_cast<double>(r));
  for (std::uint64_t k = 0; k < r; ++k) {
    const double turns = static_cast<double>((k * s) % r) / static_cast<double>(r);
    amps[orbit[k]] = std::polar(norm, -2.0 * std::numbers::pi * turns);
  }
  return StateVector(std::move(amps));
}

std::string me_label(const MESpec& s) {
  return std::to_string(s.a) + "^" + std::to_string(s.p) + " mod " + std::to_string(s.N);
}

std::string to_json(const MESpec& s) {
  nlohmann::ordered_json j;
  j["a"] = s.a;
  j["N"] = s.N;
  j["p"] = s.p;
  j["version"] = static_cast<int>(s.version);
  j["cycles"] = s.cycles;
  return j.dump();
}

MESpec me_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad MESpec JSON: ") + e.what());
  }
  if (!j.is_object() || j.size() != 5)
    throw DomainError("MESpec JSON must have exactly a, N, p, version, cycles");
  try {
    MESpec s;
    s.a = j.at("a").get<std::uint64_t>();
    s.N = j.at("N").get<std::uint64_t>();
    s.p = j.at("p").get<std::uint64_t>();
    const int v = j.at("version").get<int>();
    if (v < 0 || v > 2) throw DomainError("version must be 0, 1 or 2");
    s.version = static_cast<MeVersion>(v);
    s.cycles = j.at("cycles").get<std::vector<Cycle>>();
    validate(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad MESpec JSON: ") + e.what());
  }
}

}  // namespace shorsim
