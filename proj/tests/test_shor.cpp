#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "shorsim/errors.hpp"
#include "shorsim/report.hpp"
#include "shorsim/shor.hpp"

using namespace shorsim;

namespace {

ShorConfig cfg(std::uint64_t N, std::uint64_t a, unsigned m, MeVersion v = MeVersion::Concatenated) {
  ShorConfig c;
  c.N = N;
  c.a = a;
  c.m = m;
  c.me_version = v;
  return c;
}

std::set<std::uint64_t> as_set(std::pair<std::uint64_t, std::uint64_t> f) { return {f.first, f.second}; }

}  // namespace

TEST_CASE("modulus classification") {
  CHECK(classify_modulus(15) == ModulusClass::Ok);
  CHECK(classify_modulus(2) == ModulusClass::TooSmall);
  CHECK(classify_modulus(22) == ModulusClass::Even);
  CHECK(classify_modulus(13) == ModulusClass::Prime);
  CHECK(classify_modulus(9) == ModulusClass::PrimePower);
  CHECK(classify_modulus(3125) == ModulusClass::PrimePower);
  CHECK(classify_modulus(45) == ModulusClass::Ok);
  CHECK(is_prime(1'000'000'007));
  CHECK(!is_prime(561));
  CHECK(!is_prime(1));
}

TEST_CASE("config validation") {
  CHECK_THROWS_WITH_AS(validate(cfg(9, 2, 5)), doctest::Contains("prime power"), DomainError);
  CHECK_THROWS_AS(validate(cfg(15, 6, 5)), DomainError);
  CHECK_THROWS_AS(validate(cfg(15, 1, 5)), DomainError);
  CHECK_THROWS_AS(validate(cfg(15, 15, 5)), DomainError);
  CHECK_NOTHROW(validate(cfg(15, 7, 5)));
  CHECK(default_control_qubits(15) == 9);
  CHECK(default_control_qubits(21) == 11);
  CHECK(default_control_qubits(15, 2) == 11);
}

TEST_CASE("choose_base") {
  std::set<std::uint64_t> coprime;
  std::set<std::uint64_t> classical;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto b = choose_base(15, seed);
    CHECK(b.a >= 2);
    CHECK(b.a <= 14);
    if (b.classical_factor) {
      CHECK(std::gcd(b.a, std::uint64_t{15}) == *b.classical_factor);
      classical.insert(b.a);
    } else {
      coprime.insert(b.a);
    }
  }
  CHECK(coprime == std::set<std::uint64_t>{2, 4, 7, 8, 11, 13, 14});
  CHECK(classical == std::set<std::uint64_t>{3, 5, 6, 9, 10, 12});
  CHECK(choose_base(143, 77).a == choose_base(143, 77).a);
}

TEST_CASE("run: N = 15") {
  auto r = run(cfg(15, 8, 9));
  REQUIRE(r.success());
  CHECK(as_set(*r.factors) == std::set<std::uint64_t>{3, 5});
  CHECK(*r.period == 4);
  CHECK((r.peaks.back().measured == 128 || r.peaks.back().measured == 384));

  r = run(cfg(15, 4, 9));
  REQUIRE(r.success());
  CHECK(*r.period == 2);
  CHECK(r.peaks.back().measured == 256);

  r = run(cfg(15, 14, 9));
  CHECK(!r.success());
  CHECK(!r.failure_reason.empty());
  for (const auto& p : r.peaks) CHECK(!p.reason().empty());
}

TEST_CASE("run is deterministic in exact mode") {
  const auto a = run(cfg(33, 7, 6));
  const auto b = run(cfg(33, 7, 6));
  CHECK(report_json(a) == report_json(b));
}

TEST_CASE("run: truncated operators for N = 21") {
  const auto r = run(cfg(21, 2, 5, MeVersion::Truncated));
  REQUIRE(r.success());
  CHECK(as_set(*r.factors) == std::set<std::uint64_t>{3, 7});
}

TEST_CASE("run: probabilities sum to one, period matches the order") {
  for (auto [N, a, m] : std::vector<std::tuple<std::uint64_t, std::uint64_t, unsigned>>{
           {15, 7, 8}, {21, 2, 6}, {35, 4, 5}, {33, 7, 6}, {39, 2, 7}}) {
    const auto r = run(cfg(N, a, m));
    double s = 0;
    for (const auto& [l, e] : r.histogram) s += e.probability;
    CHECK(std::abs(s - 1.0) <= 1e-9);
    if (r.success()) {
      CHECK(*r.period == oracle::order(a, N));
      CHECK(r.factors->first * r.factors->second == N);
    }
  }
}

TEST_CASE("factorize retries until it finds factors") {
  ShorConfig c;
  c.N = 15;
  c.m = 9;
  c.seed = 5;
  const auto r = factorize(c);
  REQUIRE(r.success());
  CHECK(as_set(*r.factors) == std::set<std::uint64_t>{3, 5});
  CHECK(r.attempts >= 1);
}

TEST_CASE("theoretical histogram") {
  auto h = theoretical_histogram(8, 15, 5);
  for (BasisIndex l : {0, 8, 16, 24}) CHECK(h[l] == doctest::Approx(0.25).epsilon(1e-12));
  h = theoretical_histogram(4, 15, 9);
  CHECK(h[0] == doctest::Approx(0.5));
  CHECK(h[256] == doctest::Approx(0.5));
  h = theoretical_histogram(13, 21, 6);
  CHECK(h[0] == doctest::Approx(0.5));
  CHECK(h[32] == doctest::Approx(0.5));
}

TEST_CASE("LSB error injection") {
  CHECK(inject_lsb_error(384, 9) == 385);
  CHECK(inject_lsb_error(0, 9) == 1);
  CHECK(inject_lsb_error(511, 9) == 0);
  CHECK(*extract_period(inject_lsb_error(384, 9), 9, 8, 15).period == 4);

  auto c = cfg(15, 8, 9);
  c.error_inject = true;
  const auto r = run(c);
  REQUIRE(r.success());
  for (const auto& p : r.peaks) CHECK(p.analysed == inject_lsb_error(p.measured, 9));
}

TEST_CASE("peak classification helpers") {
  const std::vector<double> d{0.30, 0.05, 0.02, 0.20, 0.16, 0.01, 0.04, 0.22};
  CHECK(dominant_peaks(d) == std::vector<BasisIndex>{0, 3, 4, 7});
  CHECK(subdominant_peaks(d) == std::vector<BasisIndex>{1, 6});
  CHECK(local_maxima(d) == std::vector<BasisIndex>{0, 3});
  CHECK(ranked_indices(d) == std::vector<BasisIndex>{0, 7, 3, 4, 1, 6, 2, 5});
  const std::vector<double> e{0.4, 0.1, 0.0, 0.0, 0.0, 0.0, 0.05, 0.45};
  CHECK(dominant_peaks(e) == std::vector<BasisIndex>{0, 7});
  CHECK(subdominant_peaks(e) == std::vector<BasisIndex>{1, 6});
  CHECK(ranked_indices(std::vector<double>{0.5, 0.0, 0.5}) == std::vector<BasisIndex>{0, 2});
}

TEST_CASE("sampled mode") {
  auto c = cfg(21, 2, 5);
  c.shots = 4096;
  c.seed = 11;
  const auto a = run(c);
  const auto b = run(c);
  CHECK(report_json(a) == report_json(b));
  std::uint64_t total = 0;
  for (const auto& [l, e] : a.histogram) total += e.count;
  CHECK(total == 4096);
  REQUIRE(a.success());
  CHECK(as_set(*a.factors) == std::set<std::uint64_t>{3, 7});
}

TEST_CASE("histogram CSV round trip") {
  const auto h = to_histogram(simulated_histogram(2, 21, 6));
  const auto text = histogram_csv(h, 6);
  CHECK(text.rfind("index,bitstring,probability,count\n", 0) == 0);
  CHECK(parse_histogram_csv(text) == h);

  Histogram counts{{5, {0.11376953125, 466}}, {27, {0.11181640625, 458}}};
  CHECK(parse_histogram_csv(histogram_csv(counts, 5)) == counts);
  CHECK_THROWS(parse_histogram_csv("index,bitstring\n1,0\n"));
}

TEST_CASE("ASCII chart") {
  Histogram h{{0, {0.5, 0}}, {1, {0.25, 0}}, {2, {0.0, 0}}};
  CHECK(ascii_chart(h, 2, 40) == "     0 00 0.500000 |" + std::string(40, '#') + "\n" +
                                    "     1 01 0.250000 |" + std::string(20, '#') + "\n");
}
