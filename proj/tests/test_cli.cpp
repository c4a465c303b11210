#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shorsim/cli.hpp"
#include "shorsim/circuit.hpp"
#include "shorsim/qft.hpp"
#include "shorsim/report.hpp"

using namespace shorsim;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "shorsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / "shorsim_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("factor") {
  auto r = cli({"factor", "--n", "15", "--a", "8", "--m", "9"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "conv: (1, 4) r = 4 : factors\nfactor1: 3\nfactor2: 5\n"));
  CHECK(contains(r.out, "factors: 3 5\n"));

  r = cli({"factor", "--n", "21", "--a", "2", "--m", "5"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "factor1: 7\nfactor2: 3\n"));
  CHECK(contains(r.out, "factors: 7 3\n"));

  r = cli({"factor", "--n", "15", "--a", "14", "--m", "9"});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "no factors"));
}

TEST_CASE("factor with error injection reproduces the shifted traces") {
  const auto r = cli({"factor", "--n", "15", "--a", "8", "--m", "9", "--error-inject"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, R"(l_measured   : 010000001 129
phi_phase_bin: 0.010000001
phi_phase_dec: 0.251953125
phi: (129, 512)
cont frac of phi  : [0, 3, 1, 31, 4]
convergents of phi: [(0, 1), (1, 3), (1, 4), (32, 127), (129, 512)]
conv: (0, 1) r = 1 : no factors found
conv: (1, 3) r = 3 : no factors found
conv: (1, 4) r = 4 : factors
factor1: 3
factor2: 5
)"));
  CHECK(contains(r.out, "(+1 LSB)"));
}

TEST_CASE("invalid input exits with 2 and a JSON error") {
  auto r = cli({"factor", "--n", "9"});
  CHECK(r.code == 2);
  CHECK(r.err == "{\"error\":\"prime_power\",\"message\":\"N is a prime power\"}\n");
  CHECK(cli({"factor", "--n", "22"}).code == 2);
  CHECK(cli({"factor", "--n", "13"}).code == 2);
  CHECK(cli({"factor", "--n", "15", "--a", "5"}).code == 2);
  CHECK(cli({"factor"}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"contfrac", "--num", "1", "--den", "0"}).code == 2);
  CHECK(cli({"factor", "--n", "15", "--uver", "3"}).code == 2);
  CHECK(contains(cli({"order", "--n", "15", "--a", "3"}).err, "\"error\""));
}

TEST_CASE("contfrac") {
  auto r = cli({"contfrac", "--num", "385", "--den", "512"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "cont frac of phi  : [0, 1, 3, 31, 1, 3]\n"
        "convergents of phi: [(0, 1), (1, 1), (3, 4), (94, 125), (97, 129), (385, 512)]\n");
  CHECK(contains(cli({"contfrac", "--num", "31415", "--den", "10000"}).out, "[3, 7, 14, 1, 8, 2]"));
  CHECK(cli({"contfrac", "--num", "0", "--den", "1"}).out ==
        "cont frac of phi  : [0]\nconvergents of phi: [(0, 1)]\n");
}

TEST_CASE("order") {
  CHECK(cli({"order", "--n", "143", "--a", "5"}).out == "order: 20\n");
  CHECK(cli({"order", "--n", "247", "--a", "2"}).out == "order: 36\n");
}

TEST_CASE("synth") {
  CHECK(cli({"synth", "--n", "21", "--a", "2", "--p", "2"}).out == "[1, 4, 16] [2, 8, 11]\n");
  CHECK(contains(cli({"synth", "--n", "143", "--a", "5", "--p", "16"}).out, "[1, 27, 14, 92, 53]"));
  CHECK(cli({"synth", "--n", "21", "--a", "2", "--p", "1"}).out == "[1, 2, 4, 8, 16, 11]\n");
  CHECK(contains(cli({"synth", "--n", "21", "--a", "2", "--p", "2", "--lower"}).out, "lowered gates: "));
}

TEST_CASE("histogram") {
  auto r = cli({"histogram", "--n", "15", "--a", "8", "--m", "5", "--theory"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "index,bitstring,probability,count\n"
        "0,00000,0.25,0\n"
        "8,01000,0.25,0\n"
        "16,10000,0.25,0\n"
        "24,11000,0.25,0\n"
        "dominant: [0, 8, 16, 24]\n");

  r = cli({"histogram", "--n", "33", "--a", "7", "--m", "6", "--simulate", "--ascii"});
  CHECK(contains(r.out, "dominant: [0, 6, 13, 19, 26, 32, 38, 45, 51, 58]"));
  CHECK(contains(r.out, "|#"));

  r = cli({"histogram", "--n", "21", "--a", "2", "--m", "6", "--theory", "--simulate", "--ascii"});
  const auto pos = r.out.find("max_abs_diff: ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 14)) <= 1e-9);

  const auto csv = temp_dir() / "h.csv";
  r = cli({"histogram", "--n", "21", "--a", "2", "--m", "5", "--simulate", "--csv", csv.string()});
  CHECK(r.code == 0);
  const auto parsed = parse_histogram_csv(slurp(csv));
  CHECK(parsed.size() == 32);
}

TEST_CASE("json report and output directory") {
  const auto dir = temp_dir();
  const auto path = dir / "report.json";
  std::filesystem::remove(path);
  auto r = cli({"factor", "--n", "21", "--a", "2", "--m", "5", "--json", path.string()});
  CHECK(r.code == 0);
  const auto text = slurp(path);
  CHECK(contains(text, "\"factors\""));
  CHECK(contains(text, "\"N\": 21"));

  ::setenv("SHORSIM_OUT_DIR", dir.c_str(), 1);
  std::filesystem::remove(dir / "rel.qasm");
  r = cli({"export-qasm", "--qft", "2", "--out", "rel.qasm"});
  ::unsetenv("SHORSIM_OUT_DIR");
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "rel.qasm"));
}

TEST_CASE("export-qasm") {
  auto r = cli({"export-qasm", "--qft", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == export_circuit_text(build_qft({3})));
  r = cli({"export-qasm", "--qft", "3", "--inverse"});
  CHECK(r.out == export_circuit_text(build_iqft({3})));
  r = cli({"export-qasm", "--n", "15", "--a", "7", "--m", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "qreg q[7];"));
  CHECK(!contains(r.out, "mod"));
}

TEST_CASE("validate") {
  auto r = cli({"validate", "--n", "21", "--a", "2", "--m", "6"});
  CHECK(r.code == 0);
  r = cli({"validate", "--n", "33", "--a", "7", "--m", "6", "--uver", "1"});
  CHECK(r.code == 0);
}

TEST_CASE("identical flags give byte-identical output") {
  const std::vector<std::string> args{"factor", "--n", "21", "--m", "5", "--shots", "4096", "--seed", "3"};
  const auto a = cli(args);
  const auto b = cli(args);
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
  CHECK(contains(a.out, "frequency: "));
}
