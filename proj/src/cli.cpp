#include "shorsim/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shorsim/circuit.hpp"
#include "shorsim/contfrac.hpp"
#include "shorsim/errors.hpp"
#include "shorsim/modexp.hpp"
#include "shorsim/qft.hpp"
#include "shorsim/qpe.hpp"
#include "shorsim/report.hpp"
#include "shorsim/shor.hpp"

namespace shorsim {

namespace {

constexpr const char* kOutDirEnv = "SHORSIM_OUT_DIR";

struct CliFailure {
  int code;
  std::string kind;
  std::string message;
};

std::filesystem::path output_path(const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative())
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
  return path;
}

void write_file(const std::string& p, const std::string& text) {
  const auto path = output_path(p);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliFailure{1, "io_error", "cannot write " + path.string()};
  f << text;
}

void require_modulus(std::uint64_t N) {
  const auto cls = classify_modulus(N);
  if (cls != ModulusClass::Ok) {
    static const char* kinds[] = {"ok", "too_small", "even", "prime", "prime_power"};
    throw CliFailure{2, kinds[static_cast<int>(cls)], describe(cls)};
  }
}

MeVersion version_of(int v) { return static_cast<MeVersion>(v); }

std::string join_cycles(const std::vector<Cycle>& cs) {
  std::string s;
  for (const auto& c : cs) {
    if (!s.empty()) s += ' ';
    s += format_coefficients(ContinuedFraction{c});
  }
  return s;
}

std::string join_indices(const std::vector<BasisIndex>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shor factoring on an exact state-vector simulator", "shorsim"};
  app.require_subcommand(1);

  // factor
  auto* factor = app.add_subcommand("factor", "run the full algorithm and print traces");
  std::uint64_t f_n = 0, f_a = 0, f_seed = 0;
  unsigned f_m = 0, f_neps = 0, f_attempts = 20;
  int f_uver = 0;
  std::size_t f_shots = 0;
  bool f_inject = false;
  std::string f_json, f_conv = "qiskit";
  factor->add_option("--n", f_n, "modulus")->required();
  auto* f_a_opt = factor->add_option("--a", f_a, "base");
  auto* f_m_opt = factor->add_option("--m", f_m, "control qubits");
  factor->add_option("--n-epsilon", f_neps, "extra control qubits");
  factor->add_option("--uver", f_uver, "ME operator version")->check(CLI::Range(0, 2));
  auto* f_shots_opt = factor->add_option("--shots", f_shots, "sample count");
  factor->add_option("--seed", f_seed, "RNG seed");
  factor->add_option("--max-attempts", f_attempts, "bases to try when --a is absent");
  factor->add_flag("--error-inject", f_inject, "add 1 to the LSB of every measured index");
  factor->add_option("--json", f_json, "write the run report as JSON");
  factor->add_option("--convention", f_conv)->check(CLI::IsMember({"qiskit", "physmath"}));

  // histogram
  auto* hist = app.add_subcommand("histogram", "control-register distribution");
  std::uint64_t h_n = 0, h_a = 0;
  unsigned h_m = 0;
  int h_uver = 0;
  bool h_theory = false, h_sim = false, h_ascii = false;
  std::string h_csv;
  hist->add_option("--n", h_n)->required();
  hist->add_option("--a", h_a)->required();
  hist->add_option("--m", h_m)->required();
  hist->add_option("--uver", h_uver)->check(CLI::Range(0, 2));
  hist->add_flag("--theory", h_theory, "analytic distribution");
  hist->add_flag("--simulate", h_sim, "state-vector simulation");
  hist->add_option("--csv", h_csv, "write CSV here instead of stdout");
  hist->add_flag("--ascii", h_ascii, "print a bar chart");

  // contfrac
  auto* cf = app.add_subcommand("contfrac", "continued fraction and convergents of P/Q");
  std::uint64_t c_num = 0, c_den = 1;
  cf->add_option("--num", c_num)->required();
  cf->add_option("--den", c_den)->required()->check(CLI::PositiveNumber);

  // order
  auto* ord = app.add_subcommand("order", "classical order of a mod N");
  std::uint64_t o_n = 0, o_a = 0;
  ord->add_option("--n", o_n)->required();
  ord->add_option("--a", o_a)->required();

  // synth
  auto* synth = app.add_subcommand("synth", "cycles of U^p and optional lowering");
  std::uint64_t s_n = 0, s_a = 0, s_p = 1;
  int s_uver = 1;
  bool s_lower = false, s_json = false;
  synth->add_option("--n", s_n)->required();
  synth->add_option("--a", s_a)->required();
  synth->add_option("--p", s_p)->required()->check(CLI::PositiveNumber);
  synth->add_option("--uver", s_uver)->check(CLI::Range(0, 2));
  synth->add_flag("--lower", s_lower, "print the lowered gate count");
  synth->add_flag("--json", s_json, "print the MESpec as JSON");

  // export-qasm
  auto* exq = app.add_subcommand("export-qasm", "write OpenQASM 2.0");
  std::uint64_t e_n = 0, e_a = 0;
  unsigned e_m = 0, e_qft = 0;
  int e_uver = 0;
  bool e_inverse = false;
  std::string e_out;
  exq->add_option("--n", e_n, "modulus (Shor circuit)");
  exq->add_option("--a", e_a, "base (Shor circuit)");
  auto* e_m_opt = exq->add_option("--m", e_m, "control qubits");
  exq->add_option("--uver", e_uver)->check(CLI::Range(0, 2));
  exq->add_option("--qft", e_qft, "export a QFT on this many qubits instead");
  exq->add_flag("--inverse", e_inverse, "with --qft, export the inverse");
  exq->add_option("--out", e_out, "output .qasm path (stdout if absent)");

  // validate
  auto* val = app.add_subcommand("validate", "compare simulation with the analytic model");
  std::uint64_t v_n = 0, v_a = 0;
  unsigned v_m = 0;
  int v_uver = 0;
  val->add_option("--n", v_n)->required();
  val->add_option("--a", v_a)->required();
  val->add_option("--m", v_m)->required();
  val->add_option("--uver", v_uver)->check(CLI::Range(0, 2));

  auto fail = [&](const CliFailure& f) {
    nlohmann::ordered_json j;
    j["error"] = f.kind;
    j["message"] = f.message;
    err << j.dump() << '\n';
    return f.code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail({2, "usage", e.what()});
  }

  try {
    if (factor->parsed()) {
      require_modulus(f_n);
      ShorConfig cfg;
      cfg.N = f_n;
      if (*f_a_opt) cfg.a = f_a;
      if (*f_m_opt) cfg.m = f_m;
      cfg.n_epsilon = f_neps;
      cfg.me_version = version_of(f_uver);
      if (*f_shots_opt) cfg.shots = f_shots;
      cfg.seed = f_seed;
      cfg.error_inject = f_inject;
      cfg.convention = f_conv == "physmath" ? Convention::PhysMath : Convention::Qiskit;
      const RunReport rep = factorize(cfg, f_attempts);
      out << "N = " << rep.config.N << ", a = " << rep.a << ", n = " << rep.n << ", m = " << rep.m
          << ", u_ver = " << f_uver << ", attempts = " << rep.attempts << "\n";
      if (rep.classical) out << "gcd(a, N) > 1: classical factor\n";
      for (const auto& p : rep.peaks) {
        out << '\n';
        if (p.analysed != p.measured) out << "l_peak       : " << p.measured << " (+1 LSB)\n";
        out << format_trace(p.extraction, cfg.shots ? std::optional(p.count) : std::nullopt);
      }
      if (!f_json.empty()) write_file(f_json, report_json(rep) + "\n");
      out << '\n';
      if (rep.success()) {
        if (rep.period) out << "period: " << *rep.period << '\n';
        out << "factors: " << rep.factors->first << ' ' << rep.factors->second << '\n';
        return 0;
      }
      out << "no factors: " << rep.failure_reason << '\n';
      return 1;
    }

    if (hist->parsed()) {
      require_modulus(h_n);
      if (!h_theory && !h_sim) h_sim = true;
      const auto th = h_theory ? theoretical_histogram(h_a, h_n, h_m) : std::vector<double>{};
      const auto sim = h_sim ? simulated_histogram(h_a, h_n, h_m, version_of(h_uver)) : std::vector<double>{};
      const auto& shown = h_sim ? sim : th;
      const Histogram h = to_histogram(shown);
      const std::string csv = histogram_csv(h, h_m);
      if (!h_csv.empty())
        write_file(h_csv, csv);
      else if (!h_ascii)
        out << csv;
      if (h_ascii) out << ascii_chart(h, h_m);
      out << "dominant: " << join_indices(dominant_peaks(shown)) << '\n';
      if (h_theory && h_sim) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "max_abs_diff: %.3e", max_abs_difference(th, sim));
        out << buf << '\n';
      }
      return 0;
    }

    if (cf->parsed()) {
      const auto e = expand(Rational::make(c_num, c_den));
      out << "cont frac of phi  : " << format_coefficients(e) << '\n';
      out << "convergents of phi: " << format_convergents(convergents(e)) << '\n';
      return 0;
    }

    if (ord->parsed()) {
      out << "order: " << order_bruteforce(o_a, o_n) << '\n';
      return 0;
    }

    if (synth->parsed()) {
      const MESpec spec = make_me_spec(s_a, s_n, s_p, version_of(s_uver));
      if (s_json) {
        out << to_json(spec) << '\n';
      } else {
        std::vector<Cycle> shown = spec.cycles;
        if (spec.version == MeVersion::Concatenated) shown = power_cycles(s_a, s_n, s_p, cycle_of_one(s_a, s_n));
        out << join_cycles(shown) << '\n';
      }
      if (s_lower) {
        const unsigned n = bit_width_for(s_n);
        std::vector<Qubit> work;
        for (unsigned j = 0; j < n; ++j) work.push_back(j);
        out << "lowered gates: " << lower_permutation(build_me_operator(spec, n), work).size() << '\n';
      }
      return 0;
    }

    if (exq->parsed()) {
      std::string text;
      if (e_qft > 0) {
        QftParams p{e_qft, Convention::Qiskit, std::nullopt, true};
        text = export_circuit_text(e_inverse ? build_iqft(p) : build_qft(p));
      } else {
        if (e_n == 0 || e_a == 0) throw CliFailure{2, "usage", "export-qasm needs --qft or --n and --a"};
        require_modulus(e_n);
        const unsigned n = bit_width_for(e_n);
        const unsigned m = *e_m_opt ? e_m : default_control_qubits(e_n);
        const auto qpe = assemble_qpe(m, StateVector::basis(n, 1), me_schedule(e_a, e_n, m, version_of(e_uver)));
        text = export_circuit_text(lower_circuit(qpe.circuit));
      }
      if (e_out.empty())
        out << text;
      else
        write_file(e_out, text);
      return 0;
    }

    if (val->parsed()) {
      require_modulus(v_n);
      const auto th = theoretical_histogram(v_a, v_n, v_m);
      const auto sim = simulated_histogram(v_a, v_n, v_m, version_of(v_uver));
      const double diff = max_abs_difference(th, sim);
      char buf[64];
      std::snprintf(buf, sizeof buf, "max_abs_diff: %.3e", diff);
      out << buf << '\n';
      bool ok;
      if (v_uver == 0) {
        ok = diff <= 1e-9;
      } else {
        const auto dt = dominant_peaks(th), ds = dominant_peaks(sim);
        out << "dominant (theory)   : " << join_indices(dt) << '\n';
        out << "dominant (simulated): " << join_indices(ds) << '\n';
        ok = dt == ds;
      }
      out << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? 0 : 1;
    }
  } catch (const CliFailure& f) {
    return fail(f);
  } catch (const DomainError& e) {
    return fail({2, "domain_error", e.what()});
  } catch (const std::exception& e) {
    return fail({1, "internal_error", e.what()});
  }
  return 0;
}

}  // namespace shorsim
