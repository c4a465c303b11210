#include "shorsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "shorsim/errors.hpp"

namespace shorsim {

using ojson = nlohmann::ordered_json;

namespace {

ojson extraction_node(const Extraction& e) {
  ojson j;
  j["l_measured"] = e.ell;
  j["bits"] = binary_digits(e.ell, e.m);
  j["phi"] = {e.phase.num, e.phase.den};
  j["cont_frac"] = e.expansion.coefficients;
  ojson rows = ojson::array();
  for (const auto& row : e.rows) {
    ojson r;
    r["convergent"] = {row.convergent.p, row.convergent.q};
    r["r"] = row.convergent.q;
    r["verdict"] = row.tested ? verdict_name(row.check.verdict) : "skipped";
    if (row.tested && row.check.verdict == Verdict::Factors)
      r["factors"] = {row.check.f1, row.check.f2};
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["period"] = e.period ? ojson(*e.period) : ojson(nullptr);
  return j;
}

std::string probability_text(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

}  // namespace

std::string extraction_json(const Extraction& e) { return extraction_node(e).dump(2); }

std::string report_json(const RunReport& r) {
  ojson j;
  ojson cfg;
  cfg["N"] = r.config.N;
  cfg["a"] = r.config.a ? ojson(*r.config.a) : ojson(nullptr);
  cfg["m"] = r.config.m ? ojson(*r.config.m) : ojson(nullptr);
  cfg["n_epsilon"] = r.config.n_epsilon;
  cfg["u_ver"] = static_cast<int>(r.config.me_version);
  cfg["shots"] = r.config.shots ? ojson(*r.config.shots) : ojson(nullptr);
  cfg["seed"] = r.config.seed;
  cfg["error_inject"] = r.config.error_inject;
  cfg["convention"] = r.config.convention == Convention::Qiskit ? "qiskit" : "physmath";
  j["config"] = cfg;
  j["a"] = r.a;
  j["n"] = r.n;
  j["m"] = r.m;
  j["classical"] = r.classical;
  ojson hist = ojson::array();
  for (const auto& [ell, e] : r.histogram)
    hist.push_back({{"index", ell}, {"probability", e.probability}, {"count", e.count}});
  j["histogram"] = hist;
  ojson peaks = ojson::array();
  for (const auto& p : r.peaks) {
    ojson pk;
    pk["measured"] = p.measured;
    pk["analysed"] = p.analysed;
    pk["probability"] = p.probability;
    pk["count"] = p.count;
    pk["reason"] = p.reason();
    pk["trace"] = extraction_node(p.extraction);
    peaks.push_back(pk);
  }
  j["peaks"] = peaks;
  j["period"] = r.period ? ojson(*r.period) : ojson(nullptr);
  j["factors"] = r.factors ? ojson({r.factors->first, r.factors->second}) : ojson(nullptr);
  j["failure_reason"] = r.success() ? ojson(nullptr) : ojson(r.failure_reason);
  j["attempts"] = r.attempts;
  return j.dump(2);
}

std::string histogram_csv(const Histogram& h, unsigned m) {
  std::ostringstream os;
  os << "index,bitstring,probability,count\n";
  for (const auto& [ell, e] : h)
    os << ell << ',' << binary_digits(ell, m) << ',' << probability_text(e.probability) << ','
       << e.count << '\n';
  return os.str();
}

Histogram parse_histogram_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "index,bitstring,probability,count")
    throw DomainError("missing histogram CSV header");
  Histogram h;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, bits, prob, count;
    if (!std::getline(row, idx, ',') || !std::getline(row, bits, ',') ||
        !std::getline(row, prob, ',') || !std::getline(row, count))
      throw DomainError("malformed histogram row: " + line);
    try {
      h[std::stoull(idx)] = {std::stod(prob), std::stoull(count)};
    } catch (const std::exception&) {
      throw DomainError("malformed histogram row: " + line);
    }
  }
  return h;
}

Histogram to_histogram(std::span<const double> dist, double cutoff) {
  Histogram h;
  for (BasisIndex i = 0; i < dist.size(); ++i)
    if (dist[i] > cutoff) h[i] = {dist[i], 0};
  return h;
}

std::string ascii_chart(const Histogram& h, unsigned m, unsigned width) {
  double mx = 0;
  for (const auto& [ell, e] : h) mx = std::max(mx, e.probability);
  std::ostringstream os;
  for (const auto& [ell, e] : h) {
    const auto bar = mx > 0 ? static_cast<unsigned>(std::lround(e.probability / mx * width)) : 0u;
    if (bar == 0) continue;
    char head[64];
    std::snprintf(head, sizeof head, "%6llu %s %.6f |", static_cast<unsigned long long>(ell),
                  binary_digits(ell, m).c_str(), e.probability);
    os << head << std::string(bar, '#') << '\n';
  }
  return os.str();
}

}  // namespace shorsim
