#pragma once

#include <string>

#include "shorsim/contfrac.hpp"
#include "shorsim/shor.hpp"

namespace shorsim {

std::string extraction_json(const Extraction& e);
std::string report_json(const RunReport& r);

/// Columns: index,bitstring,probability,count.
std::string histogram_csv(const Histogram& h, unsigned m);
Histogram parse_histogram_csv(const std::string& text);
Histogram to_histogram(std::span<const double> dist, double cutoff = 1e-15);

/// One row per index; bars scale to at most `width` columns.
std::string ascii_chart(const Histogram& h, unsigned m, unsigned width = 60);

}  // namespace shorsim
