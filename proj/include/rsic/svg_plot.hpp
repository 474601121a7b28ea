#pragma once

#include <string>

namespace rsic {

// Renders a bench CSV into a self-contained SVG: one panel per (d, T) pair,
// x = mu (categorical), y = ratio, one polyline per policy. Rows without a
// numeric ratio (error rows) are skipped. Throws ParseError when the CSV
// lacks the required columns.
std::string plot_bench_csv(const std::string& csv_text);

} // namespace rsic
