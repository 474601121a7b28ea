#pragma once

#include "rsic/bounds.hpp"
#include "rsic/policy.hpp"
#include "rsic/types.hpp"

#include <string>
#include <vector>

namespace rsic {

struct BenchGrid {
    std::vector<std::string> policies;
    std::vector<std::int64_t> d_list;
    std::vector<Tick> T_list;
    std::vector<Tick> mu_list;
    std::int64_t n = 10000;
    std::int64_t E = 1000;
    std::int64_t trials = 20;
    std::uint64_t base_seed = 1;
};

inline constexpr const char* kBenchCsvHeader =
    "policy,d,T,mu,n,trials,base_seed,avg_cost,avg_lb,ratio,notes";

// Convention choices recorded on every row so tables are comparable across
// implementations.
extern const char* kBenchNotes;

// One (policy, d, T, mu) cell: `trials` instances seeded base_seed + trial,
// ratio of average policy cost to average opt_lower_bound.
RatioReport bench_cell(const PolicySpec& policy, std::int64_t d, Tick T, Tick mu, std::int64_t n,
                       std::int64_t E, std::int64_t trials, std::uint64_t base_seed);

// Full grid as CSV text, rows ordered by (policy list order, d, T, mu)
// with the numeric axes ascending. A failing cell contributes an error row;
// remaining cells still run.
std::string bench_csv(const BenchGrid& grid);

} // namespace rsic
