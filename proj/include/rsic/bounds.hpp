#pragma once

#include "rsic/types.hpp"

#include <string>
#include <vector>

namespace rsic {

// Per-segment ceiling lower bound on the optimal cost: every segment needs at
// least ceil(max componentwise load / D) servers for its whole length.
Tick opt_lower_bound(const Instance& inst);

// max(span, utilization / d), exact.
Rat simple_lower_bound(const Instance& inst);

// Sum of max size components over jobs arriving in [t - w, t), over D.
// The half-open window makes the discrete windowed-mass identity exact:
// summing over unit ticks yields w times the total arrival mass.
Rat windowed_arrival_mass(const Instance& inst, Tick t, Tick w);

struct BruteForceResult {
    Tick cost = 0;
    Schedule schedule;
};

// Exact optimum by exhaustive set-partition enumeration. A group is feasible
// iff its combined load stays within capacity on every segment; its cost is
// the measure of its interval union (gaps split the group into consecutive
// single-use servers). The witness is the first minimum in restricted-growth
// enumeration order, so results are deterministic and order independent.
BruteForceResult brute_force_opt(const Instance& inst, std::size_t job_limit = 8);

// (sum of costs) / (sum of lower bounds), rendered to 4 decimal places.
std::string ratio_of_averages(const std::vector<Tick>& costs, const std::vector<Tick>& lbs);

struct RatioReport {
    std::string policy;
    std::int64_t d = 0;
    Tick T = 0;
    Tick mu = 0;
    std::int64_t n = 0;
    std::int64_t E = 0;
    std::int64_t trials = 0;
    std::uint64_t base_seed = 0;
    Rat avg_cost;
    Rat avg_lb;
    std::string ratio; // decimal string, ratio of averages

    // Trial t ran on seed base_seed + t.
    std::vector<std::uint64_t> seeds() const {
        std::vector<std::uint64_t> out;
        for (std::int64_t t = 0; t < trials; ++t) out.push_back(base_seed + static_cast<std::uint64_t>(t));
        return out;
    }
};

} // namespace rsic
