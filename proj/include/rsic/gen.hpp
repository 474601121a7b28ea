#pragma once

#include "rsic/types.hpp"

#include <random>

namespace rsic {

struct GenParams {
    std::int64_t d = 1;
    std::int64_t n = 1;
    Tick T = 2;
    Tick mu = 1;
    std::int64_t E = 1; // capacity denominator, sizes drawn from {1..E}
    std::uint64_t seed = 0;
};

// Generator identifier recorded in bench metadata; replay is exact for a
// fixed build of this library.
inline constexpr const char* kGeneratorName = "mt19937_64+rejection";

// Unbiased integer draw in [0, bound) by rejection sampling.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
std::int64_t uniform_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

// n jobs with arrival ~ U[0, T-mu], duration ~ U[1, mu], size components
// ~ U[1, E], drawn per job in the order (arrival, duration, size[0..d-1])
// from mt19937_64(seed), then stably sorted by arrival. Job ids follow the
// final order.
Instance uniform_instance(const GenParams& p);

// Lifts a 1-d instance to d dimensions: each job becomes d copies with the
// same interval, copy j carrying the original size at coordinate j and zero
// elsewhere. Copies are ordered by (original index, j).
Instance lift_identity(const Instance& h, std::int64_t d);

} // namespace rsic
