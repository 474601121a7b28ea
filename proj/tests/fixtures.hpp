#pragma once

#include "rsic/types.hpp"

#include <random>

namespace rsic::testing {

inline Job mk_job(std::int64_t id, Tick a, Tick f, SizeVec size) {
    Job j;
    j.id = id;
    j.arrival = a;
    j.finish = f;
    j.size = std::move(size);
    return j;
}

// Four-job 2-d worked example over denominator 10:
// sizes [5,2], [2,9], [2,3], [6,1]; first_fit cost 15, optimum 15, lb 13.
inline Instance example1() {
    Instance inst;
    inst.dimension = 2;
    inst.denominator = 10;
    inst.mu = 6;
    inst.jobs = {
        mk_job(0, 0, 6, {5, 2}),
        mk_job(1, 1, 4, {2, 9}),
        mk_job(2, 3, 9, {2, 3}),
        mk_job(3, 5, 8, {6, 1}),
    };
    return inst;
}

// The worked example's reference assignment: jobs 0,2 -> server 0;
// job 1 -> server 1; job 3 -> server 2.
inline Schedule example1_reference_schedule() {
    Schedule s;
    s.policy = "first_fit";
    s.assignment = {{0, 0}, {1, 1}, {2, 0}, {3, 2}};
    s.servers = {{0, 0, 9}, {1, 1, 4}, {2, 5, 8}};
    s.total_cost = 15;
    return s;
}

inline Instance single_job(Tick a, Tick f, SizeVec size, std::int64_t denominator, Tick mu) {
    Instance inst;
    inst.dimension = static_cast<std::int64_t>(size.size());
    inst.denominator = denominator;
    inst.mu = mu;
    inst.jobs = {mk_job(0, a, f, std::move(size))};
    return inst;
}

// Small random instances for property tests; independent of rsic::gen.
inline Instance random_small_instance(std::mt19937_64& rng, std::int64_t d, std::int64_t n,
                                      Tick horizon, Tick mu, std::int64_t denominator) {
    Instance inst;
    inst.dimension = d;
    inst.denominator = denominator;
    inst.mu = mu;
    std::uniform_int_distribution<Tick> arrival(0, horizon - 1);
    std::uniform_int_distribution<Tick> dur(1, mu);
    std::uniform_int_distribution<std::int64_t> comp(1, denominator);
    std::vector<Tick> arrivals;
    for (std::int64_t i = 0; i < n; ++i) arrivals.push_back(arrival(rng));
    std::sort(arrivals.begin(), arrivals.end());
    for (std::int64_t i = 0; i < n; ++i) {
        Job j;
        j.id = i;
        j.arrival = arrivals[static_cast<std::size_t>(i)];
        j.finish = j.arrival + dur(rng);
        for (std::int64_t k = 0; k < d; ++k) j.size.push_back(comp(rng));
        inst.jobs.push_back(std::move(j));
    }
    return inst;
}

} // namespace rsic::testing
