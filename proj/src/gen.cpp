#include "rsic/gen.hpp"

#include "rsic/core.hpp"

#include <algorithm>

namespace rsic {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw InternalError("uniform_below: zero bound");
    std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
    while (true) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

std::int64_t uniform_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

Instance uniform_instance(const GenParams& p) {
    if (p.d < 1 || p.n < 1 || p.E < 1 || p.mu < 1 || p.T <= p.mu)
        throw ConfigError("uniform_instance: invalid params (need d,n,E >= 1 and T > mu >= 1)");

    std::mt19937_64 rng(p.seed);
    Instance inst;
    inst.dimension = p.d;
    inst.denominator = p.E;
    inst.mu = p.mu;
    inst.jobs.reserve(static_cast<std::size_t>(p.n));
    for (std::int64_t i = 0; i < p.n; ++i) {
        Job j;
        j.arrival = uniform_range(rng, 0, p.T - p.mu);
        j.finish = j.arrival + uniform_range(rng, 1, p.mu);
        j.size.reserve(static_cast<std::size_t>(p.d));
        for (std::int64_t k = 0; k < p.d; ++k) j.size.push_back(uniform_range(rng, 1, p.E));
        inst.jobs.push_back(std::move(j));
    }
    std::stable_sort(inst.jobs.begin(), inst.jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) inst.jobs[i].id = static_cast<std::int64_t>(i);
    return inst;
}

Instance lift_identity(const Instance& h, std::int64_t d) {
    if (h.dimension != 1) throw ConfigError("lift_identity: input must be 1-dimensional");
    if (d < 1) throw ConfigError("lift_identity: d must be >= 1");

    Instance out;
    out.dimension = d;
    out.denominator = h.denominator;
    out.mu = h.mu;
    out.jobs.reserve(h.jobs.size() * static_cast<std::size_t>(d));
    std::int64_t id = 0;
    for (const Job& j : h.jobs) {
        for (std::int64_t k = 0; k < d; ++k) {
            Job copy;
            copy.id = id++;
            copy.arrival = j.arrival;
            copy.finish = j.finish;
            copy.size.assign(static_cast<std::size_t>(d), 0);
            copy.size[static_cast<std::size_t>(k)] = j.size[0];
            out.jobs.push_back(std::move(copy));
        }
    }
    return out;
}

} // namespace rsic
