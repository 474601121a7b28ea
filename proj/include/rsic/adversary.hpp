#pragma once

#include "rsic/policy.hpp"
#include "rsic/types.hpp"

#include <string>

namespace rsic {

struct AdversaryResult {
    std::int64_t k = 0;
    std::int64_t d_prime = 0; // C(2k, k) * k; also the instance dimension and denominator
    Tick mu = 1;
    bool clairvoyant = false;
    std::string policy;
    Instance instance;
    Schedule alg_schedule;
    Schedule adv_schedule;
    std::int64_t alg_bin_count = 0;
    std::int64_t adv_server_count = 0;
    std::string empirical_ratio; // alg cost / adv cost, 4 decimals
};

std::int64_t binomial(std::int64_t n, std::int64_t r);

// Adaptive coloring-style construction: d' jobs all arriving at tick 0, sizes
// chosen so that no algorithm bin can ever exceed k jobs while the adversary
// packs everything into at most 2k servers. Round i picks the smallest
// k-subset A_i of [2k] avoiding the forbidden family from full bins, and the
// adversary places the job on the member of A_i with fewest jobs. Afterwards
// the jobs of the adversary server touching the most distinct algorithm bins
// get duration mu, all others duration 1 (all 1 for clairvoyant policies).
AdversaryResult run_deterministic_adversary(std::int64_t k, Tick mu, const PolicySpec& policy);

// 1-d distributional input: k^2 jobs of size 1/k at tick 0; a uniformly
// random k-subset gets duration mu, the rest duration 1.
Instance sample_randomized_1d(std::int64_t k, Tick mu, std::uint64_t seed);

// Oblivious variant: a target server Q is drawn once; each round uses a
// uniformly random k-subset and a uniformly random member of it, and the job
// gets duration mu iff it lands on Q. Coin flips never depend on the
// algorithm's decisions.
AdversaryResult run_randomized_dd(std::int64_t k, Tick mu, std::uint64_t seed,
                                  const PolicySpec& policy);

std::string adversary_result_to_json(const AdversaryResult& result, bool embed);

} // namespace rsic
