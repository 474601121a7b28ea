#pragma once

#include "rsic/types.hpp"

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace rsic {

enum class Variant {
    next_fit,
    modified_next_fit,
    first_fit,
    modified_first_fit,
    best_fit,
    worst_fit,
    last_fit,
    random_fit,
    mtf,
    greedy,
    departure_strategy,
    duration_strategy,
    hybrid,
    direct_sum,
};

struct PolicySpec {
    Variant variant = Variant::first_fit;
    std::int64_t threshold_num = 0;   // mnf/mff split; 0 = default D/(mu+1) resp. D/(mu+7)
    std::uint64_t seed = 0;           // random_fit permutation stream
    Tick tau = 0;                     // departure class width; 0 = default mu
    Tick base = 1;                    // duration strategy b
    std::int64_t alpha = 2;           // duration strategy ratio
    std::shared_ptr<const PolicySpec> inner; // direct_sum only, depth <= 1

    bool clairvoyant() const;

    static PolicySpec direct_sum_of(PolicySpec inner_spec);
};

// Parses the CLI/CSV policy syntax: a name from {next_fit, mnf, first_fit,
// mff, best_fit, worst_fit, last_fit, random_fit, mtf, greedy, departure,
// duration, hybrid, new_hybrid}, optionally followed by ":key=value,..."
// (e.g. "departure:tau=10", "random_fit:seed=7"). Throws ConfigError.
PolicySpec parse_policy(const std::string& text);
std::string policy_name(const PolicySpec& policy);

// All 14 catalog entries with default parameters.
std::vector<PolicySpec> all_policies();

// Checks parameter ranges against the capacity denominator. Throws ConfigError.
void validate_policy(const PolicySpec& policy, std::int64_t denominator);
inline void validate_policy(const PolicySpec& policy, const Instance& inst) {
    validate_policy(policy, inst.denominator);
}

// Job as seen by a placement decision: finish is withheld unless the policy
// is clairvoyant.
struct DecisionJob {
    std::int64_t id = 0;
    Tick arrival = 0;
    std::optional<Tick> finish;
    const SizeVec* size = nullptr;
};

// Orders the given active servers for one AnyFit decision of `variant`.
// `proj_dim` >= 0 restricts load norms to that coordinate (direct-sum pools).
// random_fit draws one permutation from `rng` per call. Remaining ties break
// by ascending open tick, then ascending id.
std::vector<std::int64_t> policy_order(Variant variant, std::span<const ServerState* const> servers,
                                       std::int64_t proj_dim, std::mt19937_64* rng);

bool fits(const ServerState& server, const SizeVec& size, std::int64_t denominator, std::int64_t proj_dim);

// First server in `order` that can host the job, or nullopt to open a new
// one. `servers_by_id` is indexed by server id.
std::optional<std::int64_t> anyfit_decision(const std::vector<std::int64_t>& order,
                                            const std::vector<ServerState>& servers_by_id,
                                            const SizeVec& size, std::int64_t denominator,
                                            std::int64_t proj_dim);

// Class key for the clairvoyant classed strategies.
// departure: floor(finish / tau); duration: smallest i >= 1 with duration <=
// b*alpha^i (0 if duration <= b); hybrid: (i, floor(arrival / 2^i)) with the
// smallest i >= 1 such that duration <= 2^i, capped at ceil(log2 mu) + 1.
struct ClassKey {
    std::int64_t a = 0;
    std::int64_t b = 0;
    auto operator<=>(const ClassKey&) const = default;
};
ClassKey classed_decision(const PolicySpec& policy, const DecisionJob& job, Tick instance_mu);

// Threshold split for modified_next_fit / modified_first_fit.
enum class SizeClass { small, large };
SizeClass threshold_split(const PolicySpec& policy, const SizeVec& size, std::int64_t denominator,
                          Tick instance_mu);
std::int64_t effective_threshold(const PolicySpec& policy, std::int64_t denominator, Tick instance_mu);

// Pool dimension for direct_sum: lowest coordinate attaining the max size.
std::int64_t direct_sum_decision(const SizeVec& size);

} // namespace rsic
