#pragma once

#include "rsic/policy.hpp"
#include "rsic/types.hpp"

#include <array>
#include <map>
#include <memory>
#include <queue>
#include <unordered_map>

namespace rsic {

struct TraceEvent {
    Tick tick = 0;
    std::int64_t job = 0;
    std::vector<std::int64_t> order;    // server order consulted, before the decision
    std::vector<std::int64_t> feasible; // subset of `order` that can host the job
    std::int64_t chosen = -1;
    bool opened_new = false;
    std::int64_t active_servers = 0;    // all pools, after the decision
};

struct Trace {
    std::vector<TraceEvent> events;
};

enum class TraceMode { full, counts_only, off };

// Incremental online engine: callers submit arrivals in order and advance the
// clock to trigger departures. One run is single-threaded and owns all state.
class PolicyRun {
public:
    PolicyRun(PolicySpec policy, std::int64_t dimension, std::int64_t denominator, Tick mu,
              TraceMode trace_mode = TraceMode::full);

    // Processes departures with finish < t. A job finishing at t frees its
    // capacity only after the arrivals at t have been placed, matching the
    // convention behind the reported experimental tables.
    void advance_to(Tick t);

    // Places one arriving job and returns the chosen server id. `finish` is
    // the real finish time when known; decisions only see it if the policy is
    // clairvoyant. Unknown finishes (interactive adversary play) disable the
    // departure bookkeeping for that job.
    std::int64_t submit(std::int64_t job_id, Tick arrival, const SizeVec& size,
                        std::optional<Tick> finish);

    const std::vector<ServerState>& servers() const { return servers_; }
    const std::map<std::int64_t, std::int64_t>& assignment() const { return assignment_; }
    std::int64_t active_server_count() const { return active_count_; }
    Trace take_trace() { return std::move(trace_); }

private:
    struct Pool {
        std::vector<std::int64_t> active; // creation order
        std::int64_t receiver = -1;       // next_fit lineage: sole receive-eligible server
        std::int64_t proj_dim = -1;
        std::unique_ptr<std::mt19937_64> rng;
    };
    // (direct-sum coordinate or 0, class key a, class key b)
    using PoolKey = std::array<std::int64_t, 3>;

    PoolKey classify(const DecisionJob& job) const;
    Pool& pool_for(const PoolKey& key);
    std::int64_t open_server(Pool& pool, Tick now);
    void assign(std::int64_t server_id, std::int64_t job_id, Tick now, const SizeVec& size,
                std::optional<Tick> finish);

    PolicySpec policy_;
    Variant base_variant_; // per-pool placement rule after unwrapping pools
    std::int64_t dimension_;
    std::int64_t denominator_;
    Tick mu_;
    TraceMode trace_mode_;

    std::vector<ServerState> servers_; // indexed by id
    std::map<PoolKey, Pool> pools_;
    std::map<std::int64_t, Pool*> pool_of_server_;
    std::map<std::int64_t, std::int64_t> assignment_;
    std::priority_queue<std::pair<Tick, std::int64_t>, std::vector<std::pair<Tick, std::int64_t>>,
                        std::greater<>>
        departures_; // (finish, job id)
    std::unordered_map<std::int64_t, std::int64_t> server_of_job_;
    std::unordered_map<std::int64_t, SizeVec> job_sizes_;
    std::int64_t active_count_ = 0;
    std::int64_t receive_seq_ = 0;
    Trace trace_;
};

struct RunResult {
    Schedule schedule;
    Trace trace;
};

// Runs the full online event loop: at each arrival tick, departures with
// finish < t are processed first, then arrivals at t in input order. The
// resulting schedule satisfies verify_schedule.
RunResult run_policy(const Instance& inst, const PolicySpec& policy,
                     TraceMode trace_mode = TraceMode::full);

// AnyFit evidence: every opened_new event must have an empty feasible set.
// Only meaningful for single-pool traces.
Violations check_anyfit(const Trace& trace, const Instance& inst);

// Monotone-ordering evidence: between consecutive events, a server that
// received nothing must not be overtaken by any server that survives with it.
// Reported violations carry the two event ticks and the overtaken server.
struct MonotoneViolation {
    Tick t = 0;
    Tick t_prime = 0;
    std::int64_t server = -1;
};
std::vector<MonotoneViolation> check_monotone(const Trace& trace);

// Per-event-tick server-count bound for monotone AnyFit policies: the active
// count just after tick t must not exceed the arrival mass of the trailing
// 2*mu and mu windows plus one.
Violations check_per_time_bound(const Trace& trace, const Instance& inst);

} // namespace rsic
