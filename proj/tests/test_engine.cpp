#include "rsic/engine.hpp"

#include "rsic/bounds.hpp"
#include "rsic/core.hpp"
#include "rsic/gen.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace rsic;
using namespace rsic::testing;

namespace {

std::map<std::int64_t, std::int64_t> assignment_of(const Instance& inst, const std::string& policy) {
    return run_policy(inst, parse_policy(policy)).schedule.assignment;
}

} // namespace

TEST_CASE("first_fit reproduces the worked example") {
    RunResult r = run_policy(example1(), parse_policy("first_fit"));
    CHECK(r.schedule.total_cost == 15);
    CHECK(verify_schedule(example1(), r.schedule).empty());
    std::map<std::int64_t, std::int64_t> expected{{0, 0}, {1, 1}, {2, 0}, {3, 2}};
    CHECK(r.schedule.assignment == expected);
    REQUIRE(r.schedule.servers.size() == 3);
    CHECK(r.schedule.servers[0].close - r.schedule.servers[0].open == 9);
    CHECK(r.schedule.servers[1].close - r.schedule.servers[1].open == 3);
    CHECK(r.schedule.servers[2].close - r.schedule.servers[2].open == 3);
}

TEST_CASE("greedy reproduces the worked example") {
    RunResult r = run_policy(example1(), parse_policy("greedy"));
    CHECK(r.schedule.total_cost == 15);
    std::map<std::int64_t, std::int64_t> expected{{0, 0}, {1, 1}, {2, 0}, {3, 2}};
    CHECK(r.schedule.assignment == expected);
}

TEST_CASE("next_fit seals the current server on a failed fit") {
    RunResult r = run_policy(example1(), parse_policy("next_fit"));
    CHECK(r.schedule.total_cost == 15);
    // Job 2 fails dim 2 against server 1 (9+3 > 10), so a third server opens
    // and also receives job 3.
    std::map<std::int64_t, std::int64_t> expected{{0, 0}, {1, 1}, {2, 2}, {3, 2}};
    CHECK(r.schedule.assignment == expected);
}

TEST_CASE("any policy pays exactly the duration for a single job") {
    Instance inst = single_job(0, 5, {3}, 10, 5);
    for (const PolicySpec& p : all_policies()) {
        CHECK(run_policy(inst, p).schedule.total_cost == 5);
    }
}

TEST_CASE("all policies produce verifiable schedules on random instances") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        Instance inst = random_small_instance(rng, 1 + trial % 3, 12, 30, 6, 10);
        REQUIRE(validate_instance(inst).empty());
        for (const PolicySpec& p : all_policies()) {
            RunResult r = run_policy(inst, p);
            INFO("policy ", policy_name(p), " trial ", trial);
            CHECK(verify_schedule(inst, r.schedule).empty());
            CHECK(r.trace.events.size() == inst.jobs.size());
            for (std::size_t i = 0; i < r.trace.events.size(); ++i) {
                const TraceEvent& ev = r.trace.events[i];
                CHECK(ev.job == inst.jobs[i].id); // one event per job, in order
                if (ev.opened_new) {
                    CHECK(ev.feasible.empty());
                } else {
                    CHECK(std::find(ev.feasible.begin(), ev.feasible.end(), ev.chosen) !=
                          ev.feasible.end());
                }
            }
        }
    }
}

namespace {

// Minimal reference first_fit, structured nothing like the engine: flat
// vectors, no pools, linear scans. Departures at t release after arrivals.
std::map<std::int64_t, std::int64_t> reference_first_fit(const Instance& inst) {
    struct Srv {
        LoadVec load;
        std::vector<std::pair<Tick, SizeVec>> alive; // (finish, size)
        bool open = true;
    };
    std::vector<Srv> servers;
    std::map<std::int64_t, std::int64_t> assignment;
    for (const Job& job : inst.jobs) {
        for (Srv& s : servers) {
            std::vector<std::pair<Tick, SizeVec>> keep;
            for (auto& [f, sz] : s.alive) {
                if (f < job.arrival) {
                    for (std::size_t d = 0; d < sz.size(); ++d) s.load[d] -= sz[d];
                } else {
                    keep.emplace_back(f, sz);
                }
            }
            s.alive = std::move(keep);
            if (s.alive.empty()) s.open = false; // single-use
        }
        std::int64_t chosen = -1;
        for (std::size_t i = 0; i < servers.size(); ++i) {
            if (!servers[i].open) continue;
            bool ok = true;
            for (std::size_t d = 0; d < job.size.size(); ++d) {
                if (servers[i].load[d] + job.size[d] > inst.denominator) ok = false;
            }
            if (ok) {
                chosen = static_cast<std::int64_t>(i);
                break;
            }
        }
        if (chosen < 0) {
            servers.push_back({LoadVec(job.size.size(), 0), {}, true});
            chosen = static_cast<std::int64_t>(servers.size() - 1);
        }
        Srv& s = servers[static_cast<std::size_t>(chosen)];
        for (std::size_t d = 0; d < job.size.size(); ++d) s.load[d] += job.size[d];
        s.alive.emplace_back(job.finish, job.size);
        assignment[job.id] = chosen;
    }
    return assignment;
}

} // namespace

TEST_CASE("engine first_fit matches an independent reference simulator") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 60; ++trial) {
        // Narrow horizon so arrival/finish tick collisions are frequent.
        Instance inst = random_small_instance(rng, 1 + trial % 3, 30, 12, 4, 10);
        RunResult r = run_policy(inst, parse_policy("first_fit"), TraceMode::off);
        CHECK(r.schedule.assignment == reference_first_fit(inst));
    }
}

TEST_CASE("empty instances cost nothing") {
    Instance empty;
    empty.dimension = 1;
    empty.denominator = 10;
    empty.mu = 1;
    RunResult r = run_policy(empty, parse_policy("first_fit"));
    CHECK(r.schedule.total_cost == 0);
    CHECK(r.schedule.servers.empty());
    CHECK(r.trace.events.empty());
}

TEST_CASE("check_anyfit accepts the worked example trace") {
    RunResult r = run_policy(example1(), parse_policy("first_fit"));
    CHECK(check_anyfit(r.trace, example1()).empty());
}

TEST_CASE("runs are deterministic including random_fit seeds") {
    std::mt19937_64 rng(5);
    Instance inst = random_small_instance(rng, 2, 20, 25, 4, 10);
    for (const char* name : {"random_fit:seed=3", "mtf", "greedy", "new_hybrid"}) {
        RunResult a = run_policy(inst, parse_policy(name));
        RunResult b = run_policy(inst, parse_policy(name));
        CHECK(a.schedule.assignment == b.schedule.assignment);
        CHECK(a.schedule.total_cost == b.schedule.total_cost);
        REQUIRE(a.trace.events.size() == b.trace.events.size());
        for (std::size_t i = 0; i < a.trace.events.size(); ++i) {
            CHECK(a.trace.events[i].order == b.trace.events[i].order);
            CHECK(a.trace.events[i].chosen == b.trace.events[i].chosen);
        }
    }
}

TEST_CASE("anyfit evidence holds for the anyfit family") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_small_instance(rng, 1 + trial % 2, 15, 30, 5, 10);
        for (const char* name : {"first_fit", "last_fit", "best_fit", "worst_fit", "mtf", "greedy",
                                 "random_fit:seed=9"}) {
            RunResult r = run_policy(inst, parse_policy(name));
            CHECK(check_anyfit(r.trace, inst).empty());
        }
    }
}

TEST_CASE("check_anyfit flags a synthetic violation") {
    Trace t;
    TraceEvent ev;
    ev.opened_new = true;
    ev.feasible = {0};
    t.events.push_back(ev);
    CHECK(check_anyfit(t, example1()).size() == 1);
    CHECK(check_anyfit(Trace{}, example1()).empty());
}

TEST_CASE("monotone family stays monotone on a random corpus") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst = random_small_instance(rng, 1 + trial % 2, 10, 25, 5, 10);
        for (const char* name : {"first_fit", "last_fit", "mtf", "greedy"}) {
            RunResult r = run_policy(inst, parse_policy(name));
            INFO("policy ", name, " trial ", trial);
            CHECK(check_monotone(r.trace).empty());
        }
    }
}

TEST_CASE("best_fit breaks monotonicity when a departure reorders servers") {
    Instance inst;
    inst.dimension = 1;
    inst.denominator = 10;
    inst.mu = 10;
    inst.jobs = {
        mk_job(0, 0, 2, {6}),  // fills server 0, departs early
        mk_job(1, 0, 10, {5}), // forces server 1
        mk_job(2, 1, 10, {1}), // joins server 0 (fuller), keeps it alive
        mk_job(3, 3, 4, {1}),  // after job 0 departs, server 1 is now fuller
    };
    REQUIRE(validate_instance(inst).empty());
    RunResult r = run_policy(inst, parse_policy("best_fit"));
    std::vector<MonotoneViolation> vs = check_monotone(r.trace);
    REQUIRE(!vs.empty());
    CHECK(vs[0].t == 1);
    CHECK(vs[0].t_prime == 3);
}

TEST_CASE("mtf puts the receiving server first in the next snapshot") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_small_instance(rng, 1, 12, 20, 4, 10);
        RunResult r = run_policy(inst, parse_policy("mtf"));
        for (std::size_t i = 0; i + 1 < r.trace.events.size(); ++i) {
            const auto& next = r.trace.events[i + 1].order;
            std::int64_t receiver = r.trace.events[i].chosen;
            bool survived = std::find(next.begin(), next.end(), receiver) != next.end();
            if (survived) CHECK(next.front() == receiver);
        }
    }
}

TEST_CASE("greedy picks the feasible server with maximal finish time") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        Instance inst = random_small_instance(rng, 1 + trial % 2, 12, 25, 5, 10);
        RunResult r = run_policy(inst, parse_policy("greedy"));
        // Independent state tracker: recompute each server's max finish as the
        // trace replays.
        std::map<std::int64_t, Tick> max_finish;
        std::map<std::int64_t, const Job*> job_of;
        for (const Job& j : inst.jobs) job_of[j.id] = &j;
        for (const TraceEvent& ev : r.trace.events) {
            if (!ev.opened_new) {
                REQUIRE(!ev.feasible.empty());
                Tick chosen_finish = max_finish.at(ev.chosen);
                for (std::int64_t sid : ev.feasible) CHECK(chosen_finish >= max_finish.at(sid));
            }
            Tick f = job_of.at(ev.job)->finish;
            auto [it, fresh] = max_finish.try_emplace(ev.chosen, f);
            if (!fresh) it->second = std::max(it->second, f);
        }
    }
}

TEST_CASE("per-time bound holds for monotone anyfit policies") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        Instance inst = random_small_instance(rng, 1 + trial % 2, 15, 20, 4, 10);
        for (const char* name : {"first_fit", "last_fit", "mtf", "greedy"}) {
            RunResult r = run_policy(inst, parse_policy(name));
            INFO("policy ", name, " trial ", trial);
            CHECK(check_per_time_bound(r.trace, inst).empty());
        }
    }
}

TEST_CASE("worst-case cost guarantee holds for monotone anyfit policies") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        std::int64_t d = 1 + trial % 2;
        Instance inst = random_small_instance(rng, d, 15, 20, 4, 10);
        Tick lb = opt_lower_bound(inst);
        for (const char* name : {"first_fit", "last_fit", "mtf", "greedy"}) {
            Tick cost = run_policy(inst, parse_policy(name), TraceMode::off).schedule.total_cost;
            CHECK(cost <= (3 * d * inst.mu + 1) * lb);
        }
    }
}

TEST_CASE("threshold pools separate large and small jobs") {
    Instance inst;
    inst.dimension = 1;
    inst.denominator = 10;
    inst.mu = 1; // mnf threshold 10/(1+1) = 5
    inst.jobs = {
        mk_job(0, 0, 1, {6}), // large
        mk_job(1, 0, 1, {2}), // small: must not share the large job's server
        mk_job(2, 0, 1, {6}), // large again
    };
    RunResult r = run_policy(inst, parse_policy("mnf"));
    CHECK(r.schedule.assignment.at(0) != r.schedule.assignment.at(1));
    // next_fit within the large pool: job 2 cannot join job 0 (12 > 10).
    CHECK(r.schedule.assignment.at(2) != r.schedule.assignment.at(0));
    CHECK(verify_schedule(inst, r.schedule).empty());
}

TEST_CASE("classed strategies keep class pools disjoint") {
    Instance inst;
    inst.dimension = 1;
    inst.denominator = 10;
    inst.mu = 8;
    inst.jobs = {
        mk_job(0, 0, 1, {1}), // duration 1
        mk_job(1, 0, 8, {1}), // duration 8: different duration class
        mk_job(2, 0, 1, {1}), // duration 1 again: shares job 0's pool
    };
    RunResult r = run_policy(inst, parse_policy("duration"));
    CHECK(r.schedule.assignment.at(0) != r.schedule.assignment.at(1));
    CHECK(r.schedule.assignment.at(2) == r.schedule.assignment.at(0));
}

TEST_CASE("direct sum routes pools by max coordinate and matches 1-d runs") {
    std::mt19937_64 rng(71);
    Instance h = random_small_instance(rng, 1, 15, 20, 4, 10);
    Instance lifted = lift_identity(h, 3);
    REQUIRE(validate_instance(lifted).empty());
    for (const char* name : {"first_fit", "greedy", "hybrid"}) {
        Tick base = run_policy(h, parse_policy(name), TraceMode::off).schedule.total_cost;
        PolicySpec ds = PolicySpec::direct_sum_of(parse_policy(name));
        RunResult r = run_policy(lifted, ds, TraceMode::off);
        CHECK(r.schedule.total_cost == 3 * base);
        CHECK(verify_schedule(lifted, r.schedule).empty());
    }
}

TEST_CASE("clairvoyant policies demand the finish time") {
    PolicyRun run(parse_policy("greedy"), 1, 10, 5, TraceMode::off);
    SizeVec size{5};
    CHECK_THROWS_AS(run.submit(0, 0, size, std::nullopt), InternalError);
}

TEST_CASE("non-clairvoyant play works without finish times") {
    PolicyRun run(parse_policy("first_fit"), 1, 10, 5, TraceMode::off);
    SizeVec big{7}, small{3};
    CHECK(run.submit(0, 0, big, std::nullopt) == 0);
    CHECK(run.submit(1, 0, small, std::nullopt) == 0);
    CHECK(run.submit(2, 0, big, std::nullopt) == 1);
    CHECK(run.active_server_count() == 2);
}
