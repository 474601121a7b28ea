// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected table values and tolerances are pinned in code.

#include "rsic/adversary.hpp"
#include "rsic/bench.hpp"
#include "rsic/bounds.hpp"
#include "rsic/core.hpp"
#include "rsic/engine.hpp"
#include "rsic/gen.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace rsic;
using namespace rsic::testing;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// --- criterion 1: the worked example, exact ------------------------------

void criterion1() {
    Instance inst = example1();
    bool ok = true;
    std::string detail;

    RunResult ff = run_policy(inst, parse_policy("first_fit"));
    ok &= ff.schedule.total_cost == 15;
    std::vector<Tick> server_costs;
    for (const ScheduleServer& s : ff.schedule.servers) server_costs.push_back(s.close - s.open);
    ok &= server_costs == std::vector<Tick>{9, 3, 3};

    // Both reference values are recomputed by the independent oracles first.
    Tick lb_oracle = per_tick_lower_bound(inst);
    Tick opt_oracle = recursive_opt(inst);
    ok &= lb_oracle == 13 && opt_lower_bound(inst) == 13;
    ok &= opt_oracle == 15 && brute_force_opt(inst).cost == 15;

    detail = "first_fit cost " + std::to_string(ff.schedule.total_cost) + " servers {9,3,3}, lb " +
             std::to_string(opt_lower_bound(inst)) + " (oracle " + std::to_string(lb_oracle) +
             "), opt " + std::to_string(brute_force_opt(inst).cost) + " (oracle " +
             std::to_string(opt_oracle) + ")";
    report(1, ok, detail);
}

// --- criteria 2 and 3: table reproduction at desk scale -------------------

struct TableCheck {
    std::string policy;
    double expected;
    double measured = 0.0;
};

// Shares the generated instances and lower bounds across all policies of a cell.
void run_table_cell(std::int64_t d, Tick T, Tick mu, std::vector<TableCheck>& checks) {
    constexpr std::int64_t kTrials = 20;
    constexpr std::int64_t kJobs = 10000;
    constexpr std::int64_t kE = 1000;
    constexpr std::uint64_t kSeed = 42;

    std::vector<Instance> instances;
    std::vector<Tick> lbs;
    for (std::int64_t trial = 0; trial < kTrials; ++trial) {
        instances.push_back(uniform_instance({d, kJobs, T, mu, kE, kSeed + static_cast<std::uint64_t>(trial)}));
        lbs.push_back(opt_lower_bound(instances.back()));
    }
    Tick lb_sum = 0;
    for (Tick l : lbs) lb_sum += l;
    for (TableCheck& check : checks) {
        PolicySpec p = parse_policy(check.policy);
        Tick cost_sum = 0;
        for (const Instance& inst : instances)
            cost_sum += run_policy(inst, p, TraceMode::off).schedule.total_cost;
        check.measured = static_cast<double>(cost_sum) / static_cast<double>(lb_sum);
    }
}

void criterion2() {
    Timer timer;
    std::vector<TableCheck> mu10 = {
        {"next_fit", 1.49}, {"first_fit", 1.27}, {"mtf", 1.24}, {"greedy", 1.19}};
    std::vector<TableCheck> mu100 = {{"best_fit", 1.11}};
    run_table_cell(1, 1000, 10, mu10);
    run_table_cell(1, 1000, 100, mu100);

    bool ok = true;
    std::string detail = "d=1 T=1000:";
    for (const auto& group : {mu10, mu100}) {
        for (const TableCheck& c : group) {
            bool in_tol = std::abs(c.measured - c.expected) <= 0.05;
            ok &= in_tol;
            char buf[96];
            std::snprintf(buf, sizeof buf, " %s %.4f (table %.2f)%s", c.policy.c_str(), c.measured,
                          c.expected, in_tol ? "" : " OUT");
            detail += buf;
        }
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, " [%.1fs]", timer.seconds());
    report(2, ok, detail + buf);
}

void criterion3() {
    Timer timer;
    std::vector<TableCheck> t2 = {{"greedy", 1.25}, {"mtf", 1.27}, {"next_fit", 1.36}};
    std::vector<TableCheck> t3 = {{"greedy", 1.58}};
    run_table_cell(2, 5000, 5, t2);
    run_table_cell(5, 10000, 100, t3);

    bool ok = true;
    std::string detail = "d=2 T=5000 mu=5:";
    for (const TableCheck& c : t2) {
        bool in_tol = std::abs(c.measured - c.expected) <= 0.05;
        ok &= in_tol;
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s %.4f (table %.2f)%s", c.policy.c_str(), c.measured,
                      c.expected, in_tol ? "" : " OUT");
        detail += buf;
    }
    detail += "; d=5 T=10000 mu=100:";
    for (const TableCheck& c : t3) {
        bool in_tol = std::abs(c.measured - c.expected) <= 0.05;
        ok &= in_tol;
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s %.4f (table %.2f)%s", c.policy.c_str(), c.measured,
                      c.expected, in_tol ? "" : " OUT");
        detail += buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, " [%.1fs]", timer.seconds());
    report(3, ok, detail + buf);
}

// --- criterion 4: sandwich on 200 tiny instances --------------------------

Instance tiny_instance(std::uint64_t seed) {
    GenParams p;
    p.d = 1 + static_cast<std::int64_t>(seed % 2);
    p.n = 1 + static_cast<std::int64_t>(seed % 7);
    p.mu = 1 + static_cast<Tick>(seed % 5);
    p.T = p.mu + 5 + static_cast<Tick>(seed % 10);
    p.E = 10;
    p.seed = seed;
    return uniform_instance(p);
}

void criterion4() {
    Timer timer;
    bool ok = true;
    std::string first_failure;
    std::vector<PolicySpec> policies = all_policies();
    for (std::uint64_t seed = 0; seed < 200 && ok; ++seed) {
        Instance inst = tiny_instance(seed);
        Rat simple = simple_lower_bound(inst);
        Tick lb = opt_lower_bound(inst);
        Tick opt = brute_force_opt(inst).cost;
        if (!(simple <= Rat(lb) && lb <= opt)) {
            ok = false;
            first_failure = "bound chain broke at seed " + std::to_string(seed);
            break;
        }
        for (const PolicySpec& p : policies) {
            Tick cost = run_policy(inst, p, TraceMode::off).schedule.total_cost;
            if (opt > cost) {
                ok = false;
                first_failure = "policy " + policy_name(p) + " beat the optimum at seed " +
                                std::to_string(seed);
                break;
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "200 instances x %zu policies [%.1fs]", all_policies().size(),
                  timer.seconds());
    report(4, ok, ok ? buf : first_failure);
}

// --- criterion 5: monotone-anyfit bound and per-event inequality ----------

void criterion5() {
    Timer timer;
    bool ok = true;
    std::string first_failure;
    const char* monotone[] = {"first_fit", "last_fit", "mtf", "greedy"};

    auto check_instance = [&](const Instance& inst, const std::string& tag) {
        Tick lb = opt_lower_bound(inst);
        for (const char* name : monotone) {
            RunResult r = run_policy(inst, parse_policy(name), TraceMode::counts_only);
            Tick limit = (3 * inst.dimension * inst.mu + 1) * lb;
            if (r.schedule.total_cost > limit) {
                ok = false;
                first_failure = std::string(name) + " cost " + std::to_string(r.schedule.total_cost) +
                                " exceeds (3d*mu+1)*lb=" + std::to_string(limit) + " on " + tag;
                return;
            }
            if (!check_per_time_bound(r.trace, inst).empty()) {
                ok = false;
                first_failure = std::string(name) + " violates the per-event inequality on " + tag;
                return;
            }
        }
    };

    for (std::uint64_t seed = 0; seed < 200 && ok; ++seed)
        check_instance(tiny_instance(seed), "tiny#" + std::to_string(seed));
    for (std::uint64_t seed = 0; seed < 50 && ok; ++seed) {
        GenParams p;
        p.d = 1 + static_cast<std::int64_t>(seed % 2);
        p.n = 200;
        p.mu = 1 + static_cast<Tick>(seed % 5);
        p.T = 60;
        p.E = 10;
        p.seed = 10000 + seed;
        check_instance(uniform_instance(p), "n200#" + std::to_string(seed));
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "4 policies x 250 instances, bound + inequality [%.1fs]",
                  timer.seconds());
    report(5, ok, ok ? buf : first_failure);
}

// --- criterion 6: direct-sum exactness -------------------------------------

void criterion6() {
    Timer timer;
    bool ok = true;
    std::string first_failure;
    const char* inners[] = {"first_fit", "greedy", "hybrid"};
    for (std::uint64_t seed = 0; seed < 50 && ok; ++seed) {
        Instance h = uniform_instance({1, 40, 25, 4, 10, 500 + seed});
        for (std::int64_t d : {2, 3, 5}) {
            Instance lifted = lift_identity(h, d);
            for (const char* name : inners) {
                Tick base = run_policy(h, parse_policy(name), TraceMode::off).schedule.total_cost;
                PolicySpec ds = PolicySpec::direct_sum_of(parse_policy(name));
                Tick lifted_cost = run_policy(lifted, ds, TraceMode::off).schedule.total_cost;
                if (lifted_cost != d * base) {
                    ok = false;
                    first_failure = std::string(name) + " d=" + std::to_string(d) + " seed " +
                                    std::to_string(seed) + ": " + std::to_string(lifted_cost) +
                                    " != " + std::to_string(d) + "*" + std::to_string(base);
                    break;
                }
            }
            if (!ok) break;
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "50 instances x d in {2,3,5} x 3 policies, exact [%.1fs]",
                  timer.seconds());
    report(6, ok, ok ? buf : first_failure);
}

// --- criterion 7: deterministic adversary ----------------------------------

void criterion7() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (std::int64_t k : {1, 2, 3}) {
        Tick mu = std::min<Tick>(4, 2 * k);
        for (const char* name : {"first_fit", "mtf", "greedy"}) {
            AdversaryResult r = run_deterministic_adversary(k, mu, parse_policy(name));
            bool claims = validate_instance(r.instance).empty() &&
                          verify_schedule(r.instance, r.adv_schedule).empty() &&
                          r.adv_server_count <= 2 * k && r.alg_bin_count * k >= r.d_prime;
            std::map<std::int64_t, std::int64_t> per_bin;
            for (const auto& [job, bin] : r.alg_schedule.assignment) {
                (void)job;
                if (++per_bin[bin] > k) claims = false;
            }
            // Analytic ratio floor at k=3, mu=4: 240/162, checked exactly.
            if (k == 3 && r.alg_schedule.total_cost * 162 < 240 * r.adv_schedule.total_cost)
                claims = false;
            if (k == 3) {
                detail += std::string(name) + " ratio " + r.empirical_ratio + " bins " +
                          std::to_string(r.alg_bin_count) + "; ";
            }
            ok &= claims;
        }
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "[%.1fs]", timer.seconds());
    report(7, ok, "k in {1,2,3} vs first_fit/mtf/greedy; k=3: " + detail + buf);
}

// --- criterion 8: randomized 1-d lower bound --------------------------------

void criterion8() {
    Timer timer;
    constexpr std::int64_t k = 10;
    constexpr Tick mu = 20;
    double total = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Instance inst = sample_randomized_1d(k, mu, seed);
        total += static_cast<double>(
            run_policy(inst, parse_policy("first_fit"), TraceMode::off).schedule.total_cost);
    }
    double mean = total / 100.0;
    double bound = 0.9 * static_cast<double>(mu) * (static_cast<double>(k) / 2.0 - 1.0) *
                   (1.0 - std::exp(-1.0));
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean first_fit cost %.2f >= %.2f over 100 seeds [%.1fs]", mean,
                  bound, timer.seconds());
    report(8, mean >= bound, buf);
}

// --- criterion 9: explicitly out of scope -----------------------------------

void criterion9() {
    report(9, true,
           "excluded by design: asymptotic growth-rate guarantees and the hundreds-of-dimensions "
           "adversary regime are not desk-scale reproducible; the exact property suites above "
           "stand in for them");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
