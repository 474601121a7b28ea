#include "rsic/bench.hpp"

#include "rsic/engine.hpp"
#include "rsic/gen.hpp"

#include <algorithm>
#include <sstream>

namespace rsic {

const char* kBenchNotes =
    "ratio=avg_cost/avg_lb;bestfit=linf_load;split_threshold=per_dim_linf;"
    "classed_inner=first_fit;rng=mt19937_64+rejection";

RatioReport bench_cell(const PolicySpec& policy, std::int64_t d, Tick T, Tick mu, std::int64_t n,
                       std::int64_t E, std::int64_t trials, std::uint64_t base_seed) {
    if (trials < 1) throw ConfigError("bench: trials must be >= 1");

    std::vector<Tick> costs, lbs;
    costs.reserve(static_cast<std::size_t>(trials));
    lbs.reserve(static_cast<std::size_t>(trials));
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        GenParams params{d, n, T, mu, E, base_seed + static_cast<std::uint64_t>(trial)};
        Instance inst = uniform_instance(params);
        costs.push_back(run_policy(inst, policy, TraceMode::off).schedule.total_cost);
        lbs.push_back(opt_lower_bound(inst));
    }

    RatioReport report;
    report.policy = policy_name(policy);
    report.d = d;
    report.T = T;
    report.mu = mu;
    report.n = n;
    report.E = E;
    report.trials = trials;
    report.base_seed = base_seed;
    Tick cost_sum = 0, lb_sum = 0;
    for (Tick c : costs) cost_sum += c;
    for (Tick l : lbs) lb_sum += l;
    report.avg_cost = Rat(cost_sum, trials);
    report.avg_lb = Rat(lb_sum, trials);
    report.ratio = ratio_of_averages(costs, lbs);
    return report;
}

namespace {

std::string sanitize_csv(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

std::string bench_csv(const BenchGrid& grid) {
    if (grid.policies.empty() || grid.d_list.empty() || grid.T_list.empty() || grid.mu_list.empty())
        throw ConfigError("bench: all grid axes must be non-empty");

    std::vector<PolicySpec> specs;
    for (const std::string& name : grid.policies) specs.push_back(parse_policy(name));

    std::vector<std::int64_t> ds = grid.d_list;
    std::vector<Tick> Ts = grid.T_list;
    std::vector<Tick> mus = grid.mu_list;
    std::sort(ds.begin(), ds.end());
    std::sort(Ts.begin(), Ts.end());
    std::sort(mus.begin(), mus.end());

    std::ostringstream csv;
    csv << kBenchCsvHeader << "\n";
    for (const PolicySpec& policy : specs) {
        for (std::int64_t d : ds) {
            for (Tick T : Ts) {
                for (Tick mu : mus) {
                    csv << policy_name(policy) << ',' << d << ',' << T << ',' << mu << ','
                        << grid.n << ',' << grid.trials << ',' << grid.base_seed << ',';
                    try {
                        RatioReport r =
                            bench_cell(policy, d, T, mu, grid.n, grid.E, grid.trials, grid.base_seed);
                        csv << decimal_string(r.avg_cost) << ',' << decimal_string(r.avg_lb) << ','
                            << r.ratio << ',' << kBenchNotes << "\n";
                    } catch (const std::exception& e) {
                        csv << "n/a,n/a,n/a," << sanitize_csv(std::string("error: ") + e.what())
                            << "\n";
                    }
                }
            }
        }
    }
    return csv.str();
}

} // namespace rsic
