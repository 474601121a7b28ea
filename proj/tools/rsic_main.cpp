#include "rsic/adversary.hpp"
#include "rsic/bench.hpp"
#include "rsic/bounds.hpp"
#include "rsic/core.hpp"
#include "rsic/engine.hpp"
#include "rsic/gen.hpp"
#include "rsic/io.hpp"
#include "rsic/svg_plot.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInternal = 4;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::int64_t> split_int_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    for (const std::string& item : split_list(s)) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw rsic::ConfigError("bad integer in --" + what + ": " + item);
        }
    }
    return out;
}

int cmd_run(const std::string& instance_path, const std::string& policy_str, const std::string& out) {
    rsic::Instance inst = rsic::load_instance_file(instance_path);
    rsic::PolicySpec policy = rsic::parse_policy(policy_str);
    rsic::RunResult result = rsic::run_policy(inst, policy, rsic::TraceMode::off);
    if (!out.empty()) rsic::write_file(out, rsic::schedule_to_json(result.schedule));

    rsic::Tick lb = rsic::opt_lower_bound(inst);
    std::string ratio = lb > 0 ? rsic::ratio_of_averages({result.schedule.total_cost}, {lb})
                               : std::string("n/a");
    std::cout << rsic::policy_name(policy) << ' ' << result.schedule.total_cost << ' ' << lb << ' '
              << ratio << "\n";
    return kExitOk;
}

int cmd_gen(const rsic::GenParams& params, const std::string& out) {
    rsic::Instance inst = rsic::uniform_instance(params);
    std::ostringstream meta;
    meta << "{\"generator\":\"" << rsic::kGeneratorName << "\",\"params\":{\"d\":" << params.d
         << ",\"n\":" << params.n << ",\"T\":" << params.T << ",\"mu\":" << params.mu
         << ",\"E\":" << params.E << ",\"seed\":" << params.seed << "}}";
    rsic::write_file(out, rsic::instance_to_json(inst, meta.str()));
    std::cout << "wrote " << out << " (" << inst.jobs.size() << " jobs)\n";
    return kExitOk;
}

int cmd_lb(const std::string& instance_path) {
    rsic::Instance inst = rsic::load_instance_file(instance_path);
    std::cout << "opt_lb " << rsic::opt_lower_bound(inst) << " simple_lb "
              << rsic::decimal_string(rsic::simple_lower_bound(inst)) << "\n";
    return kExitOk;
}

int cmd_opt(const std::string& instance_path, std::int64_t limit, const std::string& out) {
    rsic::Instance inst = rsic::load_instance_file(instance_path);
    rsic::BruteForceResult result = rsic::brute_force_opt(inst, static_cast<std::size_t>(limit));
    if (!out.empty()) rsic::write_file(out, rsic::schedule_to_json(result.schedule));
    std::cout << "opt " << result.cost << "\n";
    return kExitOk;
}

int cmd_bench(const rsic::BenchGrid& grid, const std::string& out, const std::string& plot_out) {
    std::string csv = rsic::bench_csv(grid);
    rsic::write_file(out, csv);
    std::cout << "wrote " << out << "\n";
    if (!plot_out.empty()) {
        rsic::write_file(plot_out, rsic::plot_bench_csv(csv));
        std::cout << "wrote " << plot_out << "\n";
    }
    return kExitOk;
}

int cmd_adversary(std::int64_t k, rsic::Tick mu, const std::string& policy_str, bool randomized,
                  std::uint64_t rand_seed, const std::string& out, bool embed) {
    rsic::PolicySpec policy = rsic::parse_policy(policy_str);
    rsic::AdversaryResult result = randomized
                                       ? rsic::run_randomized_dd(k, mu, rand_seed, policy)
                                       : rsic::run_deterministic_adversary(k, mu, policy);
    std::string json = rsic::adversary_result_to_json(result, embed);
    if (!out.empty()) {
        rsic::write_file(out, json);
    } else {
        std::cout << json;
    }
    std::cout << "alg_bins=" << result.alg_bin_count << " adv_servers=" << result.adv_server_count
              << " ratio=" << result.empirical_ratio << "\n";
    return kExitOk;
}

int cmd_plot(const std::string& csv_path, const std::string& out) {
    std::string svg = rsic::plot_bench_csv(rsic::read_file(csv_path));
    rsic::write_file(out, svg);
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MinUsageTime dynamic bin packing (RSiC) simulator and benchmark harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a policy on an instance file");
    std::string run_instance, run_policy_str, run_out;
    run->add_option("instance", run_instance, "instance JSON path")->required();
    run->add_option("--policy", run_policy_str, "policy name, e.g. first_fit or departure:tau=10")
        ->required();
    run->add_option("--out", run_out, "schedule JSON output path");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a uniform random instance");
    rsic::GenParams gp;
    std::string gen_out;
    gen->add_option("--d", gp.d, "dimension")->required();
    gen->add_option("--n", gp.n, "job count")->required();
    gen->add_option("--T", gp.T, "span parameter")->required();
    gen->add_option("--mu", gp.mu, "max duration")->required();
    gen->add_option("--E", gp.E, "capacity denominator")->required();
    gen->add_option("--seed", gp.seed, "rng seed")->required();
    gen->add_option("--out", gen_out, "instance JSON output path")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run the benchmark grid and emit CSV");
    std::string b_policies, b_d = "1", b_T = "1000", b_mu = "1,2,5,10,100", b_out, b_plot;
    rsic::BenchGrid grid;
    bench->add_option("--policies", b_policies, "comma-separated policy names")->required();
    bench->add_option("--d", b_d, "comma-separated dimensions");
    bench->add_option("--T", b_T, "comma-separated span parameters");
    bench->add_option("--mu", b_mu, "comma-separated max durations");
    bench->add_option("--n", grid.n, "jobs per instance");
    bench->add_option("--E", grid.E, "capacity denominator");
    bench->add_option("--trials", grid.trials, "instances per cell");
    bench->add_option("--seed", grid.base_seed, "base seed; trial t uses seed+t");
    bench->add_option("--out", b_out, "CSV output path")->required();
    bench->add_option("--plot", b_plot, "also render the grid as SVG");

    // lb
    auto* lb = app.add_subcommand("lb", "print lower bounds for an instance");
    std::string lb_instance;
    lb->add_option("instance", lb_instance, "instance JSON path")->required();

    // opt
    auto* opt = app.add_subcommand("opt", "brute-force optimal cost for a tiny instance");
    std::string opt_instance, opt_out;
    std::int64_t opt_limit = 8;
    opt->add_option("instance", opt_instance, "instance JSON path")->required();
    opt->add_option("--limit", opt_limit, "max job count for enumeration");
    opt->add_option("--out", opt_out, "witness schedule JSON output path");

    // adversary
    auto* adv = app.add_subcommand("adversary", "play a lower-bound adversary against a policy");
    std::int64_t adv_k = 1;
    rsic::Tick adv_mu = 1;
    std::string adv_policy, adv_out;
    std::uint64_t adv_seed = 0;
    bool adv_embed = false;
    adv->add_option("--k", adv_k, "construction parameter; d' = C(2k,k)*k")->required();
    adv->add_option("--mu", adv_mu, "stretched duration")->required();
    adv->add_option("--policy", adv_policy, "policy to play against")->required();
    auto* seed_opt = adv->add_option("--rand-seed", adv_seed, "use the randomized oblivious adversary");
    adv->add_flag("--embed", adv_embed, "embed instance and schedules in the JSON");
    adv->add_option("--out", adv_out, "result JSON output path (default: stdout)");

    // plot
    auto* plot = app.add_subcommand("plot", "render a bench CSV as SVG");
    std::string plot_csv, plot_out;
    plot->add_option("csv", plot_csv, "bench CSV path")->required();
    plot->add_option("--out", plot_out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_instance, run_policy_str, run_out);
        if (*gen) return cmd_gen(gp, gen_out);
        if (*bench) {
            grid.policies = split_list(b_policies);
            grid.d_list = split_int_list(b_d, "d");
            for (std::int64_t t : split_int_list(b_T, "T")) grid.T_list.push_back(t);
            for (std::int64_t m : split_int_list(b_mu, "mu")) grid.mu_list.push_back(m);
            return cmd_bench(grid, b_out, b_plot);
        }
        if (*lb) return cmd_lb(lb_instance);
        if (*opt) return cmd_opt(opt_instance, opt_limit, opt_out);
        if (*adv) return cmd_adversary(adv_k, adv_mu, adv_policy, seed_opt->count() > 0, adv_seed,
                                       adv_out, adv_embed);
        if (*plot) return cmd_plot(plot_csv, plot_out);
    } catch (const rsic::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const rsic::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rsic::InternalError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
