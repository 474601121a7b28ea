#include "rsic/adversary.hpp"

#include "rsic/core.hpp"
#include "rsic/engine.hpp"
#include "rsic/gen.hpp"
#include "rsic/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace rsic {

std::int64_t binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

namespace {

constexpr std::int64_t kMaxK = 5; // size vectors are dense, d'^2 storage grows fast

using Subset = std::vector<std::int64_t>; // sorted members of [0, 2k)

bool next_k_subset(Subset& s, std::int64_t universe) {
    std::int64_t k = static_cast<std::int64_t>(s.size());
    std::int64_t i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == universe - k + i) --i;
    if (i < 0) return false;
    ++s[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j)
        s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

Subset first_k_subset(std::int64_t k) {
    Subset s(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
    return s;
}

struct GameState {
    std::int64_t k;
    std::int64_t d_prime;
    Tick mu;
    bool clairvoyant;
    PolicyRun run;
    std::vector<std::int64_t> adv_assign;    // round -> adversary server
    std::vector<std::int64_t> adv_job_count; // per adversary server
    std::vector<LoadVec> adv_load;           // per adversary server
    std::vector<SizeVec> sizes;              // round -> size vector

    GameState(std::int64_t k_, Tick mu_, const PolicySpec& policy)
        : k(k_),
          d_prime(binomial(2 * k_, k_) * k_),
          mu(mu_),
          clairvoyant(policy.clairvoyant()),
          run(policy, binomial(2 * k_, k_) * k_, binomial(2 * k_, k_) * k_, mu_, TraceMode::off),
          adv_job_count(static_cast<std::size_t>(2 * k_), 0),
          adv_load(static_cast<std::size_t>(2 * k_),
                   LoadVec(static_cast<std::size_t>(binomial(2 * k_, k_) * k_), 0)) {}

    SizeVec make_size(std::int64_t round, const Subset& a) const {
        SizeVec s(static_cast<std::size_t>(d_prime), 0);
        s[static_cast<std::size_t>(round)] = d_prime; // value 1 over denominator d'
        for (std::int64_t j = 0; j < round; ++j) {
            bool in_a = std::binary_search(a.begin(), a.end(), adv_assign[static_cast<std::size_t>(j)]);
            if (!in_a) s[static_cast<std::size_t>(j)] = 1; // value 1/d'
        }
        return s;
    }

    void adversary_place(std::int64_t round, std::int64_t server) {
        const SizeVec& s = sizes[static_cast<std::size_t>(round)];
        LoadVec& load = adv_load[static_cast<std::size_t>(server)];
        for (std::size_t c = 0; c < s.size(); ++c) {
            if (load[c] + s[c] > d_prime)
                throw InternalError("adversary placement violates capacity");
        }
        for (std::size_t c = 0; c < s.size(); ++c) load[c] += s[c];
        adv_assign.push_back(server);
        ++adv_job_count[static_cast<std::size_t>(server)];
    }

    std::int64_t present_to_policy(std::int64_t round) {
        std::optional<Tick> finish;
        if (clairvoyant) finish = 1; // durations forced to 1 up front
        return run.submit(round, 0, sizes[static_cast<std::size_t>(round)], finish);
    }
};

// Adversary-server sets of the algorithm's bins, split by whether the bin is
// full (holds exactly k jobs).
struct BinFamilies {
    std::set<Subset> full;
    std::set<Subset> partial;
};

BinFamilies bin_families(const GameState& game) {
    BinFamilies out;
    for (const ServerState& bin : game.run.servers()) {
        std::set<std::int64_t> servers;
        for (std::int64_t job : bin.alive)
            servers.insert(game.adv_assign[static_cast<std::size_t>(job)]);
        Subset s(servers.begin(), servers.end());
        if (bin.job_count_total >= game.k)
            out.full.insert(std::move(s));
        else
            out.partial.insert(std::move(s));
    }
    return out;
}

bool contains_subset(const Subset& haystack, const Subset& needle) {
    return std::includes(haystack.begin(), haystack.end(), needle.begin(), needle.end());
}

// Durations: all 1 when clairvoyant; otherwise from stretch_override when
// present, else mu for the jobs of the adversary server touching the most
// distinct algorithm bins (ties to the lowest server id).
AdversaryResult finalize_game(GameState& game, const PolicySpec& policy,
                              const std::vector<bool>* stretch_override) {
    std::int64_t d_prime = game.d_prime;
    const auto& alg_assignment = game.run.assignment();

    std::vector<bool> stretched(static_cast<std::size_t>(d_prime), false);
    if (!game.clairvoyant) {
        if (stretch_override) {
            stretched = *stretch_override;
        } else {
            std::int64_t best_server = 0;
            std::int64_t best_bins = -1;
            for (std::int64_t q = 0; q < 2 * game.k; ++q) {
                std::set<std::int64_t> bins;
                for (std::int64_t i = 0; i < d_prime; ++i) {
                    if (game.adv_assign[static_cast<std::size_t>(i)] == q)
                        bins.insert(alg_assignment.at(i));
                }
                auto count = static_cast<std::int64_t>(bins.size());
                if (count > best_bins) {
                    best_bins = count;
                    best_server = q;
                }
            }
            for (std::int64_t i = 0; i < d_prime; ++i)
                stretched[static_cast<std::size_t>(i)] =
                    game.adv_assign[static_cast<std::size_t>(i)] == best_server;
        }
    }

    AdversaryResult result;
    result.k = game.k;
    result.d_prime = d_prime;
    result.mu = game.mu;
    result.clairvoyant = game.clairvoyant;
    result.policy = policy_name(policy);

    result.instance.dimension = d_prime;
    result.instance.denominator = d_prime;
    result.instance.mu = game.mu;
    for (std::int64_t i = 0; i < d_prime; ++i) {
        Job j;
        j.id = i;
        j.arrival = 0;
        j.finish = stretched[static_cast<std::size_t>(i)] ? game.mu : 1;
        j.size = game.sizes[static_cast<std::size_t>(i)];
        result.instance.jobs.push_back(std::move(j));
    }

    result.alg_schedule = build_schedule(result.instance, alg_assignment, result.policy);
    std::map<std::int64_t, std::int64_t> adv_map;
    for (std::int64_t i = 0; i < d_prime; ++i)
        adv_map[i] = game.adv_assign[static_cast<std::size_t>(i)];
    result.adv_schedule = build_schedule(result.instance, adv_map, "adversary");

    result.alg_bin_count = static_cast<std::int64_t>(game.run.servers().size());
    result.adv_server_count = static_cast<std::int64_t>(result.adv_schedule.servers.size());
    result.empirical_ratio =
        decimal_string(result.alg_schedule.total_cost, result.adv_schedule.total_cost, 4);

    if (!validate_instance(result.instance).empty())
        throw InternalError("adversary produced an invalid instance");
    if (!verify_schedule(result.instance, result.adv_schedule).empty())
        throw InternalError("adversary schedule infeasible");
    if (!verify_schedule(result.instance, result.alg_schedule).empty())
        throw InternalError("algorithm schedule infeasible");
    return result;
}

} // namespace

AdversaryResult run_deterministic_adversary(std::int64_t k, Tick mu, const PolicySpec& policy) {
    if (k < 1) throw ConfigError("adversary: k must be >= 1");
    if (k > kMaxK) throw ConfigError("adversary: k too large (max " + std::to_string(kMaxK) + ")");
    if (mu < 1) throw ConfigError("adversary: mu must be >= 1");

    GameState game(k, mu, policy);
    for (std::int64_t i = 0; i < game.d_prime; ++i) {
        BinFamilies fams = bin_families(game);

        // Smallest k-subset containing no full bin's server set. When every
        // full bin carries k distinct servers this is exactly set-difference
        // with the forbidden family; the containment form also blocks bins
        // whose jobs share adversary servers.
        Subset a = first_k_subset(k);
        while (true) {
            bool clean = true;
            for (const Subset& f : fams.full) {
                if (contains_subset(a, f)) {
                    clean = false;
                    break;
                }
            }
            if (clean) break;
            if (!next_k_subset(a, 2 * k))
                throw InternalError("adversary: exhausted k-subsets, contradicts the counting bound");
        }

        game.sizes.push_back(game.make_size(i, a));

        // The new job can join exactly the partial bins whose server sets lie
        // inside A_i. Avoid their servers so that no algorithm bin ever holds
        // two jobs from one adversary server; among the safe members take the
        // fewest-jobs one, ties to the lowest id.
        std::set<std::int64_t> avoid;
        for (const Subset& p : fams.partial) {
            if (contains_subset(a, p)) avoid.insert(p.begin(), p.end());
        }
        auto pick = [&](bool respect_avoid) {
            std::int64_t target = -1;
            for (std::int64_t q : a) {
                if (respect_avoid && avoid.count(q)) continue;
                if (target < 0 ||
                    game.adv_job_count[static_cast<std::size_t>(q)] <
                        game.adv_job_count[static_cast<std::size_t>(target)])
                    target = q;
            }
            return target;
        };
        std::int64_t target = pick(true);
        if (target < 0) target = pick(false);
        game.adversary_place(i, target);
        game.present_to_policy(i);
    }
    return finalize_game(game, policy, nullptr);
}

Instance sample_randomized_1d(std::int64_t k, Tick mu, std::uint64_t seed) {
    if (k < 2) throw ConfigError("sample_randomized_1d: k must be >= 2");
    if (mu < 1) throw ConfigError("sample_randomized_1d: mu must be >= 1");

    std::mt19937_64 rng(seed);
    std::int64_t n = k * k;
    // Partial Fisher-Yates draws a uniform k-subset of [0, n).
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::set<std::int64_t> stretched;
    for (std::int64_t i = 0; i < k; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
        stretched.insert(idx[static_cast<std::size_t>(i)]);
    }

    Instance inst;
    inst.dimension = 1;
    inst.denominator = k;
    inst.mu = mu;
    for (std::int64_t i = 0; i < n; ++i) {
        Job j;
        j.id = i;
        j.arrival = 0;
        j.finish = stretched.count(i) ? mu : 1;
        j.size = {1};
        inst.jobs.push_back(std::move(j));
    }
    return inst;
}

AdversaryResult run_randomized_dd(std::int64_t k, Tick mu, std::uint64_t seed,
                                  const PolicySpec& policy) {
    if (k < 1) throw ConfigError("adversary: k must be >= 1");
    if (k > kMaxK) throw ConfigError("adversary: k too large (max " + std::to_string(kMaxK) + ")");
    if (mu < 1) throw ConfigError("adversary: mu must be >= 1");

    std::mt19937_64 rng(seed);
    GameState game(k, mu, policy);
    std::int64_t q_target =
        static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(2 * k)));
    std::vector<bool> stretched;

    for (std::int64_t i = 0; i < game.d_prime; ++i) {
        // Uniform k-subset of [0, 2k) via partial Fisher-Yates.
        std::vector<std::int64_t> pool(static_cast<std::size_t>(2 * k));
        for (std::int64_t j = 0; j < 2 * k; ++j) pool[static_cast<std::size_t>(j)] = j;
        Subset a;
        for (std::int64_t j = 0; j < k; ++j) {
            std::size_t pick = static_cast<std::size_t>(j) +
                               static_cast<std::size_t>(
                                   uniform_below(rng, static_cast<std::uint64_t>(2 * k - j)));
            std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
            a.push_back(pool[static_cast<std::size_t>(j)]);
        }
        std::sort(a.begin(), a.end());

        game.sizes.push_back(game.make_size(i, a));
        std::int64_t member =
            a[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(k)))];
        game.adversary_place(i, member);
        stretched.push_back(member == q_target);
        game.present_to_policy(i);
    }
    return finalize_game(game, policy, &stretched);
}

std::string adversary_result_to_json(const AdversaryResult& result, bool embed) {
    nlohmann::ordered_json j;
    j["k"] = result.k;
    j["d_prime"] = result.d_prime;
    j["mu"] = result.mu;
    j["policy"] = result.policy;
    j["alg_cost"] = result.alg_schedule.total_cost;
    j["adv_cost"] = result.adv_schedule.total_cost;
    j["alg_bins"] = result.alg_bin_count;
    j["adv_servers"] = result.adv_server_count;
    j["ratio"] = result.empirical_ratio;
    if (embed) {
        j["instance"] = nlohmann::ordered_json::parse(instance_to_json(result.instance));
        j["alg_schedule"] = nlohmann::ordered_json::parse(schedule_to_json(result.alg_schedule));
        j["adv_schedule"] = nlohmann::ordered_json::parse(schedule_to_json(result.adv_schedule));
    }
    return j.dump(2) + "\n";
}

} // namespace rsic
