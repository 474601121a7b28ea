#include "rsic/policy.hpp"

#include <algorithm>
#include <sstream>

namespace rsic {

bool PolicySpec::clairvoyant() const {
    switch (variant) {
        case Variant::greedy:
        case Variant::departure_strategy:
        case Variant::duration_strategy:
        case Variant::hybrid:
            return true;
        case Variant::direct_sum:
            return inner && inner->clairvoyant();
        default:
            return false;
    }
}

PolicySpec PolicySpec::direct_sum_of(PolicySpec inner_spec) {
    if (inner_spec.variant == Variant::direct_sum)
        throw ConfigError("direct_sum nesting depth exceeds 1");
    PolicySpec p;
    p.variant = Variant::direct_sum;
    p.inner = std::make_shared<const PolicySpec>(std::move(inner_spec));
    return p;
}

namespace {

struct NameEntry {
    const char* name;
    Variant variant;
};

constexpr NameEntry kNames[] = {
    {"next_fit", Variant::next_fit},
    {"mnf", Variant::modified_next_fit},
    {"first_fit", Variant::first_fit},
    {"mff", Variant::modified_first_fit},
    {"best_fit", Variant::best_fit},
    {"worst_fit", Variant::worst_fit},
    {"last_fit", Variant::last_fit},
    {"random_fit", Variant::random_fit},
    {"mtf", Variant::mtf},
    {"greedy", Variant::greedy},
    {"departure", Variant::departure_strategy},
    {"duration", Variant::duration_strategy},
    {"hybrid", Variant::hybrid},
};

std::int64_t parse_int(const std::string& v, const std::string& what) {
    try {
        std::size_t pos = 0;
        std::int64_t x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + what + ": " + v);
    }
}

void apply_param(PolicySpec& p, const std::string& key, const std::string& value) {
    if (key == "seed" && p.variant == Variant::random_fit) {
        p.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "threshold" &&
               (p.variant == Variant::modified_next_fit || p.variant == Variant::modified_first_fit)) {
        p.threshold_num = parse_int(value, key);
    } else if (key == "tau" && p.variant == Variant::departure_strategy) {
        p.tau = parse_int(value, key);
    } else if (key == "b" && p.variant == Variant::duration_strategy) {
        p.base = parse_int(value, key);
    } else if (key == "alpha" && p.variant == Variant::duration_strategy) {
        p.alpha = parse_int(value, key);
    } else {
        throw ConfigError("unknown parameter '" + key + "' for this policy");
    }
}

} // namespace

PolicySpec parse_policy(const std::string& text) {
    std::string name = text;
    std::string params;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        params = text.substr(colon + 1);
    }

    PolicySpec p;
    if (name == "new_hybrid") {
        PolicySpec inner;
        inner.variant = Variant::hybrid;
        p = PolicySpec::direct_sum_of(inner);
    } else {
        bool found = false;
        for (const NameEntry& e : kNames) {
            if (name == e.name) {
                p.variant = e.variant;
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError("unknown policy: " + name);
    }

    std::stringstream ss(params);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("bad parameter syntax: " + item);
        apply_param(p, item.substr(0, eq), item.substr(eq + 1));
    }
    return p;
}

std::string policy_name(const PolicySpec& policy) {
    switch (policy.variant) {
        case Variant::next_fit: return "next_fit";
        case Variant::modified_next_fit:
            return policy.threshold_num > 0 ? "mnf:threshold=" + std::to_string(policy.threshold_num) : "mnf";
        case Variant::first_fit: return "first_fit";
        case Variant::modified_first_fit:
            return policy.threshold_num > 0 ? "mff:threshold=" + std::to_string(policy.threshold_num) : "mff";
        case Variant::best_fit: return "best_fit";
        case Variant::worst_fit: return "worst_fit";
        case Variant::last_fit: return "last_fit";
        case Variant::random_fit: return "random_fit:seed=" + std::to_string(policy.seed);
        case Variant::mtf: return "mtf";
        case Variant::greedy: return "greedy";
        case Variant::departure_strategy:
            return policy.tau > 0 ? "departure:tau=" + std::to_string(policy.tau) : "departure";
        case Variant::duration_strategy: {
            std::string s = "duration";
            if (policy.base != 1 || policy.alpha != 2)
                s += ":b=" + std::to_string(policy.base) + ",alpha=" + std::to_string(policy.alpha);
            return s;
        }
        case Variant::hybrid: return "hybrid";
        case Variant::direct_sum:
            if (policy.inner && policy.inner->variant == Variant::hybrid) return "new_hybrid";
            return "direct_sum(" + (policy.inner ? policy_name(*policy.inner) : std::string("?")) + ")";
    }
    throw InternalError("policy_name: unhandled variant");
}

std::vector<PolicySpec> all_policies() {
    std::vector<PolicySpec> out;
    for (const NameEntry& e : kNames) {
        PolicySpec p;
        p.variant = e.variant;
        if (e.variant == Variant::random_fit) p.seed = 1;
        out.push_back(p);
    }
    PolicySpec hybrid_inner;
    hybrid_inner.variant = Variant::hybrid;
    out.push_back(PolicySpec::direct_sum_of(hybrid_inner));
    return out;
}

void validate_policy(const PolicySpec& policy, std::int64_t denominator) {
    if (policy.threshold_num < 0 || policy.threshold_num > denominator)
        throw ConfigError("threshold out of (0, D]");
    if (policy.tau < 0) throw ConfigError("tau must be >= 1");
    if (policy.base < 1) throw ConfigError("duration base must be >= 1");
    if (policy.alpha < 2) throw ConfigError("duration alpha must be >= 2");
    if (policy.variant == Variant::direct_sum) {
        if (!policy.inner) throw ConfigError("direct_sum requires an inner policy");
        if (policy.inner->variant == Variant::direct_sum)
            throw ConfigError("direct_sum nesting depth exceeds 1");
        validate_policy(*policy.inner, denominator);
    }
}

bool fits(const ServerState& server, const SizeVec& size, std::int64_t denominator, std::int64_t proj_dim) {
    if (proj_dim >= 0) {
        auto d = static_cast<std::size_t>(proj_dim);
        return server.load[d] + size[d] <= denominator;
    }
    for (std::size_t d = 0; d < size.size(); ++d) {
        if (server.load[d] + size[d] > denominator) return false;
    }
    return true;
}

namespace {

std::int64_t load_norm(const ServerState& s, std::int64_t proj_dim) {
    if (proj_dim >= 0) return s.load[static_cast<std::size_t>(proj_dim)];
    return inf_norm(s.load);
}

bool tie_break(const ServerState& a, const ServerState& b) {
    if (a.open != b.open) return a.open < b.open;
    return a.id < b.id;
}

} // namespace

std::vector<std::int64_t> policy_order(Variant variant, std::span<const ServerState* const> servers,
                                       std::int64_t proj_dim, std::mt19937_64* rng) {
    std::vector<const ServerState*> v(servers.begin(), servers.end());
    std::sort(v.begin(), v.end(), [](const ServerState* a, const ServerState* b) { return tie_break(*a, *b); });

    switch (variant) {
        case Variant::first_fit:
        case Variant::next_fit:
        case Variant::modified_next_fit:
        case Variant::modified_first_fit:
        case Variant::departure_strategy:
        case Variant::duration_strategy:
        case Variant::hybrid:
            break; // ascending open tick
        case Variant::last_fit:
            std::stable_sort(v.begin(), v.end(),
                             [](const ServerState* a, const ServerState* b) { return a->open > b->open; });
            break;
        case Variant::mtf:
            // Most recently used first; the per-assignment sequence number makes
            // same-tick assignments order by true recency.
            std::stable_sort(v.begin(), v.end(), [](const ServerState* a, const ServerState* b) {
                return a->last_receive_seq > b->last_receive_seq;
            });
            break;
        case Variant::greedy:
            std::stable_sort(v.begin(), v.end(), [](const ServerState* a, const ServerState* b) {
                return a->max_finish > b->max_finish;
            });
            break;
        case Variant::best_fit:
            std::stable_sort(v.begin(), v.end(), [proj_dim](const ServerState* a, const ServerState* b) {
                return load_norm(*a, proj_dim) > load_norm(*b, proj_dim);
            });
            break;
        case Variant::worst_fit:
            std::stable_sort(v.begin(), v.end(), [proj_dim](const ServerState* a, const ServerState* b) {
                return load_norm(*a, proj_dim) < load_norm(*b, proj_dim);
            });
            break;
        case Variant::random_fit: {
            if (!rng) throw InternalError("random_fit ordering without rng");
            for (std::size_t i = v.size(); i > 1; --i) {
                std::size_t j = static_cast<std::size_t>((*rng)() % i);
                std::swap(v[i - 1], v[j]);
            }
            break;
        }
        case Variant::direct_sum:
            throw InternalError("policy_order called for direct_sum wrapper");
    }

    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const ServerState* s : v) out.push_back(s->id);
    return out;
}

std::optional<std::int64_t> anyfit_decision(const std::vector<std::int64_t>& order,
                                            const std::vector<ServerState>& servers_by_id,
                                            const SizeVec& size, std::int64_t denominator,
                                            std::int64_t proj_dim) {
    for (std::int64_t id : order) {
        if (fits(servers_by_id.at(static_cast<std::size_t>(id)), size, denominator, proj_dim)) return id;
    }
    return std::nullopt;
}

ClassKey classed_decision(const PolicySpec& policy, const DecisionJob& job, Tick instance_mu) {
    if (!job.finish)
        throw InternalError("classed_decision requires a clairvoyant job view");
    Tick finish = *job.finish;
    Tick duration = finish - job.arrival;

    switch (policy.variant) {
        case Variant::departure_strategy: {
            Tick tau = policy.tau > 0 ? policy.tau : instance_mu;
            return {finish / tau, 0};
        }
        case Variant::duration_strategy: {
            if (duration <= policy.base) return {0, 0};
            std::int64_t i = 1;
            __int128 bound = static_cast<__int128>(policy.base) * policy.alpha;
            while (bound < duration) {
                bound *= policy.alpha;
                ++i;
            }
            return {i, 0};
        }
        case Variant::hybrid: {
            std::int64_t cap = 1;
            while ((Tick{1} << cap) < instance_mu) ++cap; // ceil(log2 mu)
            ++cap;
            std::int64_t i = 1;
            while ((Tick{1} << i) < duration && i < cap) ++i;
            return {i, job.arrival >> i};
        }
        default:
            throw InternalError("classed_decision called for a non-classed variant");
    }
}

std::int64_t effective_threshold(const PolicySpec& policy, std::int64_t denominator, Tick instance_mu) {
    if (policy.threshold_num > 0) return policy.threshold_num;
    Tick shift = policy.variant == Variant::modified_next_fit ? 1 : 7;
    return std::max<std::int64_t>(1, denominator / (instance_mu + shift));
}

SizeClass threshold_split(const PolicySpec& policy, const SizeVec& size, std::int64_t denominator,
                          Tick instance_mu) {
    if (policy.variant != Variant::modified_next_fit && policy.variant != Variant::modified_first_fit)
        throw InternalError("threshold_split called for a non-threshold variant");
    return inf_norm(size) > effective_threshold(policy, denominator, instance_mu) ? SizeClass::large
                                                                                  : SizeClass::small;
}

std::int64_t direct_sum_decision(const SizeVec& size) {
    std::int64_t best = 0;
    for (std::size_t j = 1; j < size.size(); ++j) {
        if (size[j] > size[static_cast<std::size_t>(best)]) best = static_cast<std::int64_t>(j);
    }
    return best;
}

} // namespace rsic
