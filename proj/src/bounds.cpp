#include "rsic/bounds.hpp"

#include "rsic/core.hpp"

#include <algorithm>
#include <map>

namespace rsic {

Tick opt_lower_bound(const Instance& inst) {
    Tick total = 0;
    for (const Segment& seg : load_profile(inst).segments) {
        std::int64_t m = inf_norm(seg.load);
        Tick servers = (m + inst.denominator - 1) / inst.denominator;
        total += seg.length() * servers;
    }
    return total;
}

Rat simple_lower_bound(const Instance& inst) {
    return std::max(Rat(span(inst)), utilization(inst) / inst.dimension);
}

Rat windowed_arrival_mass(const Instance& inst, Tick t, Tick w) {
    std::int64_t num = 0;
    for (const Job& j : inst.jobs) {
        if (j.arrival >= t) break; // jobs are sorted by arrival
        if (j.arrival >= t - w) num += inf_norm(j.size);
    }
    return Rat(num, inst.denominator);
}

namespace {

struct GroupEval {
    bool feasible = false;
    Tick cost = 0;
};

GroupEval evaluate_group(const Instance& inst, const std::vector<std::size_t>& members) {
    Instance sub;
    sub.dimension = inst.dimension;
    sub.denominator = inst.denominator;
    sub.mu = inst.mu;
    for (std::size_t i : members) sub.jobs.push_back(inst.jobs[i]);
    std::stable_sort(sub.jobs.begin(), sub.jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });

    GroupEval out;
    out.feasible = true;
    for (const Segment& seg : load_profile(sub).segments) {
        if (inf_norm(seg.load) > inst.denominator) {
            out.feasible = false;
            return out;
        }
        out.cost += seg.length();
    }
    return out;
}

// One server per maximal contiguous stretch of the group's interval union.
void emit_group_servers(const Instance& inst, const std::vector<std::size_t>& members,
                        std::int64_t& next_server, Schedule& sched) {
    Instance sub;
    sub.dimension = inst.dimension;
    sub.denominator = inst.denominator;
    sub.mu = inst.mu;
    for (std::size_t i : members) sub.jobs.push_back(inst.jobs[i]);
    std::stable_sort(sub.jobs.begin(), sub.jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });

    LoadProfile prof = load_profile(sub);
    std::vector<ScheduleServer> stretches;
    for (const Segment& seg : prof.segments) {
        if (!stretches.empty() && stretches.back().close == seg.start) {
            stretches.back().close = seg.end;
        } else {
            stretches.push_back({next_server++, seg.start, seg.end});
        }
    }
    for (const ScheduleServer& s : stretches) {
        sched.servers.push_back(s);
        sched.total_cost += s.close - s.open;
    }
    for (const Job& j : sub.jobs) {
        for (const ScheduleServer& s : stretches) {
            if (j.arrival >= s.open && j.finish <= s.close) {
                sched.assignment[j.id] = s.id;
                break;
            }
        }
    }
}

} // namespace

BruteForceResult brute_force_opt(const Instance& inst, std::size_t job_limit) {
    const std::size_t n = inst.jobs.size();
    if (n > job_limit) throw ConfigError("brute_force_opt: job count exceeds limit");

    BruteForceResult result;
    if (n == 0) {
        result.schedule.policy = "brute_force_opt";
        return result;
    }

    // Restricted-growth strings enumerate set partitions in lexicographic
    // order; the first minimum found is the canonical witness.
    std::vector<std::size_t> rgs(n, 0);
    std::vector<std::size_t> best_rgs;
    Tick best_cost = -1;

    std::map<std::vector<std::size_t>, GroupEval> group_cache;
    auto eval_cached = [&](const std::vector<std::size_t>& members) -> const GroupEval& {
        auto it = group_cache.find(members);
        if (it == group_cache.end())
            it = group_cache.emplace(members, evaluate_group(inst, members)).first;
        return it->second;
    };

    auto evaluate_partition = [&]() {
        std::size_t groups = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<std::size_t>> members(groups);
        for (std::size_t i = 0; i < n; ++i) members[rgs[i]].push_back(i);
        Tick total = 0;
        for (const auto& g : members) {
            const GroupEval& ev = eval_cached(g);
            if (!ev.feasible) return;
            total += ev.cost;
        }
        if (best_cost < 0 || total < best_cost) {
            best_cost = total;
            best_rgs = rgs;
        }
    };

    // Iterate all restricted-growth strings: rgs[0] = 0, rgs[i] <= max(prefix)+1.
    while (true) {
        evaluate_partition();
        std::size_t i = n;
        while (i-- > 1) {
            std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + static_cast<std::ptrdiff_t>(i));
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(), 0);
                break;
            }
        }
        if (i == 0) break;
    }

    if (best_cost < 0) throw InternalError("brute_force_opt: no feasible partition");

    result.cost = best_cost;
    result.schedule.policy = "brute_force_opt";
    std::size_t groups = *std::max_element(best_rgs.begin(), best_rgs.end()) + 1;
    std::vector<std::vector<std::size_t>> members(groups);
    for (std::size_t i = 0; i < n; ++i) members[best_rgs[i]].push_back(i);
    std::int64_t next_server = 0;
    for (const auto& g : members) emit_group_servers(inst, g, next_server, result.schedule);
    std::sort(result.schedule.servers.begin(), result.schedule.servers.end(),
              [](const ScheduleServer& a, const ScheduleServer& b) {
                  return a.open != b.open ? a.open < b.open : a.id < b.id;
              });
    return result;
}

std::string ratio_of_averages(const std::vector<Tick>& costs, const std::vector<Tick>& lbs) {
    if (costs.empty() || costs.size() != lbs.size())
        throw ConfigError("ratio_of_averages: empty or mismatched inputs");
    std::int64_t cost_sum = 0, lb_sum = 0;
    for (Tick c : costs) cost_sum += c;
    for (Tick l : lbs) lb_sum += l;
    if (lb_sum == 0) throw ConfigError("ratio_of_averages: zero lower-bound sum");
    return decimal_string(cost_sum, lb_sum, 4);
}

} // namespace rsic
