#include "rsic/engine.hpp"

#include "rsic/bounds.hpp"
#include "rsic/core.hpp"

#include <algorithm>

namespace rsic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t pool_seed(std::uint64_t seed, const std::array<std::int64_t, 3>& key) {
    std::uint64_t h = splitmix64(seed);
    for (std::int64_t k : key) h = splitmix64(h ^ static_cast<std::uint64_t>(k));
    return h;
}

// The placement rule applied inside one pool, after routing.
Variant resolve_base(const PolicySpec& policy) {
    switch (policy.variant) {
        case Variant::modified_next_fit:
            return Variant::next_fit;
        case Variant::modified_first_fit:
        case Variant::departure_strategy:
        case Variant::duration_strategy:
        case Variant::hybrid:
            return Variant::first_fit;
        case Variant::direct_sum:
            return resolve_base(*policy.inner);
        default:
            return policy.variant;
    }
}

} // namespace

PolicyRun::PolicyRun(PolicySpec policy, std::int64_t dimension, std::int64_t denominator, Tick mu,
                     TraceMode trace_mode)
    : policy_(std::move(policy)),
      base_variant_(resolve_base(policy_)),
      dimension_(dimension),
      denominator_(denominator),
      mu_(mu),
      trace_mode_(trace_mode) {
    validate_policy(policy_, denominator_);
}

PolicyRun::PoolKey PolicyRun::classify(const DecisionJob& job) const {
    const PolicySpec* p = &policy_;
    PoolKey key{0, 0, 0};
    std::size_t base_slot = 0;
    if (p->variant == Variant::direct_sum) {
        key[0] = direct_sum_decision(*job.size);
        p = p->inner.get();
        base_slot = 1;
    }
    switch (p->variant) {
        case Variant::modified_next_fit:
        case Variant::modified_first_fit:
            key[base_slot] = threshold_split(*p, *job.size, denominator_, mu_) == SizeClass::large ? 1 : 0;
            break;
        case Variant::departure_strategy:
        case Variant::duration_strategy:
        case Variant::hybrid: {
            ClassKey ck = classed_decision(*p, job, mu_);
            key[base_slot] = ck.a;
            if (base_slot + 1 < key.size()) key[base_slot + 1] = ck.b;
            break;
        }
        default:
            break;
    }
    return key;
}

PolicyRun::Pool& PolicyRun::pool_for(const PoolKey& key) {
    auto [it, fresh] = pools_.try_emplace(key);
    if (fresh) {
        if (policy_.variant == Variant::direct_sum) it->second.proj_dim = key[0];
        if (base_variant_ == Variant::random_fit)
            it->second.rng = std::make_unique<std::mt19937_64>(pool_seed(
                policy_.variant == Variant::direct_sum ? policy_.inner->seed : policy_.seed, key));
    }
    return it->second;
}

std::int64_t PolicyRun::open_server(Pool& pool, Tick now) {
    ServerState s;
    s.id = static_cast<std::int64_t>(servers_.size());
    s.open = now;
    s.load.assign(static_cast<std::size_t>(dimension_), 0);
    servers_.push_back(std::move(s));
    pool.active.push_back(servers_.back().id);
    pool_of_server_[servers_.back().id] = &pool;
    ++active_count_;
    return servers_.back().id;
}

void PolicyRun::assign(std::int64_t server_id, std::int64_t job_id, Tick now, const SizeVec& size,
                       std::optional<Tick> finish) {
    ServerState& s = servers_[static_cast<std::size_t>(server_id)];
    for (std::size_t d = 0; d < size.size(); ++d) s.load[d] += size[d];
    s.alive.insert(job_id);
    s.last_receive = now;
    s.last_receive_seq = ++receive_seq_;
    ++s.job_count_total;
    if (finish) {
        s.max_finish = std::max(s.max_finish, *finish);
        departures_.emplace(*finish, job_id);
    }
    assignment_[job_id] = server_id;
    server_of_job_[job_id] = server_id;
}

void PolicyRun::advance_to(Tick t) {
    while (!departures_.empty() && departures_.top().first < t) {
        auto [finish, job_id] = departures_.top();
        departures_.pop();
        std::int64_t sid = server_of_job_.at(job_id);
        ServerState& s = servers_[static_cast<std::size_t>(sid)];
        s.alive.erase(job_id);
        const SizeVec& size = job_sizes_.at(job_id);
        for (std::size_t d = 0; d < size.size(); ++d) s.load[d] -= size[d];
        if (s.alive.empty()) {
            --active_count_;
            Pool* pool = pool_of_server_.at(sid);
            pool->active.erase(std::remove(pool->active.begin(), pool->active.end(), sid),
                               pool->active.end());
            if (pool->receiver == sid) pool->receiver = -1;
            pool_of_server_.erase(sid);
        }
    }
}

std::int64_t PolicyRun::submit(std::int64_t job_id, Tick arrival, const SizeVec& size,
                               std::optional<Tick> finish) {
    if (static_cast<std::int64_t>(size.size()) != dimension_)
        throw InternalError("submit: job dimension mismatch");
    bool clairvoyant = policy_.clairvoyant();
    if (clairvoyant && !finish)
        throw InternalError("clairvoyant policy requires the finish time at arrival");

    DecisionJob view;
    view.id = job_id;
    view.arrival = arrival;
    view.size = &size;
    if (clairvoyant) view.finish = finish;

    Pool& pool = pool_for(classify(view));

    TraceEvent ev;
    ev.tick = arrival;
    ev.job = job_id;

    std::optional<std::int64_t> chosen;
    if (base_variant_ == Variant::next_fit) {
        if (pool.receiver >= 0) {
            if (trace_mode_ == TraceMode::full) ev.order.push_back(pool.receiver);
            if (fits(servers_[static_cast<std::size_t>(pool.receiver)], size, denominator_,
                     pool.proj_dim)) {
                chosen = pool.receiver;
                if (trace_mode_ == TraceMode::full) ev.feasible.push_back(pool.receiver);
            }
        }
    } else {
        std::vector<const ServerState*> active;
        active.reserve(pool.active.size());
        for (std::int64_t id : pool.active) active.push_back(&servers_[static_cast<std::size_t>(id)]);
        std::vector<std::int64_t> order =
            policy_order(base_variant_, active, pool.proj_dim, pool.rng.get());
        chosen = anyfit_decision(order, servers_, size, denominator_, pool.proj_dim);
        if (trace_mode_ == TraceMode::full) {
            for (std::int64_t id : order) {
                if (fits(servers_[static_cast<std::size_t>(id)], size, denominator_, pool.proj_dim))
                    ev.feasible.push_back(id);
            }
            ev.order = std::move(order);
        }
    }

    std::int64_t target;
    if (chosen) {
        target = *chosen;
    } else {
        // A fresh server always accommodates a valid job.
        for (std::size_t d = 0; d < size.size(); ++d) {
            if (size[d] > denominator_)
                throw InternalError("job does not fit an empty server");
        }
        target = open_server(pool, arrival);
        if (base_variant_ == Variant::next_fit) pool.receiver = target;
        ev.opened_new = true;
    }
    job_sizes_.emplace(job_id, size);
    assign(target, job_id, arrival, size, finish);

    if (trace_mode_ != TraceMode::off) {
        ev.chosen = target;
        ev.active_servers = active_count_;
        trace_.events.push_back(std::move(ev));
    }
    return target;
}

RunResult run_policy(const Instance& inst, const PolicySpec& policy, TraceMode trace_mode) {
    PolicyRun run(policy, inst.dimension, inst.denominator, inst.mu, trace_mode);
    for (const Job& job : inst.jobs) {
        run.advance_to(job.arrival);
        run.submit(job.id, job.arrival, job.size, job.finish);
    }
    RunResult result;
    result.schedule = build_schedule(inst, run.assignment(), policy_name(policy));
    result.trace = run.take_trace();
    return result;
}

Violations check_anyfit(const Trace& trace, const Instance& inst) {
    (void)inst;
    Violations out;
    for (const TraceEvent& ev : trace.events) {
        if (ev.opened_new && !ev.feasible.empty()) {
            Violation v{"opened a server while a feasible server existed", ev.job};
            v.server = ev.chosen;
            out.push_back(v);
        }
    }
    return out;
}

std::vector<MonotoneViolation> check_monotone(const Trace& trace) {
    std::vector<MonotoneViolation> out;
    // Checking consecutive snapshots suffices: the property composes over
    // adjacent event pairs because alive periods are contiguous.
    for (std::size_t k = 0; k + 1 < trace.events.size(); ++k) {
        const TraceEvent& a = trace.events[k];
        const TraceEvent& b = trace.events[k + 1];
        std::map<std::int64_t, std::size_t> pos_b;
        for (std::size_t i = 0; i < b.order.size(); ++i) pos_b[b.order[i]] = i;

        for (std::size_t si = 0; si < a.order.size(); ++si) {
            std::int64_t s = a.order[si];
            if (s == a.chosen) continue; // receiving a job may move it up
            auto s_it = pos_b.find(s);
            if (s_it == pos_b.end()) continue;
            for (std::size_t ri = 0; ri < si; ++ri) {
                auto r_it = pos_b.find(a.order[ri]);
                if (r_it == pos_b.end()) continue;
                if (r_it->second > s_it->second) {
                    out.push_back({a.tick, b.tick, s});
                }
            }
        }
    }
    return out;
}

Violations check_per_time_bound(const Trace& trace, const Instance& inst) {
    Violations out;
    // Counts change only at event ticks; the bound is evaluated just after
    // the tick, so the windows end at t+1 to include arrivals at t. Because
    // a job finishing at t frees capacity only after the tick's arrivals,
    // arrivals at exactly t-2mu (resp. t-mu) can still matter, so the windows
    // are closed on the left as well: [t-2mu, t] and [t-mu, t].
    std::map<Tick, std::int64_t> max_count;
    for (const TraceEvent& ev : trace.events) {
        auto [it, fresh] = max_count.try_emplace(ev.tick, ev.active_servers);
        if (!fresh) it->second = std::max(it->second, ev.active_servers);
    }
    for (const auto& [t, count] : max_count) {
        Rat bound = windowed_arrival_mass(inst, t + 1, 2 * inst.mu + 1) +
                    windowed_arrival_mass(inst, t + 1, inst.mu + 1) + 1;
        if (Rat(count) > bound) {
            Violation v{"per-time server bound exceeded"};
            v.seg_start = t;
            v.seg_end = t + 1;
            out.push_back(v);
        }
    }
    return out;
}

} // namespace rsic
