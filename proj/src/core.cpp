#include "rsic/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rsic {

std::string Violation::text() const {
    std::ostringstream os;
    os << rule;
    if (job >= 0) os << " job=" << job;
    if (server >= 0) os << " server=" << server;
    if (dim >= 0) os << " dim=" << dim;
    if (seg_start >= 0) os << " segment=[" << seg_start << "," << seg_end << ")";
    return os.str();
}

std::string decimal_string(std::int64_t num, std::int64_t den, int places) {
    if (den == 0) throw InternalError("decimal_string: zero denominator");
    __int128 n = num;
    __int128 d = den;
    if (d < 0) { d = -d; n = -n; }
    bool neg = n < 0;
    if (neg) n = -n;
    __int128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    __int128 scaled = (n * scale * 2 + d) / (2 * d); // round half away from zero
    __int128 whole = scaled / scale;
    __int128 frac = scaled % scale;
    std::string fs(places, '0');
    for (int i = places - 1; i >= 0; --i) {
        fs[i] = static_cast<char>('0' + static_cast<int>(frac % 10));
        frac /= 10;
    }
    std::ostringstream os;
    if (neg) os << '-';
    os << static_cast<long long>(whole);
    if (places > 0) os << '.' << fs;
    return os.str();
}

std::string decimal_string(const Rat& r, int places) {
    return decimal_string(r.numerator(), r.denominator(), places);
}

Violations validate_instance(const Instance& inst) {
    Violations out;
    if (inst.dimension < 1) out.push_back({"invalid dimension"});
    if (inst.denominator < 1) out.push_back({"invalid denominator"});
    if (inst.mu < 1) out.push_back({"invalid mu"});
    if (!out.empty()) return out;

    std::unordered_set<std::int64_t> ids;
    Tick prev_arrival = 0;
    bool first = true;
    for (const Job& j : inst.jobs) {
        if (!ids.insert(j.id).second)
            out.push_back({"duplicate job id", j.id});
        if (!first && j.arrival < prev_arrival)
            out.push_back({"unsorted arrivals", j.id});
        prev_arrival = j.arrival;
        first = false;

        if (j.arrival < 0) out.push_back({"negative arrival", j.id});
        Tick dur = j.finish - j.arrival;
        if (dur < 1 || dur > inst.mu)
            out.push_back({"duration out of range", j.id});
        if (static_cast<std::int64_t>(j.size.size()) != inst.dimension) {
            out.push_back({"dimension mismatch", j.id});
            continue;
        }
        std::int64_t maxc = 0;
        for (std::int64_t d = 0; d < inst.dimension; ++d) {
            std::int64_t c = j.size[static_cast<std::size_t>(d)];
            if (c < 0 || c > inst.denominator) {
                Violation v{"size component out of range", j.id};
                v.dim = d;
                out.push_back(v);
            }
            maxc = std::max(maxc, c);
        }
        if (maxc == 0) out.push_back({"zero size vector", j.id});
    }
    return out;
}

LoadProfile load_profile(const Instance& inst) {
    LoadProfile prof;
    if (inst.jobs.empty()) return prof;

    std::vector<Tick> ticks;
    ticks.reserve(inst.jobs.size() * 2);
    for (const Job& j : inst.jobs) {
        ticks.push_back(j.arrival);
        ticks.push_back(j.finish);
    }
    std::sort(ticks.begin(), ticks.end());
    ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());

    // Sweep boundaries in order, adding arrivals and removing finishes.
    // Jobs are sorted by arrival; finishes are handled with a min-heap index.
    std::vector<std::size_t> by_finish(inst.jobs.size());
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) by_finish[i] = i;
    std::sort(by_finish.begin(), by_finish.end(), [&](std::size_t a, std::size_t b) {
        return inst.jobs[a].finish < inst.jobs[b].finish;
    });

    LoadVec load(static_cast<std::size_t>(inst.dimension), 0);
    std::int64_t alive = 0;
    std::size_t next_arrival = 0, next_finish = 0;
    for (std::size_t b = 0; b + 1 <= ticks.size(); ++b) {
        Tick t = ticks[b];
        while (next_finish < by_finish.size() && inst.jobs[by_finish[next_finish]].finish <= t) {
            const Job& j = inst.jobs[by_finish[next_finish]];
            for (std::int64_t d = 0; d < inst.dimension; ++d)
                load[static_cast<std::size_t>(d)] -= j.size[static_cast<std::size_t>(d)];
            --alive;
            ++next_finish;
        }
        while (next_arrival < inst.jobs.size() && inst.jobs[next_arrival].arrival <= t) {
            const Job& j = inst.jobs[next_arrival];
            for (std::int64_t d = 0; d < inst.dimension; ++d)
                load[static_cast<std::size_t>(d)] += j.size[static_cast<std::size_t>(d)];
            ++alive;
            ++next_arrival;
        }
        if (b + 1 < ticks.size() && alive > 0) {
            prof.segments.push_back({t, ticks[b + 1], load});
        }
    }
    return prof;
}

Tick span(const Instance& inst) {
    Tick total = 0;
    for (const Segment& s : load_profile(inst).segments) total += s.length();
    return total;
}

Rat utilization(const Instance& inst) {
    std::int64_t num = 0;
    for (const Job& j : inst.jobs) num += j.duration() * inf_norm(j.size);
    return Rat(num, inst.denominator);
}

Tick schedule_cost(const Schedule& sched) {
    Tick total = 0;
    for (const ScheduleServer& s : sched.servers) total += s.close - s.open;
    return total;
}

namespace {

Instance server_sub_instance(const Instance& inst, const std::vector<const Job*>& jobs) {
    Instance sub;
    sub.dimension = inst.dimension;
    sub.denominator = inst.denominator;
    sub.mu = inst.mu;
    for (const Job* j : jobs) sub.jobs.push_back(*j);
    std::stable_sort(sub.jobs.begin(), sub.jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
    return sub;
}

} // namespace

Violations verify_schedule(const Instance& inst, const Schedule& sched) {
    Violations out;

    std::unordered_map<std::int64_t, const Job*> jobs_by_id;
    for (const Job& j : inst.jobs) jobs_by_id[j.id] = &j;

    // Capacity violations are reported on the instance-wide event grid.
    std::vector<Tick> grid;
    for (const Job& j : inst.jobs) {
        grid.push_back(j.arrival);
        grid.push_back(j.finish);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::unordered_map<std::int64_t, const ScheduleServer*> servers_by_id;
    for (const ScheduleServer& s : sched.servers) {
        servers_by_id[s.id] = &s;
        if (s.close <= s.open) {
            Violation v{"server close not after open"};
            v.server = s.id;
            out.push_back(v);
        }
    }

    // (a) every job assigned exactly once, to a known server
    std::unordered_map<std::int64_t, std::vector<const Job*>> per_server;
    for (const Job& j : inst.jobs) {
        auto it = sched.assignment.find(j.id);
        if (it == sched.assignment.end()) {
            out.push_back({"job unassigned", j.id});
            continue;
        }
        if (!servers_by_id.count(it->second)) {
            Violation v{"assignment to unknown server", j.id};
            v.server = it->second;
            out.push_back(v);
            continue;
        }
        per_server[it->second].push_back(&j);
    }
    for (const auto& [jid, sid] : sched.assignment) {
        if (!jobs_by_id.count(jid)) {
            Violation v{"unknown job id", jid};
            v.server = sid;
            out.push_back(v);
        }
    }

    for (const ScheduleServer& s : sched.servers) {
        auto it = per_server.find(s.id);
        if (it == per_server.end()) {
            Violation v{"server without jobs"};
            v.server = s.id;
            out.push_back(v);
            continue;
        }
        Instance sub = server_sub_instance(inst, it->second);

        // (c) containment and open/close bookkeeping
        Tick first_arrival = sub.jobs.front().arrival;
        Tick max_finish = 0;
        for (const Job& j : sub.jobs) {
            max_finish = std::max(max_finish, j.finish);
            if (j.arrival < s.open || j.finish > s.close) {
                Violation v{"job outside server interval", j.id};
                v.server = s.id;
                out.push_back(v);
            }
        }
        if (s.open != first_arrival) {
            Violation v{"server open differs from first arrival"};
            v.server = s.id;
            out.push_back(v);
        }
        if (s.close != max_finish) {
            Violation v{"server close differs from max finish"};
            v.server = s.id;
            out.push_back(v);
        }

        // (b) capacity per instance-grid segment, (d) contiguity
        LoadProfile prof = load_profile(sub);
        for (std::size_t i = 0; i < prof.segments.size(); ++i) {
            const Segment& seg = prof.segments[i];
            for (std::int64_t d = 0; d < inst.dimension; ++d) {
                if (seg.load[static_cast<std::size_t>(d)] > inst.denominator) {
                    // Split the overloaded stretch at global event ticks so the
                    // report names a segment of the instance's load profile.
                    auto lo = std::upper_bound(grid.begin(), grid.end(), seg.start);
                    Tick piece_start = seg.start;
                    while (piece_start < seg.end) {
                        Tick piece_end = (lo != grid.end() && *lo < seg.end) ? *lo++ : seg.end;
                        Violation v{"capacity exceeded"};
                        v.server = s.id;
                        v.dim = d;
                        v.seg_start = piece_start;
                        v.seg_end = piece_end;
                        out.push_back(v);
                        piece_start = piece_end;
                    }
                }
            }
            if (i > 0 && prof.segments[i - 1].end != seg.start) {
                Violation v{"server alive period not contiguous"};
                v.server = s.id;
                v.seg_start = prof.segments[i - 1].end;
                v.seg_end = seg.start;
                out.push_back(v);
            }
        }
    }

    // (e) declared total cost
    if (sched.total_cost != schedule_cost(sched))
        out.push_back({"total cost inconsistent"});
    return out;
}

Schedule build_schedule(const Instance& inst, const std::map<std::int64_t, std::int64_t>& assignment,
                        std::string policy_name) {
    Schedule sched;
    sched.policy = std::move(policy_name);
    sched.assignment = assignment;

    std::unordered_map<std::int64_t, const Job*> jobs_by_id;
    for (const Job& j : inst.jobs) jobs_by_id[j.id] = &j;

    std::map<std::int64_t, ScheduleServer> servers;
    for (const auto& [jid, sid] : assignment) {
        auto it = jobs_by_id.find(jid);
        if (it == jobs_by_id.end()) throw InternalError("build_schedule: unknown job id");
        const Job& j = *it->second;
        auto [sit, fresh] = servers.try_emplace(sid, ScheduleServer{sid, j.arrival, j.finish});
        if (!fresh) {
            sit->second.open = std::min(sit->second.open, j.arrival);
            sit->second.close = std::max(sit->second.close, j.finish);
        }
    }
    for (auto& [sid, s] : servers) {
        sched.servers.push_back(s);
        sched.total_cost += s.close - s.open;
    }
    std::sort(sched.servers.begin(), sched.servers.end(), [](const ScheduleServer& a, const ScheduleServer& b) {
        return a.open != b.open ? a.open < b.open : a.id < b.id;
    });
    return sched;
}

} // namespace rsic
