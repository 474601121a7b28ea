#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsic {

using Tick = std::int64_t;
using Rat = boost::rational<std::int64_t>;

// Integer size/load vectors over a per-instance denominator D: component c
// in dimension j encodes the fractional size c/D.
using SizeVec = std::vector<std::int64_t>;
using LoadVec = std::vector<std::int64_t>;

struct Job {
    std::int64_t id = 0;
    Tick arrival = 0;
    Tick finish = 0;
    SizeVec size;

    Tick duration() const { return finish - arrival; }
    // Half-open interval [arrival, finish).
    bool alive_at(Tick t) const { return arrival <= t && t < finish; }
};

struct Instance {
    std::int64_t dimension = 1;
    std::int64_t denominator = 1; // server capacity in every coordinate
    Tick mu = 1;                  // max job duration, min is 1 tick
    std::vector<Job> jobs;        // sorted by arrival, ties keep input order
};

struct Segment {
    Tick start = 0;
    Tick end = 0;
    LoadVec load;

    Tick length() const { return end - start; }
};

// Piecewise-constant alive-job load over the union of job intervals.
struct LoadProfile {
    std::vector<Segment> segments;
};

struct ServerState {
    std::int64_t id = 0;
    Tick open = 0;
    std::set<std::int64_t> alive;    // job ids currently hosted
    LoadVec load;                    // componentwise sum of alive sizes
    Tick max_finish = 0;             // max finish over jobs ever assigned
    Tick last_receive = 0;           // tick of last assignment
    std::int64_t last_receive_seq = 0; // global assignment counter, refines last_receive ties
    std::int64_t job_count_total = 0;  // jobs ever assigned

    bool active() const { return !alive.empty(); }
};

struct ScheduleServer {
    std::int64_t id = 0;
    Tick open = 0;
    Tick close = 0;
};

struct Schedule {
    std::string policy;
    std::map<std::int64_t, std::int64_t> assignment; // job id -> server id
    std::vector<ScheduleServer> servers;             // sorted by (open, id)
    Tick total_cost = 0;
};

struct Violation {
    std::string rule;
    std::int64_t job = -1;
    std::int64_t server = -1;
    std::int64_t dim = -1;
    Tick seg_start = -1;
    Tick seg_end = -1;

    std::string text() const;
};

using Violations = std::vector<Violation>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad policy strings or out-of-range parameters (CLI exit code 3).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariants, a state the construction rules out (CLI exit code 4).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline std::int64_t inf_norm(const LoadVec& v) {
    std::int64_t m = 0;
    for (auto c : v) m = std::max(m, c);
    return m;
}

// Fixed-point decimal rendering of num/den, round half away from zero.
std::string decimal_string(std::int64_t num, std::int64_t den, int places = 4);
std::string decimal_string(const Rat& r, int places = 4);

} // namespace rsic
