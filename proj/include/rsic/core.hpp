#pragma once

#include "rsic/types.hpp"

namespace rsic {

// Checks every Instance/Job/SizeVec invariant. Empty result means ok.
Violations validate_instance(const Instance& inst);

// Event-tick sweep over arrivals and finishes; each segment carries the exact
// alive-job load sum. Gaps with no alive job produce no segment.
LoadProfile load_profile(const Instance& inst);

// Measure of the union of all job intervals.
Tick span(const Instance& inst);

// Sum over jobs of duration * max size component, exact over denominator D.
Rat utilization(const Instance& inst);

// Feasibility and bookkeeping checks for a schedule against its instance:
// assignment completeness, per-server capacity on every segment, interval
// containment, contiguous server lifetime, and cost consistency.
Violations verify_schedule(const Instance& inst, const Schedule& sched);

Tick schedule_cost(const Schedule& sched);

// Builds the canonical Schedule for a job->server assignment: each server
// opens at its first job's arrival and closes at its max finish. Requires
// every server's job intervals to be contiguous (true for all online runs).
Schedule build_schedule(const Instance& inst, const std::map<std::int64_t, std::int64_t>& assignment,
                        std::string policy_name);

} // namespace rsic
