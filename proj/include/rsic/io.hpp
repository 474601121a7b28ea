#pragma once

#include "rsic/types.hpp"

#include <filesystem>
#include <string>

namespace rsic {

// Canonical instance JSON:
// {"version":1,"dimension":d,"denominator":D,"mu":m,
//  "jobs":[{"id":0,"arrival":0,"finish":6,"size":[5,2]}, ...]}
// Jobs are written sorted by (arrival, id). An optional "metadata" object is
// preserved on write and ignored on read.
std::string instance_to_json(const Instance& inst, const std::string& metadata_json = "");
Instance instance_from_json(const std::string& text);

// Canonical schedule JSON:
// {"version":1,"policy":"first_fit","total_cost":15,
//  "assignment":[{"job":0,"server":0},...],"servers":[{"id":0,"open":0,"close":9},...]}
// Servers sorted by (open, id); assignment sorted by job id.
std::string schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

Instance load_instance_file(const std::filesystem::path& path);

} // namespace rsic
