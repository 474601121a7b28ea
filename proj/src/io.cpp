#include "rsic/io.hpp"

#include "rsic/core.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rsic {

using ordered_json = nlohmann::ordered_json;

namespace {

std::int64_t require_int(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing or non-integer field: ") + key);
    return j[key].get<std::int64_t>();
}

} // namespace

std::string instance_to_json(const Instance& inst, const std::string& metadata_json) {
    ordered_json j;
    j["version"] = 1;
    j["dimension"] = inst.dimension;
    j["denominator"] = inst.denominator;
    j["mu"] = inst.mu;
    j["jobs"] = ordered_json::array();

    std::vector<const Job*> order;
    order.reserve(inst.jobs.size());
    for (const Job& job : inst.jobs) order.push_back(&job);
    std::sort(order.begin(), order.end(), [](const Job* a, const Job* b) {
        return a->arrival != b->arrival ? a->arrival < b->arrival : a->id < b->id;
    });
    for (const Job* job : order) {
        ordered_json jj;
        jj["id"] = job->id;
        jj["arrival"] = job->arrival;
        jj["finish"] = job->finish;
        jj["size"] = job->size;
        j["jobs"].push_back(std::move(jj));
    }
    if (!metadata_json.empty()) {
        j["metadata"] = ordered_json::parse(metadata_json);
    }
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance document is not an object");
    if (require_int(j, "version") != 1) throw ParseError("unsupported instance version");

    Instance inst;
    inst.dimension = require_int(j, "dimension");
    inst.denominator = require_int(j, "denominator");
    inst.mu = require_int(j, "mu");
    if (!j.contains("jobs") || !j["jobs"].is_array()) throw ParseError("missing jobs array");
    for (const auto& jj : j["jobs"]) {
        Job job;
        job.id = require_int(jj, "id");
        job.arrival = require_int(jj, "arrival");
        job.finish = require_int(jj, "finish");
        if (!jj.contains("size") || !jj["size"].is_array())
            throw ParseError("job missing size array");
        for (const auto& c : jj["size"]) {
            if (!c.is_number_integer()) throw ParseError("non-integer size component");
            job.size.push_back(c.get<std::int64_t>());
        }
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

std::string schedule_to_json(const Schedule& sched) {
    ordered_json j;
    j["version"] = 1;
    j["policy"] = sched.policy;
    j["total_cost"] = sched.total_cost;
    j["assignment"] = ordered_json::array();
    for (const auto& [jid, sid] : sched.assignment) {
        ordered_json a;
        a["job"] = jid;
        a["server"] = sid;
        j["assignment"].push_back(std::move(a));
    }
    j["servers"] = ordered_json::array();
    for (const ScheduleServer& s : sched.servers) {
        ordered_json ss;
        ss["id"] = s.id;
        ss["open"] = s.open;
        ss["close"] = s.close;
        j["servers"].push_back(std::move(ss));
    }
    return j.dump(2) + "\n";
}

Schedule schedule_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("schedule document is not an object");
    if (require_int(j, "version") != 1) throw ParseError("unsupported schedule version");

    Schedule sched;
    if (j.contains("policy") && j["policy"].is_string()) sched.policy = j["policy"].get<std::string>();
    sched.total_cost = require_int(j, "total_cost");
    if (!j.contains("assignment") || !j["assignment"].is_array())
        throw ParseError("missing assignment array");
    for (const auto& a : j["assignment"]) {
        sched.assignment[require_int(a, "job")] = require_int(a, "server");
    }
    if (!j.contains("servers") || !j["servers"].is_array())
        throw ParseError("missing servers array");
    for (const auto& ss : j["servers"]) {
        sched.servers.push_back({require_int(ss, "id"), require_int(ss, "open"), require_int(ss, "close")});
    }
    std::sort(sched.servers.begin(), sched.servers.end(), [](const ScheduleServer& a, const ScheduleServer& b) {
        return a.open != b.open ? a.open < b.open : a.id < b.id;
    });
    return sched;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << content;
}

Instance load_instance_file(const std::filesystem::path& path) {
    Instance inst = instance_from_json(read_file(path));
    Violations v = validate_instance(inst);
    if (!v.empty()) {
        std::ostringstream os;
        os << "invalid instance " << path.string() << ":";
        for (const Violation& item : v) os << " [" << item.text() << "]";
        throw ParseError(os.str());
    }
    return inst;
}

} // namespace rsic
