#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sssched/model.hpp"
#include "sssched/pipeline.hpp"

namespace sssched {

class ParseError : public InputError {
  public:
    using InputError::InputError;
};

/// On-disk form of a solved instance. Carries each job's window so the file
/// can be rendered without the instance.
struct SolutionFile {
    Variant variant;
    int m = 1;
    double alpha = 3.0;
    double bound = 1.0;
    double lb_energy = 0.0;
    double energy = 0.0;
    double ratio = 1.0;
    double factor = 1.0;
    Schedule schedule;
    std::map<JobId, std::pair<double, double>> windows;
};

inline SolutionFile to_solution_file(const Solution& sol, const Instance& instance) {
    SolutionFile file;
    file.variant = sol.variant;
    file.m = instance.m;
    file.alpha = instance.alpha;
    file.bound = sol.bound;
    file.lb_energy = sol.lb_energy;
    file.energy = sol.energy;
    file.ratio = sol.ratio;
    file.factor = sol.factor;
    file.schedule = sol.schedule;
    for (const auto& job : instance.jobs) file.windows[job.id] = {job.release, job.deadline};
    return file;
}

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::set<std::string>& required, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
    for (const auto& key : required)
        if (!obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
}

inline double get_real(const nlohmann::json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

inline std::int64_t get_int(const nlohmann::json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(where + ": field '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

inline nlohmann::json parse_document(std::string_view text) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

}  // namespace detail

inline std::string write_instance(const Instance& instance) {
    detail::ordered_json doc;
    doc["m"] = instance.m;
    doc["alpha"] = instance.alpha;
    doc["jobs"] = detail::ordered_json::array();
    for (const auto& job : instance.jobs)
        doc["jobs"].push_back({{"id", job.id},
                               {"work", job.work},
                               {"size", job.size},
                               {"release", job.release},
                               {"deadline", job.deadline}});
    return doc.dump(2) + "\n";
}

/// Parses and checks an instance document; unknown fields are errors.
inline Instance parse_instance(std::string_view text) {
    const auto doc = detail::parse_document(text);
    detail::require_keys(doc, {"m", "alpha", "jobs"}, {"m", "alpha", "jobs"}, "instance");
    Instance instance;
    instance.m = static_cast<int>(detail::get_int(doc, "m", "instance"));
    instance.alpha = detail::get_real(doc, "alpha", "instance");
    if (!doc.at("jobs").is_array()) throw ParseError("instance: 'jobs' must be an array");
    const std::set<std::string> fields{"id", "work", "size", "release", "deadline"};
    std::size_t k = 0;
    for (const auto& item : doc.at("jobs")) {
        const std::string where = "jobs[" + std::to_string(k++) + "]";
        detail::require_keys(item, fields, fields, where);
        Job job;
        job.id = detail::get_int(item, "id", where);
        job.work = detail::get_real(item, "work", where);
        job.size = static_cast<int>(detail::get_int(item, "size", where));
        job.release = detail::get_real(item, "release", where);
        job.deadline = detail::get_real(item, "deadline", where);
        instance.jobs.push_back(job);
    }
    try {
        check_instance(instance);
    } catch (const InputError& e) {
        throw ParseError(e.what());
    }
    return instance;
}

inline std::string write_solution(const SolutionFile& file) {
    detail::ordered_json doc;
    doc["variant"] = to_string(file.variant.kind);
    doc["preemptive"] = file.variant.preemptive;
    doc["m"] = file.m;
    doc["alpha"] = file.alpha;
    doc["bound"] = file.bound;
    doc["lb_energy"] = file.lb_energy;
    doc["energy"] = file.energy;
    doc["ratio"] = file.ratio;
    doc["factor"] = file.factor;
    doc["schedule"] = detail::ordered_json::array();
    for (const auto& js : file.schedule.jobs) {
        detail::ordered_json entry;
        entry["job"] = js.job_id;
        if (auto it = file.windows.find(js.job_id); it != file.windows.end()) {
            entry["release"] = it->second.first;
            entry["deadline"] = it->second.second;
        }
        entry["procs"] = js.procs;
        entry["segments"] = detail::ordered_json::array();
        for (const auto& seg : js.segments)
            entry["segments"].push_back({{"start", seg.start}, {"end", seg.end}, {"speed", seg.speed}});
        doc["schedule"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

inline SolutionFile parse_solution(std::string_view text) {
    const auto doc = detail::parse_document(text);
    const std::set<std::string> top{"variant", "preemptive", "m", "alpha", "bound", "lb_energy",
                                    "energy", "ratio", "factor", "schedule"};
    detail::require_keys(doc, top, top, "solution");
    SolutionFile file;
    if (!doc.at("variant").is_string()) throw ParseError("solution: 'variant' must be a string");
    try {
        file.variant.kind = problem_kind_from_string(doc.at("variant").get<std::string>());
    } catch (const InputError& e) {
        throw ParseError(e.what());
    }
    if (!doc.at("preemptive").is_boolean()) throw ParseError("solution: 'preemptive' must be a boolean");
    file.variant.preemptive = doc.at("preemptive").get<bool>();
    file.m = static_cast<int>(detail::get_int(doc, "m", "solution"));
    file.alpha = detail::get_real(doc, "alpha", "solution");
    file.bound = detail::get_real(doc, "bound", "solution");
    file.lb_energy = detail::get_real(doc, "lb_energy", "solution");
    file.energy = detail::get_real(doc, "energy", "solution");
    file.ratio = detail::get_real(doc, "ratio", "solution");
    file.factor = detail::get_real(doc, "factor", "solution");
    if (!doc.at("schedule").is_array()) throw ParseError("solution: 'schedule' must be an array");
    std::size_t k = 0;
    for (const auto& item : doc.at("schedule")) {
        const std::string where = "schedule[" + std::to_string(k++) + "]";
        detail::require_keys(item, {"job", "release", "deadline", "procs", "segments"}, {"job", "procs", "segments"},
                             where);
        JobSchedule js;
        js.job_id = detail::get_int(item, "job", where);
        if (item.contains("release") != item.contains("deadline"))
            throw ParseError(where + ": 'release' and 'deadline' go together");
        if (item.contains("deadline"))
            file.windows[js.job_id] = {detail::get_real(item, "release", where),
                                       detail::get_real(item, "deadline", where)};
        if (!item.at("procs").is_array()) throw ParseError(where + ": 'procs' must be an array");
        for (const auto& p : item.at("procs")) {
            if (!p.is_number_integer()) throw ParseError(where + ": processor indices must be integers");
            js.procs.push_back(p.get<int>());
        }
        if (!item.at("segments").is_array()) throw ParseError(where + ": 'segments' must be an array");
        for (const auto& s : item.at("segments")) {
            const std::set<std::string> seg_fields{"start", "end", "speed"};
            detail::require_keys(s, seg_fields, seg_fields, where + ".segments");
            js.segments.push_back({detail::get_real(s, "start", where), detail::get_real(s, "end", where),
                                   detail::get_real(s, "speed", where)});
        }
        file.schedule.jobs.push_back(std::move(js));
    }
    return file;
}

}  // namespace sssched
