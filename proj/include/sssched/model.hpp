#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "sssched/error.hpp"

namespace sssched {

using JobId = std::int64_t;

/// One rigid job: `work` units of processing that must run on `size`
/// processors simultaneously inside [release, deadline).
struct Job {
    JobId id = 0;
    double work = 0.0;
    int size = 1;
    double release = 0.0;
    double deadline = 0.0;

    friend bool operator==(const Job&, const Job&) = default;
};

/// The whole problem input: `m` identical processors, power function s^alpha.
struct Instance {
    int m = 1;
    double alpha = 3.0;
    std::vector<Job> jobs;

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct ExecSegment {
    double start = 0.0;
    double end = 0.0;
    double speed = 0.0;

    double length() const { return end - start; }
    double work() const { return speed * (end - start); }

    friend bool operator==(const ExecSegment&, const ExecSegment&) = default;
};

/// Execution of a single job. `procs` is fixed for every segment, which is
/// what makes a schedule non-migratory.
struct JobSchedule {
    JobId job_id = 0;
    std::vector<int> procs;
    std::vector<ExecSegment> segments;

    double completion() const { return segments.empty() ? 0.0 : segments.back().end; }
    double work() const {
        double total = 0.0;
        for (const auto& seg : segments) total += seg.work();
        return total;
    }

    friend bool operator==(const JobSchedule&, const JobSchedule&) = default;
};

struct Schedule {
    std::vector<JobSchedule> jobs;

    const JobSchedule* find(JobId id) const {
        auto it = std::find_if(jobs.begin(), jobs.end(), [id](const JobSchedule& js) { return js.job_id == id; });
        return it == jobs.end() ? nullptr : &*it;
    }

    // Latest segment end over all jobs.
    double makespan() const {
        double result = 0.0;
        for (const auto& js : jobs) result = std::max(result, js.completion());
        return result;
    }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Maps job ids to positions in `Instance::jobs`.
class JobIndex {
  public:
    explicit JobIndex(const Instance& instance) : instance_(&instance) {
        index_.reserve(instance.jobs.size());
        for (std::size_t i = 0; i < instance.jobs.size(); ++i) index_.emplace(instance.jobs[i].id, i);
    }

    bool contains(JobId id) const { return index_.count(id) != 0; }

    std::size_t position(JobId id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw StructuralError("unknown job id " + std::to_string(id));
        return it->second;
    }

    const Job& job(JobId id) const { return instance_->jobs[position(id)]; }

  private:
    const Instance* instance_;
    std::unordered_map<JobId, std::size_t> index_;
};

/// Throws InputError naming the first broken model invariant.
inline void check_instance(const Instance& instance) {
    auto fail = [](const std::string& msg) { throw InputError("invalid instance: " + msg); };
    if (instance.m < 1) fail("m must be a positive integer");
    if (!std::isfinite(instance.alpha) || instance.alpha <= 1.0) fail("alpha must be a finite real > 1");
    std::unordered_map<JobId, int> seen;
    for (const auto& job : instance.jobs) {
        const std::string tag = "job " + std::to_string(job.id) + ": ";
        if (seen[job.id]++ != 0) fail(tag + "duplicate id");
        if (!std::isfinite(job.work) || job.work <= 0.0) fail(tag + "work must be positive");
        if (job.size < 1 || job.size > instance.m) fail(tag + "size must lie in [1, m]");
        if (!std::isfinite(job.release) || job.release < 0.0) fail(tag + "release must be non-negative");
        if (!std::isfinite(job.deadline) || job.deadline <= job.release) fail(tag + "release must precede deadline");
    }
}

/// size * work^alpha * duration^(1-alpha): energy of running the job at the
/// constant speed work/duration on `size` processors.
inline double job_energy(double work, int size, double duration, double alpha) {
    if (!(work > 0.0)) throw DomainError("job_energy: work must be positive");
    if (!(duration > 0.0)) throw DomainError("job_energy: duration must be positive");
    if (size < 1) throw DomainError("job_energy: size must be at least 1");
    if (!(alpha > 1.0)) throw DomainError("job_energy: alpha must exceed 1");
    return static_cast<double>(size) * std::pow(work, alpha) * std::pow(duration, 1.0 - alpha);
}

inline double schedule_energy(const Schedule& schedule, const Instance& instance) {
    JobIndex index(instance);
    double total = 0.0;
    for (const auto& js : schedule.jobs) {
        const Job& job = index.job(js.job_id);
        for (const auto& seg : js.segments)
            total += job.size * std::pow(seg.speed, instance.alpha) * seg.length();
    }
    return total;
}

/// Moves every segment by `offset` time units.
inline Schedule shift_schedule(Schedule schedule, double offset) {
    for (auto& js : schedule.jobs)
        for (auto& seg : js.segments) {
            seg.start += offset;
            seg.end += offset;
        }
    return schedule;
}

inline Instance shift_instance(Instance instance, double offset) {
    for (auto& job : instance.jobs) {
        job.release += offset;
        job.deadline += offset;
    }
    return instance;
}

/// Time reversal t -> horizon - t. Requires every deadline <= horizon.
inline Instance mirror_instance(const Instance& instance, double horizon) {
    Instance out = instance;
    for (auto& job : out.jobs) {
        if (job.deadline > horizon) {
            std::ostringstream msg;
            msg << "mirror_instance: deadline " << job.deadline << " of job " << job.id << " exceeds horizon "
                << horizon;
            throw InputError(msg.str());
        }
        const double release = horizon - job.deadline;
        const double deadline = horizon - job.release;
        job.release = release;
        job.deadline = deadline;
    }
    return out;
}

/// Mirror of a common-deadline instance around that deadline; the result has
/// every release at 0.
inline Instance mirror_instance(const Instance& instance) {
    if (instance.jobs.empty()) return instance;
    const double horizon = instance.jobs.front().deadline;
    for (const auto& job : instance.jobs)
        if (job.deadline != horizon) throw VariantError("mirror_instance: jobs do not share a common deadline");
    return mirror_instance(instance, horizon);
}

inline Schedule mirror_schedule(Schedule schedule, double horizon) {
    for (auto& js : schedule.jobs) {
        for (auto& seg : js.segments) {
            const double start = horizon - seg.end;
            seg.end = horizon - seg.start;
            seg.start = start;
        }
        std::reverse(js.segments.begin(), js.segments.end());
    }
    return schedule;
}

}  // namespace sssched
