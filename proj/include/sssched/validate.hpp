#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sssched/model.hpp"
#include "sssched/numeric.hpp"

namespace sssched {

enum class SubjectKind { Job, Processor };

struct Violation {
    std::string rule;
    SubjectKind subject_kind = SubjectKind::Job;
    std::int64_t subject = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    bool has(std::string_view rule) const {
        return std::any_of(violations.begin(), violations.end(), [rule](const Violation& v) { return v.rule == rule; });
    }

    void add(std::string rule, SubjectKind kind, std::int64_t subject, std::string detail) {
        violations.push_back({std::move(rule), kind, subject, std::move(detail)});
    }
};

inline std::string to_string(const Violation& v) {
    std::ostringstream out;
    out << v.rule << ' ' << (v.subject_kind == SubjectKind::Job ? "job " : "proc ") << v.subject << ": " << v.detail;
    return out.str();
}

struct ValidationOptions {
    bool require_nonpreemptive = false;
    // Packed (pre-compression) schedules may overrun deadlines by design.
    bool enforce_deadlines = true;
};

namespace detail {

inline double time_tolerance(const Schedule& schedule) {
    double scale = 1.0;
    for (const auto& js : schedule.jobs)
        for (const auto& seg : js.segments) scale = std::max({scale, std::abs(seg.start), std::abs(seg.end)});
    return kRelTol * scale;
}

}  // namespace detail

/// Checks every schedule invariant and reports all violations found.
///
/// Rule names: unknown-job, missing-job, duplicate-job, migration, proc-count,
/// proc-range, proc-duplicate, segment-invalid, segment-order, work-mismatch,
/// release-violation, deadline-violation, preemption-forbidden,
/// processor-conflict.
inline ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule,
                                          const ValidationOptions& options) {
    ValidationReport report;
    JobIndex index(instance);
    const double tol = detail::time_tolerance(schedule);
    auto num = [](double x) {
        std::ostringstream s;
        s.precision(17);
        s << x;
        return s.str();
    };

    // A job listed under several entries is how migration is expressed in
    // this model: one processor set per entry.
    std::map<JobId, std::vector<const JobSchedule*>> by_job;
    for (const auto& js : schedule.jobs) {
        if (!index.contains(js.job_id)) {
            report.add("unknown-job", SubjectKind::Job, js.job_id, "job id not present in the instance");
            continue;
        }
        by_job[js.job_id].push_back(&js);
    }

    struct Busy {
        double start;
        double end;
        JobId job;
    };
    std::vector<std::vector<Busy>> per_proc(static_cast<std::size_t>(std::max(instance.m, 0)));

    for (const auto& job : instance.jobs) {
        auto it = by_job.find(job.id);
        if (it == by_job.end()) {
            report.add("missing-job", SubjectKind::Job, job.id, "job has no schedule entry");
            continue;
        }
        const auto& entries = it->second;
        if (entries.size() > 1) {
            std::set<std::vector<int>> sets;
            for (const auto* e : entries) {
                auto procs = e->procs;
                std::sort(procs.begin(), procs.end());
                sets.insert(procs);
            }
            if (sets.size() > 1)
                report.add("migration", SubjectKind::Job, job.id, "job runs on different processor sets");
            else
                report.add("duplicate-job", SubjectKind::Job, job.id, "job listed more than once");
        }

        double work = 0.0;
        std::vector<ExecSegment> all_segments;
        for (const auto* e : entries) {
            if (static_cast<int>(e->procs.size()) != job.size)
                report.add("proc-count", SubjectKind::Job, job.id,
                           "uses " + std::to_string(e->procs.size()) + " processors, size is " +
                               std::to_string(job.size));
            std::set<int> distinct;
            for (int p : e->procs) {
                if (p < 0 || p >= instance.m)
                    report.add("proc-range", SubjectKind::Job, job.id, "processor index " + std::to_string(p));
                else if (!distinct.insert(p).second)
                    report.add("proc-duplicate", SubjectKind::Job, job.id, "processor " + std::to_string(p));
            }
            for (std::size_t k = 0; k < e->segments.size(); ++k) {
                const auto& seg = e->segments[k];
                if (!std::isfinite(seg.start) || !std::isfinite(seg.end) || !std::isfinite(seg.speed) ||
                    !(seg.start < seg.end) || !(seg.speed > 0.0)) {
                    report.add("segment-invalid", SubjectKind::Job, job.id,
                               "segment [" + num(seg.start) + ", " + num(seg.end) + ") speed " + num(seg.speed));
                    continue;
                }
                if (k > 0 && seg.start < e->segments[k - 1].end - tol)
                    report.add("segment-order", SubjectKind::Job, job.id,
                               "segments unsorted or overlapping at " + num(seg.start));
                work += seg.work();
                all_segments.push_back(seg);
                if (seg.start < job.release - tol)
                    report.add("release-violation", SubjectKind::Job, job.id,
                               "starts at " + num(seg.start) + " before release " + num(job.release));
                if (options.enforce_deadlines && seg.end > job.deadline + tol)
                    report.add("deadline-violation", SubjectKind::Job, job.id,
                               "runs until " + num(seg.end) + " past deadline " + num(job.deadline));
                for (int p : distinct) per_proc[static_cast<std::size_t>(p)].push_back({seg.start, seg.end, job.id});
            }
        }
        if (!approx_equal(work, job.work))
            report.add("work-mismatch", SubjectKind::Job, job.id,
                       "processed " + num(work) + " of " + num(job.work) + " work units");
        if (options.require_nonpreemptive && all_segments.size() != 1)
            report.add("preemption-forbidden", SubjectKind::Job, job.id,
                       "has " + std::to_string(all_segments.size()) + " segments");
    }

    for (std::size_t p = 0; p < per_proc.size(); ++p) {
        auto& busy = per_proc[p];
        std::sort(busy.begin(), busy.end(), [](const Busy& a, const Busy& b) {
            return a.start != b.start ? a.start < b.start : a.job < b.job;
        });
        // Compare each interval with the one reaching furthest so far.
        std::size_t reach = 0;
        for (std::size_t k = 1; k < busy.size(); ++k) {
            if (busy[k].job != busy[reach].job && busy[k].start < busy[reach].end - tol)
                report.add("processor-conflict", SubjectKind::Processor, static_cast<std::int64_t>(p),
                           "jobs " + std::to_string(busy[reach].job) + " and " + std::to_string(busy[k].job) +
                               " overlap at " + num(busy[k].start));
            if (busy[k].end > busy[reach].end) reach = k;
        }
    }
    return report;
}

inline ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule,
                                          bool require_nonpreemptive) {
    return validate_schedule(instance, schedule, ValidationOptions{require_nonpreemptive, true});
}

}  // namespace sssched
