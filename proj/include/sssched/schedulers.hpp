#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <vector>

#include "sssched/durations.hpp"
#include "sssched/model.hpp"
#include "sssched/numeric.hpp"

namespace sssched {

/// Schedule in which every job runs at speed W_j / p_j. Processor conflicts
/// and migration are excluded, deadlines are not (yet) respected.
struct PackedSchedule {
    Schedule schedule;
    double makespan = 0.0;
    std::map<JobId, double> completion;
};

struct CompressedSchedule {
    Schedule schedule;
    double factor = 1.0;
};

/// Makespan factor guaranteed by non-preemptive list scheduling: 2 - 1/m.
inline double list_schedule_bound(int m) { return 2.0 - 1.0 / m; }

/// Completion factor guaranteed by the earliest-deadline list schedulers: 3 - 4/(m+1).
inline double edf_schedule_bound(int m) { return 3.0 - 4.0 / (m + 1); }

namespace detail {

inline PackedSchedule finish_packed(Schedule schedule) {
    PackedSchedule packed;
    for (const auto& js : schedule.jobs) {
        packed.completion[js.job_id] = js.completion();
        packed.makespan = std::max(packed.makespan, js.completion());
    }
    packed.schedule = std::move(schedule);
    return packed;
}

enum class ListRule {
    // Start every unstarted job that fits, skipping over those that do not.
    AnyFit,
    // Start jobs strictly in list order; the first job that does not fit
    // blocks the rest, so start times are non-decreasing along the list.
    InOrder,
};

// Event-driven list scheduling. At time 0 and at every completion the job
// list is scanned in `priority` order and jobs that fit into the idle
// processors are started on the lowest-indexed idle ones.
inline PackedSchedule frontier_list_schedule(const DurationPlan& plan, const Instance& instance,
                                             const std::vector<std::size_t>& priority, ListRule rule) {
    const std::size_t n = instance.jobs.size();
    Schedule schedule;
    schedule.jobs.resize(n);
    std::vector<bool> busy(static_cast<std::size_t>(instance.m), false);
    int idle = instance.m;

    struct Event {
        double time;
        std::size_t job;
        bool operator>(const Event& other) const {
            return time != other.time ? time > other.time : job > other.job;
        }
    };
    std::priority_queue<Event, std::vector<Event>, std::greater<>> running;
    std::vector<std::size_t> pending = priority;
    double now = 0.0;

    while (!pending.empty()) {
        std::vector<std::size_t> still_pending;
        still_pending.reserve(pending.size());
        bool blocked = false;
        for (std::size_t idx : pending) {
            const Job& job = instance.jobs[idx];
            if (blocked || job.size > idle) {
                still_pending.push_back(idx);
                blocked = rule == ListRule::InOrder;
                continue;
            }
            const double p = plan.duration(job.id);
            JobSchedule& js = schedule.jobs[idx];
            js.job_id = job.id;
            for (int q = 0; q < instance.m && static_cast<int>(js.procs.size()) < job.size; ++q)
                if (!busy[static_cast<std::size_t>(q)]) {
                    busy[static_cast<std::size_t>(q)] = true;
                    js.procs.push_back(q);
                }
            idle -= job.size;
            js.segments.push_back({now, now + p, job.work / p});
            running.push({now + p, idx});
        }
        pending.swap(still_pending);
        if (pending.empty()) break;
        if (running.empty()) throw InternalInvariantError("list scheduling stalled with idle machine");

        // Release every job finishing at (numerically) the same instant.
        const double next = running.top().time;
        const double slack = kAbsTol * std::max(1.0, std::abs(next));
        now = next;
        while (!running.empty() && running.top().time <= next + slack) {
            const std::size_t idx = running.top().job;
            now = std::max(now, running.top().time);
            running.pop();
            for (int q : schedule.jobs[idx].procs) busy[static_cast<std::size_t>(q)] = false;
            idle += instance.jobs[idx].size;
        }
    }
    for (std::size_t i = 0; i < n; ++i) schedule.jobs[i].job_id = instance.jobs[i].id;
    return finish_packed(std::move(schedule));
}

inline void require_common_release_plan(const DurationPlan& plan, const Instance& instance, const char* who) {
    for (const auto& job : instance.jobs)
        if (job.release != 0.0) throw InputError(std::string(who) + ": every job must be released at time 0");
    if (auto why = check_deadline_conditions(instance, plan); !why.empty())
        throw InputError(std::string(who) + ": plan violates the deadline conditions: " + why);
}

inline void assert_edf_bound(const PackedSchedule& packed, const Instance& instance, const char* who) {
    const double factor = edf_schedule_bound(instance.m);
    for (const auto& job : instance.jobs) {
        const double c = packed.completion.at(job.id);
        if (!approx_le(c, factor * job.deadline)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << who << ": completion " << c << " of job " << job.id << " exceeds " << factor << " * deadline "
                << job.deadline;
            throw InternalInvariantError(msg.str());
        }
    }
}

}  // namespace detail

/// Non-preemptive list scheduling of a common-window plan into [0, ...).
/// Priority: non-increasing size, then non-increasing duration, then id.
inline PackedSchedule list_schedule_np(const DurationPlan& plan, const Instance& instance) {
    if (instance.jobs.empty()) return {};
    const double window = instance.jobs.front().deadline - instance.jobs.front().release;
    double load = 0.0;
    for (const auto& job : instance.jobs) {
        if (job.deadline - job.release != window)
            throw InputError("list_schedule_np: jobs do not share a common window length");
        const double p = plan.duration(job.id);
        if (!(p > 0.0) || !approx_le(p, window))
            throw InputError("list_schedule_np: duration of job " + std::to_string(job.id) + " outside (0, d]");
        load += p * job.size;
    }
    if (!approx_le(load, instance.m * window)) throw InputError("list_schedule_np: total load exceeds m * d");

    std::vector<std::size_t> priority(instance.jobs.size());
    std::iota(priority.begin(), priority.end(), std::size_t{0});
    std::sort(priority.begin(), priority.end(), [&](std::size_t a, std::size_t b) {
        const Job& ja = instance.jobs[a];
        const Job& jb = instance.jobs[b];
        if (ja.size != jb.size) return ja.size > jb.size;
        const double pa = plan.duration(ja.id);
        const double pb = plan.duration(jb.id);
        if (pa != pb) return pa > pb;
        return ja.id < jb.id;
    });
    PackedSchedule packed = detail::frontier_list_schedule(plan, instance, priority, detail::ListRule::AnyFit);
    if (!approx_le(packed.makespan, list_schedule_bound(instance.m) * window)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "list_schedule_np: makespan " << packed.makespan << " exceeds (2 - 1/m) d = "
            << list_schedule_bound(instance.m) * window;
        throw InternalInvariantError(msg.str());
    }
    return packed;
}

/// Non-preemptive earliest-deadline list scheduling (every size <= m/2). Jobs
/// start as soon as possible in deadline order, never overtaking each other.
inline PackedSchedule edf_list_schedule_np(const DurationPlan& plan, const Instance& instance) {
    for (const auto& job : instance.jobs)
        if (2 * job.size > instance.m)
            throw VariantError("edf_list_schedule_np: job " + std::to_string(job.id) + " needs more than m/2 processors");
    detail::require_common_release_plan(plan, instance, "edf_list_schedule_np");
    PackedSchedule packed = detail::frontier_list_schedule(plan, instance, detail::order_by_deadline(instance),
                                                           detail::ListRule::InOrder);
    detail::assert_edf_bound(packed, instance, "edf_list_schedule_np");
    return packed;
}

namespace detail {

// Time axis seen by small jobs: real time with every big-job block cut out.
class SmallTimeline {
  public:
    // A big block occupying real [real_start, real_start + length) sits at
    // small-time position `at`.
    void add_block(double at, double length) {
        // Back-to-back blocks share one position; keep rounding from splitting them.
        if (!positions_.empty() && std::abs(at - positions_.back()) <= kAbsTol * std::max(1.0, std::abs(at)))
            at = positions_.back();
        positions_.push_back(at);
        shift_.push_back((shift_.empty() ? 0.0 : shift_.back()) + length);
    }

    double total_block_length() const { return shift_.empty() ? 0.0 : shift_.back(); }

    // Real-time pieces of the small interval [a, b).
    std::vector<std::pair<double, double>> to_real(double a, double b) const {
        const double eps = kAbsTol * std::max({1.0, std::abs(a), std::abs(b)});
        std::vector<std::pair<double, double>> pieces;
        // Blocks at or before `a` lie entirely before the interval.
        auto first = std::upper_bound(positions_.begin(), positions_.end(), a + eps);
        std::size_t k = static_cast<std::size_t>(first - positions_.begin());
        double offset = k == 0 ? 0.0 : shift_[k - 1];
        double cursor = a;
        for (; k < positions_.size() && positions_[k] < b - eps; ++k) {
            if (positions_[k] > cursor + eps) pieces.emplace_back(cursor + offset, positions_[k] + offset);
            offset = shift_[k];
            cursor = positions_[k];
        }
        pieces.emplace_back(cursor + offset, b + offset);
        return pieces;
    }

  private:
    std::vector<double> positions_;
    std::vector<double> shift_;
};

}  // namespace detail

/// Preemptive earliest-deadline list scheduling.
///
/// Jobs are taken by non-decreasing deadline. A big job (size > m/2) is
/// appended after everything placed so far. A small job is placed in the
/// small timeline (big blocks removed) at the earliest instant where some set
/// of size_i processors is free for p_i contiguous units, then mapped back to
/// real time, where it is split around big blocks on the same processors.
inline PackedSchedule edf_list_schedule_pmtn(const DurationPlan& plan, const Instance& instance) {
    detail::require_common_release_plan(plan, instance, "edf_list_schedule_pmtn");
    const std::size_t n = instance.jobs.size();
    const auto m = static_cast<std::size_t>(instance.m);
    Schedule schedule;
    schedule.jobs.resize(n);

    detail::SmallTimeline timeline;
    // Busy small-time intervals per processor, sorted by start.
    std::vector<std::vector<std::pair<double, double>>> busy(m);
    // Candidate starts in small time, sorted: 0 and every small-job end.
    std::vector<double> candidates{0.0};
    double real_end = 0.0;
    const double inf = std::numeric_limits<double>::infinity();

    for (std::size_t idx : detail::order_by_deadline(instance)) {
        const Job& job = instance.jobs[idx];
        const double p = plan.duration(job.id);
        JobSchedule& js = schedule.jobs[idx];
        js.job_id = job.id;

        if (2 * static_cast<std::size_t>(job.size) > m) {
            const double start = real_end;
            timeline.add_block(start - timeline.total_block_length(), p);
            for (int q = 0; q < job.size; ++q) js.procs.push_back(q);
            js.segments.push_back({start, start + p, job.work / p});
            real_end = start + p;
            continue;
        }

        // Scan candidates in order with one cursor per processor: cursor[q] is
        // the first busy interval of q that does not end before t.
        const auto size = static_cast<std::size_t>(job.size);
        std::vector<std::size_t> cursor(m, 0);
        std::vector<std::size_t> chosen;
        double start = 0.0;
        bool found = false;
        std::size_t keep = 0;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const double t = candidates[k];
            if (!found) {
                const double eps = kAbsTol * std::max({1.0, std::abs(t), std::abs(t + p)});
                chosen.clear();
                bool idle = false;
                for (std::size_t q = 0; q < m; ++q) {
                    const auto& iv = busy[q];
                    std::size_t& c = cursor[q];
                    while (c < iv.size() && iv[c].second < t + eps) ++c;
                    const double next = c < iv.size() ? iv[c].first : inf;
                    if (next >= t + p - eps && chosen.size() < size) chosen.push_back(q);
                    idle = idle || next > t + eps;
                }
                if (chosen.size() == size) {
                    found = true;
                    start = t;
                } else if (!idle) {
                    // Busy intervals only grow, so an instant with no idle processor stays useless.
                    continue;
                }
            }
            candidates[keep++] = t;
        }
        candidates.resize(keep);
        if (!found)
            throw InternalInvariantError("edf_list_schedule_pmtn: no start found for job " + std::to_string(job.id));

        const double end = start + p;
        for (std::size_t q : chosen) {
            auto& iv = busy[q];
            iv.insert(std::upper_bound(iv.begin(), iv.end(), std::make_pair(start, end)), {start, end});
            js.procs.push_back(static_cast<int>(q));
        }
        if (auto pos = std::lower_bound(candidates.begin(), candidates.end(), end);
            pos == candidates.end() || *pos != end)
            candidates.insert(pos, end);
        for (const auto& [a, b] : timeline.to_real(start, end)) js.segments.push_back({a, b, job.work / p});
        real_end = std::max(real_end, js.segments.back().end);
    }

    PackedSchedule packed = detail::finish_packed(std::move(schedule));
    detail::assert_edf_bound(packed, instance, "edf_list_schedule_pmtn");
    return packed;
}

/// Uniform time shrink by f = max(1, max_j C_j / d_j): segment [a, b) becomes
/// [a/f, b/f) at f times the speed. Energy grows by exactly f^(alpha-1).
inline CompressedSchedule compress(const PackedSchedule& packed, const Instance& instance) {
    CompressedSchedule out;
    JobIndex index(instance);
    for (const auto& job : instance.jobs)
        if (job.release != 0.0) throw InputError("compress: every job must be released at time 0");
    for (const auto& js : packed.schedule.jobs)
        out.factor = std::max(out.factor, js.completion() / index.job(js.job_id).deadline);
    out.schedule = packed.schedule;
    if (out.factor == 1.0) return out;
    for (auto& js : out.schedule.jobs)
        for (auto& seg : js.segments) {
            seg.start /= out.factor;
            seg.end /= out.factor;
            seg.speed *= out.factor;
        }
    return out;
}

}  // namespace sssched
