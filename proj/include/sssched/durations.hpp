#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "sssched/model.hpp"
#include "sssched/numeric.hpp"

namespace sssched {

enum class PlanKind { CommonWindow, CommonRelease };

/// Stage-1 output: an execution time p_j per job and the energy lower bound
/// sum_j size_j W_j^alpha p_j^(1-alpha) it induces.
struct DurationPlan {
    std::map<JobId, double> durations;
    double lb_energy = 0.0;
    PlanKind kind = PlanKind::CommonWindow;

    double duration(JobId id) const {
        auto it = durations.find(id);
        if (it == durations.end()) throw StructuralError("plan has no duration for job " + std::to_string(id));
        return it->second;
    }
};

inline double lower_bound_energy(const Instance& instance, const DurationPlan& plan) {
    double total = 0.0;
    for (const auto& job : instance.jobs) total += job_energy(job.work, job.size, plan.duration(job.id), instance.alpha);
    return total;
}

namespace detail {

// Jobs in order of non-increasing `key`, ties by ascending id.
template <typename Key>
std::vector<std::size_t> order_by_desc(const Instance& instance, Key key) {
    std::vector<std::size_t> order(instance.jobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ka = key(instance.jobs[a]);
        const double kb = key(instance.jobs[b]);
        return ka != kb ? ka > kb : instance.jobs[a].id < instance.jobs[b].id;
    });
    return order;
}

inline std::vector<std::size_t> order_by_deadline(const Instance& instance) {
    std::vector<std::size_t> order(instance.jobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ja = instance.jobs[a];
        const auto& jb = instance.jobs[b];
        return ja.deadline != jb.deadline ? ja.deadline < jb.deadline : ja.id < jb.id;
    });
    return order;
}

}  // namespace detail

/// Duration allocator for jobs sharing one window [r, d).
///
/// Jobs are scanned by non-increasing work. While the current job satisfies
/// W_i >= (sum of W_j size_j over unassigned jobs) / (free processors), it
/// gets the whole window and its processors are taken out. The first job that
/// fails the test ends the scan and every unassigned job l is stretched
/// proportionally: p_l = W_l m' d / sum W_j size_j.
inline DurationPlan common_window_durations(const Instance& instance) {
    DurationPlan plan;
    plan.kind = PlanKind::CommonWindow;
    if (instance.jobs.empty()) return plan;

    const double release = instance.jobs.front().release;
    const double deadline = instance.jobs.front().deadline;
    for (const auto& job : instance.jobs)
        if (job.release != release || job.deadline != deadline)
            throw VariantError("common_window_durations: jobs do not share a common window");
    const double window = deadline - release;

    auto order = detail::order_by_desc(instance, [](const Job& j) { return j.work; });
    double volume = 0.0;
    for (const auto& job : instance.jobs) volume += job.work * job.size;
    int free_procs = instance.m;

    std::size_t k = 0;
    for (; k < order.size(); ++k) {
        const Job& job = instance.jobs[order[k]];
        if (free_procs <= 0)
            throw InternalInvariantError("common_window_durations: processors exhausted with jobs remaining");
        if (!snapped_ge(job.work, volume / free_procs)) break;
        plan.durations[job.id] = window;
        volume -= job.work * job.size;
        free_procs -= job.size;
    }
    for (std::size_t rest = k; rest < order.size(); ++rest) {
        const Job& job = instance.jobs[order[rest]];
        plan.durations[job.id] = std::min(window, job.work * free_procs * window / volume);
    }
    plan.lb_energy = lower_bound_energy(instance, plan);
    return plan;
}

/// Single-processor proxy of a rigid job: volume = size * work.
struct ProxyJob {
    JobId id = 0;
    double volume = 0.0;
    double deadline = 0.0;
};

struct DensityInterval {
    double start = 0.0;
    double end = 0.0;
    double density = 0.0;
    // Number of leading jobs (in deadline order) contained in [start, end).
    std::size_t count = 0;
};

namespace detail {

// `jobs` sorted by non-decreasing deadline, every job released at `release`.
inline DensityInterval max_density_sorted(std::span<const ProxyJob> jobs, double release) {
    DensityInterval best{release, release, -1.0, 0};
    double volume = 0.0;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        volume += jobs[k].volume;
        if (k + 1 < jobs.size() && jobs[k + 1].deadline == jobs[k].deadline) continue;
        const double density = volume / (jobs[k].deadline - release);
        if (best.count == 0 || (density > best.density && !snapped_equal(density, best.density)))
            best = {release, jobs[k].deadline, density, k + 1};
    }
    return best;
}

}  // namespace detail

/// Maximum-density interval [t, t') of jobs that all share release `release`.
/// Candidates are [release, d) for each current deadline d; ties go to the
/// smallest t'.
inline DensityInterval max_density_interval(std::span<const ProxyJob> jobs, double release) {
    if (jobs.empty()) throw InputError("max_density_interval: no jobs");
    for (const auto& j : jobs)
        if (!(j.deadline > release)) throw InputError("max_density_interval: deadline not after release");
    if (std::is_sorted(jobs.begin(), jobs.end(),
                       [](const ProxyJob& a, const ProxyJob& b) { return a.deadline < b.deadline; }))
        return detail::max_density_sorted(jobs, release);
    std::vector<ProxyJob> sorted(jobs.begin(), jobs.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ProxyJob& a, const ProxyJob& b) { return a.deadline < b.deadline; });
    return detail::max_density_sorted(sorted, release);
}

/// Removal of the tail [tail_start, tail_end) from the current timeline.
/// Deadlines at or past the tail move left by its length; deadlines inside
/// the tail collapse onto its start.
struct TailExcision {
    double tail_start = 0.0;
    double tail_end = 0.0;

    double length() const { return tail_end - tail_start; }

    double apply(double t) const {
        if (t >= tail_end) return t - length();
        if (t >= tail_start) return tail_start;
        return t;
    }
};

/// Single-processor durations p1 for jobs released at 0 with individual
/// deadlines, computed on the proxy with volumes size_j W_j.
///
/// Each round takes the maximum-density interval [R, t'). If every job in it
/// satisfies W_i / D_i <= density / m, those jobs share the interval at the
/// density speed and the timeline restarts at t'. Otherwise each violating
/// job (by current deadline) gets p1 = D_i size_i / m, pinned to the tail
/// ending at its current deadline, and the tail is cut out of the timeline.
///
/// D_i is the job's own deadline from the instance. The contracted deadlines
/// only encode remaining capacity; using them for the test or the cap makes
/// the result exceed the optimum (two size-1 jobs on two processors already
/// show it).
inline std::map<JobId, double> modified_ysd(const Instance& instance) {
    std::map<JobId, double> p1;
    struct Active {
        ProxyJob proxy;  // deadline in current (contracted) coordinates
        double work;
        int size;
        double original_deadline;
    };
    std::vector<Active> active;
    active.reserve(instance.jobs.size());
    for (std::size_t idx : detail::order_by_deadline(instance)) {
        const Job& job = instance.jobs[idx];
        if (job.release != 0.0) throw VariantError("modified_ysd: every job must be released at time 0");
        active.push_back({{job.id, job.size * job.work, job.deadline}, job.work, job.size, job.deadline});
    }

    const double m = instance.m;
    double release = 0.0;
    std::vector<ProxyJob> proxies;
    while (!active.empty()) {
        proxies.clear();
        for (const auto& a : active) proxies.push_back(a.proxy);
        const DensityInterval iv = detail::max_density_sorted(proxies, release);
        const double threshold = iv.density / m;

        std::vector<JobId> violators;
        for (std::size_t k = 0; k < iv.count; ++k)
            if (!snapped_le(active[k].work / active[k].original_deadline, threshold))
                violators.push_back(active[k].proxy.id);

        if (violators.empty()) {
            const double length = iv.end - iv.start;
            double volume = 0.0;
            for (std::size_t k = 0; k < iv.count; ++k) volume += active[k].proxy.volume;
            for (std::size_t k = 0; k < iv.count; ++k) p1[active[k].proxy.id] = active[k].proxy.volume * length / volume;
            active.erase(active.begin(), active.begin() + static_cast<std::ptrdiff_t>(iv.count));
            release = iv.end;
            continue;
        }

        // Violators were collected in deadline order, which excisions preserve.
        for (JobId id : violators) {
            auto it = std::find_if(active.begin(), active.end(), [id](const Active& a) { return a.proxy.id == id; });
            const double deadline = it->proxy.deadline;
            const double duration = it->original_deadline * it->size / m;
            const TailExcision cut{deadline - duration, deadline};
            if (cut.tail_start < release && !snapped_equal(cut.tail_start, release)) {
                std::ostringstream msg;
                msg << "modified_ysd: tail of job " << id << " starts at " << cut.tail_start
                    << " before the current release " << release;
                throw InternalInvariantError(msg.str());
            }
            p1[id] = duration;
            active.erase(it);
            for (auto& a : active) a.proxy.deadline = cut.apply(a.proxy.deadline);
        }
        for (const auto& a : active)
            if (!(a.proxy.deadline > release) || snapped_equal(a.proxy.deadline, release))
                throw InternalInvariantError("modified_ysd: window of job " + std::to_string(a.proxy.id) +
                                             " collapsed after tail excision");
    }
    return p1;
}

/// Checks p_i <= d_i and, for each deadline, sum_{d_j <= d_i} p_j size_j <= m d_i.
/// Returns an empty string when both hold.
inline std::string check_deadline_conditions(const Instance& instance, const DurationPlan& plan) {
    std::ostringstream msg;
    msg.precision(17);
    auto order = detail::order_by_deadline(instance);
    double load = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Job& job = instance.jobs[order[k]];
        const double p = plan.duration(job.id);
        if (!approx_le(p, job.deadline - job.release)) {
            msg << "job " << job.id << ": duration " << p << " exceeds deadline " << job.deadline;
            return msg.str();
        }
        load += p * job.size;
        const bool group_end = k + 1 == order.size() || instance.jobs[order[k + 1]].deadline != job.deadline;
        if (group_end && !approx_le(load, instance.m * (job.deadline - job.release))) {
            msg << "deadline " << job.deadline << ": load " << load << " exceeds capacity "
                << instance.m * (job.deadline - job.release);
            return msg.str();
        }
    }
    return {};
}

/// Rigid durations p_i = p1_i m / size_i and their lower bound.
inline DurationPlan lift_durations(const std::map<JobId, double>& p1, const Instance& instance) {
    DurationPlan plan;
    plan.kind = PlanKind::CommonRelease;
    for (const auto& job : instance.jobs) {
        auto it = p1.find(job.id);
        if (it == p1.end()) throw StructuralError("lift_durations: no duration for job " + std::to_string(job.id));
        plan.durations[job.id] = it->second * instance.m / job.size;
    }
    if (auto why = check_deadline_conditions(instance, plan); !why.empty())
        throw InternalInvariantError("lift_durations: " + why);
    plan.lb_energy = lower_bound_energy(instance, plan);
    return plan;
}

}  // namespace sssched
