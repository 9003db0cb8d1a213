#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sssched/durations.hpp"
#include "sssched/model.hpp"
#include "sssched/numeric.hpp"
#include "sssched/schedulers.hpp"
#include "sssched/validate.hpp"

namespace sssched {

enum class ProblemKind { CommonWindow, CommonRelease, CommonDeadline };

struct Variant {
    ProblemKind kind = ProblemKind::CommonWindow;
    bool preemptive = false;

    friend bool operator==(const Variant&, const Variant&) = default;
};

inline const char* to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::CommonWindow: return "common-window";
        case ProblemKind::CommonRelease: return "common-release";
        case ProblemKind::CommonDeadline: return "common-deadline";
    }
    return "unknown";
}

inline ProblemKind problem_kind_from_string(const std::string& name) {
    if (name == "common-window") return ProblemKind::CommonWindow;
    if (name == "common-release") return ProblemKind::CommonRelease;
    if (name == "common-deadline") return ProblemKind::CommonDeadline;
    throw InputError("unknown variant '" + name + "' (expected common-window, common-release or common-deadline)");
}

/// End-to-end result with its approximation certificate.
struct Solution {
    Schedule schedule;
    DurationPlan plan;
    // Stage-2 output before compression, in the normalized coordinates the
    // algorithms work in (release 0; mirrored for common-deadline inputs).
    PackedSchedule packed;
    double packed_energy = 0.0;
    double energy = 0.0;
    double lb_energy = 0.0;
    double factor = 1.0;
    double bound = 1.0;
    double ratio = 1.0;
    Variant variant;
};

inline Variant detect_variant(const Instance& instance, bool preemptive) {
    Variant variant{ProblemKind::CommonWindow, preemptive};
    if (instance.jobs.empty()) return variant;
    const Job& first = instance.jobs.front();
    const bool same_release = std::all_of(instance.jobs.begin(), instance.jobs.end(),
                                          [&](const Job& j) { return j.release == first.release; });
    const bool same_deadline = std::all_of(instance.jobs.begin(), instance.jobs.end(),
                                           [&](const Job& j) { return j.deadline == first.deadline; });
    if (same_release && same_deadline) return variant;
    if (same_release)
        variant.kind = ProblemKind::CommonRelease;
    else if (same_deadline)
        variant.kind = ProblemKind::CommonDeadline;
    else
        throw VariantError(
            "unsupported variant: jobs have individual releases and deadlines; supported variants are "
            "common-window (shared release and deadline), common-release and common-deadline");
    if (!preemptive)
        for (const auto& job : instance.jobs)
            if (2 * job.size > instance.m)
                throw VariantError("unsupported variant: non-preemptive " + std::string(to_string(variant.kind)) +
                                   " requires size <= m/2, job " + std::to_string(job.id) + " has size " +
                                   std::to_string(job.size) + " with m = " + std::to_string(instance.m));
    return variant;
}

/// (2 - 1/m)^(alpha-1) for a common window, (3 - 4/(m+1))^(alpha-1) otherwise.
inline double theoretical_bound(Variant variant, int m, double alpha) {
    const double base = variant.kind == ProblemKind::CommonWindow ? list_schedule_bound(m) : edf_schedule_bound(m);
    return std::pow(base, alpha - 1.0);
}

namespace detail {

// Solves an instance whose jobs are all released at time 0.
inline Solution solve_from_zero(const Instance& instance, Variant variant) {
    Solution sol;
    sol.variant = variant;
    if (variant.kind == ProblemKind::CommonWindow) {
        sol.plan = common_window_durations(instance);
        sol.packed = list_schedule_np(sol.plan, instance);
    } else {
        sol.plan = lift_durations(modified_ysd(instance), instance);
        sol.packed = variant.preemptive ? edf_list_schedule_pmtn(sol.plan, instance)
                                        : edf_list_schedule_np(sol.plan, instance);
    }
    CompressedSchedule compressed = compress(sol.packed, instance);
    sol.schedule = std::move(compressed.schedule);
    sol.factor = compressed.factor;
    sol.packed_energy = schedule_energy(sol.packed.schedule, instance);
    sol.energy = schedule_energy(sol.schedule, instance);
    sol.lb_energy = sol.plan.lb_energy;
    return sol;
}

}  // namespace detail

/// Two-stage solver. Common-window inputs go through the window allocator and
/// list scheduling; common-release inputs through the density allocator and an
/// earliest-deadline scheduler; common-deadline inputs are mirrored first.
inline Solution solve(const Instance& instance, bool preemptive) {
    check_instance(instance);
    const Variant variant = detect_variant(instance, preemptive);
    Solution sol;
    if (instance.jobs.empty()) {
        sol.variant = variant;
        sol.bound = theoretical_bound(variant, instance.m, instance.alpha);
        sol.plan.kind = PlanKind::CommonWindow;
        return sol;
    }

    if (variant.kind == ProblemKind::CommonDeadline) {
        const double horizon = instance.jobs.front().deadline;
        sol = detail::solve_from_zero(mirror_instance(instance), variant);
        sol.schedule = mirror_schedule(std::move(sol.schedule), horizon);
    } else {
        const double release = instance.jobs.front().release;
        sol = detail::solve_from_zero(shift_instance(instance, -release), variant);
        sol.schedule = shift_schedule(std::move(sol.schedule), release);
    }

    sol.bound = theoretical_bound(variant, instance.m, instance.alpha);
    sol.ratio = sol.lb_energy > 0.0 ? sol.energy / sol.lb_energy : 1.0;

    std::ostringstream why;
    why.precision(17);
    if (!(sol.ratio <= sol.bound * (1.0 + kRelTol)))
        why << "ratio " << sol.ratio << " exceeds bound " << sol.bound << "; ";
    if (!(sol.factor <= std::pow(sol.bound, 1.0 / (instance.alpha - 1.0)) * (1.0 + kRelTol)))
        why << "compression factor " << sol.factor << " exceeds its guarantee; ";
    const ValidationReport report = validate_schedule(instance, sol.schedule, !variant.preemptive);
    for (const auto& v : report.violations) why << to_string(v) << "; ";
    if (!why.str().empty()) throw InternalInvariantError("solve: certificate violated: " + why.str());
    return sol;
}

}  // namespace sssched
