#pragma once

#include <initializer_list>

#include "sssched/sssched.hpp"

namespace sssched::testing {

inline Instance make_instance(int m, double alpha, std::initializer_list<Job> jobs) {
    Instance inst;
    inst.m = m;
    inst.alpha = alpha;
    inst.jobs = jobs;
    return inst;
}

// m=2, d=1, A:(W=2), B:(W=1), C:(W=1), all size 1.
inline Instance common_window_abc() {
    return make_instance(2, 3.0, {{1, 2.0, 1, 0.0, 1.0}, {2, 1.0, 1, 0.0, 1.0}, {3, 1.0, 1, 0.0, 1.0}});
}

// m=2, jobs 1:(W=1,size=1,d=1), 2:(W=1,size=2,d=2).
inline Instance common_release_pair() {
    return make_instance(2, 3.0, {{1, 1.0, 1, 0.0, 1.0}, {2, 1.0, 2, 0.0, 2.0}});
}

inline DurationPlan plan_of(std::initializer_list<std::pair<const JobId, double>> durations,
                            PlanKind kind = PlanKind::CommonRelease) {
    DurationPlan plan;
    plan.durations = durations;
    plan.kind = kind;
    return plan;
}

inline JobSchedule single(JobId id, std::vector<int> procs, double start, double end, double speed) {
    return {id, std::move(procs), {{start, end, speed}}};
}

}  // namespace sssched::testing
