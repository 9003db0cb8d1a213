// Solves the common-release example from the README and prints the schedule.
#include <iostream>

#include "sssched/sssched.hpp"

int main() {
    sssched::Instance instance;
    instance.m = 2;
    instance.alpha = 3.0;
    instance.jobs = {{1, 1.0, 1, 0.0, 1.0}, {2, 1.0, 2, 0.0, 2.0}};

    const sssched::Solution sol = sssched::solve(instance, /*preemptive=*/true);
    std::cout << "energy " << sol.energy << ", lower bound " << sol.lb_energy << ", ratio " << sol.ratio
              << " (guaranteed <= " << sol.bound << ")\n";
    for (const auto& js : sol.schedule.jobs) {
        std::cout << "job " << js.job_id << " on";
        for (int p : js.procs) std::cout << " P" << p;
        for (const auto& seg : js.segments)
            std::cout << "  [" << seg.start << ", " << seg.end << ") at speed " << seg.speed;
        std::cout << "\n";
    }
}
