#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "sssched/model.hpp"
#include "sssched/numeric.hpp"
#include "sssched/pipeline.hpp"
#include "sssched/validate.hpp"

namespace sssched {

// Enumeration limits of the brute-force oracle.
inline constexpr int kOracleMaxJobs = 4;
inline constexpr int kOracleMaxProcs = 4;
inline constexpr int kOracleMaxSlots = 10;

/// `slots` equal pieces per window between consecutive release/deadline
/// breakpoints, over [0, horizon).
struct GridConfig {
    int slots = 1;
    double horizon = 0.0;
    bool preemptive = false;

    static GridConfig for_instance(const Instance& instance, int slots, bool preemptive) {
        GridConfig cfg{slots, 0.0, preemptive};
        for (const auto& job : instance.jobs) cfg.horizon = std::max(cfg.horizon, job.deadline);
        return cfg;
    }
};

struct OracleResult {
    double energy = 0.0;
    Schedule witness;
};

namespace detail {

struct Slot {
    double start;
    double end;
};

inline std::vector<Slot> build_grid(const Instance& instance, const GridConfig& cfg) {
    std::set<double> points{0.0, cfg.horizon};
    for (const auto& job : instance.jobs) {
        points.insert(job.release);
        points.insert(job.deadline);
    }
    std::vector<double> cuts(points.begin(), points.end());
    std::vector<Slot> slots;
    for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
        const double len = (cuts[w + 1] - cuts[w]) / cfg.slots;
        for (int g = 0; g < cfg.slots; ++g) {
            const double a = cuts[w] + g * len;
            const double b = g + 1 == cfg.slots ? cuts[w + 1] : cuts[w] + (g + 1) * len;
            slots.push_back({a, b});
        }
    }
    return slots;
}

// Every k-subset of {0..m-1}, in lexicographic order.
inline std::vector<std::vector<int>> proc_subsets(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int q = from; q < m; ++q) {
            cur.push_back(q);
            self(self, q + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    return false;
}

// jobs are assigned the slot sets in `owned`; merge adjacent slots into segments.
inline Schedule witness_from_slots(const Instance& instance, const std::vector<Slot>& grid,
                                   const std::vector<std::vector<int>>& procs,
                                   const std::vector<std::vector<std::size_t>>& owned) {
    Schedule schedule;
    for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
        const Job& job = instance.jobs[j];
        JobSchedule js{job.id, procs[j], {}};
        double total = 0.0;
        for (std::size_t s : owned[j]) total += grid[s].end - grid[s].start;
        const double speed = job.work / total;
        for (std::size_t s : owned[j]) {
            if (!js.segments.empty() && js.segments.back().end == grid[s].start)
                js.segments.back().end = grid[s].end;
            else
                js.segments.push_back({grid[s].start, grid[s].end, speed});
        }
        schedule.jobs.push_back(std::move(js));
    }
    return schedule;
}

class GridSearch {
  public:
    GridSearch(const Instance& instance, const GridConfig& cfg) : instance_(instance), grid_(build_grid(instance, cfg)) {
        const std::size_t n = instance.jobs.size();
        windows_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Job& job = instance.jobs[j];
            for (std::size_t s = 0; s < grid_.size(); ++s)
                if (grid_[s].start >= job.release && grid_[s].end <= job.deadline) windows_[j].push_back(s);
            if (windows_[j].empty()) throw InfeasibleError("grid_optimal: job " + std::to_string(job.id) + " has no slot");
        }
    }

    OracleResult run(bool preemptive) {
        const std::size_t n = instance_.jobs.size();
        std::vector<std::vector<std::vector<int>>> choices(n);
        for (std::size_t j = 0; j < n; ++j) choices[j] = proc_subsets(instance_.m, instance_.jobs[j].size);
        // Processors are identical: the first job may take the lowest indices.
        if (n > 0) choices[0].resize(1);

        std::vector<std::vector<int>> procs(n);
        auto rec = [&](auto&& self, std::size_t j) -> void {
            if (j == n) {
                if (preemptive)
                    search_preemptive(procs);
                else
                    search_nonpreemptive(procs);
                return;
            }
            for (const auto& c : choices[j]) {
                procs[j] = c;
                self(self, j + 1);
            }
        };
        rec(rec, 0);
        if (!found_) throw InfeasibleError("grid_optimal: no feasible assignment on this grid");
        OracleResult result;
        result.energy = best_;
        result.witness = witness_from_slots(instance_, grid_, best_procs_, best_slots_);
        return result;
    }

  private:
    double energy_for(std::size_t j, double time) const {
        const Job& job = instance_.jobs[j];
        return job_energy(job.work, job.size, time, instance_.alpha);
    }

    void offer(double energy, const std::vector<std::vector<int>>& procs,
               const std::vector<std::vector<std::size_t>>& slots) {
        if (!found_ || energy < best_) {
            found_ = true;
            best_ = energy;
            best_procs_ = procs;
            best_slots_ = slots;
        }
    }

    // Dynamic program over slots. Within one slot the running jobs form a
    // maximal conflict-free subset of the jobs allowed there. Only the total
    // time per job matters, so dominated time vectors are discarded.
    void search_preemptive(const std::vector<std::vector<int>>& procs) {
        const std::size_t n = instance_.jobs.size();
        std::vector<std::uint32_t> conflict(n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b && intersects(procs[a], procs[b])) conflict[a] |= 1u << b;

        struct State {
            std::vector<double> time;
            int parent;
            std::uint32_t running;
        };
        std::vector<std::vector<State>> layers;
        layers.push_back({State{std::vector<double>(n, 0.0), -1, 0}});

        for (std::size_t s = 0; s < grid_.size(); ++s) {
            std::uint32_t allowed = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (std::binary_search(windows_[j].begin(), windows_[j].end(), s)) allowed |= 1u << j;
            std::vector<std::uint32_t> options;
            for (std::uint32_t sub = allowed;; sub = (sub - 1) & allowed) {
                bool independent = true;
                for (std::size_t j = 0; j < n; ++j)
                    if ((sub >> j & 1u) && (conflict[j] & sub)) independent = false;
                if (independent) {
                    bool maximal = true;
                    for (std::size_t j = 0; j < n; ++j)
                        if ((allowed >> j & 1u) && !(sub >> j & 1u) && !(conflict[j] & sub)) maximal = false;
                    if (maximal) options.push_back(sub);
                }
                if (sub == 0) break;
            }
            const double len = grid_[s].end - grid_[s].start;
            std::vector<State> next;
            const auto& prev = layers.back();
            for (std::size_t k = 0; k < prev.size(); ++k)
                for (std::uint32_t opt : options) {
                    State st{prev[k].time, static_cast<int>(k), opt};
                    for (std::size_t j = 0; j < n; ++j)
                        if (opt >> j & 1u) st.time[j] += len;
                    next.push_back(std::move(st));
                }
            layers.push_back(pareto(std::move(next)));
        }

        const auto& last = layers.back();
        for (std::size_t k = 0; k < last.size(); ++k) {
            double energy = 0.0;
            bool feasible = true;
            for (std::size_t j = 0; j < n && feasible; ++j) {
                if (!(last[k].time[j] > 0.0))
                    feasible = false;
                else
                    energy += energy_for(j, last[k].time[j]);
            }
            if (!feasible || (found_ && !(energy < best_))) continue;
            std::vector<std::vector<std::size_t>> slots(n);
            int idx = static_cast<int>(k);
            for (std::size_t layer = layers.size() - 1; layer > 0; --layer) {
                const State& st = layers[layer][static_cast<std::size_t>(idx)];
                for (std::size_t j = 0; j < n; ++j)
                    if (st.running >> j & 1u) slots[j].push_back(layer - 1);
                idx = st.parent;
            }
            for (auto& v : slots) std::reverse(v.begin(), v.end());
            offer(energy, procs, slots);
        }
    }

    template <typename State>
    static std::vector<State> pareto(std::vector<State> states) {
        std::sort(states.begin(), states.end(), [](const State& a, const State& b) { return a.time > b.time; });
        std::vector<State> kept;
        for (auto& st : states) {
            bool dominated = false;
            for (const auto& k : kept) {
                bool all_ge = true;
                for (std::size_t j = 0; j < st.time.size() && all_ge; ++j) all_ge = k.time[j] >= st.time[j];
                if (all_ge) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) kept.push_back(std::move(st));
        }
        return kept;
    }

    // Depth-first search over one contiguous slot run per job with
    // branch-and-bound on energy.
    void search_nonpreemptive(const std::vector<std::vector<int>>& procs) {
        const std::size_t n = instance_.jobs.size();
        struct Run {
            std::size_t first;
            std::size_t last;
            double energy;
        };
        std::vector<std::vector<Run>> runs(n);
        std::vector<double> cheapest(n + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& w = windows_[j];
            for (std::size_t a = 0; a < w.size(); ++a)
                for (std::size_t b = a; b < w.size(); ++b) {
                    if (w[b] - w[a] != b - a) break;
                    runs[j].push_back({w[a], w[b], energy_for(j, grid_[w[b]].end - grid_[w[a]].start)});
                }
            std::stable_sort(runs[j].begin(), runs[j].end(), [](const Run& x, const Run& y) { return x.energy < y.energy; });
        }
        for (std::size_t j = n; j-- > 0;) cheapest[j] = cheapest[j + 1] + runs[j].front().energy;

        std::vector<const Run*> chosen(n, nullptr);
        auto rec = [&](auto&& self, std::size_t j, double energy) -> void {
            if (j == n) {
                std::vector<std::vector<std::size_t>> slots(n);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t s = chosen[k]->first; s <= chosen[k]->last; ++s) slots[k].push_back(s);
                offer(energy, procs, slots);
                return;
            }
            for (const Run& run : runs[j]) {
                const double total = energy + run.energy + cheapest[j + 1];
                if (found_ && !(total < best_)) break;
                bool clash = false;
                for (std::size_t k = 0; k < j && !clash; ++k)
                    clash = intersects(procs[k], procs[j]) && run.first <= chosen[k]->last && chosen[k]->first <= run.last;
                if (clash) continue;
                chosen[j] = &run;
                self(self, j + 1, energy + run.energy);
            }
        };
        rec(rec, 0, 0.0);
    }

    const Instance& instance_;
    std::vector<Slot> grid_;
    std::vector<std::vector<std::size_t>> windows_;
    bool found_ = false;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> best_procs_;
    std::vector<std::vector<std::size_t>> best_slots_;
};

}  // namespace detail

/// Minimum energy over all grid-aligned schedules with a fixed processor set
/// per job. Each job runs at constant speed over its allotted slots, which is
/// optimal for a fixed time budget. Over-approximates the true optimum.
inline OracleResult grid_optimal(const Instance& instance, const GridConfig& cfg) {
    check_instance(instance);
    if (static_cast<int>(instance.jobs.size()) > kOracleMaxJobs || instance.m > kOracleMaxProcs ||
        cfg.slots > kOracleMaxSlots) {
        std::ostringstream msg;
        msg << "oracle guard: n <= " << kOracleMaxJobs << ", m <= " << kOracleMaxProcs << " and slots <= "
            << kOracleMaxSlots << " required (got n = " << instance.jobs.size() << ", m = " << instance.m
            << ", slots = " << cfg.slots << ")";
        throw GuardError(msg.str());
    }
    if (cfg.slots < 1) throw InputError("grid_optimal: slots must be at least 1");
    for (const auto& job : instance.jobs)
        if (job.deadline > cfg.horizon) throw InputError("grid_optimal: horizon before a deadline");
    if (instance.jobs.empty()) return {};
    detail::GridSearch search(instance, cfg);
    return search.run(cfg.preemptive);
}

/// Checks lb <= oracle and energy <= bound * oracle.
inline ValidationReport check_certificate(const Solution& solution, double oracle_energy) {
    ValidationReport report;
    std::ostringstream detail;
    detail.precision(17);
    if (!(solution.lb_energy <= oracle_energy * (1.0 + kRelTol))) {
        detail << "lower bound " << solution.lb_energy << " above oracle energy " << oracle_energy;
        report.add("lb-exceeds-opt", SubjectKind::Job, 0, detail.str());
        detail.str("");
    }
    if (!(solution.energy <= solution.bound * oracle_energy * (1.0 + 1e-6))) {
        detail << "energy " << solution.energy << " above bound " << solution.bound << " * oracle " << oracle_energy;
        report.add("ratio-exceeds-bound", SubjectKind::Job, 0, detail.str());
    }
    return report;
}

}  // namespace sssched
