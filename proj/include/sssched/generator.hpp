#pragma once

#include <cstdint>
#include <random>

#include "sssched/model.hpp"
#include "sssched/pipeline.hpp"

namespace sssched {

enum class SizeDist {
    Any,    // uniform on {1..m}
    Small,  // uniform on {1..floor(m/2)}
    Unit,   // always 1
};

struct GenConfig {
    std::uint64_t seed = 1;
    int n = 10;
    int m = 4;
    double alpha = 3.0;
    ProblemKind kind = ProblemKind::CommonWindow;
    double work_min = 1.0;
    double work_max = 10.0;
    SizeDist sizes = SizeDist::Any;
    // Horizon D: the common deadline, or the upper end of the deadline range.
    double deadline_spread = 10.0;
};

/// Portable draws on top of mt19937_64 (the std distributions are not
/// reproducible across standard libraries).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

  private:
    std::mt19937_64 engine_;
};

/// Random instance of the requested variant. Common-release deadlines are
/// uniform in [D/4, D]; common-deadline releases are D minus such a draw.
inline Instance generate_instance(const GenConfig& cfg) {
    if (cfg.n < 0) throw InputError("generator: n must be non-negative");
    if (cfg.m < 1) throw InputError("generator: m must be positive");
    if (!(cfg.alpha > 1.0)) throw InputError("generator: alpha must exceed 1");
    if (!(cfg.work_min > 0.0) || cfg.work_max < cfg.work_min) throw InputError("generator: bad work range");
    if (!(cfg.deadline_spread > 0.0)) throw InputError("generator: deadline spread must be positive");
    if (cfg.sizes == SizeDist::Small && cfg.m < 2) throw InputError("generator: sizes <= m/2 need m >= 2");

    Rng rng(cfg.seed);
    Instance instance;
    instance.m = cfg.m;
    instance.alpha = cfg.alpha;
    const double horizon = cfg.deadline_spread;
    for (int i = 0; i < cfg.n; ++i) {
        Job job;
        job.id = i + 1;
        job.work = rng.uniform(cfg.work_min, cfg.work_max);
        switch (cfg.sizes) {
            case SizeDist::Any: job.size = rng.uniform_int(1, cfg.m); break;
            case SizeDist::Small: job.size = rng.uniform_int(1, cfg.m / 2); break;
            case SizeDist::Unit: job.size = 1; break;
        }
        switch (cfg.kind) {
            case ProblemKind::CommonWindow:
                job.release = 0.0;
                job.deadline = horizon;
                break;
            case ProblemKind::CommonRelease:
                job.release = 0.0;
                job.deadline = rng.uniform(horizon / 4.0, horizon);
                break;
            case ProblemKind::CommonDeadline:
                job.release = horizon - rng.uniform(horizon / 4.0, horizon);
                job.deadline = horizon;
                break;
        }
        instance.jobs.push_back(job);
    }
    return instance;
}

}  // namespace sssched
