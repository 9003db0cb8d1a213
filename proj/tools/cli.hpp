#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sssched/sssched.hpp"

namespace sssched::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kUnsupported = 2;
inline constexpr int kRejected = 3;
inline constexpr int kCertificate = 4;
inline constexpr int kInternal = 5;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

inline std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

namespace detail {

struct SolveArgs {
    std::string in;
    std::string out = "-";
    bool preemptive = false;
};

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    const Instance instance = parse_instance(read_file(args.in));
    const Solution sol = solve(instance, args.preemptive);
    const std::string doc = write_solution(to_solution_file(sol, instance));
    std::ostream& summary = args.out == "-" ? err : out;
    if (args.out == "-")
        out << doc;
    else
        write_file(args.out, doc);
    summary << "variant=" << to_string(sol.variant.kind) << " preemptive=" << (sol.variant.preemptive ? "true" : "false")
            << " n=" << instance.jobs.size() << " m=" << instance.m << " energy=" << num(sol.energy)
            << " lb=" << num(sol.lb_energy) << " ratio=" << num(sol.ratio) << " bound=" << num(sol.bound) << "\n";
    return kOk;
}

struct ValidateArgs {
    std::string instance;
    std::string solution;
    bool nonpreemptive = false;
};

inline int cmd_validate(const ValidateArgs& args, std::ostream& out) {
    const Instance instance = parse_instance(read_file(args.instance));
    const SolutionFile file = parse_solution(read_file(args.solution));
    const ValidationReport report = validate_schedule(instance, file.schedule, args.nonpreemptive);
    if (report.ok()) {
        out << "ok\n";
        return kOk;
    }
    for (const auto& v : report.violations) out << to_string(v) << "\n";
    return kRejected;
}

struct GenArgs {
    std::uint64_t seed = 1;
    int n = 10;
    int m = 4;
    double alpha = 3.0;
    std::string variant = "common-window";
    std::vector<double> work_range{1.0, 10.0};
    std::string size_dist = "any";
    double deadline_spread = 10.0;
    bool nonpreemptive = false;
    std::string out = "-";
};

inline SizeDist size_dist_from_string(const std::string& name) {
    if (name == "any") return SizeDist::Any;
    if (name == "small") return SizeDist::Small;
    if (name == "unit") return SizeDist::Unit;
    throw InputError("unknown size distribution '" + name + "' (expected any, small or unit)");
}

inline GenConfig gen_config(const GenArgs& args) {
    GenConfig cfg;
    cfg.seed = args.seed;
    cfg.n = args.n;
    cfg.m = args.m;
    cfg.alpha = args.alpha;
    cfg.kind = problem_kind_from_string(args.variant);
    if (args.work_range.size() != 2) throw InputError("--work-range takes two values");
    cfg.work_min = args.work_range[0];
    cfg.work_max = args.work_range[1];
    cfg.sizes = size_dist_from_string(args.size_dist);
    // Individual deadlines without preemption are restricted to size <= m/2.
    if (args.nonpreemptive && cfg.kind != ProblemKind::CommonWindow && cfg.sizes == SizeDist::Any)
        cfg.sizes = SizeDist::Small;
    cfg.deadline_spread = args.deadline_spread;
    return cfg;
}

inline int cmd_gen(const GenArgs& args, std::ostream& out) {
    const std::string doc = write_instance(generate_instance(gen_config(args)));
    if (args.out == "-")
        out << doc;
    else
        write_file(args.out, doc);
    return kOk;
}

struct BenchArgs {
    std::uint64_t seed = 1;
    int count = 100;
    int n = 20;
    int n_min = -1;
    int m = 4;
    int m_min = -1;
    double alpha = 3.0;
    std::string variant = "common-window";
    bool preemptive = false;
    bool timing = true;
};

inline std::uint64_t bench_instance_seed(std::uint64_t base, int k) {
    return base * 1000003ULL + static_cast<std::uint64_t>(k);
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    if (args.count < 0 || args.n < 0 || args.m < 1) throw InputError("bench: count, n must be >= 0 and m >= 1");
    const int n_min = args.n_min < 0 ? args.n : args.n_min;
    const int m_min = args.m_min < 0 ? args.m : args.m_min;
    if (n_min > args.n || m_min > args.m || m_min < 1) throw InputError("bench: empty n or m range");
    const ProblemKind kind = problem_kind_from_string(args.variant);

    const auto t0 = std::chrono::steady_clock::now();
    double worst_ratio = 0.0, worst_bound = 0.0, worst_rel = 0.0, sum_ratio = 0.0, max_factor = 0.0;
    int worst_m = 0;
    for (int k = 0; k < args.count; ++k) {
        const std::uint64_t seed = bench_instance_seed(args.seed, k);
        Rng pick(seed ^ 0x9e3779b97f4a7c15ULL);
        GenConfig cfg;
        cfg.seed = seed;
        cfg.kind = kind;
        cfg.alpha = args.alpha;
        cfg.n = pick.uniform_int(n_min, args.n);
        cfg.m = pick.uniform_int(m_min, args.m);
        if (!args.preemptive && kind != ProblemKind::CommonWindow) {
            if (cfg.m < 2) cfg.m = 2;
            cfg.sizes = SizeDist::Small;
        }
        const Instance instance = generate_instance(cfg);
        Solution sol;
        try {
            sol = solve(instance, args.preemptive);
        } catch (const InternalInvariantError& e) {
            err << "bench: invariant failure on seed=" << seed << " n=" << cfg.n << " m=" << cfg.m << ": " << e.what()
                << "\n";
            return kCertificate;
        }
        if (!(sol.ratio <= sol.bound * (1.0 + kRelTol))) {
            err << "bench: ratio " << num(sol.ratio) << " above bound " << num(sol.bound) << " on seed=" << seed
                << " n=" << cfg.n << " m=" << cfg.m << "\n";
            return kCertificate;
        }
        sum_ratio += sol.ratio;
        max_factor = std::max(max_factor, sol.factor);
        worst_rel = std::max(worst_rel, sol.ratio / sol.bound);
        if (sol.ratio > worst_ratio) {
            worst_ratio = sol.ratio;
            worst_bound = sol.bound;
            worst_m = instance.m;
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "instances=" << args.count << " variant=" << args.variant
        << " preemptive=" << (args.preemptive ? "true" : "false") << "\n";
    if (args.count > 0) {
        out << "worst_ratio=" << num(worst_ratio) << " bound=" << num(worst_bound) << " (m=" << worst_m << ")\n";
        out << "mean_ratio=" << num(sum_ratio / args.count) << " max_factor=" << num(max_factor)
            << " worst_ratio_over_bound=" << num(worst_rel) << "\n";
    }
    if (args.timing) out << "runtime_s=" << num(seconds) << "\n";
    return kOk;
}

struct GanttArgs {
    std::string solution;
    std::string out = "-";
};

inline int cmd_gantt(const GanttArgs& args, std::ostream& out) {
    const std::string svg = render_gantt_svg(parse_solution(read_file(args.solution)));
    if (args.out == "-")
        out << svg;
    else
        write_file(args.out, svg);
    return kOk;
}

struct OracleArgs {
    std::string instance;
    int slots = 4;
    bool preemptive = false;
};

inline int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
    const Instance instance = parse_instance(read_file(args.instance));
    OracleResult oracle;
    try {
        oracle = grid_optimal(instance, GridConfig::for_instance(instance, args.slots, args.preemptive));
    } catch (const InfeasibleError& e) {
        err << "infeasible at grid resolution: " << e.what() << "\n";
        return kRejected;
    }
    const Solution sol = solve(instance, args.preemptive);
    const ValidationReport report = check_certificate(sol, oracle.energy);
    out << "lb=" << num(sol.lb_energy) << " oracle=" << num(oracle.energy) << " alg=" << num(sol.energy) << " "
        << (report.ok() ? "ok" : "FAIL") << "\n";
    for (const auto& v : report.violations) out << to_string(v) << "\n";
    return report.ok() ? kOk : kCertificate;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy-minimizing schedules for rigid parallel jobs on speed-scalable processors", "sssched"};
    app.require_subcommand(1);

    detail::SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file and write a solution file");
    solve_cmd->add_option("instance", solve_args.in, "Instance file")->required();
    solve_cmd->add_option("-o,--out", solve_args.out, "Solution file ('-' for stdout)")->envname("SSSCHED_OUT");
    solve_cmd->add_flag("--preemptive", solve_args.preemptive, "Allow preemption")->envname("SSSCHED_PREEMPTIVE");

    detail::ValidateArgs validate_args;
    auto* validate_cmd = app.add_subcommand("validate", "Check a solution file against its instance");
    validate_cmd->add_option("instance", validate_args.instance, "Instance file")->required();
    validate_cmd->add_option("solution", validate_args.solution, "Solution file")->required();
    validate_cmd->add_flag("--nonpreemptive", validate_args.nonpreemptive, "Require one segment per job")
        ->envname("SSSCHED_NONPREEMPTIVE");

    detail::GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--seed", gen_args.seed)->envname("SSSCHED_SEED");
    gen_cmd->add_option("--n", gen_args.n, "Number of jobs")->envname("SSSCHED_N");
    gen_cmd->add_option("--m", gen_args.m, "Number of processors")->envname("SSSCHED_M");
    gen_cmd->add_option("--alpha", gen_args.alpha)->envname("SSSCHED_ALPHA");
    gen_cmd->add_option("--variant", gen_args.variant, "common-window | common-release | common-deadline")
        ->envname("SSSCHED_VARIANT");
    gen_cmd->add_option("--work-range", gen_args.work_range, "Work interval: lo hi (or lo,hi)")
        ->expected(2)
        ->delimiter(',')
        ->envname("SSSCHED_WORK_RANGE");
    gen_cmd->add_option("--size-dist", gen_args.size_dist, "any | small | unit")->envname("SSSCHED_SIZE_DIST");
    gen_cmd->add_option("--deadline-spread", gen_args.deadline_spread, "Horizon D")
        ->envname("SSSCHED_DEADLINE_SPREAD");
    gen_cmd->add_flag("--nonpreemptive", gen_args.nonpreemptive, "Restrict sizes to m/2 for individual deadlines")
        ->envname("SSSCHED_NONPREEMPTIVE");
    gen_cmd->add_option("-o,--out", gen_args.out)->envname("SSSCHED_OUT");

    detail::BenchArgs bench_args;
    bool no_timing = false;
    auto* bench_cmd = app.add_subcommand("bench", "Solve random instances and check every ratio certificate");
    bench_cmd->add_option("--seed", bench_args.seed)->envname("SSSCHED_SEED");
    bench_cmd->add_option("--count", bench_args.count)->envname("SSSCHED_COUNT");
    bench_cmd->add_option("--n", bench_args.n, "Maximum jobs per instance")->envname("SSSCHED_N");
    bench_cmd->add_option("--n-min", bench_args.n_min, "Minimum jobs per instance (default: --n)")
        ->envname("SSSCHED_N_MIN");
    bench_cmd->add_option("--m", bench_args.m, "Maximum processors")->envname("SSSCHED_M");
    bench_cmd->add_option("--m-min", bench_args.m_min, "Minimum processors (default: --m)")->envname("SSSCHED_M_MIN");
    bench_cmd->add_option("--alpha", bench_args.alpha)->envname("SSSCHED_ALPHA");
    bench_cmd->add_option("--variant", bench_args.variant)->envname("SSSCHED_VARIANT");
    bench_cmd->add_flag("--preemptive", bench_args.preemptive)->envname("SSSCHED_PREEMPTIVE");
    bench_cmd->add_flag("--no-timing", no_timing, "Omit the runtime line")->envname("SSSCHED_NO_TIMING");

    detail::GanttArgs gantt_args;
    auto* gantt_cmd = app.add_subcommand("gantt", "Render a solution file as an SVG Gantt chart");
    gantt_cmd->add_option("solution", gantt_args.solution)->required();
    gantt_cmd->add_option("-o,--out", gantt_args.out, "SVG file ('-' for stdout)")->envname("SSSCHED_OUT");

    detail::OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare a tiny instance against the brute-force grid optimum");
    oracle_cmd->add_option("instance", oracle_args.instance)->required();
    oracle_cmd->add_option("--slots", oracle_args.slots, "Grid slots per window")->envname("SSSCHED_SLOTS");
    oracle_cmd->add_flag("--preemptive", oracle_args.preemptive)->envname("SSSCHED_PREEMPTIVE");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << e.what() << "\n";
        return kParseError;
    }

    try {
        if (*solve_cmd) return detail::cmd_solve(solve_args, out, err);
        if (*validate_cmd) return detail::cmd_validate(validate_args, out);
        if (*gen_cmd) return detail::cmd_gen(gen_args, out);
        if (*bench_cmd) {
            bench_args.timing = !no_timing;
            return detail::cmd_bench(bench_args, out, err);
        }
        if (*gantt_cmd) return detail::cmd_gantt(gantt_args, out);
        if (*oracle_cmd) return detail::cmd_oracle(oracle_args, out, err);
    } catch (const GuardError& e) {
        err << e.what() << "\n";
        return kUnsupported;
    } catch (const VariantError& e) {
        err << e.what() << "\n";
        return kUnsupported;
    } catch (const InternalInvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kParseError;
    }
    return kParseError;
}

}  // namespace sssched::cli
