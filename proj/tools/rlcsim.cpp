// Command-line front end: single-point analysis, parameter sweeps, Monte
// Carlo simulation, and exhaustive optimization, all emitting CSV.
//
// Exit codes: 0 success, 1 usage or validation error, 2 runtime abort
// (trial cap exceeded).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "rlc/csv.hpp"
#include "rlc/model.hpp"
#include "rlc/montecarlo.hpp"
#include "rlc/presets.hpp"
#include "rlc/sweep.hpp"

namespace {

struct CommonFlags {
    std::uint32_t packet_count = 0;
    unsigned field_bits = 0;
    std::uint32_t symbols = 0;
    double snr_db = 0.0;
    std::uint32_t precode_k = 0;  // 0: no pre-code
    bool eq4_literal = false;
    bool gv_literal = false;
    double const_epsilon = -1.0;
    bool const_epsilon_set = false;
    std::string out_path;
};

void add_config_flags(CLI::App& cmd, CommonFlags& f, bool required) {
    cmd.add_option("--K", f.packet_count, "generation size (source packets)")
        ->required(required);
    cmd.add_option("--u", f.field_bits,
                   "field exponent; symbols are drawn from GF(2^u)")
        ->required(required);
    cmd.add_option("--n", f.symbols, "symbols per packet")->required(required);
    cmd.add_option("--snr-db", f.snr_db, "SNR per bit in dB")
        ->required(required);
    cmd.add_option("--precode-k", f.precode_k,
                   "information symbols per packet; enables the pre-code");
}

void add_option_flags(CLI::App& cmd, CommonFlags& f) {
    cmd.add_flag("--eq4-literal", f.eq4_literal,
                 "QAM symbol error with the Q-function argument as printed "
                 "(no square root)");
    cmd.add_flag("--gv-literal", f.gv_literal,
                 "Gilbert-Varshamov distance in its infimum form");
    cmd.add_option("--const-epsilon", f.const_epsilon,
                   "fixed erasure probability overriding the "
                   "length-dependent model")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--out", f.out_path, "write CSV to a file instead of "
                                        "standard output");
}

rlc::CodingConfig make_config(const CommonFlags& f) {
    rlc::CodingConfig cfg;
    cfg.packet_count = f.packet_count;
    cfg.symbols_per_packet = f.symbols;
    cfg.info_symbols = f.precode_k > 0 ? f.precode_k : f.symbols;
    cfg.field_bits = f.field_bits;
    cfg.snr_db = f.snr_db;
    cfg.precode = f.precode_k > 0;
    return cfg;
}

rlc::ModelOptions make_options(const CommonFlags& f) {
    rlc::ModelOptions options;
    options.eq4_literal = f.eq4_literal;
    options.gv_literal = f.gv_literal;
    if (f.const_epsilon_set) {
        options.const_epsilon = f.const_epsilon;
    }
    return options;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::invalid_argument("cannot open output file '" +
                                            path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void metrics_header(rlc::CsvWriter& csv, const char* lead = nullptr) {
    if (lead != nullptr) {
        csv.cell(lead);
    }
    csv.cell("P_q").cell("epsilon").cell("EN").cell("S").cell("R");
    csv.cell("d").cell("t").cell("S_LB").cell("R_LB");
    csv.end_row();
}

void metrics_row(rlc::CsvWriter& csv, const rlc::MetricsRow& row) {
    csv.cell(row.symbol_error).cell(row.erasure).cell(row.expected_n);
    csv.cell(row.s).cell(row.r);
    csv.cell(row.distance).cell(static_cast<std::uint64_t>(row.correctable));
    csv.cell(row.s_lb).cell(row.r_lb);
    csv.end_row();
}

int cmd_analyze(const CommonFlags& flags) {
    const rlc::MetricsRow row =
        rlc::throughput(make_config(flags), make_options(flags));
    Output out(flags.out_path);
    rlc::CsvWriter csv(out.stream());
    metrics_header(csv);
    metrics_row(csv, row);
    return 0;
}

struct SweepFlags {
    std::string figure;
    std::string variable;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint32_t step = 1;
    double precode_rate = 0.0;
    bool precode_rate_set = false;
};

rlc::SweepSpec build_sweep(const CommonFlags& flags, const SweepFlags& sf) {
    if (!sf.figure.empty()) {
        rlc::SweepSpec spec = rlc::figure_preset(sf.figure);
        spec.options = make_options(flags);
        return spec;
    }
    rlc::SweepSpec spec;
    spec.base = make_config(flags);
    spec.options = make_options(flags);
    if (sf.variable == "n") {
        spec.variable = rlc::SweepVariable::PacketLength;
    } else if (sf.variable == "u") {
        spec.variable = rlc::SweepVariable::FieldBits;
    } else if (sf.variable == "k") {
        spec.variable = rlc::SweepVariable::InfoSymbols;
    } else {
        throw std::invalid_argument("--var must be one of n, u, k");
    }
    if (sf.precode_rate_set) {
        if (spec.variable != rlc::SweepVariable::PacketLength) {
            throw std::invalid_argument(
                "--precode-rate applies to sweeps over n");
        }
        spec.precode_mode = rlc::PrecodeSweepMode::FixedRate;
        spec.precode_rate = sf.precode_rate;
        spec.base.precode = true;
    } else if (spec.base.precode) {
        spec.precode_mode = rlc::PrecodeSweepMode::FixedInfo;
    }
    spec.grid = rlc::arithmetic_grid(sf.from, sf.to, sf.step);
    return spec;
}

int cmd_sweep(const CommonFlags& flags, const SweepFlags& sf) {
    const rlc::SweepSpec spec = build_sweep(flags, sf);
    const rlc::SweepResult result = rlc::run_sweep(spec);
    Output out(flags.out_path);
    rlc::CsvWriter csv(out.stream());
    metrics_header(csv, rlc::to_string(spec.variable));
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
        csv.cell(result.grid[i]);
        metrics_row(csv, result.rows[i]);
    }
    csv.comment("argmax_S=" + std::to_string(result.argmax_s) +
                " argmax_R=" + std::to_string(result.argmax_r));
    return 0;
}

struct SimulateFlags {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string mode = "packet";
    bool validate = false;
    unsigned threads = 1;
};

void estimate_cells(rlc::CsvWriter& csv, const rlc::EstimateRow& est) {
    csv.cell(est.trials).cell(est.mean_t).cell(est.stderr_t);
    csv.cell(est.s_hat).cell(est.stderr_s).cell(est.ci95_s);
    csv.cell(est.r_hat).cell(est.stderr_r).cell(est.ci95_r);
}

int cmd_simulate(const CommonFlags& flags, const SimulateFlags& sf) {
    const rlc::CodingConfig config = make_config(flags);
    const rlc::ModelOptions options = make_options(flags);
    Output out(flags.out_path);
    rlc::CsvWriter csv(out.stream());

    if (sf.validate) {
        const auto rows = rlc::validate_against_model(
            config, options, sf.trials, sf.seed, sf.threads);
        csv.cell("mode").cell("trials").cell("mean_T").cell("stderr_T");
        csv.cell("S_hat").cell("stderr_S").cell("ci95_S");
        csv.cell("R_hat").cell("stderr_R").cell("ci95_R");
        csv.cell("S_model").cell("R_model").cell("z_S").cell("z_R");
        csv.end_row();
        double max_abs_z = 0.0;
        for (const auto& v : rows) {
            csv.cell(rlc::to_string(v.mode));
            estimate_cells(csv, v.estimate);
            csv.cell(v.s_model).cell(v.r_model).cell(v.z_s).cell(v.z_r);
            csv.end_row();
            max_abs_z = std::max(max_abs_z,
                                 std::max(std::abs(v.z_s), std::abs(v.z_r)));
        }
        csv.comment("max_abs_z=" + rlc::format_number(max_abs_z) +
                    " threshold=4 status=" +
                    (max_abs_z < 4.0 ? "ok" : "disagree"));
        return 0;
    }

    rlc::TrialPlan plan;
    plan.config = config;
    plan.options = options;
    plan.trials = sf.trials;
    plan.base_seed = sf.seed;
    plan.threads = sf.threads;
    if (sf.mode == "packet") {
        plan.mode = rlc::ChannelMode::PacketErasure;
    } else if (sf.mode == "symbol") {
        plan.mode = rlc::ChannelMode::SymbolLevel;
    } else {
        throw std::invalid_argument("--mode must be packet or symbol");
    }
    const rlc::EstimateRow est = rlc::run_trials(plan);
    csv.cell("mode").cell("trials").cell("mean_T").cell("stderr_T");
    csv.cell("S_hat").cell("stderr_S").cell("ci95_S");
    csv.cell("R_hat").cell("stderr_R").cell("ci95_R");
    csv.end_row();
    csv.cell(rlc::to_string(plan.mode));
    estimate_cells(csv, est);
    csv.end_row();
    return 0;
}

struct OptimizeFlags {
    std::string variable;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::string maximize = "S";
};

int cmd_optimize(const CommonFlags& flags, const OptimizeFlags& of) {
    rlc::SweepVariable variable;
    if (of.variable == "n") {
        variable = rlc::SweepVariable::PacketLength;
    } else if (of.variable == "u") {
        variable = rlc::SweepVariable::FieldBits;
    } else if (of.variable == "k") {
        variable = rlc::SweepVariable::InfoSymbols;
    } else {
        throw std::invalid_argument("--var must be one of n, u, k");
    }
    const rlc::Objective objective = of.maximize == "R"
                                         ? rlc::Objective::DataRate
                                         : rlc::Objective::Throughput;
    const rlc::OptimizeResult result =
        rlc::optimize(make_config(flags), make_options(flags), variable,
                      of.from, of.to, objective);
    Output out(flags.out_path);
    rlc::CsvWriter csv(out.stream());
    metrics_header(csv, rlc::to_string(variable));
    csv.cell(result.best);
    metrics_row(csv, result.row);
    csv.comment("objective=" + of.maximize);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random linear coding over the erasure channel: analytic "
                 "throughput model and Monte Carlo simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    SweepFlags sweep_flags;
    SimulateFlags sim_flags;
    OptimizeFlags opt_flags;

    CLI::App* analyze =
        app.add_subcommand("analyze", "evaluate one operating point");
    add_config_flags(*analyze, flags, true);
    add_option_flags(*analyze, flags);

    CLI::App* sweep =
        app.add_subcommand("sweep", "evaluate the model over a grid");
    add_config_flags(*sweep, flags, false);
    add_option_flags(*sweep, flags);
    auto* fig = sweep->add_option("--figure", sweep_flags.figure,
                                  "named preset: 1, 2, 3, 4a or 4b");
    auto* var = sweep->add_option("--var", sweep_flags.variable,
                                  "swept variable: n, u or k");
    sweep->add_option("--from", sweep_flags.from, "first grid value");
    sweep->add_option("--to", sweep_flags.to, "last grid value");
    sweep->add_option("--step", sweep_flags.step, "grid step")
        ->check(CLI::PositiveNumber);
    auto* rate = sweep->add_option(
        "--precode-rate", sweep_flags.precode_rate,
        "fixed pre-code rate; k = ceil(rate*n) at every point");
    fig->excludes(var);
    var->needs(sweep->get_option("--from"));
    var->needs(sweep->get_option("--to"));

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo estimate of throughput and data rate");
    add_config_flags(*simulate, flags, true);
    add_option_flags(*simulate, flags);
    simulate->add_option("--trials", sim_flags.trials, "independent trials")
        ->required();
    simulate->add_option("--seed", sim_flags.seed, "base seed")->required();
    simulate->add_option("--mode", sim_flags.mode,
                         "channel model: packet or symbol");
    simulate->add_flag("--validate", sim_flags.validate,
                       "run both modes and report z-scores against the "
                       "analytic model");
    simulate->add_option("--threads", sim_flags.threads,
                         "worker threads; the result does not depend on it")
        ->check(CLI::PositiveNumber);

    CLI::App* optimize = app.add_subcommand(
        "optimize", "exhaustive scan for the best grid value");
    add_config_flags(*optimize, flags, true);
    add_option_flags(*optimize, flags);
    optimize->add_option("--var", opt_flags.variable, "variable: n, u or k")
        ->required();
    optimize->add_option("--from", opt_flags.from, "range start")->required();
    optimize->add_option("--to", opt_flags.to, "range end")->required();
    optimize->add_option("--maximize", opt_flags.maximize,
                         "objective: S or R")
        ->check(CLI::IsMember({"S", "R"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (const CLI::App* sub : app.get_subcommands()) {
        flags.const_epsilon_set = sub->count("--const-epsilon") > 0;
    }
    sweep_flags.precode_rate_set = sweep->count("--precode-rate") > 0;
    if (!sweep_flags.figure.empty() &&
        (sweep->count("--K") || sweep->count("--u") || sweep->count("--n") ||
         sweep->count("--snr-db"))) {
        std::cerr << "error: --figure presets fix the base configuration"
                  << std::endl;
        return 1;
    }
    if (sweep->parsed() && sweep_flags.figure.empty() &&
        sweep_flags.variable.empty()) {
        std::cerr << "error: sweep needs either --figure or --var/--from/--to"
                  << std::endl;
        return 1;
    }
    if (sweep->parsed() && sweep_flags.figure.empty()) {
        // a manual sweep needs the base configuration
        for (const char* name : {"--K", "--u", "--n", "--snr-db"}) {
            if (sweep->count(name) == 0 &&
                !(sweep_flags.variable == std::string(name + 2))) {
                std::cerr << "error: sweep over --var " << sweep_flags.variable
                          << " requires " << name << std::endl;
                return 1;
            }
        }
    }

    try {
        if (analyze->parsed()) {
            return cmd_analyze(flags);
        }
        if (sweep->parsed()) {
            return cmd_sweep(flags, sweep_flags);
        }
        if (simulate->parsed()) {
            return cmd_simulate(flags, sim_flags);
        }
        return cmd_optimize(flags, opt_flags);
    } catch (const rlc::TrialCapExceeded& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
