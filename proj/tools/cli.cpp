#include "cli.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rsp/error.hpp"
#include "rsp/serialize.hpp"

namespace rsp::cli {

namespace {

struct CliConfig {
    double alpha = 0.0;
    double beta_re = 0.0;
    double beta_im = 0.0;
    std::size_t m = 2;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::string force_outcome; // empty = sample
    std::string format = "text";
    bool normalize = false;
    unsigned workers = 0;
};

// Usage errors: bad flags or a target that fails validation.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_target_options(CLI::App *sub, CliConfig &cfg) {
    sub->add_option("--alpha", cfg.alpha, "Amplitude of |0...0>")->required();
    sub->add_option("--beta-re", cfg.beta_re, "Re(beta)");
    sub->add_option("--beta-im", cfg.beta_im, "Im(beta)");
    sub->add_option("--m", cfg.m, "Number of target qubits")
        ->check(CLI::Range(2, 20));
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--normalize", cfg.normalize,
                  "Rescale (alpha, beta) to unit norm before validation");
}

TargetSpec make_target(const CliConfig &cfg) {
    Complex alpha{cfg.alpha, 0.0};
    Complex beta{cfg.beta_re, cfg.beta_im};
    if (cfg.normalize) {
        const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
        if (!(n > 0.0) || !std::isfinite(n))
            throw UsageError("--normalize needs a nonzero finite (alpha, beta)");
        alpha /= n;
        beta /= n;
    }
    try {
        return canonicalize_target(alpha, beta, cfg.m, kCliInputTol);
    } catch (const RspError &e) {
        throw UsageError(e.what());
    }
}

// Text output is for people; twelve significant digits hide rounding noise.
std::string display(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string complex_text(Complex c) {
    std::ostringstream os;
    os << display(c.real()) << (std::signbit(c.imag()) ? "-" : "+")
       << display(std::abs(c.imag())) << 'i';
    return os.str();
}

void write_target_text(std::ostream &out, const TargetSpec &t) {
    out << "target      alpha=" << display(t.alpha())
        << " beta=" << complex_text(t.beta()) << " m=" << t.m()
        << " case=" << to_string(t.case_tag().kind);
    if (t.case_tag().kind == CaseTag::Kind::CaseB)
        out << " theta=" << display(t.case_tag().theta);
    out << '\n';
}

void write_text(std::ostream &out, const TargetSpec &t, const TrialRecord &r) {
    write_target_text(out, t);
    out << "outcome     " << to_string(r.outcome) << '\n'
        << "message     " << r.message.wire() << '\n'
        << "bits_sent   " << r.bits_sent << '\n'
        << "fidelity    " << display(r.fidelity) << '\n'
        << "success     " << (r.success ? "true" : "false") << '\n'
        << "bob_state  ";
    if (r.bob_state) {
        for (const auto &a : r.bob_state->amplitudes())
            out << ' ' << complex_text(a);
    } else {
        out << " (none)";
    }
    out << '\n';
}

void write_text(std::ostream &out, const TargetSpec &t, const ExactAnalysis &a) {
    write_target_text(out, t);
    out << "p_success      " << display(a.p_success) << '\n'
        << "expected_bits  " << display(a.expected_bits) << '\n'
        << "outcome   probability  bits  fidelity\n";
    for (const auto &b : a.per_branch)
        out << std::left << std::setw(10) << to_string(b.outcome)
            << std::setw(13) << display(b.probability) << std::setw(6)
            << b.bits << display(b.fidelity) << '\n';
}

void write_text(std::ostream &out, const TargetSpec &t,
                const MonteCarloStats &s) {
    write_target_text(out, t);
    out << "trials        " << s.trials << '\n'
        << "successes     " << s.successes << '\n'
        << "total_bits    " << s.total_bits << '\n'
        << "success_rate  " << display(s.success_rate) << '\n'
        << "mean_bits     " << display(s.mean_bits) << '\n'
        << "seed          " << s.seed << '\n';
}

void write_text(std::ostream &out, const std::vector<ComparisonRow> &rows) {
    out << std::left << std::setw(30) << "Protocol" << std::setw(34)
        << "Q.S." << std::setw(22) << "S.Q.C." << std::setw(8) << "C.C."
        << std::setw(15) << "I.D." << "Source\n";
    for (const auto &r : rows)
        out << std::left << std::setw(30) << r.protocol_name << std::setw(34)
            << r.target_family << std::setw(22) << r.channel << std::setw(8)
            << display(r.classical_bits) << std::setw(15)
            << r.identification << to_string(r.source) << '\n';
}

template <class T> void emit(std::ostream &out, const std::string &format,
                             const TargetSpec &t, const T &value) {
    if (format == "json")
        out << to_json(value).dump(2) << '\n';
    else if (format == "csv")
        out << to_csv(value);
    else
        write_text(out, t, value);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"Remote preparation of alpha|0...0> + beta|1...1> from one "
                 "Bell pair"};
    app.require_subcommand(1);

    CliConfig cfg;
    auto *run_cmd = app.add_subcommand("run", "Single protocol trial trace");
    auto *analyze_cmd =
        app.add_subcommand("analyze", "Exact branch enumeration");
    auto *mc_cmd = app.add_subcommand("montecarlo", "Seeded Monte Carlo run");
    auto *table_cmd =
        app.add_subcommand("table", "Resource comparison with prior protocols");
    for (auto *sub : {run_cmd, analyze_cmd, mc_cmd, table_cmd})
        add_target_options(sub, cfg);
    run_cmd->add_option("--force-outcome", cfg.force_outcome,
                        "Force Alice's measurement branch")
        ->check(CLI::IsMember({"psi", "psiperp"}));
    mc_cmd
        ->add_option("--trials", cfg.trials, "Number of trials")
        ->check(CLI::Range(std::uint64_t{1},
                           std::numeric_limits<std::uint64_t>::max()));
    mc_cmd->add_option("--workers", cfg.workers,
                       "Worker threads (0 = hardware concurrency)");

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const TargetSpec target = make_target(cfg);
        if (run_cmd->parsed()) {
            const OutcomeSelector select =
                cfg.force_outcome.empty()
                    ? OutcomeSelector::sampled(substream_uniform(cfg.seed, 0))
                    : OutcomeSelector::forced(cfg.force_outcome == "psi"
                                                  ? Outcome::Psi
                                                  : Outcome::PsiPerp);
            emit(out, cfg.format, target, run_trial(target, select));
        } else if (analyze_cmd->parsed()) {
            emit(out, cfg.format, target, exact_analyze(target));
        } else if (mc_cmd->parsed()) {
            emit(out, cfg.format, target,
                 monte_carlo(target, cfg.trials, cfg.seed, cfg.workers));
        } else {
            const auto rows = emit_comparison_table(target);
            if (cfg.format == "json")
                out << to_json(rows).dump(2) << '\n';
            else if (cfg.format == "csv")
                out << to_csv(rows);
            else
                write_text(out, rows);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace rsp::cli
