// Command-line front end: one subcommand per module, JSON or CSV reports.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frlab/erasure.hpp"
#include "frlab/experiment.hpp"
#include "frlab/fourier_ratio.hpp"
#include "frlab/localization.hpp"
#include "frlab/rd_codec.hpp"
#include "frlab/recovery.hpp"
#include "frlab/rng.hpp"
#include "frlab/signal_source.hpp"
#include "frlab/sq_estimator.hpp"
#include "frlab/system.hpp"

using nlohmann::json;
using namespace frlab;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::optional<std::size_t> trials;
    std::size_t jobs = 1;
    std::string out;
    std::string format = "json";
    bool timing = false;
};

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// Generic CSV: two columns, one row per scalar leaf of the JSON report.
std::string json_to_csv(const json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::string s = "key,value\n";
    for (const auto& [k, v] : rows) s += csv_quote(k) + "," + csv_quote(v) + "\n";
    return s;
}

void emit(const Globals& g, json report, const std::optional<std::string>& csv,
          std::chrono::steady_clock::time_point start) {
    if (g.timing) {
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    std::string text;
    if (g.format == "csv") {
        text = csv && !g.timing ? *csv : json_to_csv(report);
    } else {
        text = report.dump(2) + "\n";
    }
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + g.out + "'");
    f << text;
}

json account_json(const BitAccount& a) {
    return {{"header_bits", a.header_bits},
            {"support_bits", a.support_bits},
            {"coefficient_bits", a.coefficient_bits},
            {"padding_bits", a.padding_bits},
            {"total", a.total},
            {"bound_terms",
             {{"r", a.bound_terms.r},
              {"main_term", a.bound_terms.main_term},
              {"log_term", a.bound_terms.log_term},
              {"sparsifier_support", a.bound_terms.sparsifier_support},
              {"refined_support", a.bound_terms.refined_support}}}};
}

json solver_json(const RecoveryConfig& c) {
    return {{"max_iterations", c.max_iterations},
            {"step", c.step},
            {"relaxation", c.relaxation},
            {"tolerance", c.tolerance}};
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void add_solver_flags(CLI::App* cmd, RecoveryConfig& solver) {
    cmd->add_option("--max-iter", solver.max_iterations, "Douglas-Rachford iteration cap")->capture_default_str();
    cmd->add_option("--step", solver.step, "prox step, in units of the RMS sample magnitude")->capture_default_str();
    cmd->add_option("--relaxation", solver.relaxation, "relaxation in (0, 2)")->capture_default_str();
    cmd->add_option("--tol", solver.tolerance, "relative fixed-point tolerance")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier ratio toolkit: measurement, recovery, localization, codec and SQ experiments"};
    app.set_config("--config", "", "TOML config file; [subcommand] sections mirror the flags");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Globals g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--trials", g.trials, "trial count (subcommand default if omitted)");
    app.add_option("--jobs", g.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output path (stdout if omitted)");
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_flag("--timing", g.timing, "add wall_time_s to the report (breaks byte-reproducibility)");

    // fr
    std::string fr_system, fr_signal = "sparse:3";
    std::vector<double> fr_eta{0.5, 0.25, 0.1};
    auto* fr = app.add_subcommand("fr", "Fourier ratio, sparsity levels and tails of a signal");
    fr->add_option("--system", fr_system, "system spec, e.g. dft:64, wht:5, gabor:N=16,T=8, haar:64")->required();
    fr->add_option("--signal", fr_signal, "sparse:S | harmonic | rademacher | row-delta:A | file:PATH")->capture_default_str();
    fr->add_option("--eta", fr_eta, "tail levels")->capture_default_str();

    // recover
    std::string rc_system, rc_signal = "sparse:3", rc_save;
    double rc_p = 0.5, rc_eps = 0.0, rc_noise = 0.0, rc_C = 1.0;
    RecoveryConfig rc_solver;
    auto* rc = app.add_subcommand("recover", "l1 recovery from Bernoulli samples");
    rc->add_option("--system", rc_system, "system spec")->required();
    rc->add_option("--signal", rc_signal, "signal spec")->capture_default_str();
    rc->add_option("--p", rc_p, "sampling probability")->capture_default_str();
    rc->add_option("--eps", rc_eps, "fidelity level, sigma = eps ||f||_2")->capture_default_str();
    rc->add_option("--noise", rc_noise, "sample noise norm as a fraction of sigma, in [0, 1]")->capture_default_str();
    rc->add_option("--C", rc_C, "constant in the sample-complexity estimate")->capture_default_str();
    rc->add_option("--save", rc_save, "write the recovered signal to this file");
    add_solver_flags(rc, rc_solver);

    // phase
    PhaseConfig ph;
    std::optional<double> ph_threshold;
    auto* phc = app.add_subcommand("phase", "success-rate sweep over (signal, p)");
    phc->add_option("--system", ph.system, "system spec")->capture_default_str();
    phc->add_option("--signals", ph.signals, "signal specs")->capture_default_str();
    phc->add_option("--p", ph.p_values, "sampling probabilities")->capture_default_str();
    phc->add_option("--eps", ph.epsilon, "fidelity level")->capture_default_str();
    phc->add_option("--noise", ph.noise, "sample noise norm as a fraction of sigma")->capture_default_str();
    phc->add_option("--threshold", ph_threshold, "success threshold on relative error (default max(11.47 eps, 1e-5))");
    add_solver_flags(phc, ph.solver);

    // localize
    std::string lc_system, lc_signal = "sparse:3", lc_split, lc_transform = "both";
    auto* lc = app.add_subcommand("localize", "best-slice Fourier ratio versus the global ratio");
    lc->add_option("--system", lc_system, "system spec whose group is split, e.g. dft:16x4")->required();
    lc->add_option("--split", lc_split, "1-based factor indices H|K, e.g. 1|2")->required();
    lc->add_option("--signal", lc_signal, "signal spec")->capture_default_str();
    lc->add_option("--transform", lc_transform, "global transform reading")
        ->check(CLI::IsMember({"row-wise", "full", "both"}))
        ->capture_default_str();

    // rdcodec
    std::string rd_system, rd_signal = "harmonic", rd_input, rd_output;
    double rd_eps = 0.1;
    auto* rd = app.add_subcommand("rdcodec", "rate-distortion descriptor codec");
    rd->require_subcommand(1);
    auto* rd_enc = rd->add_subcommand("encode", "encode a signal to an FRRD file");
    auto* rd_dec = rd->add_subcommand("decode", "decode an FRRD file");
    auto* rd_rt = rd->add_subcommand("roundtrip", "encode, decode and measure distortion");
    for (auto* cmd : {rd_enc, rd_rt}) {
        cmd->add_option("--system", rd_system, "system spec")->required();
        cmd->add_option("--signal", rd_signal, "signal spec")->capture_default_str();
        cmd->add_option("--eps", rd_eps, "distortion level")->capture_default_str();
    }
    rd_enc->add_option("--output", rd_output, "descriptor file")->required();
    rd_dec->add_option("--input", rd_input, "descriptor file")->required();
    rd_dec->add_option("--output", rd_output, "write the decoded signal to this file");

    // sqdim
    std::string sq_system, sq_signal = "harmonic";
    std::optional<double> sq_r;
    std::optional<std::size_t> sq_k;
    bool sq_run_mse = false;
    auto* sq = app.add_subcommand("sqdim", "covering parameters, SQ-dimension bound and estimator MSE");
    sq->add_option("--system", sq_system, "system spec")->required();
    sq->add_option("--signal", sq_signal, "signal spec (gives r when --r is omitted)")->capture_default_str();
    sq->add_option("--r", sq_r, "Fourier ratio bound");
    sq->add_flag("--mse", sq_run_mse, "run the estimator MSE experiment under the uniform distribution");
    sq->add_option("--k", sq_k, "draws per functional for --mse (default 16)");

    // erasure
    std::size_t er_N = 100, er_T = 10, er_E = 2;
    double er_theta = 0.05;
    auto* er = app.add_subcommand("erasure", "per-row erasure statistics");
    er->add_option("--N", er_N, "row length")->capture_default_str();
    er->add_option("--T", er_T, "number of rows")->capture_default_str();
    er->add_option("--theta", er_theta, "erasure probability")->capture_default_str();
    er->add_option("--emax", er_E, "maximal row erasure parameter")->capture_default_str();

    for (auto* cmd : app.get_subcommands({})) cmd->configurable();
    for (auto* cmd : rd->get_subcommands({})) cmd->configurable();

    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    try {
        if (fr->parsed()) {
            const OrthonormalSystem system = parse_system(fr_system);
            const Signal f = generate_signal(fr_signal, system, g.seed);
            const CoefficientVector c = system.analyze(f);
            const double r = fourier_ratio(c);
            const std::size_t M = system.dimension();
            json levels = json::array();
            for (double eta : fr_eta) {
                if (!(eta > 0.0)) throw std::invalid_argument("--eta values must be > 0");
                const SparsifyResult sp = soft_sparsify(c, eta);
                levels.push_back({{"eta", eta},
                                  {"s", sp.s},
                                  {"minimal_s", minimal_support_size(c.entries, eta)},
                                  {"tail_l2", sp.tail_l2},
                                  {"tail_l2_bound", eta * norm_l2(c.entries)},
                                  {"tail_l1", sp.tail_l1},
                                  {"refined_support_bound", refined_support_bound(r, eta, M)}});
            }
            json report{{"system", system.spec()},
                        {"signal", fr_signal},
                        {"seed", g.seed},
                        {"M", M},
                        {"fr", r},
                        {"l1", norm_l1(c.entries)},
                        {"l2", norm_l2(c.entries)},
                        {"sorted_decay", sorted_decay_check(c.entries)},
                        {"levels", levels},
                        {"code_version", kCodeVersion}};
            emit(g, report, std::nullopt, start);
        } else if (rc->parsed()) {
            const OrthonormalSystem system = parse_system(rc_system);
            if (!(rc_noise >= 0.0 && rc_noise <= 1.0)) throw std::invalid_argument("--noise must lie in [0, 1]");
            if (!(rc_eps >= 0.0)) throw std::invalid_argument("--eps must be >= 0");
            const std::uint64_t trial_seed = derive_seed(g.seed, 0, 0);
            const Signal f = generate_signal(rc_signal, system, mix64(trial_seed ^ 1));
            const SampleSet X = bernoulli_sample(system.group(), rc_p, mix64(trial_seed ^ 2));
            RecoveryConfig solver = rc_solver;
            solver.fidelity_radius = rc_eps * f.l2();
            ComplexVector y = restrict_to(X, f.values());
            add_sample_noise(y, rc_noise * solver.fidelity_radius, mix64(trial_seed ^ 3));
            RecoveryResult res = recover_l1(system, X, y, solver);
            const double rel = f.nonzero() ? distance_l2(res.recovered.values(), f.values()) / f.l2() : 0.0;
            const double r = fourier_ratio(system.analyze(std::span<const Complex>(f.values())));
            json report{{"system", system.spec()},
                        {"signal", rc_signal},
                        {"seed", g.seed},
                        {"M", system.dimension()},
                        {"p", rc_p},
                        {"samples", X.size()},
                        {"epsilon", rc_eps},
                        {"noise", rc_noise},
                        {"sigma", solver.fidelity_radius},
                        {"solver", solver_json(solver)},
                        {"fr", r},
                        {"tau", res.tau},
                        {"bounded", res.bounded},
                        {"relative_error", rel},
                        {"error_bound", 11.47 * rc_eps},
                        {"fidelity_residual", res.fidelity_residual},
                        {"iterations", res.iterations},
                        {"converged", res.converged},
                        {"code_version", kCodeVersion}};
            if (rc_eps > 0.0 && f.nonzero()) {
                report["sample_complexity"] = sample_complexity(r, rc_eps, system.dimension(), system.tau(), rc_C);
            }
            if (!res.bounded) {
                report["warning"] = "system is not bounded (tau > M^-1/2); the recovery guarantee does not apply";
            }
            if (!rc_save.empty()) save_signal(rc_save, res.recovered);
            emit(g, report, std::nullopt, start);
        } else if (phc->parsed()) {
            ph.seed = g.seed;
            ph.jobs = g.jobs;
            ph.trials = g.trials.value_or(50);
            ph.success_threshold = ph_threshold;
            const PhaseReport report = run_phase_sweep(ph);
            emit(g, to_json(report), to_csv(report), start);
        } else if (lc->parsed()) {
            const OrthonormalSystem system = parse_system(lc_system);
            const ProductDecomposition d = parse_split(system.group(), lc_split);
            const Signal f = generate_signal(lc_signal, system, g.seed);
            json checks = json::array();
            std::vector<GlobalTransform> readings;
            if (lc_transform != "full") readings.push_back(GlobalTransform::RowWise);
            if (lc_transform != "row-wise") readings.push_back(GlobalTransform::Full);
            for (GlobalTransform t : readings) {
                const LocalizationReport rep = localization_check(f, d, t);
                checks.push_back({{"transform", to_string(t)},
                                  {"max_slice_fr", rep.max_slice_fr},
                                  {"global_fr", rep.global_fr},
                                  {"lower_bound", rep.lower_bound},
                                  {"holds", rep.holds},
                                  {"achieving_k", rep.achieving_k},
                                  {"zero_slices", rep.zero_slices}});
            }
            json report{{"system", system.spec()},
                        {"signal", lc_signal},
                        {"seed", g.seed},
                        {"decomposition", d.to_string()},
                        {"H", d.H().to_string()},
                        {"K", d.K().to_string()},
                        {"checks", checks},
                        {"code_version", kCodeVersion}};
            emit(g, report, std::nullopt, start);
        } else if (rd->parsed()) {
            json report{{"code_version", kCodeVersion}};
            if (rd_dec->parsed()) {
                const auto bytes = read_bytes(rd_input);
                const Descriptor desc = parse_descriptor(bytes);
                const Signal f = rd_decode(desc);
                report["command"] = "decode";
                report["group"] = f.group().to_string();
                report["system"] = to_string(desc.system);
                report["M"] = f.size();
                report["k"] = desc.k();
                report["epsilon"] = desc.epsilon;
                report["coefficient_norm"] = desc.coefficient_norm;
                report["bytes"] = bytes.size();
                if (!rd_output.empty()) save_signal(rd_output, f);
            } else {
                const OrthonormalSystem system = parse_system(rd_system);
                const Signal f = generate_signal(rd_signal, system, g.seed);
                const EncodedDescriptor enc = rd_encode(system, f, rd_eps);
                const auto bytes = serialize(enc.descriptor);
                report["command"] = rd_enc->parsed() ? "encode" : "roundtrip";
                report["system"] = system.spec();
                report["signal"] = rd_signal;
                report["seed"] = g.seed;
                report["M"] = system.dimension();
                report["epsilon"] = rd_eps;
                report["k"] = enc.descriptor.k();
                report["account"] = account_json(enc.account);
                report["serialized_bits"] = bytes.size() * 8;
                if (rd_enc->parsed()) {
                    write_bytes(rd_output, bytes);
                } else {
                    const Signal back = rd_decode(bytes);
                    const double dist = distance_l2(back.values(), f.values());
                    report["distortion"] = dist;
                    report["distortion_bound"] = rd_eps * f.l2();
                    report["within_bound"] = dist <= rd_eps * f.l2() * (1.0 + 1e-9);
                }
            }
            emit(g, report, std::nullopt, start);
        } else if (sq->parsed()) {
            const OrthonormalSystem system = parse_system(sq_system);
            const std::size_t M = system.dimension();
            std::optional<Signal> f;
            double r = 0.0;
            if (sq_r) {
                r = *sq_r;
            } else {
                f = generate_signal(sq_signal, system, g.seed);
                r = fourier_ratio(system.analyze(*f));
            }
            const CoveringParams cp = covering_params(M, system.tau(), r);
            json report{{"system", system.spec()},
                        {"M", M},
                        {"tau", system.tau()},
                        {"r", r},
                        {"covering",
                         {{"k", cp.k}, {"N2", cp.N2}, {"epsilon", cp.epsilon}, {"tau", cp.tau}, {"r", cp.r}}},
                        {"sq_dim_log2", sq_dim_log2(M, system.tau(), r)},
                        {"code_version", kCodeVersion}};
            if (!sq_r) report["signal"] = sq_signal;
            if (sq_run_mse) {
                if (!f) f = generate_signal(sq_signal, system, g.seed);
                const std::size_t k = sq_k.value_or(16);
                const std::vector<double> uniform(M, 1.0 / static_cast<double>(M));
                const SqMseResult res = sq_mse(system, *f, k, g.trials.value_or(1000), g.seed, uniform);
                report["mse"] = {{"signal", sq_signal},
                                 {"k", res.k},
                                 {"trials", res.trials},
                                 {"r", res.r},
                                 {"empirical_mse", res.empirical_mse},
                                 {"standard_error", res.standard_error},
                                 {"expected_mse", res.expected_mse},
                                 {"bound", res.bound}};
            }
            emit(g, report, std::nullopt, start);
        } else if (er->parsed()) {
            const std::size_t trials = g.trials.value_or(10000);
            const ErasureStatistics st = erasure_row_statistics(er_N, er_T, er_theta, er_E, trials, g.seed);
            json report{{"N", er_N},
                        {"T", er_T},
                        {"theta", er_theta},
                        {"E_max", er_E},
                        {"seed", g.seed},
                        {"threshold", st.threshold},
                        {"trials", st.trials},
                        {"exact_prob", st.exact_prob},
                        {"empirical_prob", st.empirical_prob},
                        {"code_version", kCodeVersion}};
            emit(g, report, std::nullopt, start);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
