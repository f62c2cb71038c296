#include "frlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "frlab/fourier_ratio.hpp"
#include "frlab/rng.hpp"
#include "frlab/signal_source.hpp"

namespace frlab {

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& task) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

double PhaseConfig::threshold() const {
    return success_threshold.value_or(std::max(kRecoveryErrorConstant * epsilon, 1e-5));
}

void PhaseConfig::validate() const {
    if (signals.empty() || p_values.empty()) throw std::invalid_argument("phase sweep: empty grid");
    for (double p : p_values) {
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("phase sweep: p values must lie in (0,1]");
    }
    if (trials == 0) throw std::invalid_argument("phase sweep: trials must be >= 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("phase sweep: epsilon must lie in [0,1)");
    if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("phase sweep: noise must lie in [0,1]");
    solver.validate();
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

void add_sample_noise(ComplexVector& y, double norm, std::uint64_t seed) {
    if (!(norm >= 0.0) || !std::isfinite(norm)) throw std::invalid_argument("noise norm must be finite and >= 0");
    if (norm == 0.0 || y.empty()) return;
    Rng rng(seed);
    ComplexVector e(y.size());
    for (auto& z : e) z = Complex(rng.normal(), rng.normal());
    const double scale = norm / norm_l2(e);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * e[i];
}

PhaseReport run_phase_sweep(const PhaseConfig& config) {
    config.validate();
    const OrthonormalSystem system = parse_system(config.system);
    const std::size_t grid = config.signals.size() * config.p_values.size();

    PhaseReport report;
    report.config = config;
    report.trials.resize(grid * config.trials);

    parallel_for(report.trials.size(), config.jobs, [&](std::size_t flat) {
        const std::size_t g = flat / config.trials;
        const std::size_t t = flat % config.trials;
        TrialRecord& rec = report.trials[flat];
        rec.grid_index = g;
        rec.trial = t;
        rec.signal = config.signals[g / config.p_values.size()];
        rec.p = config.p_values[g % config.p_values.size()];
        rec.seed = derive_seed(config.seed, g, t);

        const Signal f = generate_signal(rec.signal, system, mix64(rec.seed ^ 1));
        const SampleSet X = bernoulli_sample(system.group(), rec.p, mix64(rec.seed ^ 2));
        rec.samples = X.size();
        rec.fr = fourier_ratio(system.analyze(std::span<const Complex>(f.values())));

        RecoveryConfig solver = config.solver;
        solver.fidelity_radius = config.epsilon * f.l2();
        ComplexVector y = restrict_to(X, f.values());
        add_sample_noise(y, config.noise * solver.fidelity_radius, mix64(rec.seed ^ 3));
        const RecoveryResult res = recover_l1(system, X, y, solver);
        rec.relative_error = distance_l2(res.recovered.values(), f.values()) / f.l2();
        rec.converged = res.converged;
        rec.iterations = res.iterations;
        rec.success = rec.relative_error <= config.threshold();
    });

    report.summaries = summarize(config, report.trials);
    return report;
}

std::vector<GridSummary> summarize(const PhaseConfig& config, const std::vector<TrialRecord>& trials) {
    const OrthonormalSystem system = parse_system(config.system);
    const std::size_t grid = config.signals.size() * config.p_values.size();
    std::vector<GridSummary> out(grid);
    std::vector<std::vector<double>> errors(grid);
    for (std::size_t g = 0; g < grid; ++g) {
        out[g].grid_index = g;
        out[g].system = system.spec();
        out[g].M = system.dimension();
        out[g].signal = config.signals[g / config.p_values.size()];
        out[g].p = config.p_values[g % config.p_values.size()];
    }
    // fixed summation order: records are visited in grid-major trial order
    for (const auto& rec : trials) {
        GridSummary& s = out.at(rec.grid_index);
        ++s.trials;
        s.success_rate += rec.success ? 1.0 : 0.0;
        s.mean_relative_error += rec.relative_error;
        s.mean_fr += rec.fr;
        errors[rec.grid_index].push_back(rec.relative_error);
    }
    for (std::size_t g = 0; g < grid; ++g) {
        if (out[g].trials == 0) continue;
        const double n = static_cast<double>(out[g].trials);
        out[g].success_rate /= n;
        out[g].mean_relative_error /= n;
        out[g].mean_fr /= n;
        out[g].median_relative_error = quantile(errors[g], 0.5);
        out[g].q90_relative_error = quantile(errors[g], 0.9);
    }
    return out;
}

nlohmann::json to_json(const PhaseConfig& c) {
    return {
        {"system", c.system},
        {"signals", c.signals},
        {"p_values", c.p_values},
        {"trials", c.trials},
        {"seed", c.seed},
        {"jobs", c.jobs},
        {"epsilon", c.epsilon},
        {"noise", c.noise},
        {"success_threshold", c.threshold()},
        {"solver",
         {{"max_iterations", c.solver.max_iterations},
          {"step", c.solver.step},
          {"relaxation", c.solver.relaxation},
          {"tolerance", c.solver.tolerance}}},
    };
}

nlohmann::json to_json(const PhaseReport& report) {
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& t : report.trials) {
        trials.push_back({{"grid_index", t.grid_index},
                          {"trial", t.trial},
                          {"seed", t.seed},
                          {"signal", t.signal},
                          {"p", t.p},
                          {"samples", t.samples},
                          {"fr", t.fr},
                          {"relative_error", t.relative_error},
                          {"converged", t.converged},
                          {"iterations", t.iterations},
                          {"success", t.success}});
    }
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& s : report.summaries) {
        summaries.push_back({{"grid_index", s.grid_index},
                             {"system", s.system},
                             {"M", s.M},
                             {"signal", s.signal},
                             {"p", s.p},
                             {"trials", s.trials},
                             {"success_rate", s.success_rate},
                             {"mean_relative_error", s.mean_relative_error},
                             {"median_relative_error", s.median_relative_error},
                             {"q90_relative_error", s.q90_relative_error},
                             {"mean_fr", s.mean_fr}});
    }
    return {{"kind", "phase"},
            {"code_version", report.code_version},
            {"config", to_json(report.config)},
            {"trials", std::move(trials)},
            {"summaries", std::move(summaries)}};
}

namespace {

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char ch : v) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string num(double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof(buf), v).ptr);
}

}  // namespace

std::string to_csv(const PhaseReport& report) {
    std::ostringstream out;
    out << "system,M,signal,r,p,trials,success_rate,mean_relative_error\n";
    for (const auto& s : report.summaries) {
        out << csv_field(s.system) << ',' << s.M << ',' << csv_field(s.signal) << ',' << num(s.mean_fr) << ',' << num(s.p) << ',' << s.trials << ','
            << num(s.success_rate) << ',' << num(s.mean_relative_error) << '\n';
    }
    return out.str();
}

}  // namespace frlab
