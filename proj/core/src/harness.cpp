#include "aqse/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "aqse/distributions.hpp"
#include "aqse/outcome_source.hpp"
#include "aqse/trace.hpp"
#include "aqse/version.hpp"

namespace aqse {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kTraceFile = "trace.csv";
constexpr const char* kTrajectoriesFile = "trajectories.csv";
constexpr const char* kConfigFile = "config.json";
constexpr const char* kSummaryFile = "summary.json";
constexpr const char* kHistogramFile = "histogram.csv";
constexpr const char* kDensityFile = "density.csv";
constexpr const char* kConsistencyFile = "consistency.csv";

double wrap_degrees(double degrees) {
    double w = std::fmod(degrees, 90.0);
    if (w < 0.0) w += 90.0;
    if (w >= 90.0) w = 0.0;
    return w;
}

int resolved_workers(int configured) {
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(t) for t in [0, count) on contiguous blocks; any exception is
// rethrown on the caller thread after all workers join.
void parallel_trials(int count, int workers, const std::function<void(int)>& fn) {
    workers = std::min(std::max(workers, 1), std::max(count, 1));
    if (workers == 1) {
        for (int t = 0; t < count; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex error_mutex;
    std::exception_ptr first_error;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long long>(count) * w / workers);
        const int end = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
        pool.emplace_back([&, begin, end] {
            try {
                for (int t = begin; t < end; ++t) fn(t);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

void write_trace_csv(const EnsembleResult& result, const std::filesystem::path& path) {
    TraceWriter writer(path);
    for (std::size_t t = 0; t < result.trajectories.size(); ++t) {
        const Trajectory& traj = result.trajectories[t];
        for (std::size_t i = 0; i < traj.steps.size(); ++i) {
            writer.append({static_cast<int>(t), static_cast<int>(i),
                           traj.steps[i].setting.value(), traj.steps[i].outcome});
        }
    }
    writer.flush();
}

void write_trajectories_csv(const EnsembleResult& result, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "trial,step,mle_deg\n";
    char buf[64];
    for (std::size_t t = 0; t < result.trajectories.size(); ++t) {
        const Trajectory& traj = result.trajectories[t];
        for (std::size_t i = 0; i < traj.steps.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%.4f\n", t, i,
                          traj.steps[i].mle_after.degrees());
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("write failed on " + path.string());
}

ordered_json config_to_json(const ExperimentConfig& config) {
    ordered_json j;
    j["theta_true_deg"] = config.theta_true_deg;
    j["n_photons"] = config.n_photons;
    j["trials"] = config.trials;
    j["grid_size"] = config.grid_size;
    j["master_seed"] = config.master_seed;
    if (config.initial_guess.random) {
        j["initial_guess"] = "random";
    } else {
        j["initial_guess"] = config.initial_guess.fixed_deg;
    }
    j["significance"] = config.significance;
    j["ci_level"] = config.ci_level;
    j["output_dir"] = config.output_dir.string();
    j["workers"] = config.workers;
    return j;
}

ExperimentConfig config_from_json(const ordered_json& j, const std::string& context) {
    ExperimentConfig config;
    try {
        config.theta_true_deg = j.at("theta_true_deg").get<double>();
        config.n_photons = j.value("n_photons", config.n_photons);
        config.trials = j.value("trials", config.trials);
        config.grid_size = j.value("grid_size", config.grid_size);
        config.master_seed = j.value("master_seed", config.master_seed);
        if (j.contains("initial_guess")) {
            const auto& ig = j.at("initial_guess");
            if (ig.is_string()) {
                if (ig.get<std::string>() != "random") {
                    throw std::runtime_error(
                        "initial_guess must be \"random\" or a number in degrees");
                }
                config.initial_guess = {true, 0.0};
            } else {
                config.initial_guess = {false, ig.get<double>()};
            }
        }
        config.significance = j.value("significance", config.significance);
        config.ci_level = j.value("ci_level", config.ci_level);
        if (j.contains("output_dir")) {
            config.output_dir = j.at("output_dir").get<std::string>();
        }
        config.workers = j.value("workers", config.workers);
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }
    return config;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<int> checkpoint_steps(int n_photons) {
    std::vector<int> steps;
    for (const int n : {10, 30, 100, 300}) {
        if (n <= n_photons) steps.push_back(n);
    }
    if (steps.empty() || steps.back() != n_photons) steps.push_back(n_photons);
    return steps;
}

std::string format_edge(double edge) {
    if (std::isinf(edge)) return edge < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", edge);
    return buf;
}

// Replays every trial of a parsed trace with the config's grid; trial order
// follows the trace (sorted by trial id).
std::vector<Trajectory> replay_trials(const std::vector<TrialTrace>& trials,
                                      const ExperimentConfig& config) {
    for (const TrialTrace& trial : trials) {
        if (static_cast<int>(trial.records.size()) != config.n_photons) {
            throw std::runtime_error(
                "trace trial " + std::to_string(trial.trial_id) + " has " +
                std::to_string(trial.records.size()) + " records, config says n_photons=" +
                std::to_string(config.n_photons));
        }
    }
    const auto tables = std::make_shared<const OutcomeLogTables>(config.grid_size);
    std::vector<Trajectory> out(trials.size());
    parallel_trials(static_cast<int>(trials.size()), resolved_workers(config.workers),
                    [&](int t) {
                        const TrialTrace& trial = trials[static_cast<std::size_t>(t)];
                        ReplaySource source(trial);
                        out[static_cast<std::size_t>(t)] = run_sequence(
                            config.theta_true(), static_cast<int>(trial.records.size()),
                            source, config.grid_size,
                            AngleRad(trial.records.front().setting_rad), tables);
                    });
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n_photons < 1) throw std::invalid_argument("config: n_photons must be >= 1");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (grid_size < 2) throw std::invalid_argument("config: grid_size must be >= 2");
    if (!(significance > 0.0 && significance < 1.0)) {
        throw std::invalid_argument("config: significance must be in (0,1)");
    }
    if (!(ci_level > 0.0 && ci_level < 1.0)) {
        throw std::invalid_argument("config: ci_level must be in (0,1)");
    }
    if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
    if (!std::isfinite(theta_true_deg)) {
        throw std::invalid_argument("config: theta_true_deg must be finite");
    }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config " + path.string());
    }
    ordered_json j;
    try {
        in >> j;
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error("config " + path.string() + ": " + e.what());
    }
    ExperimentConfig config = config_from_json(j, "config " + path.string());
    config.validate();
    return config;
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << config_to_json(config).dump(2) << '\n';
}

EnsembleResult run_trials(const ExperimentConfig& raw_config) {
    raw_config.validate();
    EnsembleResult result;
    result.config = raw_config;
    result.config.theta_true_deg = wrap_degrees(raw_config.theta_true_deg);

    const ExperimentConfig& config = result.config;
    const AngleRad theta_true = config.theta_true();
    const auto tables = std::make_shared<const OutcomeLogTables>(config.grid_size);
    const double grid_step = kHalfPi / config.grid_size;

    result.trajectories.resize(static_cast<std::size_t>(config.trials));
    parallel_trials(config.trials, resolved_workers(config.workers), [&](int t) {
        const std::uint64_t seed = mix_seed(config.master_seed, static_cast<std::uint64_t>(t));
        SimulatedSource source(seed);
        AngleRad guess;
        if (config.initial_guess.random) {
            const auto index = source.rng()() % static_cast<std::uint64_t>(config.grid_size);
            guess = AngleRad(static_cast<double>(index) * grid_step);
        } else {
            guess = AngleRad::from_degrees(config.initial_guess.fixed_deg);
        }
        result.trajectories[static_cast<std::size_t>(t)] =
            run_sequence(theta_true, config.n_photons, source, config.grid_size, guess,
                         tables, seed);
    });
    return result;
}

EnsembleResult cmd_run(const ExperimentConfig& config) {
    EnsembleResult result = run_trials(config);
    std::filesystem::create_directories(result.config.output_dir);
    save_config(result.config, result.config.output_dir / kConfigFile);
    write_trace_csv(result, result.config.output_dir / kTraceFile);
    write_trajectories_csv(result, result.config.output_dir / kTrajectoriesFile);
    return result;
}

EnsembleSummary cmd_analyze(const std::filesystem::path& input_dir,
                            std::optional<double> significance,
                            std::optional<double> ci_level) {
    const ExperimentConfig config = load_config(input_dir / kConfigFile);
    const double sig = significance.value_or(config.significance);
    const double level = ci_level.value_or(config.ci_level);

    const std::vector<TrialTrace> trials = read_trace(input_dir / kTraceFile);
    if (trials.empty()) {
        throw std::runtime_error("trace " + (input_dir / kTraceFile).string() +
                                 " holds no trials");
    }
    const std::vector<Trajectory> trajectories = replay_trials(trials, config);

    const AngleRad theta_true = config.theta_true();
    const int n = config.n_photons;
    const int r = static_cast<int>(trajectories.size());

    std::vector<AngleRad> final_mles;
    final_mles.reserve(trajectories.size());
    for (const Trajectory& traj : trajectories) {
        final_mles.push_back(traj.steps.back().mle_after);
    }

    const StandardizedSample sample =
        standardize(final_mles, n, quantum_fisher_information(), kHalfPi / config.grid_size);
    const GofResult gof = gof_test(sample, sig);
    const ConfidenceInterval mean_interval = mean_ci(final_mles, level);
    const ConfidenceInterval var_interval = variance_ci(final_mles, n, level);

    EnsembleSummary summary;
    summary.theta_true_deg = config.theta_true_deg;
    summary.n_photons = n;
    summary.trials = r;
    // Window the reported mean next to the true angle, so ensembles
    // straddling the wrap point read naturally (e.g. -0.1 rather than 89.9).
    const double center_deg = 0.5 * (mean_interval.lower + mean_interval.upper);
    summary.mu_deg = config.theta_true_deg +
                     wrapped_deviation(AngleRad::from_degrees(center_deg), theta_true) *
                         180.0 / std::numbers::pi;
    summary.mu_halfwidth_deg = 0.5 * (mean_interval.upper - mean_interval.lower);
    summary.ci_level = level;
    summary.v_lower_rad2 = var_interval.lower;
    summary.v_upper_rad2 = var_interval.upper;
    summary.x2 = gof.statistic;
    summary.dof = gof.dof;
    summary.critical_value = gof.critical_value;
    summary.accept = gof.accept;
    summary.significance = sig;
    summary.config = config;

    // Per-n wrapped error against the (metadata) true value.
    std::vector<double> median_by_n(static_cast<std::size_t>(n));
    std::vector<double> rmse_by_n(static_cast<std::size_t>(n));
    std::vector<double> errs(static_cast<std::size_t>(r));
    for (int step = 0; step < n; ++step) {
        double sum_sq = 0.0;
        for (int t = 0; t < r; ++t) {
            const AngleRad mle =
                trajectories[static_cast<std::size_t>(t)].steps[static_cast<std::size_t>(step)]
                    .mle_after;
            const double e = std::fabs(wrapped_deviation(mle, theta_true));
            errs[static_cast<std::size_t>(t)] = e;
            sum_sq += e * e;
        }
        median_by_n[static_cast<std::size_t>(step)] = median_of(errs);
        rmse_by_n[static_cast<std::size_t>(step)] = std::sqrt(sum_sq / r);
    }
    for (const int step : checkpoint_steps(n)) {
        summary.median_abs_err_rad.emplace_back(step,
                                                median_by_n[static_cast<std::size_t>(step - 1)]);
        summary.rmse_rad.emplace_back(step, rmse_by_n[static_cast<std::size_t>(step - 1)]);
    }

    // histogram.csv: observed and expected counts on the shifted bins.
    {
        const BinSpec bins = BinSpec::standard_normal(sample.delta / 10000.0);
        std::ofstream out = open_output(input_dir / kHistogramFile);
        out << "bin_index,lower,upper,observed,expected\n";
        for (int b = 0; b < bins.count(); ++b) {
            const double lower = b == 0 ? -std::numeric_limits<double>::infinity()
                                        : bins.inner_edges[static_cast<std::size_t>(b - 1)];
            const double upper = b == bins.count() - 1
                                     ? std::numeric_limits<double>::infinity()
                                     : bins.inner_edges[static_cast<std::size_t>(b)];
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%d,%s,%s,%d,%.9g\n", b,
                          format_edge(lower).c_str(), format_edge(upper).c_str(),
                          gof.counts[static_cast<std::size_t>(b)],
                          gof.expected[static_cast<std::size_t>(b)]);
            out << buf;
        }
    }

    // density.csv: the analytic N(0,1) curve for overplotting the histogram.
    {
        std::ofstream out = open_output(input_dir / kDensityFile);
        out << "x,pdf\n";
        char buf[64];
        for (int i = 0; i <= 400; ++i) {
            const double x = -4.0 + 0.02 * i;
            std::snprintf(buf, sizeof(buf), "%.2f,%.9g\n", x, normal_pdf(x));
            out << buf;
        }
    }

    // consistency.csv: per-n error summary in degrees.
    {
        std::ofstream out = open_output(input_dir / kConsistencyFile);
        out << "n,median_abs_err_deg,rmse_deg\n";
        const double to_deg = 180.0 / std::numbers::pi;
        char buf[64];
        for (int step = 1; step <= n; ++step) {
            std::snprintf(buf, sizeof(buf), "%d,%.4f,%.4f\n", step,
                          median_by_n[static_cast<std::size_t>(step - 1)] * to_deg,
                          rmse_by_n[static_cast<std::size_t>(step - 1)] * to_deg);
            out << buf;
        }
    }

    // summary.json
    {
        ordered_json j;
        j["theta_true_deg"] = summary.theta_true_deg;
        j["n_photons"] = summary.n_photons;
        j["trials"] = summary.trials;
        j["mu_deg"] = summary.mu_deg;
        j["mu_halfwidth_deg"] = summary.mu_halfwidth_deg;
        j["ci_level"] = summary.ci_level;
        j["v_lower_rad2"] = summary.v_lower_rad2;
        j["v_upper_rad2"] = summary.v_upper_rad2;
        j["X2"] = summary.x2;
        j["dof"] = summary.dof;
        j["critical_value"] = summary.critical_value;
        j["accept"] = summary.accept;
        j["significance"] = summary.significance;
        ordered_json medians = ordered_json::object();
        ordered_json rmses = ordered_json::object();
        for (const auto& [step, v] : summary.median_abs_err_rad) {
            medians[std::to_string(step)] = v;
        }
        for (const auto& [step, v] : summary.rmse_rad) {
            rmses[std::to_string(step)] = v;
        }
        j["median_abs_err_rad"] = medians;
        j["rmse_rad"] = rmses;
        j["provenance"] = {{"config", config_to_json(config)}, {"version", kVersionTag}};
        std::ofstream out = open_output(input_dir / kSummaryFile);
        out << j.dump(2) << '\n';
    }

    return summary;
}

ReplayReport cmd_replay(const std::filesystem::path& trace_file) {
    const std::filesystem::path dir = trace_file.parent_path();
    const ExperimentConfig config = load_config(dir / kConfigFile);
    const std::vector<TrialTrace> trials = read_trace(trace_file);

    ReplayReport report;
    report.trials_total = static_cast<int>(trials.size());

    // Recorded per-trial MLE chains, in degrees, when trajectories.csv is
    // present. Settings alone cannot expose a corrupted final outcome; the
    // recorded MLEs can.
    std::vector<std::vector<double>> recorded_mles;
    const std::filesystem::path traj_path = dir / kTrajectoriesFile;
    const bool have_trajectories = std::filesystem::exists(traj_path);
    if (have_trajectories) {
        std::ifstream in(traj_path);
        if (!in) throw std::runtime_error("cannot open " + traj_path.string());
        std::string line;
        if (!std::getline(in, line) || line != "trial,step,mle_deg") {
            throw std::runtime_error(traj_path.string() + ":1: expected header trial,step,mle_deg");
        }
        int line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            int trial = 0, step = 0;
            double mle_deg = 0.0;
            if (std::sscanf(line.c_str(), "%d,%d,%lf", &trial, &step, &mle_deg) != 3 ||
                trial < 0 || step < 0) {
                throw std::runtime_error(traj_path.string() + ":" + std::to_string(line_no) +
                                         ": malformed row");
            }
            if (trial >= static_cast<int>(recorded_mles.size())) {
                recorded_mles.resize(static_cast<std::size_t>(trial) + 1);
            }
            auto& chain = recorded_mles[static_cast<std::size_t>(trial)];
            if (step != static_cast<int>(chain.size())) {
                throw std::runtime_error(traj_path.string() + ":" + std::to_string(line_no) +
                                         ": steps not dense");
            }
            chain.push_back(mle_deg);
        }
    }

    struct Divergence {
        int trial;
        int step;
        std::string message;
    };
    std::vector<Divergence> failures;
    std::mutex failures_mutex;

    const auto tables = std::make_shared<const OutcomeLogTables>(config.grid_size);
    parallel_trials(
        static_cast<int>(trials.size()), resolved_workers(config.workers), [&](int t) {
            const TrialTrace& trial = trials[static_cast<std::size_t>(t)];
            try {
                if (static_cast<int>(trial.records.size()) != config.n_photons) {
                    throw ReplayError("trial " + std::to_string(trial.trial_id) + " has " +
                                          std::to_string(trial.records.size()) +
                                          " records, config says n_photons=" +
                                          std::to_string(config.n_photons),
                                      trial.trial_id, static_cast<int>(trial.records.size()));
                }
                const std::vector<double>* chain = nullptr;
                if (have_trajectories) {
                    if (trial.trial_id >= static_cast<int>(recorded_mles.size())) {
                        throw ReplayError("trial " + std::to_string(trial.trial_id) +
                                              " missing from trajectories.csv",
                                          trial.trial_id, 0);
                    }
                    chain = &recorded_mles[static_cast<std::size_t>(trial.trial_id)];
                    if (static_cast<int>(chain->size()) != config.n_photons) {
                        throw ReplayError("trial " + std::to_string(trial.trial_id) +
                                              " trajectory length mismatch",
                                          trial.trial_id,
                                          static_cast<int>(chain->size()));
                    }
                }
                ReplaySource source(trial);
                AdaptiveEstimator estimator(config.grid_size,
                                            AngleRad(trial.records.front().setting_rad),
                                            tables);
                for (int i = 0; i < config.n_photons; ++i) {
                    const AngleRad setting = estimator.mle();
                    const int outcome = source.draw(config.theta_true(), setting);
                    estimator.update(outcome);
                    // trajectories.csv stores 4 decimals; half the grid pitch
                    // (0.009 deg at G=10000) is far above that rounding, so a
                    // corrupted outcome shows up at its own step.
                    if (chain &&
                        std::fabs(estimator.mle().degrees() -
                                  (*chain)[static_cast<std::size_t>(i)]) > 1e-3) {
                        throw ReplayError(
                            "replay divergence: trial " + std::to_string(trial.trial_id) +
                                " step " + std::to_string(i) + ": recorded MLE " +
                                std::to_string((*chain)[static_cast<std::size_t>(i)]) +
                                " deg, replay computes " +
                                std::to_string(estimator.mle().degrees()) + " deg",
                            trial.trial_id, i);
                    }
                }
            } catch (const ReplayError& e) {
                const std::lock_guard<std::mutex> lock(failures_mutex);
                failures.push_back({e.trial(), e.step(), e.what()});
            }
        });

    report.trials_matched = report.trials_total - static_cast<int>(failures.size());
    if (failures.empty()) {
        report.ok = true;
        report.message = "match: " + std::to_string(report.trials_matched) + "/" +
                         std::to_string(report.trials_total) + " trials";
    } else {
        const auto worst = std::min_element(
            failures.begin(), failures.end(), [](const Divergence& a, const Divergence& b) {
                return std::tie(a.trial, a.step) < std::tie(b.trial, b.step);
            });
        report.ok = false;
        report.first_bad_trial = worst->trial;
        report.first_bad_step = worst->step;
        report.message = worst->message;
    }
    return report;
}

EnsembleSummary load_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open summary " + path.string());
    ordered_json j;
    try {
        in >> j;
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error("summary " + path.string() + ": " + e.what());
    }
    EnsembleSummary s;
    try {
        s.theta_true_deg = j.at("theta_true_deg").get<double>();
        s.n_photons = j.at("n_photons").get<int>();
        s.trials = j.at("trials").get<int>();
        s.mu_deg = j.at("mu_deg").get<double>();
        s.mu_halfwidth_deg = j.at("mu_halfwidth_deg").get<double>();
        s.ci_level = j.at("ci_level").get<double>();
        s.v_lower_rad2 = j.at("v_lower_rad2").get<double>();
        s.v_upper_rad2 = j.at("v_upper_rad2").get<double>();
        s.x2 = j.at("X2").get<double>();
        s.dof = j.at("dof").get<int>();
        s.critical_value = j.at("critical_value").get<double>();
        s.accept = j.at("accept").get<bool>();
        s.significance = j.at("significance").get<double>();
        for (const auto& [key, value] : j.at("median_abs_err_rad").items()) {
            s.median_abs_err_rad.emplace_back(std::stoi(key), value.get<double>());
        }
        for (const auto& [key, value] : j.at("rmse_rad").items()) {
            s.rmse_rad.emplace_back(std::stoi(key), value.get<double>());
        }
        s.config = config_from_json(j.at("provenance").at("config"), path.string());
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error("summary " + path.string() + ": " + e.what());
    }
    std::sort(s.median_abs_err_rad.begin(), s.median_abs_err_rad.end());
    std::sort(s.rmse_rad.begin(), s.rmse_rad.end());
    return s;
}

void cmd_report(std::span<const std::filesystem::path> summary_files, std::ostream& out) {
    if (summary_files.empty()) {
        throw std::invalid_argument("report: need at least one summary.json");
    }
    out << "theta_true_deg,mu_deg,mu_halfwidth_deg,v_lower,v_upper,X2,accept\n";
    char buf[160];
    for (const auto& path : summary_files) {
        const EnsembleSummary s = load_summary(path);
        std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f,%.6g,%.6g,%.6g,%d\n",
                      s.theta_true_deg, s.mu_deg, s.mu_halfwidth_deg, s.v_lower_rad2,
                      s.v_upper_rad2, s.x2, s.accept ? 1 : 0);
        out << buf;
    }
}

}  // namespace aqse
