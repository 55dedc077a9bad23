#include "spamnet/trainers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "spamnet/cg.hpp"
#include "spamnet/errors.hpp"
#include "spamnet/gradient.hpp"
#include "spamnet/lm.hpp"
#include "spamnet/rprop.hpp"

namespace spamnet {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::cg: return "cg";
    case Algorithm::rprop: return "rprop";
    case Algorithm::lm: return "lm";
    case Algorithm::lm_br: return "lm-br";
    }
    throw ConfigError("unknown algorithm tag");
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "cg") return Algorithm::cg;
    if (name == "rprop" || name == "rb") return Algorithm::rprop;
    if (name == "lm") return Algorithm::lm;
    if (name == "lm-br" || name == "lm_br" || name == "lmbr") return Algorithm::lm_br;
    throw ConfigError("unknown algorithm: " + name);
}

std::string to_string(StopReason r) {
    switch (r) {
    case StopReason::iterations_exhausted: return "iterations-exhausted";
    case StopReason::target_error_reached: return "target-error-reached";
    case StopReason::numerical_failure: return "numerical-failure";
    case StopReason::stalled: return "stalled";
    }
    return "unknown";
}

void TrainerConfig::validate() const {
    if (!(rprop.eta_minus > 0.0 && rprop.eta_minus < 1.0)) {
        throw ConfigError("config: eta_minus must be in (0,1)");
    }
    if (!(rprop.eta_plus > 1.0)) throw ConfigError("config: eta_plus must be > 1");
    if (!(rprop.delta_min < rprop.delta0 && rprop.delta0 < rprop.delta_max)) {
        throw ConfigError("config: need delta_min < delta0 < delta_max");
    }
    if (!(lm.mu0 > 0.0)) throw ConfigError("config: mu0 must be > 0");
    if (std::isfinite(target_error) && target_error < 0.0) {
        throw ConfigError("config: target_error must be >= 0");
    }
}

const char* TrainingReport::aux_name() const {
    switch (algorithm) {
    case Algorithm::cg: return "step";
    case Algorithm::rprop: return "mean_delta";
    case Algorithm::lm:
    case Algorithm::lm_br: return "mu";
    }
    return "aux";
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

TrainingReport make_report(Algorithm a, const Network& net, const TrainingSet& data) {
    TrainingReport report;
    report.algorithm = a;
    report.started_at = std::time(nullptr);
    report.initial_error = global_error(net, data);
    return report;
}

double squared_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

} // namespace

TrainingReport train_cg(Network& net, const TrainingSet& data, const TrainerConfig& config) {
    config.validate();
    Timer timer;
    TrainingReport report = make_report(Algorithm::cg, net, data);

    NetworkObjective objective(net, data);
    std::vector<double> params = net.parameters();
    CgOptions options;
    options.stop = {config.max_iterations, config.target_error};
    options.fallback_step_scale = config.learning_rate;
    CgResult r = run_cg(objective, params, options);
    net.set_parameters(params);

    report.error_trace = std::move(r.error_trace);
    report.aux_trace = std::move(r.step_trace);
    report.iter_seconds = std::move(r.iter_seconds);
    report.stop = r.stop;
    report.line_search_failures = r.line_search_failures;
    report.restarts = r.restarts;
    report.train_seconds = timer.seconds();
    return report;
}

TrainingReport train_rprop(Network& net, const TrainingSet& data, const TrainerConfig& config) {
    config.validate();
    Timer timer;
    TrainingReport report = make_report(Algorithm::rprop, net, data);

    NetworkObjective objective(net, data);
    std::vector<double> params = net.parameters();
    RpropOptions options;
    options.stop = {config.max_iterations, config.target_error};
    options.rule = config.rprop;
    RpropResult r = run_rprop(objective, params, options);
    net.set_parameters(params);

    report.error_trace = std::move(r.error_trace);
    report.aux_trace = std::move(r.mean_step_trace);
    report.iter_seconds = std::move(r.iter_seconds);
    report.stop = r.stop;
    report.train_seconds = timer.seconds();
    return report;
}

namespace {

TrainingReport train_lm_family(Network& net, const TrainingSet& data, const TrainerConfig& config,
                               bool bayesian) {
    config.validate();
    Timer timer;
    TrainingReport report = make_report(bayesian ? Algorithm::lm_br : Algorithm::lm, net, data);

    NetworkResiduals residuals(net, data);
    std::vector<double> params = net.parameters();
    LmOptions options;
    options.stop = {config.max_iterations, config.target_error};
    options.damping = config.lm;
    options.bayesian = bayesian;
    options.br = config.br;
    options.error_scale = 1.0 / (2.0 * static_cast<double>(data.size()));
    LmResult r = run_lm(residuals, params, options);
    net.set_parameters(params);

    report.error_trace = std::move(r.error_trace);
    report.aux_trace = std::move(r.mu_trace);
    report.iter_seconds = std::move(r.iter_seconds);
    report.objective_trace = std::move(r.objective_trace);
    report.stop = r.stop;
    report.rejected_steps = r.rejected_steps;
    report.final_mu = r.final_mu;
    report.final_gamma = r.final_gamma;
    report.final_alpha = r.final_alpha;
    report.final_beta = r.final_beta;
    report.final_weight_norm_sq = squared_norm(params);
    report.train_seconds = timer.seconds();
    return report;
}

} // namespace

TrainingReport train_lm(Network& net, const TrainingSet& data, const TrainerConfig& config) {
    return train_lm_family(net, data, config, false);
}

TrainingReport train_lm_br(Network& net, const TrainingSet& data, const TrainerConfig& config) {
    return train_lm_family(net, data, config, true);
}

TrainingReport train(Network& net, const TrainingSet& data, const TrainerConfig& config) {
    switch (config.algorithm) {
    case Algorithm::cg: return train_cg(net, data, config);
    case Algorithm::rprop: return train_rprop(net, data, config);
    case Algorithm::lm: return train_lm(net, data, config);
    case Algorithm::lm_br: return train_lm_br(net, data, config);
    }
    throw ConfigError("unknown algorithm tag");
}

std::string report_to_log(const TrainingReport& report) {
    std::ostringstream out;
    out.precision(12);
    out << "# algorithm " << to_string(report.algorithm) << '\n';
    out << "# initial_error " << report.initial_error << '\n';
    out << "# columns: iteration error " << report.aux_name() << " timestamp\n";
    for (std::size_t i = 0; i < report.error_trace.size(); ++i) {
        const std::time_t when =
            report.started_at + static_cast<std::time_t>(report.iter_seconds.size() > i
                                                             ? report.iter_seconds[i]
                                                             : 0.0);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&when));
        out << (i + 1) << ' ' << report.error_trace[i] << ' ' << report.aux_name() << '='
            << (i < report.aux_trace.size() ? report.aux_trace[i] : 0.0) << ' ' << stamp << '\n';
    }
    out << "# stop " << to_string(report.stop) << '\n';
    out << "# final_error " << report.final_error() << '\n';
    out << "# train_seconds " << report.train_seconds << '\n';
    return out.str();
}

std::string report_to_json(const TrainingReport& report) {
    nlohmann::json j;
    j["algorithm"] = to_string(report.algorithm);
    j["initial_error"] = report.initial_error;
    j["final_error"] = report.final_error();
    j["iterations"] = report.iterations();
    j["stop"] = to_string(report.stop);
    j["train_seconds"] = report.train_seconds;
    j["error_trace"] = report.error_trace;
    switch (report.algorithm) {
    case Algorithm::cg:
        j["line_search_failures"] = report.line_search_failures;
        j["restarts"] = report.restarts;
        break;
    case Algorithm::rprop:
        break;
    case Algorithm::lm:
    case Algorithm::lm_br:
        j["rejected_steps"] = report.rejected_steps;
        j["final_mu"] = report.final_mu;
        break;
    }
    if (report.algorithm == Algorithm::lm_br) {
        j["final_gamma"] = report.final_gamma;
        j["final_alpha"] = report.final_alpha;
        j["final_beta"] = report.final_beta;
        j["final_weight_norm_sq"] = report.final_weight_norm_sq;
    }
    return j.dump(2);
}

} // namespace spamnet
