#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spamnet/activation.hpp"
#include "spamnet/dataset.hpp"
#include "spamnet/errors.hpp"
#include "spamnet/experiment.hpp"
#include "spamnet/features.hpp"
#include "spamnet/gradient.hpp"
#include "spamnet/lexicons.hpp"
#include "spamnet/metrics.hpp"
#include "spamnet/model_io.hpp"
#include "spamnet/network.hpp"
#include "spamnet/trainers.hpp"

namespace py = pybind11;
using namespace spamnet;

namespace {

TrainingSet training_set_from_pairs(
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs) {
    TrainingSet set;
    set.patterns.reserve(pairs.size());
    for (const auto& [input, target] : pairs) set.patterns.push_back({input, target});
    return set;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Web-spam MLP classifier toolkit";

    py::register_exception<Error>(m, "SpamnetError");

    py::enum_<ActivationKind>(m, "ActivationKind")
        .value("logistic", ActivationKind::logistic)
        .value("bipolar_sigmoid", ActivationKind::bipolar_sigmoid);

    py::class_<ActivationSpec>(m, "ActivationSpec")
        .def(py::init<>())
        .def(py::init([](ActivationKind kind, double steepness) {
                 return ActivationSpec{kind, steepness};
             }),
             py::arg("kind"), py::arg("steepness") = 2.0)
        .def_readwrite("kind", &ActivationSpec::kind)
        .def_readwrite("steepness", &ActivationSpec::steepness)
        .def_static("logistic", &ActivationSpec::logistic)
        .def_static("bipolar", &ActivationSpec::bipolar, py::arg("steepness") = 2.0);

    m.def("activate", &activate, py::arg("spec"), py::arg("x"));
    m.def("activate_derivative", &activate_derivative, py::arg("spec"), py::arg("x"));

    py::class_<ForwardTrace>(m, "ForwardTrace")
        .def_readonly("activations", &ForwardTrace::activations)
        .def_readonly("pre_activations", &ForwardTrace::pre_activations)
        .def_property_readonly("output", &ForwardTrace::output);

    py::class_<Network>(m, "Network")
        .def(py::init<std::vector<std::size_t>, ActivationSpec>(), py::arg("layer_sizes"),
             py::arg("activation") = ActivationSpec::bipolar())
        .def_static("initialize", &Network::initialize, py::arg("layer_sizes"),
                    py::arg("activation"), py::arg("seed"))
        .def_property_readonly("layer_sizes", &Network::layer_sizes)
        .def_property_readonly("activation", &Network::activation)
        .def("forward",
             [](const Network& net, const std::vector<double>& input) {
                 return net.forward(input);
             })
        .def("predict",
             [](const Network& net, const std::vector<double>& input) {
                 return net.predict(input);
             })
        .def("parameter_count", &Network::parameter_count)
        .def("parameters", &Network::parameters)
        .def("set_parameters",
             [](Network& net, const std::vector<double>& params) { net.set_parameters(params); })
        .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

    m.def(
        "global_error",
        [](const Network& net, const std::vector<std::pair<std::vector<double>, std::vector<double>>>&
               patterns) { return global_error(net, training_set_from_pairs(patterns)); },
        py::arg("network"), py::arg("patterns"));
    m.def(
        "backprop_gradient",
        [](const Network& net, const std::vector<std::pair<std::vector<double>, std::vector<double>>>&
               patterns) { return backprop_gradient(net, training_set_from_pairs(patterns)); },
        py::arg("network"), py::arg("patterns"));

    py::enum_<Algorithm>(m, "Algorithm")
        .value("cg", Algorithm::cg)
        .value("rprop", Algorithm::rprop)
        .value("lm", Algorithm::lm)
        .value("lm_br", Algorithm::lm_br);

    py::enum_<StopReason>(m, "StopReason")
        .value("iterations_exhausted", StopReason::iterations_exhausted)
        .value("target_error_reached", StopReason::target_error_reached)
        .value("numerical_failure", StopReason::numerical_failure)
        .value("stalled", StopReason::stalled);

    py::class_<TrainerConfig>(m, "TrainerConfig")
        .def(py::init<>())
        .def_readwrite("algorithm", &TrainerConfig::algorithm)
        .def_readwrite("max_iterations", &TrainerConfig::max_iterations)
        .def_readwrite("learning_rate", &TrainerConfig::learning_rate)
        .def_readwrite("target_error", &TrainerConfig::target_error)
        .def_readwrite("seed", &TrainerConfig::seed);

    py::class_<TrainingReport>(m, "TrainingReport")
        .def_readonly("algorithm", &TrainingReport::algorithm)
        .def_readonly("initial_error", &TrainingReport::initial_error)
        .def_readonly("error_trace", &TrainingReport::error_trace)
        .def_readonly("stop", &TrainingReport::stop)
        .def_readonly("train_seconds", &TrainingReport::train_seconds)
        .def_readonly("final_gamma", &TrainingReport::final_gamma)
        .def_property_readonly("iterations", &TrainingReport::iterations)
        .def_property_readonly("final_error", &TrainingReport::final_error);

    m.def(
        "train",
        [](Network& net,
           const std::vector<std::pair<std::vector<double>, std::vector<double>>>& patterns,
           const TrainerConfig& config) {
            return train(net, training_set_from_pairs(patterns), config);
        },
        py::arg("network"), py::arg("patterns"), py::arg("config"));

    py::enum_<Label>(m, "Label").value("ham", Label::ham).value("spam", Label::spam);

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def(py::init<>())
        .def_readwrite("tp", &ConfusionMatrix::tp)
        .def_readwrite("tn", &ConfusionMatrix::tn)
        .def_readwrite("fp", &ConfusionMatrix::fp)
        .def_readwrite("fn", &ConfusionMatrix::fn);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("sensitivity", &MetricsReport::sensitivity)
        .def_readonly("specificity", &MetricsReport::specificity)
        .def_readonly("efficiency", &MetricsReport::efficiency)
        .def_readonly("accuracy", &MetricsReport::accuracy)
        .def_readonly("counts", &MetricsReport::counts);

    m.def("tally",
          [](const std::vector<Label>& predictions, const std::vector<Label>& truths) {
              return tally(predictions, truths);
          });
    m.def("derive", &derive, py::arg("confusion_matrix"));
    m.def("classify_output", &classify_output, py::arg("network_output"));

    py::class_<Lexicons>(m, "Lexicons")
        .def_static("load", &Lexicons::load, py::arg("data_dir"))
        .def_static("default_data_dir", &Lexicons::default_data_dir);

    py::class_<FeatureVector>(m, "FeatureVector")
        .def_readonly("groups", &FeatureVector::groups)
        .def_readonly("values", &FeatureVector::values);

    m.def("feature_names", [](const std::string& groups) {
        return feature_names(groups_from_string(groups));
    });
    m.def(
        "extract_page",
        [](const std::string& url, const py::bytes& html, const std::string& groups,
           const Lexicons& lexicons) {
            PageRecord record;
            record.url = url;
            record.html = static_cast<std::string>(html);
            return extract(record, groups_from_string(groups), lexicons);
        },
        py::arg("url"), py::arg("html"), py::arg("groups") = "all", py::arg("lexicons"));

    py::class_<CorpusRow>(m, "CorpusRow")
        .def_readonly("features", &CorpusRow::features)
        .def_readonly("label", &CorpusRow::label)
        .def_readonly("source_id", &CorpusRow::source_id);

    py::class_<Corpus>(m, "Corpus")
        .def_readonly("rows", &Corpus::rows)
        .def_property_readonly("groups", [](const Corpus& c) { return groups_to_string(c.groups); })
        .def("feature_count", &Corpus::feature_count)
        .def("spam_count", &Corpus::spam_count)
        .def("ham_count", &Corpus::ham_count)
        .def("spam_fraction", &Corpus::spam_fraction)
        .def("select_groups",
             [](const Corpus& c, const std::string& groups) {
                 return c.select_groups(groups_from_string(groups));
             })
        .def("__len__", [](const Corpus& c) { return c.size(); });

    m.def("load_corpus", &load_corpus, py::arg("path"));
    m.def("save_corpus", &save_corpus, py::arg("corpus"), py::arg("path"));
    m.def(
        "split_corpus",
        [](const Corpus& corpus, double train_fraction, std::uint64_t seed, bool stratified) {
            return split(corpus, {train_fraction, seed, stratified});
        },
        py::arg("corpus"), py::arg("train_fraction") = 0.8, py::arg("seed") = 0,
        py::arg("stratified") = true);
    m.def("generate_synthetic", &generate_synthetic, py::arg("n"), py::arg("spam_fraction") = 0.3,
          py::arg("separation") = 3.0, py::arg("seed") = 0);

    py::class_<NormalizationStats>(m, "NormalizationStats")
        .def_readonly("min", &NormalizationStats::min)
        .def_readonly("max", &NormalizationStats::max);
    m.def("fit_normalizer", &fit_normalizer, py::arg("train"));
    m.def(
        "apply_normalizer",
        [](const NormalizationStats& stats, const Corpus& corpus) {
            return apply_normalizer(stats, corpus);
        },
        py::arg("stats"), py::arg("corpus"));

    m.def("save_model",
          [](const Network& net, const std::string& groups, const NormalizationStats& stats,
             const std::string& path) {
              ModelFile model(net);
              std::string token;
              for (char c : groups_to_string(groups_from_string(groups))) {
                  if (c == ',') {
                      model.feature_groups.push_back(token);
                      token.clear();
                  } else {
                      token += c;
                  }
              }
              if (!token.empty()) model.feature_groups.push_back(token);
              model.feature_names = feature_names(groups_from_string(groups));
              model.normalization_scheme = stats.scheme;
              model.feature_min = stats.min;
              model.feature_max = stats.max;
              save_model(model, path);
          });
    m.def("load_model", [](const std::string& path) {
        const ModelFile model = load_model(path);
        return py::make_tuple(model.network, model.feature_names, model.feature_min,
                              model.feature_max);
    });

    m.def(
        "run_experiment",
        [](const std::string& plan_json, const Corpus& corpus) {
            const ExperimentPlan plan =
                plan_json.empty() ? ExperimentPlan{} : plan_from_json(plan_json);
            const std::vector<ResultTable> tables = run_experiment(plan, corpus);
            py::list out;
            for (const ResultTable& t : tables) {
                py::dict d;
                d["title"] = t.title();
                d["markdown"] = t.to_markdown();
                d["csv"] = t.to_csv();
                out.append(d);
            }
            return out;
        },
        py::arg("plan_json"), py::arg("corpus"));
}
