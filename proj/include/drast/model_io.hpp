#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "drast/error.hpp"
#include "drast/harness.hpp"
#include "drast/net.hpp"
#include "drast/pairing.hpp"
#include "drast/ranker.hpp"
#include "drast/relevancy.hpp"
#include "drast/tfidf.hpp"
#include "drast/tree.hpp"

// Versioned JSON persistence. Weights serialize as plain numeric arrays;
// nlohmann emits shortest-round-trip doubles, so load(save(x)) reproduces
// bit-identical predictions.

namespace drast {

inline constexpr int kModelFormatVersion = 1;

using json = nlohmann::json;

// ---- enum names -------------------------------------------------------------

inline const char* activation_name(Activation a) {
    switch (a) {
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Tanh: return "tanh";
        case Activation::Relu: return "relu";
        default: return "identity";
    }
}

inline Activation activation_from(const std::string& name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    if (name == "identity") return Activation::Identity;
    throw Error(errc::corrupt_model, "unknown activation '" + name + "'");
}

inline RankerKind ranker_kind_from(const std::string& name) {
    if (name == "rf") return RankerKind::RandomForest;
    if (name == "gboost") return RankerKind::GradientBoost;
    if (name == "dnn") return RankerKind::Dnn;
    if (name == "combined") return RankerKind::CombinedRf;
    throw Error(errc::corrupt_model, "unknown ranker kind '" + name + "'");
}

inline SamplingKind sampling_kind_from(const std::string& name) {
    if (name == "none") return SamplingKind::None;
    if (name == "smote") return SamplingKind::Smote;
    if (name == "over") return SamplingKind::RandomOver;
    if (name == "under") return SamplingKind::RandomUnder;
    if (name == "tomek") return SamplingKind::Tomek;
    throw Error(errc::invalid_argument, "unknown sampling kind '" + name + "'");
}

// ---- vocabulary -------------------------------------------------------------

inline json vocabulary_to_json(const Vocabulary& vocab) {
    return json{{"terms", vocab.terms},
                {"document_frequency", vocab.document_frequency},
                {"document_count", vocab.document_count}};
}

inline Vocabulary vocabulary_from_json(const json& j) {
    Vocabulary vocab;
    vocab.terms = j.at("terms").get<std::vector<std::string>>();
    vocab.document_frequency = j.at("document_frequency").get<std::vector<std::size_t>>();
    vocab.document_count = j.at("document_count").get<std::size_t>();
    if (vocab.terms.size() != vocab.document_frequency.size())
        throw Error(errc::corrupt_model, "vocabulary arrays disagree in length");
    for (std::size_t i = 0; i < vocab.terms.size(); ++i)
        vocab.index.emplace(vocab.terms[i], i);
    return vocab;
}

// ---- nets -------------------------------------------------------------------

inline json net_to_json(const FeedForwardNet& net) {
    json layers = json::array();
    for (const auto& layer : net.layers()) {
        layers.push_back(json{{"in", layer.in},
                              {"out", layer.out},
                              {"w", layer.w},
                              {"b", layer.b},
                              {"activation", activation_name(layer.act)}});
    }
    return json{{"sizes", net.sizes()}, {"seed", net.seed()}, {"layers", layers}};
}

inline FeedForwardNet net_from_json(const json& j) {
    auto sizes = j.at("sizes").get<std::vector<std::size_t>>();
    std::vector<Activation> acts;
    for (const auto& layer : j.at("layers"))
        acts.push_back(activation_from(layer.at("activation").get<std::string>()));
    if (sizes.size() < 2 || acts.size() != sizes.size() - 1)
        throw Error(errc::corrupt_model, "net layer shape is inconsistent");
    FeedForwardNet net(sizes, acts, j.value("seed", std::uint64_t{0}));
    auto& layers = net.layers();
    const auto& stored = j.at("layers");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        layers[l].w = stored[l].at("w").get<std::vector<double>>();
        layers[l].b = stored[l].at("b").get<std::vector<double>>();
        if (layers[l].w.size() != layers[l].in * layers[l].out ||
            layers[l].b.size() != layers[l].out)
            throw Error(errc::corrupt_model, "net weight arrays disagree with shape");
    }
    return net;
}

// ---- trees ------------------------------------------------------------------

inline json ensemble_to_json(const TreeEnsemble& ensemble) {
    json trees = json::array();
    for (const auto& tree : ensemble.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes)
            nodes.push_back(json{{"leaf", n.leaf},
                                 {"feature", n.feature},
                                 {"threshold", n.threshold},
                                 {"left", n.left},
                                 {"right", n.right},
                                 {"value", n.value}});
        trees.push_back(std::move(nodes));
    }
    return json{{"kind", ensemble.kind == EnsembleKind::RandomForest ? "forest" : "gboost"},
                {"learning_rate", ensemble.learning_rate},
                {"base_prediction", ensemble.base_prediction},
                {"seed", ensemble.seed},
                {"trees", trees}};
}

inline TreeEnsemble ensemble_from_json(const json& j) {
    TreeEnsemble ensemble;
    ensemble.kind = j.at("kind").get<std::string>() == "forest"
                        ? EnsembleKind::RandomForest
                        : EnsembleKind::GradientBoost;
    ensemble.learning_rate = j.at("learning_rate").get<double>();
    ensemble.base_prediction = j.at("base_prediction").get<double>();
    ensemble.seed = j.value("seed", std::uint64_t{0});
    for (const auto& tree_json : j.at("trees")) {
        RegressionTree tree;
        for (const auto& n : tree_json) {
            RegressionTree::Node node;
            node.leaf = n.at("leaf").get<bool>();
            node.feature = n.at("feature").get<std::size_t>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<std::int32_t>();
            node.right = n.at("right").get<std::int32_t>();
            node.value = n.at("value").get<double>();
            tree.nodes.push_back(node);
        }
        ensemble.trees.push_back(std::move(tree));
    }
    return ensemble;
}

// ---- ranker -----------------------------------------------------------------

inline json ranker_config_to_json(const RankerConfig& c) {
    return json{{"forest_trees", c.forest_trees},
                {"forest_max_features", c.forest_max_features},
                {"forest_min_leaf", c.forest_min_leaf},
                {"gboost_trees", c.gboost_trees},
                {"gboost_depth", c.gboost_depth},
                {"gboost_rate", c.gboost_rate},
                {"dnn_hidden", c.dnn_hidden},
                {"dnn_hidden_act", activation_name(c.dnn_hidden_act)},
                {"dnn_epochs", c.dnn_epochs},
                {"dnn_batch", c.dnn_batch},
                {"dnn_rate", c.dnn_rate},
                {"smote_k", c.smote_k},
                {"combined_drop_positives_only", c.combined_drop_positives_only}};
}

inline RankerConfig ranker_config_from_json(const json& j) {
    RankerConfig c;
    c.forest_trees = j.value("forest_trees", c.forest_trees);
    c.forest_max_features = j.value("forest_max_features", c.forest_max_features);
    c.forest_min_leaf = j.value("forest_min_leaf", c.forest_min_leaf);
    c.gboost_trees = j.value("gboost_trees", c.gboost_trees);
    c.gboost_depth = j.value("gboost_depth", c.gboost_depth);
    c.gboost_rate = j.value("gboost_rate", c.gboost_rate);
    c.dnn_hidden = j.value("dnn_hidden", c.dnn_hidden);
    if (j.contains("dnn_hidden_act"))
        c.dnn_hidden_act = activation_from(j["dnn_hidden_act"].get<std::string>());
    c.dnn_epochs = j.value("dnn_epochs", c.dnn_epochs);
    c.dnn_batch = j.value("dnn_batch", c.dnn_batch);
    c.dnn_rate = j.value("dnn_rate", c.dnn_rate);
    c.smote_k = j.value("smote_k", c.smote_k);
    c.combined_drop_positives_only =
        j.value("combined_drop_positives_only", c.combined_drop_positives_only);
    return c;
}

inline json ranker_to_json(const Ranker& ranker) {
    json j{{"kind", ranker_kind_name(ranker.kind)},
           {"seed", ranker.seed},
           {"config", ranker_config_to_json(ranker.config)},
           {"loss_trace", ranker.loss_trace}};
    if (ranker.ensemble) j["ensemble"] = ensemble_to_json(*ranker.ensemble);
    if (ranker.net) j["net"] = net_to_json(*ranker.net);
    return j;
}

inline Ranker ranker_from_json(const json& j) {
    Ranker ranker;
    ranker.kind = ranker_kind_from(j.at("kind").get<std::string>());
    ranker.seed = j.value("seed", std::uint64_t{0});
    ranker.config = ranker_config_from_json(j.at("config"));
    ranker.loss_trace = j.value("loss_trace", std::vector<double>{});
    if (j.contains("ensemble")) ranker.ensemble = ensemble_from_json(j["ensemble"]);
    if (j.contains("net")) ranker.net = net_from_json(j["net"]);
    bool needs_net = ranker.kind == RankerKind::Dnn;
    if ((needs_net && !ranker.net) || (!needs_net && !ranker.ensemble))
        throw Error(errc::corrupt_model, "ranker payload does not match its kind");
    return ranker;
}

// ---- relevancy --------------------------------------------------------------

inline json relevancy_config_to_json(const RelevancyConfig& c) {
    return json{{"hidden", c.hidden},
                {"hidden_act", activation_name(c.hidden_act)},
                {"ae_epochs", c.ae_epochs},
                {"rel_epochs", c.rel_epochs},
                {"batch_size", c.batch_size},
                {"ae_rate", c.ae_rate},
                {"rel_rate", c.rel_rate},
                {"seed", c.seed}};
}

inline RelevancyConfig relevancy_config_from_json(const json& j) {
    RelevancyConfig c;
    c.hidden = j.value("hidden", c.hidden);
    if (j.contains("hidden_act"))
        c.hidden_act = activation_from(j["hidden_act"].get<std::string>());
    c.ae_epochs = j.value("ae_epochs", c.ae_epochs);
    c.rel_epochs = j.value("rel_epochs", c.rel_epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.ae_rate = j.value("ae_rate", c.ae_rate);
    c.rel_rate = j.value("rel_rate", c.rel_rate);
    c.seed = j.value("seed", c.seed);
    return c;
}

inline json relevancy_to_json(const RelevancyModel& model) {
    return json{{"vocabulary", vocabulary_to_json(model.vocab)},
                {"autoencoder", net_to_json(model.autoencoder)},
                {"relevancy_net", net_to_json(model.relnet)},
                {"config", relevancy_config_to_json(model.config)}};
}

inline RelevancyModel relevancy_from_json(const json& j) {
    RelevancyModel model;
    model.vocab = vocabulary_from_json(j.at("vocabulary"));
    model.autoencoder = net_from_json(j.at("autoencoder"));
    model.relnet = net_from_json(j.at("relevancy_net"));
    model.config = relevancy_config_from_json(j.at("config"));
    if (model.autoencoder.input_size() != model.vocab.size())
        throw Error(errc::vocabulary_mismatch,
                    "autoencoder width does not match the stored vocabulary");
    return model;
}

// ---- bundle -----------------------------------------------------------------

// Everything `train` produces: the relevancy stack plus one ranker per fold
// transition and the query-time final ranker.
struct ModelBundle {
    json run_config;  // the RunConfig that produced the bundle
    RelevancyModel relevancy;
    FoldwiseModels models;
};

inline void save_model(const std::filesystem::path& path, const ModelBundle& bundle) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["config"] = bundle.run_config;
    doc["relevancy"] = relevancy_to_json(bundle.relevancy);
    json rankers = json::array();
    for (const auto& ranker : bundle.models.transition_rankers)
        rankers.push_back(ranker_to_json(ranker));
    doc["transition_rankers"] = std::move(rankers);
    doc["final_ranker"] = ranker_to_json(bundle.models.final_ranker);

    std::ofstream out(path);
    if (!out) throw Error(errc::io_failure, "cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw Error(errc::io_failure, "short write to " + path.string());
}

inline ModelBundle load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot read " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(errc::corrupt_model, "model JSON parse: " + std::string(e.what()));
    }
    int version = doc.value("format_version", -1);
    if (version != kModelFormatVersion)
        throw Error(errc::version_mismatch,
                    "model format_version " + std::to_string(version) + ", expected " +
                        std::to_string(kModelFormatVersion));
    try {
        ModelBundle bundle;
        bundle.run_config = doc.value("config", json::object());
        bundle.relevancy = relevancy_from_json(doc.at("relevancy"));
        for (const auto& r : doc.at("transition_rankers"))
            bundle.models.transition_rankers.push_back(ranker_from_json(r));
        bundle.models.final_ranker = ranker_from_json(doc.at("final_ranker"));
        return bundle;
    } catch (const json::exception& e) {
        throw Error(errc::corrupt_model, "model JSON shape: " + std::string(e.what()));
    }
}

}  // namespace drast
