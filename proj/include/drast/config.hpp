#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "drast/corpus.hpp"
#include "drast/error.hpp"
#include "drast/model_io.hpp"
#include "drast/pairing.hpp"
#include "drast/ranker.hpp"

namespace drast {

// One configuration object drives every pipeline stage; each stage embeds it
// (with the seed) into its output artifact.
struct RunConfig {
    // paths
    std::string corpus_root;
    std::string corpus_path = "corpus.json";
    std::string bugs_path;
    std::string pairs_path = "pairs.csv";
    std::string model_path = "model.json";
    std::string report_path = "report.json";
    std::string stopwords_path;  // empty = built-in list

    Language language = Language::C;
    IngestMode mode = IngestMode::SrcmlXml;

    double threshold = 0.1;
    std::size_t bugs_per_fold = 100;
    RelevancyScope relevancy_scope = RelevancyScope::PerFold;

    RankerKind ranker = RankerKind::RandomForest;
    SamplingKind sampling = SamplingKind::None;
    RankerConfig ranker_config;
    RelevancyConfig relevancy;

    std::uint64_t seed = 1;

    PairingConfig pairing() const {
        PairingConfig p;
        p.threshold = threshold;
        p.bugs_per_fold = bugs_per_fold;
        p.relevancy_scope = relevancy_scope;
        p.relevancy = relevancy;
        p.seed = seed;
        return p;
    }

    std::unordered_set<std::string> stopwords() const {
        if (stopwords_path.empty()) return default_stopwords();
        return load_stopwords(stopwords_path);
    }
};

inline json run_config_to_json(const RunConfig& c) {
    return json{{"corpus_root", c.corpus_root},
                {"corpus_path", c.corpus_path},
                {"bugs_path", c.bugs_path},
                {"pairs_path", c.pairs_path},
                {"model_path", c.model_path},
                {"report_path", c.report_path},
                {"stopwords_path", c.stopwords_path},
                {"language", std::string(language_name(c.language))},
                {"mode", c.mode == IngestMode::SrcmlXml ? "srcml" : "plain"},
                {"threshold", c.threshold},
                {"bugs_per_fold", c.bugs_per_fold},
                {"relevancy_scope",
                 c.relevancy_scope == RelevancyScope::PerFold ? "per-fold" : "global"},
                {"ranker", ranker_kind_name(c.ranker)},
                {"sampling", sampling_kind_name(c.sampling)},
                {"ranker_config", ranker_config_to_json(c.ranker_config)},
                {"relevancy", relevancy_config_to_json(c.relevancy)},
                {"seed", c.seed}};
}

inline RunConfig run_config_from_json(const json& j) {
    RunConfig c;
    c.corpus_root = j.value("corpus_root", c.corpus_root);
    c.corpus_path = j.value("corpus_path", c.corpus_path);
    c.bugs_path = j.value("bugs_path", c.bugs_path);
    c.pairs_path = j.value("pairs_path", c.pairs_path);
    c.model_path = j.value("model_path", c.model_path);
    c.report_path = j.value("report_path", c.report_path);
    c.stopwords_path = j.value("stopwords_path", c.stopwords_path);
    if (j.contains("language"))
        c.language = j["language"] == "java" ? Language::Java : Language::C;
    if (j.contains("mode"))
        c.mode = j["mode"] == "plain" ? IngestMode::PlainText : IngestMode::SrcmlXml;
    c.threshold = j.value("threshold", c.threshold);
    c.bugs_per_fold = j.value("bugs_per_fold", c.bugs_per_fold);
    if (j.contains("relevancy_scope"))
        c.relevancy_scope = j["relevancy_scope"] == "global" ? RelevancyScope::Global
                                                             : RelevancyScope::PerFold;
    if (j.contains("ranker")) c.ranker = ranker_kind_from(j["ranker"].get<std::string>());
    if (j.contains("sampling"))
        c.sampling = sampling_kind_from(j["sampling"].get<std::string>());
    if (j.contains("ranker_config"))
        c.ranker_config = ranker_config_from_json(j["ranker_config"]);
    if (j.contains("relevancy")) c.relevancy = relevancy_config_from_json(j["relevancy"]);
    c.seed = j.value("seed", c.seed);
    return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot read config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(errc::schema_violation, "config JSON: " + std::string(e.what()));
    }
    return run_config_from_json(doc);
}

}  // namespace drast
