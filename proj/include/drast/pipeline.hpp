#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "drast/bugset.hpp"
#include "drast/config.hpp"
#include "drast/corpus.hpp"
#include "drast/csvio.hpp"
#include "drast/harness.hpp"
#include "drast/model_io.hpp"
#include "drast/pairing.hpp"

// Stage drivers behind the CLI subcommands. Each consumes the previous
// stage's artifacts and writes its own, embedding the run configuration.

namespace drast {

// ---- ingest -----------------------------------------------------------------

struct IngestResult {
    std::size_t unit_count = 0;
    std::vector<std::string> warnings;
};

inline IngestResult run_ingest(const RunConfig& config) {
    Corpus corpus = ingest_tree(config.corpus_root, config.language, config.mode);
    save_corpus(config.corpus_path, corpus,
                ordered_json::parse(run_config_to_json(config).dump()));
    return {corpus.units.size(), corpus.warnings};
}

// ---- features ---------------------------------------------------------------

struct FeaturesResult {
    std::size_t row_count = 0;
    std::size_t positive_count = 0;
    std::size_t fold_count = 0;
    std::vector<std::string> warnings;
};

inline std::filesystem::path pairs_meta_path(const std::filesystem::path& pairs_path) {
    std::filesystem::path p = pairs_path;
    p += ".meta.json";
    return p;
}

inline FeaturesResult run_features(const RunConfig& config) {
    Corpus corpus = load_corpus(config.corpus_path);
    BugSet bugs = load_bugc(config.bugs_path);
    auto stopwords = config.stopwords();

    PairBuild build = build_pairs(bugs.bugs, corpus, config.pairing(), stopwords);
    save_pairs_csv(config.pairs_path, build.pairs.rows);

    json folds = json::array();
    for (const auto& fold : build.folds.folds) folds.push_back(fold);
    json meta{{"format_version", kModelFormatVersion},
              {"config", run_config_to_json(config)},
              {"bugs_per_fold", build.folds.bugs_per_fold},
              {"folds", std::move(folds)},
              {"warnings", build.warnings},
              {"relevancy", relevancy_to_json(build.query_relevancy)}};
    std::ofstream meta_out(pairs_meta_path(config.pairs_path));
    if (!meta_out)
        throw Error(errc::io_failure,
                    "cannot write " + pairs_meta_path(config.pairs_path).string());
    meta_out << meta.dump(2) << '\n';

    FeaturesResult result;
    result.row_count = build.pairs.rows.size();
    for (const auto& row : build.pairs.rows) result.positive_count += row.label;
    result.fold_count = build.folds.fold_count();
    result.warnings = build.warnings;
    return result;
}

struct PairsArtifacts {
    std::vector<FeatureRow> rows;
    FoldPlan folds;
    RelevancyModel relevancy;
    json config;
};

inline PairsArtifacts load_pairs_artifacts(const std::filesystem::path& pairs_path) {
    PairsArtifacts artifacts;
    artifacts.rows = load_pairs_csv(pairs_path);
    std::ifstream meta_in(pairs_meta_path(pairs_path));
    if (!meta_in)
        throw Error(errc::io_failure,
                    "cannot read " + pairs_meta_path(pairs_path).string() +
                        " (produced by the features stage)");
    json meta;
    try {
        meta_in >> meta;
    } catch (const json::exception& e) {
        throw Error(errc::corrupt_model, "pairs meta JSON: " + std::string(e.what()));
    }
    int version = meta.value("format_version", -1);
    if (version != kModelFormatVersion)
        throw Error(errc::version_mismatch,
                    "pairs meta format_version " + std::to_string(version) +
                        ", expected " + std::to_string(kModelFormatVersion));
    artifacts.folds.bugs_per_fold = meta.at("bugs_per_fold").get<std::size_t>();
    for (const auto& fold : meta.at("folds"))
        artifacts.folds.folds.push_back(fold.get<std::vector<std::string>>());
    artifacts.relevancy = relevancy_from_json(meta.at("relevancy"));
    artifacts.config = meta.value("config", json::object());
    return artifacts;
}

// ---- train ------------------------------------------------------------------

struct TrainResult {
    std::size_t transition_count = 0;
    std::size_t fold_count = 0;
};

inline TrainResult run_train(const RunConfig& config, const AccessLogger& logger = {}) {
    PairsArtifacts artifacts = load_pairs_artifacts(config.pairs_path);
    FoldwiseModels models =
        train_foldwise(artifacts.rows, artifacts.folds, config.ranker, config.sampling,
                       config.ranker_config, config.seed, logger);
    ModelBundle bundle;
    bundle.run_config = run_config_to_json(config);
    bundle.relevancy = artifacts.relevancy;
    bundle.models = std::move(models);
    save_model(config.model_path, bundle);
    return {bundle.models.transition_rankers.size(), artifacts.folds.fold_count()};
}

// ---- rank -------------------------------------------------------------------

// Ranked output for one bug as a JSON line:
// {"bug_id": ..., "ranking": [{"file":..., "score":...}], "relevant": [...]}.
inline json ranked_list_to_json(const RankedList& ranked, std::size_t top) {
    json files = json::array();
    for (std::size_t i = 0; i < ranked.ranking.size() && i < top; ++i)
        files.push_back(json{{"file", ranked.ranking[i].first},
                             {"score", ranked.ranking[i].second}});
    return json{{"bug_id", ranked.bug_id},
                {"ranking", std::move(files)},
                {"relevant", std::vector<std::string>(ranked.relevant.begin(),
                                                      ranked.relevant.end())}};
}

// Ranks the stored candidate rows of a known bug with the final ranker.
inline RankedList run_rank_known(const RunConfig& config, const std::string& bug_id) {
    PairsArtifacts artifacts = load_pairs_artifacts(config.pairs_path);
    ModelBundle bundle = load_model(config.model_path);
    std::vector<FeatureRow> bug_rows;
    for (const FeatureRow& row : artifacts.rows)
        if (row.bug_id == bug_id) bug_rows.push_back(row);
    if (bug_rows.empty())
        throw Error(errc::unknown_bug, "bug id '" + bug_id + "' has no rows in " +
                                           config.pairs_path);
    return rank_rows(bundle.models.final_ranker, bug_id, bug_rows);
}

// Scores a previously unseen bug report against every corpus file: features
// compute on the fly (no threshold at query time) with history drawn from the
// bug set and feature six from the bundle's relevancy model.
inline RankedList run_rank_fresh(const RunConfig& config, const BugReport& query) {
    Corpus corpus = load_corpus(config.corpus_path);
    BugSet bugs = load_bugc(config.bugs_path);
    ModelBundle bundle = load_model(config.model_path);
    auto stopwords = config.stopwords();

    std::vector<BugReport> all_bugs = bugs.bugs;
    all_bugs.push_back(query);
    CorpusStats stats = CorpusStats::build(corpus, all_bugs, stopwords);
    FixHistory history = history_from_bugs(bugs.bugs);

    RelevancyScorer scorer(bundle.relevancy, corpus, stopwords);
    std::vector<double> encoded_bug = scorer.encode_bug(query, stopwords);
    const SparseVec& bug_vec = stats.bug_vecs.at(query.id);

    std::vector<FeatureRow> rows;
    for (std::size_t u = 0; u < corpus.units.size(); ++u) {
        FeatureRow row;
        row.bug_id = query.id;
        row.file = corpus.units[u].path;
        row.f[0] = textual_similarity(bug_vec, stats.units[u], stats);
        row.f[1] = collaborative_filtering(query, row.file, history, stats.bug_vecs);
        row.f[2] = feature_name_similarity(bug_vec, stats.units[u]);
        row.f[3] = bug_fixing_recency(query, row.file, history);
        row.f[4] = static_cast<double>(bug_fixing_frequency(query, row.file, history));
        row.f[5] = scorer.score(encoded_bug, u);
        row.label = 0;
        rows.push_back(std::move(row));
    }
    return rank_files(bundle.models.final_ranker, query, rows);
}

// ---- evaluate ---------------------------------------------------------------

inline json eval_report_to_json(const EvalReport& report, const RunConfig& config) {
    auto metrics_json = [](const TransitionMetrics& m) {
        json acc = json::object();
        for (std::size_t k = 0; k < m.accuracy.size(); ++k)
            acc["accuracy@" + std::to_string(k + 1)] = m.accuracy[k];
        return json{{"train_fold", m.train_fold},
                    {"test_fold", m.test_fold},
                    {"bug_count", m.bug_count},
                    {"accuracy", std::move(acc)},
                    {"map", m.map},
                    {"mrr", m.mrr}};
    };
    json transitions = json::array();
    for (const auto& t : report.transitions) transitions.push_back(metrics_json(t));
    return json{{"format_version", kModelFormatVersion},
                {"config", run_config_to_json(config)},
                {"transitions", std::move(transitions)},
                {"mean", metrics_json(report.mean)},
                {"max", metrics_json(report.best)}};
}

// Plain-text table: accuracy@1/5/10, MAP, MRR per transition plus mean/max.
inline std::string eval_report_table(const EvalReport& report) {
    std::ostringstream out;
    auto line = [&](const std::string& name, const TransitionMetrics& m) {
        out << std::left << std::setw(14) << name << std::right << std::fixed
            << std::setprecision(2) << std::setw(8) << 100.0 * m.accuracy[0] << "%"
            << std::setw(8) << 100.0 * m.accuracy[4] << "%" << std::setw(8)
            << 100.0 * m.accuracy[9] << "%" << std::setprecision(4) << std::setw(9)
            << m.map << std::setw(9) << m.mrr << '\n';
    };
    out << std::left << std::setw(14) << "transition" << std::right << std::setw(9)
        << "acc@1" << std::setw(9) << "acc@5" << std::setw(9) << "acc@10"
        << std::setw(9) << "MAP" << std::setw(9) << "MRR" << '\n';
    for (const auto& t : report.transitions)
        line("fold" + std::to_string(t.train_fold) + "->fold" +
                 std::to_string(t.test_fold),
             t);
    line("mean", report.mean);
    line("max", report.best);
    return out.str();
}

inline EvalReport run_evaluate(const RunConfig& config, const AccessLogger& logger = {}) {
    PairsArtifacts artifacts = load_pairs_artifacts(config.pairs_path);
    ModelBundle bundle = load_model(config.model_path);
    EvalReport report =
        evaluate_foldwise(artifacts.rows, artifacts.folds, bundle.models, logger);
    std::ofstream out(config.report_path);
    if (!out) throw Error(errc::io_failure, "cannot write " + config.report_path);
    out << eval_report_to_json(report, config).dump(2) << '\n';
    return report;
}

}  // namespace drast
