// drast: bug-localization pipeline driver.
//
//   ingest    parse a source tree (srcML XML or plain text) into corpus.json
//   features  compute the six-feature pair dataset and fold manifest
//   train     fit fold-wise rankers and write the model bundle
//   rank      print the top-k ranked files for one bug as JSON lines
//   evaluate  fold-transition evaluation (accuracy@k, MAP, MRR)
//
// Errors leave as JSON on stderr: {"error": <code>, "message": <text>}.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "drast/bugset.hpp"
#include "drast/config.hpp"
#include "drast/pipeline.hpp"

namespace {

int exit_code_for(const std::string& error_code) {
    if (error_code == drast::errc::unknown_bug) return 2;
    if (error_code == drast::errc::no_positive_pairs) return 3;
    return 1;
}

void print_error(const std::string& code, const std::string& message) {
    std::cerr << drast::json{{"error", code}, {"message", message}}.dump() << std::endl;
}

drast::RunConfig base_config() {
    // DRAST_CONFIG points at a JSON config file with the defaults; flags on
    // the command line override it.
    if (const char* path = std::getenv("DRAST_CONFIG"))
        return drast::load_run_config(path);
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DRAST bug localization pipeline"};
    app.require_subcommand(1);

    drast::RunConfig config;
    try {
        config = base_config();
    } catch (const drast::Error& e) {
        print_error(e.code(), e.what());
        return exit_code_for(e.code());
    }

    app.add_option("--seed", config.seed, "RNG seed recorded in every artifact");
    app.add_option("--stopwords", config.stopwords_path,
                   "stop-word list file, one word per line");

    std::string lang = config.language == drast::Language::Java ? "java" : "c";
    std::string mode = config.mode == drast::IngestMode::PlainText ? "plain" : "srcml";
    std::string ranker = drast::ranker_kind_name(config.ranker);
    std::string sampling = drast::sampling_kind_name(config.sampling);
    std::string scope =
        config.relevancy_scope == drast::RelevancyScope::Global ? "global" : "per-fold";

    auto* ingest = app.add_subcommand("ingest", "parse a source tree into corpus JSON");
    ingest->add_option("--src", config.corpus_root, "project source root")->required();
    ingest->add_option("--lang", lang, "c|java")->check(CLI::IsMember({"c", "java"}));
    ingest->add_option("--mode", mode, "srcml|plain")
        ->check(CLI::IsMember({"srcml", "plain"}));
    ingest->add_option("--out", config.corpus_path, "output corpus JSON path");

    auto* features =
        app.add_subcommand("features", "compute the labeled six-feature pair dataset");
    features->add_option("--corpus", config.corpus_path, "corpus JSON from ingest")
        ->required();
    features->add_option("--bugs", config.bugs_path, "BugC-format bug JSON")->required();
    features->add_option("--threshold", config.threshold,
                         "textual-similarity cutoff for negative pairs");
    features->add_option("--bugs-per-fold", config.bugs_per_fold, "fold size");
    features->add_option("--relevancy-scope", scope, "per-fold|global")
        ->check(CLI::IsMember({"per-fold", "global"}));
    features->add_option("--rel-hidden", config.relevancy.hidden,
                         "relevancy net hidden width");
    features->add_option("--rel-epochs", config.relevancy.rel_epochs,
                         "relevancy net training epochs");
    features->add_option("--ae-epochs", config.relevancy.ae_epochs,
                         "autoencoder training epochs");
    features->add_option("--out", config.pairs_path, "output pairs CSV path");

    auto* train = app.add_subcommand("train", "fit fold-wise rankers");
    train->add_option("--pairs", config.pairs_path, "pairs CSV from features")
        ->required();
    train->add_option("--ranker", ranker, "rf|gboost|dnn|combined")
        ->check(CLI::IsMember({"rf", "gboost", "dnn", "combined"}));
    train->add_option("--sampling", sampling, "none|smote|over|under|tomek")
        ->check(CLI::IsMember({"none", "smote", "over", "under", "tomek"}));
    train->add_option("--trees", config.ranker_config.forest_trees, "forest size");
    train->add_option("--dnn-hidden", config.ranker_config.dnn_hidden,
                      "DNN ranker hidden width");
    train->add_option("--dnn-epochs", config.ranker_config.dnn_epochs,
                      "DNN ranker training epochs");
    train->add_option("--out", config.model_path, "output model bundle path");

    auto* rank = app.add_subcommand("rank", "rank files for one bug");
    std::string bug_id, bug_file;
    std::size_t top = 10;
    rank->add_option("--model", config.model_path, "model bundle from train")->required();
    auto* opt_id = rank->add_option("--bug-id", bug_id, "bug id present in the pairs file");
    auto* opt_file = rank->add_option("--bug-file", bug_file,
                                      "JSON file with one unseen bug record");
    rank->add_option("--pairs", config.pairs_path, "pairs CSV (with --bug-id)");
    rank->add_option("--corpus", config.corpus_path, "corpus JSON (with --bug-file)");
    rank->add_option("--bugs", config.bugs_path, "bug set JSON (with --bug-file)");
    rank->add_option("--top", top, "how many files to print");
    opt_id->excludes(opt_file);

    auto* evaluate = app.add_subcommand("evaluate", "fold-transition evaluation");
    evaluate->add_option("--model", config.model_path, "model bundle from train")
        ->required();
    evaluate->add_option("--pairs", config.pairs_path, "pairs CSV from features")
        ->required();
    evaluate->add_option("--out", config.report_path, "output report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        print_error("UsageError", e.what());
        return 64;
    }

    config.language = lang == "java" ? drast::Language::Java : drast::Language::C;
    config.mode = mode == "plain" ? drast::IngestMode::PlainText
                                  : drast::IngestMode::SrcmlXml;
    config.ranker = drast::ranker_kind_from(ranker);
    config.sampling = drast::sampling_kind_from(sampling);
    config.relevancy_scope = scope == "global" ? drast::RelevancyScope::Global
                                               : drast::RelevancyScope::PerFold;
    config.relevancy.seed = config.seed;

    try {
        if (ingest->parsed()) {
            drast::IngestResult result = drast::run_ingest(config);
            for (const auto& w : result.warnings) std::cerr << w << '\n';
            std::cout << "wrote " << config.corpus_path << " with " << result.unit_count
                      << " units\n";
        } else if (features->parsed()) {
            drast::FeaturesResult result = drast::run_features(config);
            for (const auto& w : result.warnings) std::cerr << w << '\n';
            std::cout << "wrote " << config.pairs_path << " with " << result.row_count
                      << " rows (" << result.positive_count << " positive) across "
                      << result.fold_count << " folds\n";
        } else if (train->parsed()) {
            drast::TrainResult result = drast::run_train(config);
            std::cout << "wrote " << config.model_path << " with "
                      << result.transition_count << " transition rankers over "
                      << result.fold_count << " folds\n";
        } else if (rank->parsed()) {
            drast::RankedList ranked;
            if (!bug_id.empty()) {
                ranked = drast::run_rank_known(config, bug_id);
            } else if (!bug_file.empty()) {
                drast::BugSet query_set = drast::load_bugc(bug_file);
                if (query_set.bugs.empty())
                    throw drast::Error(drast::errc::schema_violation,
                                       bug_file + " holds no bug records");
                ranked = drast::run_rank_fresh(config, query_set.bugs.front());
            } else {
                throw drast::Error(drast::errc::invalid_argument,
                                   "rank needs --bug-id or --bug-file");
            }
            std::cout << drast::ranked_list_to_json(ranked, top).dump() << '\n';
        } else if (evaluate->parsed()) {
            drast::EvalReport report = drast::run_evaluate(config);
            std::cout << drast::eval_report_table(report);
            std::cout << "wrote " << config.report_path << '\n';
        }
    } catch (const drast::Error& e) {
        print_error(e.code(), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return 1;
    }
    return 0;
}
