#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace drast {

// Error codes are stable strings: they appear in CLI error JSON and tests
// match on them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* malformed_xml = "MalformedXml";
inline constexpr const char* unsupported_language = "UnsupportedLanguage";
inline constexpr const char* io_failure = "IoFailure";
inline constexpr const char* missing_xml = "MissingXml";
inline constexpr const char* empty_corpus = "EmptyCorpus";
inline constexpr const char* dimension_mismatch = "DimensionMismatch";
inline constexpr const char* shape_mismatch = "ShapeMismatch";
inline constexpr const char* non_finite_loss = "NonFiniteLoss";
inline constexpr const char* degenerate_data = "DegenerateData";
inline constexpr const char* too_few_minority = "TooFewMinority";
inline constexpr const char* empty_class = "EmptyClass";
inline constexpr const char* unknown_fixed_file = "UnknownFixedFile";
inline constexpr const char* no_positive_pairs = "NoPositivePairs";
inline constexpr const char* all_rows_removed = "AllRowsRemoved";
inline constexpr const char* empty_results = "EmptyResults";
inline constexpr const char* no_relevant = "NoRelevant";
inline constexpr const char* schema_violation = "SchemaViolation";
inline constexpr const char* bad_timestamp = "BadTimestamp";
inline constexpr const char* version_mismatch = "VersionMismatch";
inline constexpr const char* corrupt_model = "CorruptModel";
inline constexpr const char* vocabulary_mismatch = "VocabularyMismatch";
inline constexpr const char* unknown_bug = "UnknownBug";
inline constexpr const char* not_enough_folds = "NotEnoughFolds";
inline constexpr const char* invalid_argument = "InvalidArgument";
}  // namespace errc

}  // namespace drast
