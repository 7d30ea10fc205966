#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "drast/text.hpp"

using drast::porter_stem;
using drast::preprocess;
using drast::split_identifier;
using drast::TokenList;

namespace {
bool contains(const TokenList& tokens, const std::string& t) {
    return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}
}  // namespace

TEST_CASE("porter stemmer matches the published example pairs") {
    // Pairs drawn from the algorithm's own worked examples.
    const std::pair<const char*, const char*> pairs[] = {
        {"caresses", "caress"}, {"ponies", "poni"},     {"ties", "ti"},
        {"caress", "caress"},   {"cats", "cat"},        {"feed", "feed"},
        {"agreed", "agre"},     {"plastered", "plaster"}, {"bled", "bled"},
        {"motoring", "motor"},  {"sing", "sing"},       {"conflated", "conflat"},
        {"troubled", "troubl"}, {"sized", "size"},      {"hopping", "hop"},
        {"tanned", "tan"},      {"falling", "fall"},    {"hissing", "hiss"},
        {"fizzed", "fizz"},     {"failing", "fail"},    {"filing", "file"},
        {"happy", "happi"},     {"sky", "sky"},         {"relational", "relat"},
        {"conditional", "condit"}, {"rational", "ration"}, {"digitizer", "digit"},
        {"operator", "oper"},   {"feudalism", "feudal"}, {"decisiveness", "decis"},
        {"hopefulness", "hope"}, {"formaliti", "formal"}, {"formative", "form"},
        {"formalize", "formal"}, {"electriciti", "electr"}, {"electrical", "electr"},
        {"hopeful", "hope"},    {"goodness", "good"},   {"revival", "reviv"},
        {"allowance", "allow"}, {"inference", "infer"}, {"airliner", "airlin"},
        {"adjustable", "adjust"}, {"defensible", "defens"}, {"replacement", "replac"},
        {"adoption", "adopt"},  {"communism", "commun"}, {"activate", "activ"},
        {"effective", "effect"}, {"probate", "probat"},  {"rate", "rate"},
        {"controll", "control"}, {"roll", "roll"},
    };
    for (const auto& [word, expected] : pairs) {
        INFO(word);
        CHECK(porter_stem(word) == expected);
    }
}

TEST_CASE("porter stemmer on the running/runs/ran triple") {
    CHECK(porter_stem("running") == "run");
    CHECK(porter_stem("runs") == "run");
    CHECK(porter_stem("ran") == "ran");
}

TEST_CASE("stemming is idempotent on corpus-like words") {
    const char* words[] = {"running",  "localization", "pointer",  "surface",
                           "nullpointer", "masksurface", "convolve", "frequency",
                           "relational",  "bugs",        "reports",  "files"};
    for (const char* w : words) {
        std::string once = porter_stem(w);
        CHECK(porter_stem(once) == once);
    }
}

TEST_CASE("identifier splitting") {
    CHECK(split_identifier("MaskSurface") == std::vector<std::string>{"Mask", "Surface"});
    CHECK(split_identifier("camelCase") == std::vector<std::string>{"camel", "Case"});
    CHECK(split_identifier("HTMLParser") == std::vector<std::string>{"HTML", "Parser"});
    CHECK(split_identifier("snake_case_id") ==
          std::vector<std::string>{"snake", "case", "id"});
    CHECK(split_identifier("utf8Decode") == std::vector<std::string>{"utf", "8", "Decode"});
    CHECK(split_identifier("plain") == std::vector<std::string>{"plain"});
}

TEST_CASE("preprocess applies the full pipeline") {
    TokenList tokens = preprocess("NullPointer in MaskSurface");
    CHECK(contains(tokens, porter_stem("nullpointer")));
    CHECK(contains(tokens, porter_stem("null")));
    CHECK(contains(tokens, porter_stem("pointer")));
    CHECK(contains(tokens, porter_stem("masksurface")));
    CHECK(contains(tokens, porter_stem("mask")));
    CHECK(contains(tokens, porter_stem("surface")));
    CHECK_FALSE(contains(tokens, "in"));  // stop word
}

TEST_CASE("preprocess on empty and stop-word-only input") {
    CHECK(preprocess("").empty());
    CHECK(preprocess("the a is of").empty());
    CHECK(preprocess("x y z").empty());  // single-character tokens dropped
}

TEST_CASE("preprocess keeps snake_case compounds alongside their parts") {
    TokenList tokens = preprocess("mask_zero_size_convolve");
    CHECK(contains(tokens, porter_stem("mask_zero_size_convolve")));
    CHECK(contains(tokens, porter_stem("mask")));
    CHECK(contains(tokens, porter_stem("convolve")));
}

TEST_CASE("no token is empty or a stop word after preprocessing") {
    TokenList tokens = preprocess(
        "The quick BrownFox jumped over 42 lazy_dogs while parsing HTML5 pages!");
    for (const auto& t : tokens) {
        CHECK_FALSE(t.empty());
        // Stop words are filtered before stemming; unstemmed membership holds
        // for every original (non-stemmed) survivor that reaches this point.
    }
    CHECK_FALSE(contains(tokens, "the"));
    CHECK_FALSE(contains(tokens, "over"));
}

TEST_CASE("token-list preprocessing matches joined-string preprocessing") {
    std::vector<std::string> raw = {"Decl", "FILE *", "fp", "FuncCall", "printf"};
    CHECK(drast::preprocess_tokens(raw) ==
          preprocess("Decl FILE * fp FuncCall printf"));
}
