#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "drast/corpus.hpp"

#include "fixtures.hpp"

namespace fs = std::filesystem;
using drast::Corpus;
using drast::Error;
using drast::IngestMode;
using drast::ingest_tree;
using drast::Language;

namespace {

struct TempTree {
    fs::path root;
    TempTree() {
        root = fs::temp_directory_path() /
               ("drast_corpus_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(root);
    }
    ~TempTree() { fs::remove_all(root); }
    void write(const std::string& rel, const std::string& content) const {
        fs::path p = root / rel;
        fs::create_directories(p.parent_path());
        std::ofstream out(p);
        out << content;
    }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("srcml-mode ingestion picks .c files with sibling XML") {
    TempTree tree;
    tree.write("src/a.c", "int main() {}");
    tree.write("src/a.c.xml", fixtures::kCUnitXml);
    tree.write("src/b.c", "void f() {}");
    tree.write("src/b.c.xml", fixtures::kCEmptyFunctionXml);
    tree.write("src/header.h", "#define X 1");  // excluded by extension

    Corpus corpus = ingest_tree(tree.root, Language::C, IngestMode::SrcmlXml);
    REQUIRE(corpus.units.size() == 2);
    CHECK(corpus.units[0].path == "src/a.c");
    CHECK(corpus.units[1].path == "src/b.c");
    CHECK(corpus.warnings.empty());
    CHECK(corpus.units[0].blocks.size() == 1);
}

TEST_CASE("missing sibling XML is collected, not fatal") {
    TempTree tree;
    tree.write("a.c", "int main() {}");
    tree.write("a.c.xml", fixtures::kCUnitXml);
    tree.write("orphan.c", "void g() {}");  // no XML

    Corpus corpus = ingest_tree(tree.root, Language::C, IngestMode::SrcmlXml);
    CHECK(corpus.units.size() == 1);
    REQUIRE(corpus.warnings.size() == 1);
    CHECK(corpus.warnings[0].find("MissingXml") != std::string::npos);
    CHECK(corpus.warnings[0].find("orphan.c") != std::string::npos);
}

TEST_CASE("empty directory gives an empty corpus") {
    TempTree tree;
    Corpus corpus = ingest_tree(tree.root, Language::C, IngestMode::PlainText);
    CHECK(corpus.units.empty());
}

TEST_CASE("missing root directory is an IoFailure") {
    try {
        ingest_tree("/definitely/not/here", Language::C, IngestMode::PlainText);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == "IoFailure");
    }
}

TEST_CASE("plain-text mode builds one file-level block of raw tokens") {
    TempTree tree;
    std::string content = "static int counter = 0;\nvoid tick() { counter++; }\n";
    tree.write("only.c", content);

    Corpus corpus = ingest_tree(tree.root, Language::C, IngestMode::PlainText);
    REQUIRE(corpus.units.size() == 1);
    REQUIRE(corpus.units[0].blocks.size() == 1);
    CHECK(corpus.units[0].blocks[0].origin == drast::BlockOrigin::FileLevel);
    CHECK(corpus.units[0].characteristics.empty());

    // Independent whitespace split of the same content.
    std::istringstream stream(content);
    std::vector<std::string> expected;
    std::string word;
    while (stream >> word) expected.push_back(word);
    CHECK(corpus.units[0].blocks[0].tokens == expected);
}

TEST_CASE("ingestion is deterministic across runs") {
    TempTree tree;
    for (int i = 0; i < 6; ++i)
        tree.write("d" + std::to_string(i % 3) + "/f" + std::to_string(i) + ".java",
                   "class C" + std::to_string(i) + " {}");
    Corpus a = ingest_tree(tree.root, Language::Java, IngestMode::PlainText);
    Corpus b = ingest_tree(tree.root, Language::Java, IngestMode::PlainText);
    REQUIRE(a.units.size() == b.units.size());
    CHECK(a.units.size() == 6);
    for (std::size_t i = 0; i < a.units.size(); ++i) {
        CHECK(a.units[i].path == b.units[i].path);
        CHECK(a.units[i].blocks.size() == b.units[i].blocks.size());
        for (std::size_t k = 0; k < a.units[i].blocks.size(); ++k)
            CHECK(a.units[i].blocks[k].tokens == b.units[i].blocks[k].tokens);
    }
    for (std::size_t i = 1; i < a.units.size(); ++i)
        CHECK(a.units[i - 1].path < a.units[i].path);  // sorted order
}

TEST_CASE("corpus JSON round-trips blocks, origins and characteristics") {
    TempTree tree;
    tree.write("x.c", "int main() {}");
    tree.write("x.c.xml", fixtures::kCUnitXml);
    Corpus corpus = ingest_tree(tree.root, Language::C, IngestMode::SrcmlXml);

    fs::path out = tree.root / "corpus.json";
    drast::save_corpus(out, corpus, drast::ordered_json{{"seed", 42}});
    Corpus loaded = drast::load_corpus(out);

    REQUIRE(loaded.units.size() == corpus.units.size());
    for (std::size_t i = 0; i < corpus.units.size(); ++i) {
        CHECK(loaded.units[i].path == corpus.units[i].path);
        REQUIRE(loaded.units[i].blocks.size() == corpus.units[i].blocks.size());
        for (std::size_t k = 0; k < corpus.units[i].blocks.size(); ++k) {
            CHECK(loaded.units[i].blocks[k].tokens == corpus.units[i].blocks[k].tokens);
            CHECK(loaded.units[i].blocks[k].origin == corpus.units[i].blocks[k].origin);
        }
        CHECK(drast::characteristics_to_json(loaded.units[i].characteristics) ==
              drast::characteristics_to_json(corpus.units[i].characteristics));
    }
}

TEST_CASE("corpus JSON embeds the config that produced it") {
    TempTree tree;
    tree.write("y.java", "class Y {}");
    Corpus corpus = ingest_tree(tree.root, Language::Java, IngestMode::PlainText);
    fs::path out = tree.root / "corpus.json";
    drast::save_corpus(out, corpus, drast::ordered_json{{"seed", 7}, {"mode", "plain"}});

    std::ifstream in(out);
    drast::ordered_json doc;
    in >> doc;
    CHECK(doc.at("config").at("seed") == 7);
    CHECK(doc.at("config").at("mode") == "plain");
    CHECK(doc.at("language") == "java");
    CHECK(doc.at("units").contains("y.java"));
}

TEST_CASE("find locates units by path") {
    TempTree tree;
    tree.write("a.c", "x");
    tree.write("b.c", "y");
    Corpus corpus = ingest_tree(tree.root, Language::C, IngestMode::PlainText);
    REQUIRE(corpus.find("a.c") != nullptr);
    CHECK(corpus.find("a.c")->path == "a.c");
    CHECK(corpus.find("missing.c") == nullptr);
}
