#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "drast/error.hpp"
#include "drast/srcml.hpp"
#include "drast/text.hpp"

namespace drast {

using ordered_json = nlohmann::ordered_json;

enum class IngestMode { SrcmlXml, PlainText };

struct Corpus {
    Language language = Language::C;
    std::vector<SourceUnit> units;                 // sorted by path
    std::vector<std::string> warnings;             // per-file MissingXml reports

    const SourceUnit* find(const std::string& path) const {
        auto it = std::lower_bound(
            units.begin(), units.end(), path,
            [](const SourceUnit& u, const std::string& p) { return u.path < p; });
        return (it != units.end() && it->path == path) ? &*it : nullptr;
    }
};

namespace corpus_detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_failure, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace corpus_detail

// Walks `root` for *.c or *.java files (headers excluded). SrcmlXml mode reads
// the sibling "<file>.xml" produced by the srcML tool; files whose XML is
// missing are reported in Corpus::warnings and skipped. PlainText mode turns
// each file into a single whitespace-split file-level block with empty
// characteristics so the pipeline runs without srcML.
inline Corpus ingest_tree(const std::filesystem::path& root, Language language,
                          IngestMode mode) {
    namespace fs = std::filesystem;
    if (!fs::exists(root) || !fs::is_directory(root))
        throw Error(errc::io_failure, "corpus root " + root.string() + " is not a directory");

    std::string extension = language == Language::C ? ".c" : ".java";
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == extension)
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());  // iteration order is OS-dependent

    Corpus corpus;
    corpus.language = language;
    for (const fs::path& file : files) {
        std::string rel = fs::relative(file, root).generic_string();
        if (mode == IngestMode::SrcmlXml) {
            fs::path xml_path = file;
            xml_path += ".xml";
            if (!fs::exists(xml_path)) {
                corpus.warnings.push_back("MissingXml: no sibling XML for " + rel);
                continue;
            }
            SourceUnit unit = parse_srcml_unit(corpus_detail::read_file(xml_path), language);
            unit.path = rel;  // disk layout wins over the XML's filename attribute
            corpus.units.push_back(std::move(unit));
        } else {
            SourceUnit unit;
            unit.path = rel;
            unit.language = language;
            std::vector<std::string> tokens;
            std::istringstream stream(corpus_detail::read_file(file));
            std::string word;
            while (stream >> word) tokens.push_back(word);
            if (!tokens.empty())
                unit.blocks.push_back({std::move(tokens), BlockOrigin::FileLevel});
            if (language == Language::C) {
                unit.characteristics.categorized = true;
                for (const char* cat : kCCategories)
                    unit.characteristics.categories.emplace_back(cat, std::vector<std::string>{});
            }
            corpus.units.push_back(std::move(unit));
        }
    }
    return corpus;
}

// ---- JSON shapes matching the reference listings ---------------------------

inline ordered_json characteristics_to_json(const CodeCharacteristics& chars) {
    if (!chars.categorized) return ordered_json(chars.flat);
    ordered_json obj = ordered_json::object();
    for (const auto& [name, tokens] : chars.categories) obj[name] = tokens;
    return obj;
}

inline CodeCharacteristics characteristics_from_json(const ordered_json& j) {
    CodeCharacteristics chars;
    if (j.is_array()) {
        chars.flat = j.get<std::vector<std::string>>();
        return chars;
    }
    chars.categorized = true;
    for (const char* cat : kCCategories) {
        std::vector<std::string> tokens;
        if (j.contains(cat)) tokens = j.at(cat).get<std::vector<std::string>>();
        chars.categories.emplace_back(cat, std::move(tokens));
    }
    return chars;
}

inline ordered_json blocks_to_json(const SourceUnit& unit) {
    ordered_json arr = ordered_json::array();
    for (const CodeBlock& block : unit.blocks) arr.push_back(block.tokens);
    return arr;
}

inline ordered_json corpus_to_json(const Corpus& corpus, const ordered_json& config) {
    ordered_json units = ordered_json::object();
    for (const SourceUnit& unit : corpus.units) {
        ordered_json u = ordered_json::object();
        u["blocks"] = blocks_to_json(unit);
        ordered_json origins = ordered_json::array();
        for (const CodeBlock& block : unit.blocks)
            origins.push_back(std::string(origin_name(block.origin)));
        u["origins"] = origins;
        u["characteristics"] = characteristics_to_json(unit.characteristics);
        units[unit.path] = std::move(u);
    }
    ordered_json root = ordered_json::object();
    root["format_version"] = 1;
    root["config"] = config;
    root["language"] = std::string(language_name(corpus.language));
    root["units"] = std::move(units);
    return root;
}

inline Corpus corpus_from_json(const ordered_json& root) {
    Corpus corpus;
    try {
        corpus.language =
            root.at("language").get<std::string>() == "java" ? Language::Java : Language::C;
        for (const auto& [path, u] : root.at("units").items()) {
            SourceUnit unit;
            unit.path = path;
            unit.language = corpus.language;
            const auto& blocks = u.at("blocks");
            const auto& origins = u.at("origins");
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                CodeBlock block;
                block.tokens = blocks[i].get<std::vector<std::string>>();
                std::string origin = origins[i].get<std::string>();
                if (origin == "function") block.origin = BlockOrigin::Function;
                else if (origin == "class") block.origin = BlockOrigin::Class;
                else if (origin == "import") block.origin = BlockOrigin::Import;
                else block.origin = BlockOrigin::FileLevel;
                unit.blocks.push_back(std::move(block));
            }
            unit.characteristics = characteristics_from_json(u.at("characteristics"));
            corpus.units.push_back(std::move(unit));
        }
    } catch (const ordered_json::exception& e) {
        throw Error(errc::corrupt_model, std::string("corpus JSON: ") + e.what());
    }
    std::sort(corpus.units.begin(), corpus.units.end(),
              [](const SourceUnit& a, const SourceUnit& b) { return a.path < b.path; });
    return corpus;
}

inline void save_corpus(const std::filesystem::path& path, const Corpus& corpus,
                        const ordered_json& config) {
    std::ofstream out(path);
    if (!out) throw Error(errc::io_failure, "cannot write " + path.string());
    out << corpus_to_json(corpus, config).dump(2) << '\n';
}

inline Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot read " + path.string());
    ordered_json root;
    try {
        in >> root;
    } catch (const ordered_json::exception& e) {
        throw Error(errc::corrupt_model, "corpus JSON parse: " + std::string(e.what()));
    }
    return corpus_from_json(root);
}

}  // namespace drast
