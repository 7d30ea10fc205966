#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "drast/error.hpp"
#include "drast/xml.hpp"

// srcML consumption: one source file's XML unit becomes ordered code blocks
// plus a bag of code characteristics. C files split at function definitions;
// Java files split at imports, classes and functions. Tag tokens interleave
// with source identifiers the way the reference listings lay them out:
// C uses the abbreviated tags Decl/ArryDecl/FuncCall/ExprList, Java uses
// lowercase names (declaration/expression/call/arguments/parameters/...).
// Statement constructs outside those tables pass through as raw srcML names.

namespace drast {

enum class Language { C, Java };

inline std::string_view language_name(Language lang) {
    return lang == Language::C ? "c" : "java";
}

enum class BlockOrigin { Function, Class, Import, FileLevel };

inline std::string_view origin_name(BlockOrigin o) {
    switch (o) {
        case BlockOrigin::Function: return "function";
        case BlockOrigin::Class: return "class";
        case BlockOrigin::Import: return "import";
        default: return "file";
    }
}

struct CodeBlock {
    std::vector<std::string> tokens;
    BlockOrigin origin = BlockOrigin::FileLevel;
};

// Seven fixed categories for C (always all present), a single flat name list
// for Java.
struct CodeCharacteristics {
    bool categorized = false;
    std::vector<std::pair<std::string, std::vector<std::string>>> categories;
    std::vector<std::string> flat;

    std::vector<std::string> all_tokens() const {
        if (!categorized) return flat;
        std::vector<std::string> out;
        for (const auto& [name, tokens] : categories)
            out.insert(out.end(), tokens.begin(), tokens.end());
        return out;
    }
    bool empty() const {
        if (!categorized) return flat.empty();
        return std::all_of(categories.begin(), categories.end(),
                           [](const auto& c) { return c.second.empty(); });
    }
};

inline constexpr const char* kCCategories[] = {
    "function", "struct", "cpp", "macro", "identifier", "typedef", "union"};

struct SourceUnit {
    std::string path;
    Language language = Language::C;
    std::vector<CodeBlock> blocks;
    CodeCharacteristics characteristics;
};

namespace srcml_detail {

using xml::Element;
using xml::Node;

inline std::string trim_ws(std::string_view raw) {
    std::size_t begin = 0, end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    return std::string(raw.substr(begin, end - begin));
}

inline std::string collapse_ws(std::string_view raw) {
    std::string out;
    bool in_space = true;  // trims leading space
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out += ' ';
            in_space = false;
            out += c;
        }
    }
    return out;
}

inline bool has_element_children(const Element& el) {
    for (const auto& child : el.children)
        if (std::holds_alternative<Element>(child)) return true;
    return false;
}

// Leaf texts of every <name> descendant, document order. A <name> with no
// element children is a leaf.
inline void collect_name_leaves(const Element& el, std::vector<std::string>& out) {
    if (el.local_name() == "name" && !has_element_children(el)) {
        std::string text = trim_ws(el.own_text());
        if (!text.empty()) out.push_back(text);
        return;
    }
    for (const auto& child : el.children)
        if (const auto* e = std::get_if<Element>(&child)) collect_name_leaves(*e, out);
}

inline const Element* direct_child(const Element& el, std::string_view local) {
    for (const auto& child : el.children)
        if (const auto* e = std::get_if<Element>(&child))
            if (e->local_name() == local) return e;
    return nullptr;
}

inline bool contains_descendant(const Element& el, std::string_view local) {
    for (const auto& child : el.children) {
        if (const auto* e = std::get_if<Element>(&child)) {
            if (e->local_name() == local) return true;
            if (contains_descendant(*e, local)) return true;
        }
    }
    return false;
}

inline bool is_statement_tag(std::string_view local) {
    static constexpr std::string_view kTags[] = {
        "if_stmt", "for", "while", "do", "switch", "case", "default",
        "return", "break", "continue", "goto", "label"};
    return std::find(std::begin(kTags), std::end(kTags), local) != std::end(kTags);
}

inline bool is_block_root(std::string_view local, Language lang) {
    if (local == "function") return true;
    if (lang == Language::Java && (local == "class" || local == "import")) return true;
    return false;
}

// ---- block token emission -------------------------------------------------

struct BlockWalker {
    Language lang;
    std::vector<std::string>* out = nullptr;
    std::vector<const Element*>* nested_roots = nullptr;

    void emit(std::string token) {
        if (!token.empty()) out->push_back(std::move(token));
    }

    void walk_children(const Element& el) {
        for (const auto& child : el.children)
            if (const auto* e = std::get_if<Element>(&child)) visit(*e);
    }

    void visit(const Element& el) {
        std::string_view local = el.local_name();
        if (is_block_root(local, lang)) {  // nested construct -> its own block
            nested_roots->push_back(&el);
            return;
        }
        if (el.prefix() == "cpp") return;  // preprocessor lines are not block content
        if (local == "comment") return;
        if (lang == Language::C)
            visit_c(el, local);
        else
            visit_java(el, local);
    }

    void visit_c(const Element& el, std::string_view local) {
        if (local == "decl") {
            emit("Decl");
            if (const Element* name = direct_child(el, "name");
                name && contains_descendant(*name, "index"))
                emit("ArryDecl");
            walk_children(el);
        } else if (local == "call") {
            emit("FuncCall");
            walk_children(el);
        } else if (local == "argument_list") {
            emit("ExprList");
            walk_children(el);
        } else if (local == "type") {
            emit(collapse_ws(el.deep_text()));
        } else if (local == "name") {
            visit_name(el);
        } else if (local == "literal") {
            emit(trim_ws(el.own_text()));
        } else if (local == "operator" || local == "modifier" || local == "specifier") {
            // silent in block vectors
        } else if (is_statement_tag(local)) {
            emit(std::string(local));
            walk_children(el);
        } else {
            walk_children(el);
        }
    }

    void visit_java(const Element& el, std::string_view local) {
        if (local == "decl_stmt") {
            emit("declaration");
            walk_children(el);
        } else if (local == "expr_stmt") {
            emit("expression");
            walk_children(el);
        } else if (local == "argument") {
            emit("expression");
            walk_children(el);
        } else if (local == "call") {
            emit("call");
            walk_children(el);
        } else if (local == "argument_list") {
            emit("arguments");
            walk_children(el);
        } else if (local == "parameter_list") {
            emit("parameters");
            walk_children(el);
        } else if (local == "type") {
            emit("type");
            walk_children(el);
        } else if (local == "block") {
            emit("block");
            walk_children(el);
        } else if (local == "name") {
            visit_name(el);
        } else if (local == "specifier") {
            emit(trim_ws(el.own_text()));
        } else if (local == "init") {
            // initializer subtrees are not part of Java block vectors
        } else if (local == "literal" || local == "operator" || local == "modifier") {
            // silent
        } else if (is_statement_tag(local)) {
            emit(std::string(local));
            walk_children(el);
        } else {
            walk_children(el);
        }
    }

    // Compound names: leaf parts become tokens, index expressions are walked,
    // joining operators vanish.
    void visit_name(const Element& el) {
        if (!has_element_children(el)) {
            emit(trim_ws(el.own_text()));
            return;
        }
        for (const auto& child : el.children) {
            if (const auto* e = std::get_if<Element>(&child)) {
                if (e->local_name() == "name")
                    visit_name(*e);
                else if (e->local_name() == "index")
                    walk_children(*e);
            }
        }
    }
};

inline void collect_blocks(const Element& el, Language lang,
                           std::vector<CodeBlock>& blocks);

// Emits the block for one construct root and queues nested roots found inside.
inline void extract_block(const Element& root, Language lang,
                          std::vector<CodeBlock>& blocks) {
    CodeBlock block;
    std::vector<const Element*> nested;
    BlockWalker walker{lang, &block.tokens, &nested};

    std::string_view local = root.local_name();
    if (local == "function") {
        block.origin = BlockOrigin::Function;
        if (lang == Language::C) {
            // C blocks carry the body only; the signature feeds characteristics.
            if (const Element* body = direct_child(root, "block"))
                walker.walk_children(*body);
        } else {
            walker.emit("function");
            walker.walk_children(root);
        }
    } else if (local == "class") {
        block.origin = BlockOrigin::Class;
        walker.emit("class");
        walker.walk_children(root);
    } else if (local == "import") {
        block.origin = BlockOrigin::Import;
        walker.emit("import");
        walker.walk_children(root);
    }
    blocks.push_back(std::move(block));
    for (const Element* nested_root : nested) collect_blocks(*nested_root, lang, blocks);
}

inline void collect_blocks(const Element& el, Language lang,
                           std::vector<CodeBlock>& blocks) {
    if (is_block_root(el.local_name(), lang)) {
        extract_block(el, lang, blocks);
        return;
    }
    for (const auto& child : el.children)
        if (const auto* e = std::get_if<Element>(&child))
            collect_blocks(*e, lang, blocks);
}

// ---- characteristics -------------------------------------------------------

struct CWalker {
    std::vector<std::string>* function;
    std::vector<std::string>* strct;
    std::vector<std::string>* cpp;
    std::vector<std::string>* macro;
    std::vector<std::string>* identifier;
    std::vector<std::string>* typdef;
    std::vector<std::string>* unn;

    void visit(const Element& el) {
        if (el.prefix() == "cpp") {
            collect_name_leaves(el, *cpp);
            return;
        }
        std::string_view local = el.local_name();
        if (local == "comment") return;
        if (local == "type") return;  // type names are not identifiers
        if (local == "function" || local == "function_decl") {
            claim_direct_name(el, *function);
            walk_rest(el);
        } else if (local == "call") {
            claim_call_name(el);
            walk_rest(el);
        } else if (local == "struct" || local == "struct_decl") {
            claim_direct_name(el, *strct);
            walk_rest(el);
        } else if (local == "union" || local == "union_decl") {
            claim_direct_name(el, *unn);
            walk_rest(el);
        } else if (local == "typedef") {
            claim_direct_name(el, *typdef);
            walk_rest(el);
        } else if (local == "macro") {
            claim_direct_name(el, *macro);
            walk_rest(el);
        } else if (local == "name") {
            collect_name_leaves(el, *identifier);
        } else {
            for (const auto& child : el.children)
                if (const auto* e = std::get_if<Element>(&child)) visit(*e);
        }
    }

    // Walks children except the construct's own direct <name>.
    void walk_rest(const Element& el) {
        const Element* own = direct_child(el, "name");
        for (const auto& child : el.children) {
            if (const auto* e = std::get_if<Element>(&child)) {
                if (e == own) continue;
                visit(*e);
            }
        }
    }

    void claim_direct_name(const Element& el, std::vector<std::string>& into) {
        if (const Element* name = direct_child(el, "name"))
            collect_name_leaves(*name, into);
    }

    // For a call the last leaf of the name is the function; any qualifying
    // leaves before it (object, chain) count as identifiers.
    void claim_call_name(const Element& el) {
        const Element* name = direct_child(el, "name");
        if (!name) return;
        std::vector<std::string> leaves;
        collect_name_leaves(*name, leaves);
        if (leaves.empty()) return;
        for (std::size_t i = 0; i + 1 < leaves.size(); ++i)
            identifier->push_back(leaves[i]);
        function->push_back(leaves.back());
    }
};

struct JavaCharWalker {
    std::vector<std::string>* names;

    void visit(const Element& el) {
        std::string_view local = el.local_name();
        if (local == "comment" || local == "init") return;
        if (local == "name" && !has_element_children(el)) {
            std::string text = trim_ws(el.own_text());
            if (!text.empty()) names->push_back(text);
            return;
        }
        for (const auto& child : el.children)
            if (const auto* e = std::get_if<Element>(&child)) visit(*e);
    }
};

inline CodeCharacteristics characteristics_of(const Element& unit, Language lang) {
    CodeCharacteristics chars;
    if (lang == Language::C) {
        chars.categorized = true;
        for (const char* cat : kCCategories) chars.categories.emplace_back(cat, std::vector<std::string>{});
        CWalker walker{&chars.categories[0].second, &chars.categories[1].second,
                       &chars.categories[2].second, &chars.categories[3].second,
                       &chars.categories[4].second, &chars.categories[5].second,
                       &chars.categories[6].second};
        for (const auto& child : unit.children)
            if (const auto* e = std::get_if<Element>(&child)) walker.visit(*e);
    } else {
        JavaCharWalker walker{&chars.flat};
        for (const auto& child : unit.children)
            if (const auto* e = std::get_if<Element>(&child)) walker.visit(*e);
    }
    return chars;
}

inline const Element& validated_unit(const Element& root, Language expected) {
    if (root.local_name() != "unit")
        throw Error(errc::malformed_xml,
                    "top-level element is <" + root.name + ">, expected <unit>");
    const std::string* lang_attr = root.attribute("language");
    if (!lang_attr)
        throw Error(errc::unsupported_language, "unit has no language attribute");
    Language actual;
    if (*lang_attr == "C") actual = Language::C;
    else if (*lang_attr == "Java") actual = Language::Java;
    else
        throw Error(errc::unsupported_language,
                    "unit language '" + *lang_attr + "' is neither C nor Java");
    if (actual != expected)
        throw Error(errc::unsupported_language,
                    "unit language '" + *lang_attr + "' does not match the requested language");
    return root;
}

}  // namespace srcml_detail

inline SourceUnit parse_srcml_unit(std::string_view xml_document, Language language) {
    xml::Element root = xml::parse(xml_document);
    const xml::Element& unit = srcml_detail::validated_unit(root, language);
    SourceUnit out;
    out.language = language;
    if (const std::string* file = unit.attribute("filename")) out.path = *file;
    srcml_detail::collect_blocks(unit, language, out.blocks);
    out.characteristics = srcml_detail::characteristics_of(unit, language);
    return out;
}

inline CodeCharacteristics extract_characteristics(std::string_view xml_document,
                                                   Language language) {
    xml::Element root = xml::parse(xml_document);
    const xml::Element& unit = srcml_detail::validated_unit(root, language);
    return srcml_detail::characteristics_of(unit, language);
}

}  // namespace drast
