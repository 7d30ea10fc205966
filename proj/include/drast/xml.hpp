#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drast/error.hpp"

// Minimal XML reader for the srcML dialect: elements, attributes, character
// data, comments, CDATA and the five predefined entities plus numeric
// references. Document order of mixed content is preserved, which is what the
// block extraction depends on. Not a general-purpose validator.

namespace drast::xml {

struct Element;

using Node = std::variant<Element, std::string>;  // string = character data

struct Element {
    std::string name;  // raw tag name, possibly prefixed ("cpp:define")
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Node> children;

    std::string_view local_name() const {
        auto pos = name.find(':');
        return pos == std::string::npos ? std::string_view(name)
                                        : std::string_view(name).substr(pos + 1);
    }
    std::string_view prefix() const {
        auto pos = name.find(':');
        return pos == std::string::npos ? std::string_view()
                                        : std::string_view(name).substr(0, pos);
    }

    const std::string* attribute(std::string_view key) const {
        for (const auto& [k, v] : attributes)
            if (k == key) return &v;
        return nullptr;
    }

    // Concatenated character data of this element only (no descendants).
    std::string own_text() const {
        std::string out;
        for (const auto& child : children)
            if (const auto* s = std::get_if<std::string>(&child)) out += *s;
        return out;
    }

    // Concatenated character data of the whole subtree, document order.
    std::string deep_text() const {
        std::string out;
        append_deep_text(out);
        return out;
    }

private:
    void append_deep_text(std::string& out) const {
        for (const auto& child : children) {
            if (const auto* s = std::get_if<std::string>(&child))
                out += *s;
            else
                std::get<Element>(child).append_deep_text(out);
        }
    }
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    Element parse_document() {
        skip_misc();
        if (eof() || peek() != '<')
            fail("expected a root element");
        Element root = parse_element();
        skip_misc();
        if (!eof()) fail("trailing content after the root element");
        return root;
    }

private:
    std::string_view in_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(errc::malformed_xml,
                    what + " at offset " + std::to_string(pos_));
    }

    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    bool starts_with(std::string_view s) const {
        return in_.substr(pos_, s.size()) == s;
    }
    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    // Whitespace, comments, PIs and DOCTYPE between markup.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!DOCTYPE")) {
                skip_until(">");
            } else {
                return;
            }
        }
    }

    void skip_until(std::string_view terminator) {
        auto at = in_.find(terminator, pos_);
        if (at == std::string_view::npos) fail("unterminated markup");
        pos_ = at + terminator.size();
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               c == '-' || c == '.' || c == ':';
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        if (pos_ == start) fail("expected a name");
        return std::string(in_.substr(start, pos_ - start));
    }

    std::string parse_attribute_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected a quoted value");
        char quote = peek();
        ++pos_;
        std::string out;
        while (!eof() && peek() != quote) {
            if (peek() == '&')
                out += parse_entity();
            else
                out += in_[pos_++];
        }
        expect(quote);
        return out;
    }

    std::string parse_entity() {
        expect('&');
        auto end = in_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 10) fail("unterminated entity");
        std::string_view body = in_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (body == "lt") return "<";
        if (body == "gt") return ">";
        if (body == "amp") return "&";
        if (body == "apos") return "'";
        if (body == "quot") return "\"";
        if (!body.empty() && body[0] == '#') {
            int base = 10;
            std::string_view digits = body.substr(1);
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits = digits.substr(1);
            }
            unsigned long cp = 0;
            if (digits.empty()) fail("empty character reference");
            for (char c : digits) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else fail("bad character reference");
                cp = cp * base + static_cast<unsigned long>(d);
            }
            return encode_utf8(cp);
        }
        fail("unknown entity '&" + std::string(body) + ";'");
    }

    static std::string encode_utf8(unsigned long cp) {
        std::string out;
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
        return out;
    }

    Element parse_element() {
        expect('<');
        Element el;
        el.name = parse_name();
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (peek() == '/') {
                ++pos_;
                expect('>');
                return el;  // self-closing
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string key = parse_name();
            skip_ws();
            expect('=');
            skip_ws();
            el.attributes.emplace_back(std::move(key), parse_attribute_value());
        }
        parse_content(el);
        return el;
    }

    void parse_content(Element& el) {
        std::string text;
        auto flush_text = [&] {
            if (!text.empty()) {
                el.children.emplace_back(std::move(text));
                text.clear();
            }
        };
        for (;;) {
            if (eof()) fail("unterminated element <" + el.name + ">");
            if (peek() == '<') {
                if (starts_with("</")) {
                    flush_text();
                    pos_ += 2;
                    std::string closing = parse_name();
                    if (closing != el.name)
                        fail("mismatched end tag </" + closing + "> for <" + el.name + ">");
                    skip_ws();
                    expect('>');
                    return;
                }
                if (starts_with("<!--")) {
                    flush_text();
                    skip_until("-->");
                    continue;
                }
                if (starts_with("<![CDATA[")) {
                    pos_ += 9;
                    auto end = in_.find("]]>", pos_);
                    if (end == std::string_view::npos) fail("unterminated CDATA");
                    text += in_.substr(pos_, end - pos_);
                    pos_ = end + 3;
                    continue;
                }
                if (starts_with("<?")) {
                    flush_text();
                    skip_until("?>");
                    continue;
                }
                flush_text();
                el.children.emplace_back(parse_element());
            } else if (peek() == '&') {
                text += parse_entity();
            } else {
                text += in_[pos_++];
            }
        }
    }
};

}  // namespace detail

inline Element parse(std::string_view document) {
    return detail::Parser(document).parse_document();
}

}  // namespace drast::xml
