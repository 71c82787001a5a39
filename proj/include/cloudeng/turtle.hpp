#pragma once
// Turtle reader and writer for the subset used by the Cloud Engine model and
// its SHACL shapes:
//
//   @prefix directives, <IRIREF> (with \u / \U escapes), prefixed names,
//   the `a` keyword, `;` and `,` lists, [ ... ] blank node property lists,
//   _:label blank nodes, "double quoted" strings and integer literals.
//
// @base, relative IRIs, long strings, language tags, ^^ datatypes,
// decimals, booleans and collections are rejected with UnexpectedToken.

#include "cloudeng/error.hpp"
#include "cloudeng/rdf.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cloudeng {

struct Document {
    Graph graph;
    PrefixMap prefixes;
};

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
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
}

inline bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Byte cursor with line/column reporting, shared by the Turtle and query readers.
class Cursor {
public:
    explicit Cursor(std::string_view input) : in_(input) {}

    bool eof() const { return pos_ >= in_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0'; }
    bool has(std::size_t ahead) const { return pos_ + ahead < in_.size(); }
    char get() { return in_[pos_++]; }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t pos) { pos_ = pos; }
    std::string_view slice(std::size_t from, std::size_t to) const { return in_.substr(from, to - from); }

    // Skips whitespace and `#` comments.
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (is_ws(c)) {
                ++pos_;
            } else if (c == '#') {
                while (!eof() && peek() != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(std::size_t offset, ParseErrorKind kind, std::string detail) const {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset && i < in_.size(); ++i) {
            if (in_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(line, column, kind, std::move(detail));
    }

    [[noreturn]] void unexpected(std::size_t offset, std::string_view expected) const {
        std::string found = offset < in_.size() ? "'" + std::string(1, in_[offset]) + "'" : "end of input";
        fail(offset, ParseErrorKind::UnexpectedToken, "expected " + std::string(expected) + ", found " + found);
    }

    void expect(char c, std::string_view what) {
        if (peek() != c || eof()) unexpected(pos_, what);
        ++pos_;
    }

    // <...> with \u and \U escapes; the result must be absolute.
    Iri read_iriref() {
        const std::size_t start = pos_;
        ++pos_;
        std::string value;
        while (true) {
            if (eof() || is_ws(peek())) fail(start, ParseErrorKind::UnterminatedIri, "IRI is not closed by '>'");
            char c = get();
            if (c == '>') break;
            if (c == '<' || c == '"') fail(pos_ - 1, ParseErrorKind::UnexpectedToken, "character not allowed in IRI");
            if (c == '\\') {
                std::size_t digits = peek() == 'u' ? 4 : peek() == 'U' ? 8 : 0;
                if (digits == 0) fail(pos_ - 1, ParseErrorKind::BadEscape, "only \\u and \\U escapes are allowed in IRIs");
                std::uint32_t cp = 0;
                for (std::size_t i = 1; i <= digits; ++i) {
                    char h = peek(i);
                    int v = is_digit(h) ? h - '0' : (h >= 'a' && h <= 'f') ? h - 'a' + 10 : (h >= 'A' && h <= 'F') ? h - 'A' + 10 : -1;
                    if (v < 0 || !has(i)) fail(pos_ - 1, ParseErrorKind::BadEscape, "malformed numeric escape");
                    cp = cp * 16 + static_cast<std::uint32_t>(v);
                }
                if (cp > 0x10FFFF || cp <= 0x20 || cp == '<' || cp == '>' || cp == '"')
                    fail(pos_ - 1, ParseErrorKind::BadEscape, "escape denotes a character not allowed in IRIs");
                append_utf8(value, cp);
                pos_ += digits + 1;
                continue;
            }
            value += c;
        }
        auto colon = value.find(':');
        bool scheme_ok = colon != std::string::npos && colon > 0 &&
                         ((value[0] >= 'a' && value[0] <= 'z') || (value[0] >= 'A' && value[0] <= 'Z'));
        for (std::size_t i = 0; scheme_ok && i < colon; ++i) {
            char c = value[i];
            scheme_ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) || c == '+' || c == '-' || c == '.';
        }
        if (!scheme_ok) fail(start, ParseErrorKind::UnexpectedToken, "relative IRIs are not supported: <" + value + ">");
        return Iri(std::move(value));
    }

    // "..." with \" \\ \n \t \r escapes.
    std::string read_string() {
        const std::size_t start = pos_;
        if (peek(1) == '"' && peek(2) == '"') fail(start, ParseErrorKind::UnexpectedToken, "long strings are not supported");
        ++pos_;
        std::string value;
        while (true) {
            if (eof() || peek() == '\n' || peek() == '\r')
                fail(start, ParseErrorKind::UnterminatedString, "string is not closed on its line");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                char e = peek();
                switch (e) {
                    case '"':  value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n':  value += '\n'; break;
                    case 't':  value += '\t'; break;
                    case 'r':  value += '\r'; break;
                    default:   fail(pos_ - 1, ParseErrorKind::BadEscape, "unsupported string escape");
                }
                ++pos_;
                continue;
            }
            value += c;
        }
        return value;
    }

    // Scans a run of name characters where '.' is kept only when more name
    // characters follow it. Stops before anything else.
    std::string_view scan_name(bool allow_colon) {
        const std::size_t start = pos_;
        while (!eof()) {
            char c = peek();
            if (c == ':' && !allow_colon) break;
            if (c == '.') {
                std::size_t run = 0;
                while (peek(run) == '.' && has(run)) ++run;
                char after = peek(run);
                if (has(run) && is_local_name_char(after) && after != '.' && (allow_colon || after != ':')) {
                    pos_ += run;
                    continue;
                }
                break;
            }
            if (!is_local_name_char(c)) break;
            ++pos_;
        }
        return in_.substr(start, pos_ - start);
    }

    // Local part of a prefixed name, cursor just past the ':'.
    std::string read_local_name() {
        const std::size_t start = pos_;
        if (peek() == '-' || (peek() == '.' && is_local_name_char(peek(1)) && has(1)))
            fail(start, ParseErrorKind::BadLocalName, "local name may not start with '" + std::string(1, peek()) + "'");
        std::string local(scan_name(true));
        if (!eof() && (peek() == '\\' || peek() == '%'))
            fail(pos_, ParseErrorKind::BadLocalName, "escapes in local names are not supported");
        return local;
    }

private:
    std::string_view in_;
    std::size_t pos_ = 0;
};

class TurtleReader {
public:
    explicit TurtleReader(std::string_view input) : cur_(input) {}

    Document read() {
        while (true) {
            cur_.skip_ws();
            if (cur_.eof()) break;
            if (cur_.peek() == '@') {
                directive();
                continue;
            }
            statement();
        }
        return std::move(doc_);
    }

private:
    void directive() {
        const std::size_t at = cur_.pos();
        cur_.get();
        std::size_t word_start = cur_.pos();
        while (!cur_.eof() && ((cur_.peek() >= 'a' && cur_.peek() <= 'z') || (cur_.peek() >= 'A' && cur_.peek() <= 'Z')))
            cur_.get();
        auto word = cur_.slice(word_start, cur_.pos());
        if (word != "prefix") {
            cur_.fail(at, ParseErrorKind::UnexpectedToken,
                      word.empty() ? "stray '@'" : "unsupported directive '@" + std::string(word) + "'");
        }
        cur_.skip_ws();
        const std::size_t label_start = cur_.pos();
        std::string label(cur_.scan_name(false));
        if (cur_.peek() != ':' || cur_.eof()) cur_.unexpected(cur_.pos(), "':' after prefix label");
        if (!is_valid_prefix_label(label)) cur_.fail(label_start, ParseErrorKind::UnexpectedToken, "invalid prefix label");
        cur_.get();
        cur_.skip_ws();
        if (cur_.peek() != '<' || cur_.eof()) cur_.unexpected(cur_.pos(), "namespace IRI");
        Iri ns = cur_.read_iriref();
        cur_.skip_ws();
        cur_.expect('.', "'.' after @prefix directive");
        doc_.prefixes.bind(std::move(label), std::move(ns));
    }

    void statement() {
        cur_.skip_ws();
        if (cur_.peek() == '[') {
            Term node = blank_property_list();
            cur_.skip_ws();
            if (cur_.peek() != '.') predicate_object_list(node);
        } else {
            Term subject = read_subject();
            cur_.skip_ws();
            predicate_object_list(subject);
        }
        cur_.skip_ws();
        cur_.expect('.', "'.' at end of statement");
    }

    Term fresh_blank() { return Term::blank("b" + std::to_string(++blank_counter_)); }

    Term labeled_blank() {
        const std::size_t start = cur_.pos();
        cur_.get();
        cur_.get();
        std::string label(cur_.scan_name(false));
        if (label.empty()) cur_.fail(start, ParseErrorKind::UnexpectedToken, "empty blank node label");
        auto it = labeled_.find(label);
        if (it == labeled_.end()) it = labeled_.emplace(label, fresh_blank()).first;
        return it->second;
    }

    Term read_subject() {
        char c = cur_.peek();
        if (c == '<') return cur_.read_iriref();
        if (c == '_' && cur_.peek(1) == ':') return labeled_blank();
        return read_name("subject");
    }

    // Prefixed name, or the keyword `a` when `allow_a`.
    Term read_name(std::string_view role, bool allow_a = false) {
        const std::size_t start = cur_.pos();
        char c = cur_.peek();
        bool label_start = c == ':' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
        if (cur_.eof() || !label_start) cur_.unexpected(start, role);
        std::string label(cur_.scan_name(false));
        if (cur_.peek() != ':' || cur_.eof()) {
            if (allow_a && label == "a") return rdf_type();
            cur_.fail(start, ParseErrorKind::UnexpectedToken, "unsupported token '" + label + "' where " + std::string(role) + " was expected");
        }
        if (!is_valid_prefix_label(label)) cur_.fail(start, ParseErrorKind::UnexpectedToken, "invalid prefix label '" + label + "'");
        auto ns = doc_.prefixes.namespace_of(label);
        if (!ns) cur_.fail(start, ParseErrorKind::UnknownPrefix, "prefix '" + label + ":' is not declared");
        cur_.get();
        std::string local = cur_.read_local_name();
        return Iri(ns->str() + local);
    }

    Term read_verb() {
        if (cur_.peek() == '<') return cur_.read_iriref();
        return read_name("predicate", true);
    }

    Term read_object() {
        const std::size_t start = cur_.pos();
        char c = cur_.peek();
        if (cur_.eof()) cur_.unexpected(start, "object");
        if (c == '<') return cur_.read_iriref();
        if (c == '[') return blank_property_list();
        if (c == '_' && cur_.peek(1) == ':') return labeled_blank();
        if (c == '"') {
            std::string lexical = cur_.read_string();
            if (cur_.peek() == '@' && !cur_.eof()) cur_.fail(cur_.pos(), ParseErrorKind::UnexpectedToken, "language tags are not supported");
            if (cur_.peek() == '^' && !cur_.eof()) cur_.fail(cur_.pos(), ParseErrorKind::UnexpectedToken, "datatyped literals are not supported");
            return Term::literal(std::move(lexical));
        }
        if (detail::is_digit(c) || ((c == '+' || c == '-') && detail::is_digit(cur_.peek(1)))) return read_integer();
        return read_name("object");
    }

    Term read_integer() {
        const std::size_t start = cur_.pos();
        if (cur_.peek() == '+' || cur_.peek() == '-') cur_.get();
        while (!cur_.eof() && detail::is_digit(cur_.peek())) cur_.get();
        char next = cur_.peek();
        if (!cur_.eof() && ((next == '.' && detail::is_digit(cur_.peek(1))) || next == 'e' || next == 'E'))
            cur_.fail(start, ParseErrorKind::UnexpectedToken, "decimal and double literals are not supported");
        return Term::literal(std::string(cur_.slice(start, cur_.pos())), Iri(std::string(kXsdInteger)));
    }

    Term blank_property_list() {
        cur_.get();
        Term node = fresh_blank();
        cur_.skip_ws();
        if (cur_.peek() == ']') {
            cur_.get();
            return node;
        }
        predicate_object_list(node);
        cur_.skip_ws();
        cur_.expect(']', "']' closing blank node");
        return node;
    }

    void predicate_object_list(const Term& subject) {
        while (true) {
            Term verb = read_verb();
            cur_.skip_ws();
            object_list(subject, verb);
            cur_.skip_ws();
            if (cur_.peek() != ';' || cur_.eof()) return;
            while (cur_.peek() == ';' && !cur_.eof()) {
                cur_.get();
                cur_.skip_ws();
            }
            char c = cur_.peek();
            if (cur_.eof() || c == '.' || c == ']') return;
        }
    }

    void object_list(const Term& subject, const Term& verb) {
        while (true) {
            Term object = read_object();
            doc_.graph.insert(subject, verb, std::move(object));
            cur_.skip_ws();
            if (cur_.peek() != ',' || cur_.eof()) return;
            cur_.get();
            cur_.skip_ws();
        }
    }

    Cursor cur_;
    Document doc_;
    std::size_t blank_counter_ = 0;
    std::map<std::string, Term> labeled_;
};

inline void append_iri(std::string& out, const Iri& iri, const PrefixMap& prefixes) {
    std::string s = prefixes.shorten(iri);
    if (s.front() != '<') {
        out += s;
        return;
    }
    for (char c : s) {
        if (c == '\\') out += "\\u005C";
        else out += c;
    }
}

class TurtleWriter {
public:
    explicit TurtleWriter(const Document& doc) : doc_(doc) {}

    std::string write() {
        std::string out;
        auto sorted = doc_.prefixes.bindings();
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [label, ns] : sorted) {
            out += "@prefix " + label + ": ";
            append_iri(out, ns, PrefixMap{});
            out += " .\n";
        }

        plan_blank_nodes();
        std::vector<Term> subjects;
        for (const auto& t : doc_.graph)
            if (subjects.empty() || !(subjects.back() == t.subject())) subjects.push_back(t.subject());

        bool first = true;
        for (const auto& subject : subjects) {
            if (inline_.count(subject)) continue;
            if (!first || !sorted.empty()) out += "\n";
            first = false;
            write_term(out, subject, 0);
            out += "\n";
            write_properties(out, subject, 1);
            out += " .\n";
        }
        return out;
    }

private:
    // Blank nodes used exactly once as an object are written inline as
    // [ ... ], except where that would form a cycle.
    void plan_blank_nodes() {
        std::map<Term, std::size_t> refs;
        std::map<Term, Term> parent;
        for (const auto& t : doc_.graph) {
            if (t.object().is_blank()) {
                ++refs[t.object()];
                parent.insert_or_assign(t.object(), t.subject());
            }
        }
        for (const auto& [node, count] : refs)
            if (count == 1 && !(parent.at(node) == node)) inline_.insert(node);
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = inline_.begin(); it != inline_.end(); ++it) {
                std::set<Term> seen{*it};
                Term cursor = parent.at(*it);
                while (inline_.count(cursor) && !seen.count(cursor)) {
                    seen.insert(cursor);
                    cursor = parent.at(cursor);
                }
                if (seen.count(cursor)) {
                    inline_.erase(it);
                    changed = true;
                    break;
                }
            }
        }
        std::size_t n = 0;
        for (const auto& node : doc_.graph.blank_nodes())
            if (!inline_.count(node)) labels_.emplace(node, "_:b" + std::to_string(++n));
    }

    void write_term(std::string& out, const Term& term, int depth) {
        switch (term.kind()) {
            case TermKind::Iri:
                append_iri(out, term.as_iri(), doc_.prefixes);
                return;
            case TermKind::BlankNode:
                if (inline_.count(term)) {
                    if (doc_.graph.match({term, Variable("p"), Variable("o")}).empty()) {
                        out += "[]";
                        return;
                    }
                    out += "[\n";
                    write_properties(out, term, depth + 1);
                    out += "\n" + std::string(static_cast<std::size_t>(depth) * 4, ' ') + "]";
                    return;
                }
                out += labels_.at(term);
                return;
            case TermKind::Literal:
                if (term.datatype() == kXsdInteger && is_integer_lexical(term.value())) {
                    out += term.value();
                } else {
                    out += '"';
                    append_escaped_literal(out, term.value());
                    out += '"';
                    if (term.datatype() != kXsdString) {
                        out += "^^";
                        append_iri(out, Iri(term.datatype()), doc_.prefixes);
                    }
                }
                return;
        }
    }

    static bool is_integer_lexical(std::string_view s) {
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), detail::is_digit);
    }

    void write_properties(std::string& out, const Term& subject, int depth) {
        const std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
        auto triples = doc_.graph.match({subject, Variable("p"), Variable("o")});
        std::stable_partition(triples.begin(), triples.end(),
                              [](const Triple& t) { return t.predicate() == Term(rdf_type()); });
        for (std::size_t i = 0; i < triples.size();) {
            const Term& predicate = triples[i].predicate();
            if (i) out += " ;\n";
            out += indent;
            if (predicate == Term(rdf_type())) out += "a";
            else write_term(out, predicate, depth);
            out += " ";
            bool first_object = true;
            for (; i < triples.size() && triples[i].predicate() == predicate; ++i) {
                if (!first_object) out += ", ";
                first_object = false;
                write_term(out, triples[i].object(), depth);
            }
        }
    }

    const Document& doc_;
    std::set<Term> inline_;
    std::map<Term, std::string> labels_;
};

}  // namespace detail

inline Document parse_turtle(std::string_view input) { return detail::TurtleReader(input).read(); }

inline Document parse_turtle(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_turtle(std::string_view(text));
}

// Deterministic output: prefixes by label, subjects, predicates and objects
// in term order, with rdf:type first.
inline std::string serialize_turtle(const Document& doc) { return detail::TurtleWriter(doc).write(); }

}  // namespace cloudeng
