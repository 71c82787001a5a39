#pragma once
// SELECT queries over basic graph patterns with nested FILTER EXISTS /
// FILTER NOT EXISTS. Anything else (OPTIONAL, UNION, ORDER BY, expression
// filters, ...) is rejected by the parser.
//
// Evaluation is a left-to-right nested-loop join seeded from Graph::match();
// filters see the outer bindings (correlated semantics).

#include "cloudeng/error.hpp"
#include "cloudeng/rdf.hpp"
#include "cloudeng/turtle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cloudeng {

enum class FilterPolarity { Exists, NotExists };

struct Filter;

struct GraphPattern {
    std::vector<TriplePattern> triples;
    std::vector<Filter> filters;
};

struct Filter {
    FilterPolarity polarity;
    GraphPattern inner;
};

struct Query {
    PrefixMap prefixes;
    bool select_all = false;
    std::vector<std::string> projection;  // empty when select_all
    GraphPattern where;

    // Variables of the outer triple patterns in order of first appearance.
    std::vector<std::string> pattern_variables() const {
        std::vector<std::string> out;
        auto add = [&out](const PatternSlot& slot) {
            if (const auto* v = slot_variable(slot))
                if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
        };
        for (const auto& tp : where.triples) {
            add(tp.subject);
            add(tp.predicate);
            add(tp.object);
        }
        return out;
    }

    std::vector<std::string> result_variables() const { return select_all ? pattern_variables() : projection; }
};

struct SolutionTable {
    std::vector<std::string> variables;
    std::vector<std::vector<Term>> rows;  // aligned with variables

    friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

namespace detail {

inline std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

class QueryReader {
public:
    explicit QueryReader(std::string_view input) : cur_(input) {}

    Query read() {
        while (true) {
            cur_.skip_ws();
            const std::size_t at = cur_.pos();
            std::string word = upper(peek_word());
            if (word == "PREFIX") {
                take_word();
                prefix_decl();
            } else if (word == "SELECT") {
                take_word();
                break;
            } else {
                cur_.fail(at, ParseErrorKind::UnexpectedToken,
                          word.empty() ? "expected PREFIX or SELECT" : "unsupported query form '" + word + "'");
            }
        }
        select_clause();
        cur_.skip_ws();
        if (upper(peek_word()) == "WHERE") take_word();
        cur_.skip_ws();
        query_.where = group();
        cur_.skip_ws();
        if (!cur_.eof()) {
            std::string word = peek_word();
            cur_.fail(cur_.pos(), ParseErrorKind::UnexpectedToken,
                      word.empty() ? "unexpected input after query" : "unsupported clause '" + upper(word) + "'");
        }
        check_projection();
        return std::move(query_);
    }

private:
    static bool word_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

    std::string peek_word() const {
        std::size_t n = 0;
        while (cur_.has(n) && word_char(cur_.peek(n))) ++n;
        return std::string(n ? cur_.slice(cur_.pos(), cur_.pos() + n) : std::string_view{});
    }

    void take_word() {
        while (!cur_.eof() && word_char(cur_.peek())) cur_.get();
    }

    void prefix_decl() {
        cur_.skip_ws();
        const std::size_t start = cur_.pos();
        std::string label(cur_.scan_name(false));
        if (cur_.peek() != ':' || cur_.eof()) cur_.unexpected(cur_.pos(), "':' after prefix label");
        if (!is_valid_prefix_label(label)) cur_.fail(start, ParseErrorKind::UnexpectedToken, "invalid prefix label");
        cur_.get();
        cur_.skip_ws();
        if (cur_.peek() != '<' || cur_.eof()) cur_.unexpected(cur_.pos(), "namespace IRI");
        query_.prefixes.bind(std::move(label), cur_.read_iriref());
    }

    void select_clause() {
        cur_.skip_ws();
        if (upper(peek_word()) == "DISTINCT") {
            take_word();
            cur_.skip_ws();
        }
        if (cur_.peek() == '*' && !cur_.eof()) {
            cur_.get();
            query_.select_all = true;
            return;
        }
        while (cur_.peek() == '?' || cur_.peek() == '$') {
            projection_positions_.push_back(cur_.pos());
            std::string name = variable();
            if (std::find(query_.projection.begin(), query_.projection.end(), name) == query_.projection.end())
                query_.projection.push_back(name);
            else
                projection_positions_.pop_back();
            cur_.skip_ws();
        }
        if (query_.projection.empty()) cur_.unexpected(cur_.pos(), "projection variables or '*'");
    }

    void check_projection() {
        auto bound = query_.pattern_variables();
        for (std::size_t i = 0; i < query_.projection.size(); ++i) {
            if (std::find(bound.begin(), bound.end(), query_.projection[i]) == bound.end())
                cur_.fail(projection_positions_[i], ParseErrorKind::UnexpectedToken,
                          "projected variable ?" + query_.projection[i] + " does not occur in the WHERE pattern");
        }
    }

    std::string variable() {
        const std::size_t start = cur_.pos();
        cur_.get();
        std::string name;
        while (!cur_.eof()) {
            char c = cur_.peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
                name += cur_.get();
            } else {
                break;
            }
        }
        if (name.empty()) cur_.fail(start, ParseErrorKind::UnexpectedToken, "empty variable name");
        return name;
    }

    GraphPattern group() {
        cur_.expect('{', "'{'");
        GraphPattern gp;
        bool need_separator = false;
        while (true) {
            cur_.skip_ws();
            if (cur_.eof()) cur_.unexpected(cur_.pos(), "'}'");
            char c = cur_.peek();
            if (c == '}') {
                cur_.get();
                return gp;
            }
            if (c == '.') {
                if (!need_separator) cur_.unexpected(cur_.pos(), "triple pattern");
                cur_.get();
                need_separator = false;
                continue;
            }
            std::string word = upper(peek_word());
            if (word == "FILTER") {
                take_word();
                gp.filters.push_back(filter());
                need_separator = false;
                continue;
            }
            if (need_separator) cur_.unexpected(cur_.pos(), "'.' between triple patterns");
            static const std::set<std::string> kUnsupported = {"OPTIONAL", "UNION", "MINUS", "BIND", "VALUES",
                                                               "GRAPH", "SERVICE", "SELECT"};
            if (kUnsupported.count(word))
                cur_.fail(cur_.pos(), ParseErrorKind::UnexpectedToken, "unsupported keyword '" + word + "'");
            triples_same_subject(gp);
            need_separator = true;
        }
    }

    Filter filter() {
        cur_.skip_ws();
        const std::size_t at = cur_.pos();
        std::string word = upper(peek_word());
        FilterPolarity polarity = FilterPolarity::Exists;
        if (word == "NOT") {
            take_word();
            cur_.skip_ws();
            word = upper(peek_word());
            polarity = FilterPolarity::NotExists;
        }
        if (word != "EXISTS")
            cur_.fail(at, ParseErrorKind::UnexpectedToken, "only FILTER EXISTS and FILTER NOT EXISTS are supported");
        take_word();
        cur_.skip_ws();
        return Filter{polarity, group()};
    }

    void triples_same_subject(GraphPattern& gp) {
        PatternSlot subject = slot("subject");
        while (true) {
            cur_.skip_ws();
            PatternSlot predicate = slot("predicate", true);
            while (true) {
                cur_.skip_ws();
                gp.triples.push_back({subject, predicate, slot("object")});
                cur_.skip_ws();
                if (cur_.peek() != ',' || cur_.eof()) break;
                cur_.get();
            }
            if (cur_.peek() != ';' || cur_.eof()) return;
            while (cur_.peek() == ';' && !cur_.eof()) {
                cur_.get();
                cur_.skip_ws();
            }
            char c = cur_.peek();
            if (cur_.eof() || c == '.' || c == '}') return;
        }
    }

    PatternSlot slot(std::string_view role, bool predicate = false) {
        const std::size_t start = cur_.pos();
        char c = cur_.peek();
        if (cur_.eof()) cur_.unexpected(start, role);
        if (c == '?' || c == '$') return Variable(variable());
        if (c == '<') return Term(cur_.read_iriref());
        bool object = role == "object";
        if (c == '"') {
            if (!object) cur_.fail(start, ParseErrorKind::UnexpectedToken, "literal not allowed as " + std::string(role));
            std::string lexical = cur_.read_string();
            if (!cur_.eof() && (cur_.peek() == '@' || cur_.peek() == '^'))
                cur_.fail(cur_.pos(), ParseErrorKind::UnexpectedToken, "language tags and datatypes are not supported");
            return Term::literal(std::move(lexical));
        }
        if (object && (is_digit(c) || ((c == '+' || c == '-') && is_digit(cur_.peek(1))))) {
            if (c == '+' || c == '-') cur_.get();
            while (!cur_.eof() && is_digit(cur_.peek())) cur_.get();
            if (!cur_.eof() && cur_.peek() == '.' && is_digit(cur_.peek(1)))
                cur_.fail(start, ParseErrorKind::UnexpectedToken, "decimal literals are not supported");
            return Term::literal(std::string(cur_.slice(start, cur_.pos())), Iri(std::string(kXsdInteger)));
        }
        bool label_start = c == ':' || std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
        if (!label_start) cur_.unexpected(start, role);
        std::string label(cur_.scan_name(false));
        if (cur_.peek() != ':' || cur_.eof()) {
            if (predicate && label == "a") return Term(rdf_type());
            cur_.fail(start, ParseErrorKind::UnexpectedToken, "unsupported token '" + label + "' where " + std::string(role) + " was expected");
        }
        auto ns = query_.prefixes.namespace_of(label);
        if (!ns) cur_.fail(start, ParseErrorKind::UnknownPrefix, "prefix '" + label + ":' is not declared");
        cur_.get();
        return Term(Iri(ns->str() + cur_.read_local_name()));
    }

    Cursor cur_;
    Query query_;
    std::vector<std::size_t> projection_positions_;
};

inline std::vector<Binding> solve(const GraphPattern& gp, const Graph& graph, const Binding& seed) {
    std::vector<Binding> current{seed};
    for (const auto& tp : gp.triples) {
        std::vector<Binding> next;
        for (const auto& b : current) {
            TriplePattern bound = substitute(tp, b);
            for (const auto& t : graph.match(bound))
                if (auto extended = unify(bound, t, b)) next.push_back(std::move(*extended));
        }
        current = std::move(next);
        if (current.empty()) return current;
    }
    for (const auto& f : gp.filters) {
        std::vector<Binding> kept;
        for (auto& b : current) {
            bool found = !solve(f.inner, graph, b).empty();
            if (found == (f.polarity == FilterPolarity::Exists)) kept.push_back(std::move(b));
        }
        current = std::move(kept);
    }
    return current;
}

}  // namespace detail

inline Query parse_query(std::string_view input) { return detail::QueryReader(input).read(); }

// Projected, deduplicated rows sorted by their serialized terms.
inline SolutionTable evaluate(const Query& query, const Graph& graph) {
    SolutionTable table;
    table.variables = query.result_variables();
    std::set<std::vector<Term>> rows;
    for (const auto& b : detail::solve(query.where, graph, {})) {
        std::vector<Term> row;
        row.reserve(table.variables.size());
        for (const auto& v : table.variables) row.push_back(b.at(v));
        rows.insert(std::move(row));
    }
    table.rows.assign(rows.begin(), rows.end());
    return table;
}

inline nlohmann::ordered_json term_to_json(const Term& term) {
    nlohmann::ordered_json j;
    switch (term.kind()) {
        case TermKind::Iri: j["type"] = "iri"; break;
        case TermKind::BlankNode: j["type"] = "bnode"; break;
        case TermKind::Literal: j["type"] = "literal"; break;
    }
    j["value"] = term.value();
    if (term.is_literal() && term.datatype() != kXsdString) j["datatype"] = term.datatype();
    return j;
}

inline nlohmann::ordered_json to_json(const SolutionTable& table) {
    nlohmann::ordered_json j;
    j["head"]["vars"] = table.variables;
    auto bindings = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json b = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) b[table.variables[i]] = term_to_json(row[i]);
        bindings.push_back(std::move(b));
    }
    j["results"]["bindings"] = std::move(bindings);
    return j;
}

// Plain-text table with IRIs shortened against `prefixes`.
inline std::string render_table(const SolutionTable& table, const PrefixMap& prefixes) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header;
    for (const auto& v : table.variables) header.push_back("?" + v);
    cells.push_back(header);
    for (const auto& row : table.rows) {
        std::vector<std::string> line;
        for (const auto& t : row) line.push_back(prefixes.shorten(t));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(table.variables.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

    std::string out;
    auto emit = [&](const std::vector<std::string>& line) {
        std::string text;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) text += " | ";
            text += line[i];
            if (i + 1 < line.size()) text += std::string(width[i] - line[i].size(), ' ');
        }
        out += text + "\n";
    };
    if (!table.variables.empty()) {
        emit(cells.front());
        std::string rule;
        for (std::size_t i = 0; i < width.size(); ++i) rule += (i ? "-+-" : "") + std::string(width[i], '-');
        out += rule + "\n";
        for (std::size_t r = 1; r < cells.size(); ++r) emit(cells[r]);
    }
    out += "(" + std::to_string(table.rows.size()) + (table.rows.size() == 1 ? " row)\n" : " rows)\n");
    return out;
}

}  // namespace cloudeng
