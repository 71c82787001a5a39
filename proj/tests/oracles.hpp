#pragma once
// Reference implementations used only by tests. None of these call into the
// query engine, reasoner or validator they are used to check.

#include "cloudeng/rdf.hpp"
#include "cloudeng/vocab.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace cloudeng::oracle {

// Triples that subclass transitivity and type lifting must add to `g`,
// found by a depth-first walk up the asserted subClassOf edges.
inline std::set<Triple> bfs_entailments(const Graph& g) {
    const Term sub_class_of = vocab::rdfs::subClassOf;
    const Term type = vocab::rdf::type;
    std::map<Term, std::vector<Term>> supers;
    for (const auto& t : g)
        if (t.predicate() == sub_class_of && !t.object().is_literal()) supers[t.subject()].push_back(t.object());
    auto strictly_above = [&](const Term& start) {
        std::set<Term> reached;
        std::vector<Term> stack = supers[start];
        while (!stack.empty()) {
            Term c = stack.back();
            stack.pop_back();
            if (!reached.insert(c).second) continue;
            for (const auto& s : supers[c]) stack.push_back(s);
        }
        return reached;
    };
    std::set<Triple> out;
    for (const auto& [cls, direct] : supers)
        for (const auto& s : strictly_above(cls)) out.insert(Triple(cls, sub_class_of, s));
    for (const auto& t : g) {
        if (t.predicate() != type || t.object().is_literal()) continue;
        for (const auto& s : strictly_above(t.object())) out.insert(Triple(t.subject(), type, s));
    }
    std::set<Triple> missing;
    for (const auto& t : out)
        if (!g.contains(t)) missing.insert(t);
    return missing;
}

// Every term occurring anywhere in the graph.
inline std::vector<Term> all_terms(const Graph& g) {
    std::set<Term> terms;
    for (const auto& t : g) {
        terms.insert(t.subject());
        terms.insert(t.predicate());
        terms.insert(t.object());
    }
    return {terms.begin(), terms.end()};
}

// Enumerates every assignment of `variables` over the graph's terms and
// keeps those for which each substituted pattern is a stored triple.
// Rows are returned deduplicated and sorted.
inline std::vector<std::vector<Term>> brute_force_bgp(const Graph& g, const std::vector<TriplePattern>& patterns,
                                                      const std::vector<std::string>& variables) {
    auto terms = all_terms(g);
    std::set<std::vector<Term>> rows;
    if (variables.empty()) {
        bool ok = true;
        for (const auto& p : patterns) {
            const auto* s = std::get_if<Term>(&p.subject);
            const auto* pr = std::get_if<Term>(&p.predicate);
            const auto* o = std::get_if<Term>(&p.object);
            ok = ok && !s->is_literal() && pr->is_iri() && g.contains(Triple(*s, *pr, *o));
        }
        if (ok) rows.insert({});
        return {rows.begin(), rows.end()};
    }
    if (terms.empty()) return {};
    std::vector<std::size_t> index(variables.size(), 0);
    while (true) {
        std::map<std::string, Term> assignment;
        for (std::size_t i = 0; i < variables.size(); ++i) assignment.emplace(variables[i], terms[index[i]]);
        auto value = [&](const PatternSlot& slot) -> const Term& {
            if (const auto* t = std::get_if<Term>(&slot)) return *t;
            return assignment.at(std::get<Variable>(slot).name);
        };
        bool ok = true;
        for (const auto& p : patterns) {
            const Term& s = value(p.subject);
            const Term& pr = value(p.predicate);
            if (s.is_literal() || !pr.is_iri() || !g.contains(Triple(s, pr, value(p.object)))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<Term> row;
            for (const auto& v : variables) row.push_back(assignment.at(v));
            rows.insert(row);
        }
        std::size_t i = 0;
        while (i < index.size() && ++index[i] == terms.size()) index[i++] = 0;
        if (i == index.size()) break;
    }
    return {rows.begin(), rows.end()};
}

// Small random graphs over a tight vocabulary so that joins hit often.
struct RandomGraphs {
    explicit RandomGraphs(unsigned seed) : rng(seed) {}

    Term node() { return Term::iri("urn:n:" + std::to_string(pick(0, 5))); }
    Term predicate() { return Term::iri("urn:p:" + std::to_string(pick(0, 2))); }
    Term object() {
        if (pick(0, 6) == 0) return Term::literal("v" + std::to_string(pick(0, 1)));
        return node();
    }

    Graph graph(int max_triples) {
        Graph g;
        int n = pick(0, max_triples);
        for (int i = 0; i < n; ++i) g.insert(node(), predicate(), object());
        return g;
    }

    // 1..max_patterns patterns using at most `max_vars` distinct variables.
    std::vector<TriplePattern> bgp(int max_patterns, int max_vars) {
        static const char* kNames[] = {"x", "y", "z"};
        int vars = pick(1, max_vars);
        auto slot = [&](int kind) -> PatternSlot {
            if (pick(0, 1) == 0) return Variable(kNames[pick(0, vars - 1)]);
            return kind == 0 ? node() : kind == 1 ? predicate() : object();
        };
        std::vector<TriplePattern> out;
        int n = pick(1, max_patterns);
        for (int i = 0; i < n; ++i) out.push_back({slot(0), slot(1), slot(2)});
        return out;
    }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    std::mt19937 rng;
};

// SPARQL text for a pattern list; terms in N-Triples form.
inline std::string bgp_text(const std::vector<TriplePattern>& patterns) {
    std::string out;
    auto slot = [](const PatternSlot& s) {
        if (const auto* t = std::get_if<Term>(&s)) return t->key();
        return "?" + std::get<Variable>(s).name;
    };
    for (const auto& p : patterns) out += slot(p.subject) + " " + slot(p.predicate) + " " + slot(p.object) + " .\n";
    return out;
}

}  // namespace cloudeng::oracle
