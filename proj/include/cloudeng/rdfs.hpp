#pragma once
// RDFS materialization restricted to subclass reasoning:
//   R1  x subClassOf y, y subClassOf z  =>  x subClassOf z
//   R2  i type C, C subClassOf D        =>  i type D
// Reflexivity is answered by subclasses_of() and never written as triples.
// rdfs:domain / rdfs:range are not used for entailment.

#include "cloudeng/rdf.hpp"
#include "cloudeng/vocab.hpp"

#include <cstddef>
#include <deque>
#include <set>
#include <vector>

namespace cloudeng {

struct ClosureResult {
    Graph graph;  // asserted plus inferred
    std::size_t inferred_count = 0;
    std::size_t iterations = 0;
};

namespace detail {

inline std::vector<Triple> apply_subclass_rules(const Graph& g) {
    const Term sub_class_of = vocab::rdfs::subClassOf;
    const Term type = vocab::rdf::type;
    std::vector<Triple> fresh;
    for (const auto& axiom : g.match({Variable("x"), sub_class_of, Variable("y")})) {
        const Term& super = axiom.object();
        if (super.is_literal()) continue;
        for (const auto& up : g.match({super, sub_class_of, Variable("z")})) {
            Triple t(axiom.subject(), sub_class_of, up.object());
            if (!g.contains(t)) fresh.push_back(std::move(t));
        }
        for (const auto& member : g.match({Variable("i"), type, axiom.subject()})) {
            Triple t(member.subject(), type, super);
            if (!g.contains(t)) fresh.push_back(std::move(t));
        }
    }
    return fresh;
}

}  // namespace detail

// Least fixpoint of R1 and R2 over `asserted`. Terminates on cyclic
// hierarchies since the set of derivable triples is finite.
inline ClosureResult materialize(const Graph& asserted) {
    ClosureResult result;
    result.graph = asserted;
    while (true) {
        ++result.iterations;
        auto fresh = detail::apply_subclass_rules(result.graph);
        std::size_t added = 0;
        for (const auto& t : fresh) added += result.graph.insert(t) ? 1 : 0;
        if (added == 0) break;
    }
    result.inferred_count = result.graph.size() - asserted.size();
    return result;
}

// `cls` together with every class that reaches it through subClassOf edges.
inline std::set<Term> subclasses_of(const Graph& graph, const Term& cls) {
    const Term sub_class_of = vocab::rdfs::subClassOf;
    std::set<Term> seen{cls};
    std::deque<Term> queue{cls};
    while (!queue.empty()) {
        Term current = queue.front();
        queue.pop_front();
        for (const auto& sub : graph.subjects(sub_class_of, current))
            if (seen.insert(sub).second) queue.push_back(sub);
    }
    return seen;
}

// True if `node` is typed with `cls` or one of its subclasses.
inline bool is_instance_of(const Graph& graph, const Term& node, const Term& cls) {
    for (const auto& c : subclasses_of(graph, cls))
        if (graph.has_type(node, c)) return true;
    return false;
}

}  // namespace cloudeng
