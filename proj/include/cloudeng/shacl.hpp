#pragma once
// SHACL subset: sh:NodeShape with sh:targetClass and sh:property constraints
// on a single predicate path (sh:minCount, sh:maxCount, sh:class,
// sh:message). Every result has Violation severity.

#include "cloudeng/error.hpp"
#include "cloudeng/rdf.hpp"
#include "cloudeng/rdfs.hpp"
#include "cloudeng/turtle.hpp"
#include "cloudeng/vocab.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cloudeng {

class ShapeError : public Error {
public:
    using Error::Error;
};

struct PropertyConstraintSpec {
    Iri path;
    std::optional<std::size_t> min_count;
    std::optional<std::size_t> max_count;
    std::optional<Iri> class_constraint;
    std::optional<std::string> message;
};

struct NodeShapeSpec {
    Iri shape_iri;
    std::vector<Iri> target_classes;  // sorted, non-empty
    std::vector<PropertyConstraintSpec> property_constraints;
};

enum class ConstraintKind { MinCount, MaxCount, Class };

inline std::string_view to_string(ConstraintKind kind) {
    switch (kind) {
        case ConstraintKind::MinCount: return "MinCount";
        case ConstraintKind::MaxCount: return "MaxCount";
        case ConstraintKind::Class:    return "Class";
    }
    return "Unknown";
}

struct ValidationResult {
    Term focus;
    Iri path;
    Iri shape;
    ConstraintKind constraint;
    std::string message;
    // Number of values for cardinality results, the offending value for Class.
    std::variant<std::size_t, Term> observed;
};

struct ValidationReport {
    bool conforms = true;
    std::vector<ValidationResult> results;
};

// Expands a class to the classes whose instances count as its instances.
using ClassExpander = std::function<std::set<Term>(const Graph&, const Term&)>;

namespace detail {

inline std::size_t parse_count(const Term& shape, const Term& value, std::string_view name) {
    std::size_t n = 0;
    const auto& lex = value.value();
    auto [ptr, ec] = std::from_chars(lex.data(), lex.data() + lex.size(), n);
    if (!value.is_literal() || lex.empty() || ec != std::errc() || ptr != lex.data() + lex.size())
        throw ShapeError("shape " + shape.key() + ": " + std::string(name) + " must be a non-negative integer, got " +
                         value.key());
    return n;
}

inline std::optional<Term> single_object(const Graph& g, const Term& node, const Iri& predicate, const Term& shape) {
    auto values = g.objects(node, predicate);
    if (values.empty()) return std::nullopt;
    if (values.size() > 1)
        throw ShapeError("shape " + shape.key() + ": more than one <" + predicate.str() + "> on " + node.key());
    return values.front();
}

}  // namespace detail

// One spec per subject typed sh:NodeShape, in term order.
inline std::vector<NodeShapeSpec> parse_shapes(const Document& doc) {
    using namespace vocab;
    const Graph& g = doc.graph;
    std::vector<NodeShapeSpec> shapes;
    for (const auto& shape : g.subjects(rdf::type, sh::NodeShape)) {
        if (!shape.is_iri()) throw ShapeError("node shapes must be IRIs, got " + shape.key());
        NodeShapeSpec spec{shape.as_iri(), {}, {}};
        for (const auto& target : g.objects(shape, sh::targetClass)) {
            if (!target.is_iri()) throw ShapeError("shape " + shape.key() + ": sh:targetClass must be an IRI");
            spec.target_classes.push_back(target.as_iri());
        }
        if (spec.target_classes.empty()) throw ShapeError("shape " + shape.key() + " has no sh:targetClass");

        for (const auto& node : g.objects(shape, sh::property)) {
            if (node.is_literal()) throw ShapeError("shape " + shape.key() + ": sh:property must be a node");
            auto path = detail::single_object(g, node, sh::path, shape);
            if (!path) throw ShapeError("shape " + shape.key() + ": property constraint without sh:path");
            if (!path->is_iri()) throw ShapeError("shape " + shape.key() + ": sh:path must be a predicate IRI");
            PropertyConstraintSpec pc{path->as_iri(), {}, {}, {}, {}};
            if (auto v = detail::single_object(g, node, sh::minCount, shape))
                pc.min_count = detail::parse_count(shape, *v, "sh:minCount");
            if (auto v = detail::single_object(g, node, sh::maxCount, shape))
                pc.max_count = detail::parse_count(shape, *v, "sh:maxCount");
            if (pc.min_count && pc.max_count && *pc.min_count > *pc.max_count)
                throw ShapeError("shape " + shape.key() + ": sh:minCount exceeds sh:maxCount");
            if (auto v = detail::single_object(g, node, sh::class_, shape)) {
                if (!v->is_iri()) throw ShapeError("shape " + shape.key() + ": sh:class must be an IRI");
                pc.class_constraint = v->as_iri();
            }
            if (auto v = detail::single_object(g, node, sh::message, shape)) {
                if (!v->is_literal()) throw ShapeError("shape " + shape.key() + ": sh:message must be a literal");
                pc.message = v->value();
            }
            spec.property_constraints.push_back(std::move(pc));
        }
        shapes.push_back(std::move(spec));
    }
    return shapes;
}

// Focus nodes of a shape: subjects typed with a target class or a subclass.
inline std::set<Term> focus_nodes(const Graph& data, const NodeShapeSpec& shape, const ClassExpander& expand) {
    std::set<Term> out;
    for (const auto& target : shape.target_classes)
        for (const auto& cls : expand(data, target))
            for (const auto& s : data.subjects(vocab::rdf::type, cls)) out.insert(s);
    return out;
}

inline ValidationReport validate(const Graph& data, const std::vector<NodeShapeSpec>& shapes,
                                 const ClassExpander& expand = subclasses_of) {
    ValidationReport report;
    for (const auto& shape : shapes) {
        for (const auto& focus : focus_nodes(data, shape, expand)) {
            for (const auto& pc : shape.property_constraints) {
                auto values = data.objects(focus, pc.path);
                auto add = [&](ConstraintKind kind, std::string fallback, std::variant<std::size_t, Term> observed) {
                    report.results.push_back({focus, pc.path, shape.shape_iri, kind,
                                              pc.message.value_or(std::move(fallback)), std::move(observed)});
                };
                if (pc.min_count && values.size() < *pc.min_count)
                    add(ConstraintKind::MinCount,
                        "Expected at least " + std::to_string(*pc.min_count) + " value(s) for <" + pc.path.str() +
                            ">, found " + std::to_string(values.size()),
                        values.size());
                if (pc.max_count && values.size() > *pc.max_count)
                    add(ConstraintKind::MaxCount,
                        "Expected at most " + std::to_string(*pc.max_count) + " value(s) for <" + pc.path.str() +
                            ">, found " + std::to_string(values.size()),
                        values.size());
                if (pc.class_constraint) {
                    auto classes = expand(data, *pc.class_constraint);
                    for (const auto& v : values) {
                        bool ok = std::any_of(classes.begin(), classes.end(),
                                              [&](const Term& c) { return data.has_type(v, c); });
                        if (!ok)
                            add(ConstraintKind::Class,
                                "Value " + v.key() + " is not an instance of <" + pc.class_constraint->str() + ">", v);
                    }
                }
            }
        }
    }
    auto observed_key = [](const std::variant<std::size_t, Term>& o) {
        if (const auto* n = std::get_if<std::size_t>(&o)) return std::to_string(*n);
        return std::get<Term>(o).key();
    };
    std::sort(report.results.begin(), report.results.end(), [&](const ValidationResult& a, const ValidationResult& b) {
        if (a.focus != b.focus) return a.focus < b.focus;
        if (a.path != b.path) return a.path < b.path;
        if (a.shape != b.shape) return a.shape < b.shape;
        if (a.constraint != b.constraint) return a.constraint < b.constraint;
        return observed_key(a.observed) < observed_key(b.observed);
    });
    report.conforms = report.results.empty();
    return report;
}

inline nlohmann::ordered_json to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["conforms"] = report.conforms;
    auto results = nlohmann::ordered_json::array();
    for (const auto& r : report.results) {
        nlohmann::ordered_json item;
        item["focusNode"] = r.focus.is_iri() ? r.focus.value() : r.focus.key();
        item["resultPath"] = r.path.str();
        item["sourceShape"] = r.shape.str();
        item["message"] = r.message;
        item["constraint"] = std::string(to_string(r.constraint));
        results.push_back(std::move(item));
    }
    j["results"] = std::move(results);
    return j;
}

inline std::string render_report(const ValidationReport& report, const PrefixMap& prefixes) {
    std::string out = report.conforms ? "Conforms: true\n" : "Conforms: false\n";
    for (const auto& r : report.results) {
        std::string observed = std::holds_alternative<std::size_t>(r.observed)
                                   ? std::to_string(std::get<std::size_t>(r.observed))
                                   : prefixes.shorten(std::get<Term>(r.observed));
        out += "Violation [" + std::string(to_string(r.constraint)) + "] focus=" + prefixes.shorten(r.focus) +
               " path=" + prefixes.shorten(r.path) + " shape=" + prefixes.shorten(r.shape) + " observed=" + observed +
               ": " + r.message + "\n";
    }
    out += std::to_string(report.results.size()) + (report.results.size() == 1 ? " violation\n" : " violations\n");
    return out;
}

}  // namespace cloudeng
