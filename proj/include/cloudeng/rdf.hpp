#pragma once
// In-memory RDF: terms, triples, an indexed graph with set semantics,
// prefix maps, triple patterns and blank-node-aware graph comparison.
//
// Terms are ordered and compared by their N-Triples serialization, which
// gives every result in the toolkit a reproducible order.

#include "cloudeng/error.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cloudeng {

inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

// Absolute IRI, compared byte for byte.
class Iri {
public:
    explicit Iri(std::string value) : value_(std::move(value)) {
        if (value_.empty()) throw std::invalid_argument("IRI must not be empty");
        for (char c : value_) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '>' || c == '"')
                throw std::invalid_argument("IRI contains a forbidden character: " + value_);
        }
    }

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const Iri&, const Iri&) = default;
    friend auto operator<=>(const Iri&, const Iri&) = default;

private:
    std::string value_;
};

enum class TermKind { Iri, BlankNode, Literal };

namespace detail {

inline void append_escaped_literal(std::string& out, std::string_view lexical) {
    for (char c : lexical) {
        switch (c) {
            case '"':  out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:   out += c;
        }
    }
}

}  // namespace detail

// One of IRI | blank node | literal. Equality and ordering use the
// N-Triples form, so two literals are equal iff lexical and datatype match.
class Term {
public:
    Term(const Iri& iri) : kind_(TermKind::Iri), value_(iri.str()) { key_ = "<" + value_ + ">"; }  // NOLINT

    static Term blank(std::string label) {
        if (label.empty()) throw std::invalid_argument("blank node label must not be empty");
        Term t(TermKind::BlankNode, std::move(label), {});
        t.key_ = "_:" + t.value_;
        return t;
    }

    static Term literal(std::string lexical, const Iri& datatype = Iri(std::string(kXsdString))) {
        Term t(TermKind::Literal, std::move(lexical), datatype.str());
        t.key_ = "\"";
        detail::append_escaped_literal(t.key_, t.value_);
        t.key_ += '"';
        if (t.datatype_ != kXsdString) t.key_ += "^^<" + t.datatype_ + ">";
        return t;
    }

    static Term iri(std::string value) { return Term(Iri(std::move(value))); }

    TermKind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
    bool is_blank() const noexcept { return kind_ == TermKind::BlankNode; }
    bool is_literal() const noexcept { return kind_ == TermKind::Literal; }

    // IRI string, blank label, or literal lexical form.
    const std::string& value() const noexcept { return value_; }
    // Empty unless the term is a literal.
    const std::string& datatype() const noexcept { return datatype_; }
    // N-Triples serialization.
    const std::string& key() const noexcept { return key_; }

    Iri as_iri() const {
        if (!is_iri()) throw std::logic_error("term is not an IRI: " + key_);
        return Iri(value_);
    }

    friend bool operator==(const Term& a, const Term& b) noexcept { return a.key_ == b.key_; }
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
        return a.key_ <=> b.key_;
    }

private:
    Term(TermKind kind, std::string value, std::string datatype)
        : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)) {}

    TermKind kind_;
    std::string value_;
    std::string datatype_;
    std::string key_;
};

inline const Iri& rdf_type() {
    static const Iri type{std::string(kRdfType)};
    return type;
}

class Triple {
public:
    Triple(Term subject, Term predicate, Term object)
        : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
        if (subject_.is_literal())
            throw std::invalid_argument("triple subject must be an IRI or blank node: " + subject_.key());
        if (!predicate_.is_iri())
            throw std::invalid_argument("triple predicate must be an IRI: " + predicate_.key());
    }

    const Term& subject() const noexcept { return subject_; }
    const Term& predicate() const noexcept { return predicate_; }
    const Term& object() const noexcept { return object_; }

    std::string str() const { return subject_.key() + " " + predicate_.key() + " " + object_.key() + " ."; }

    friend bool operator==(const Triple&, const Triple&) = default;
    friend std::strong_ordering operator<=>(const Triple& a, const Triple& b) noexcept {
        if (auto c = a.subject_ <=> b.subject_; c != 0) return c;
        if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
        return a.object_ <=> b.object_;
    }

private:
    Term subject_;
    Term predicate_;
    Term object_;
};

// ---------------------------------------------------------------------------
// Patterns

struct Variable {
    std::string name;

    explicit Variable(std::string n) : name(std::move(n)) {
        if (name.empty()) throw std::invalid_argument("variable name must not be empty");
    }
    friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternSlot = std::variant<Term, Variable>;
using Binding = std::map<std::string, Term>;

struct TriplePattern {
    PatternSlot subject;
    PatternSlot predicate;
    PatternSlot object;

    friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

inline const Term* slot_term(const PatternSlot& slot) { return std::get_if<Term>(&slot); }
inline const Variable* slot_variable(const PatternSlot& slot) { return std::get_if<Variable>(&slot); }

// Replaces variables bound in `binding` by their values.
inline PatternSlot substitute(const PatternSlot& slot, const Binding& binding) {
    if (const auto* var = slot_variable(slot)) {
        if (auto it = binding.find(var->name); it != binding.end()) return it->second;
    }
    return slot;
}

inline TriplePattern substitute(const TriplePattern& p, const Binding& binding) {
    return {substitute(p.subject, binding), substitute(p.predicate, binding), substitute(p.object, binding)};
}

// Extends `seed` so that pattern and triple agree, or returns nullopt.
inline std::optional<Binding> unify(const TriplePattern& pattern, const Triple& triple, Binding seed = {}) {
    auto bind = [&seed](const PatternSlot& slot, const Term& value) {
        if (const auto* term = slot_term(slot)) return *term == value;
        const auto& name = std::get<Variable>(slot).name;
        auto [it, inserted] = seed.try_emplace(name, value);
        return inserted || it->second == value;
    };
    if (bind(pattern.subject, triple.subject()) && bind(pattern.predicate, triple.predicate()) &&
        bind(pattern.object, triple.object()))
        return seed;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Graph

class Graph {
public:
    using const_iterator = std::set<Triple>::const_iterator;

    Graph() = default;
    Graph(const Graph& other) { *this = other; }
    Graph& operator=(const Graph& other) {
        if (this != &other) {
            clear();
            for (const auto& t : other) insert(t);
        }
        return *this;
    }
    // Moving a std::set keeps its nodes, so the index pointers stay valid.
    Graph(Graph&&) noexcept = default;
    Graph& operator=(Graph&&) noexcept = default;

    // Returns true iff the triple was not already present.
    bool insert(const Triple& triple) {
        auto [it, inserted] = triples_.insert(triple);
        if (!inserted) return false;
        const Triple* ptr = &*it;
        by_subject_[ptr->subject()].push_back(ptr);
        by_predicate_[ptr->predicate()].push_back(ptr);
        by_object_[ptr->object()].push_back(ptr);
        return true;
    }

    bool insert(Term s, Term p, Term o) { return insert(Triple(std::move(s), std::move(p), std::move(o))); }

    bool erase(const Triple& triple) {
        auto it = triples_.find(triple);
        if (it == triples_.end()) return false;
        const Triple* ptr = &*it;
        unindex(by_subject_, ptr->subject(), ptr);
        unindex(by_predicate_, ptr->predicate(), ptr);
        unindex(by_object_, ptr->object(), ptr);
        triples_.erase(it);
        return true;
    }

    void insert_all(const Graph& other) {
        for (const auto& t : other) insert(t);
    }

    void clear() {
        by_subject_.clear();
        by_predicate_.clear();
        by_object_.clear();
        triples_.clear();
    }

    bool contains(const Triple& triple) const { return triples_.count(triple) != 0; }
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }
    const_iterator begin() const noexcept { return triples_.begin(); }
    const_iterator end() const noexcept { return triples_.end(); }

    // Triples unifying with `pattern`, sorted by (subject, predicate, object).
    std::vector<Triple> match(const TriplePattern& pattern) const {
        std::vector<Triple> out;
        const std::vector<const Triple*>* candidates = nullptr;
        bool bound_somewhere = false;
        auto narrow = [&](const PatternSlot& slot, const Index& index) {
            const auto* term = slot_term(slot);
            if (!term) return;
            bound_somewhere = true;
            auto it = index.find(*term);
            if (it == index.end()) {
                static const std::vector<const Triple*> kNone;
                candidates = &kNone;
            } else if (!candidates || it->second.size() < candidates->size()) {
                candidates = &it->second;
            }
        };
        narrow(pattern.subject, by_subject_);
        narrow(pattern.predicate, by_predicate_);
        narrow(pattern.object, by_object_);

        if (!bound_somewhere) {
            for (const auto& t : triples_)
                if (unify(pattern, t)) out.push_back(t);
            return out;
        }
        for (const Triple* t : *candidates)
            if (unify(pattern, *t)) out.push_back(*t);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Term> objects(const Term& subject, const Term& predicate) const {
        std::vector<Term> out;
        for (const auto& t : match({subject, predicate, Variable("o")})) out.push_back(t.object());
        return out;
    }

    std::vector<Term> subjects(const Term& predicate, const Term& object) const {
        std::vector<Term> out;
        for (const auto& t : match({Variable("s"), predicate, object})) out.push_back(t.subject());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool has_type(const Term& node, const Term& type) const {
        return contains(Triple(node, rdf_type(), type));
    }

    std::set<Term> blank_nodes() const {
        std::set<Term> out;
        for (const auto& t : triples_) {
            if (t.subject().is_blank()) out.insert(t.subject());
            if (t.object().is_blank()) out.insert(t.object());
        }
        return out;
    }

    // Every indexed triple is stored and every stored triple is indexed
    // exactly once per position.
    bool verify_indexes() const {
        auto check = [this](const Index& index, auto position) {
            std::size_t total = 0;
            for (const auto& [key, list] : index) {
                if (list.empty()) return false;
                for (const Triple* t : list) {
                    if (!(position(*t) == key) || !contains(*t) || &*triples_.find(*t) != t) return false;
                }
                total += list.size();
            }
            return total == triples_.size();
        };
        return check(by_subject_, [](const Triple& t) -> const Term& { return t.subject(); }) &&
               check(by_predicate_, [](const Triple& t) -> const Term& { return t.predicate(); }) &&
               check(by_object_, [](const Triple& t) -> const Term& { return t.object(); });
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

private:
    using Index = std::map<Term, std::vector<const Triple*>>;

    static void unindex(Index& index, const Term& key, const Triple* ptr) {
        auto it = index.find(key);
        if (it == index.end()) return;
        auto& list = it->second;
        list.erase(std::remove(list.begin(), list.end(), ptr), list.end());
        if (list.empty()) index.erase(it);
    }

    std::set<Triple> triples_;
    Index by_subject_;
    Index by_predicate_;
    Index by_object_;
};

// ---------------------------------------------------------------------------
// Prefixes

// Characters allowed in a local name: letters, digits, '_', ':', '-', '.'
// and any non-ASCII byte. '-' and '.' may not lead, '.' may not trail.
inline bool is_local_name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == ':' || c == '-' || c == '.' || u >= 0x80;
}

inline bool is_valid_local_name(std::string_view local) {
    if (local.empty()) return true;
    if (local.front() == '-' || local.front() == '.' || local.back() == '.') return false;
    return std::all_of(local.begin(), local.end(), is_local_name_char);
}

inline bool is_valid_prefix_label(std::string_view label) {
    if (label.empty()) return true;
    auto alpha = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
    };
    if (!alpha(label.front()) || label.back() == '.') return false;
    return std::all_of(label.begin(), label.end(), [](char c) { return c != ':' && is_local_name_char(c); });
}

class PrefixMap {
public:
    // Rebinding an existing label replaces its namespace in place.
    void bind(std::string label, Iri ns) {
        for (auto& [existing, value] : bindings_) {
            if (existing == label) {
                value = std::move(ns);
                return;
            }
        }
        bindings_.emplace_back(std::move(label), std::move(ns));
    }

    std::optional<Iri> namespace_of(std::string_view label) const {
        for (const auto& [existing, value] : bindings_)
            if (existing == label) return value;
        return std::nullopt;
    }

    Iri expand(std::string_view qname) const {
        auto colon = qname.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("not a prefixed name: " + std::string(qname));
        auto label = qname.substr(0, colon);
        auto ns = namespace_of(label);
        if (!ns) throw UnknownPrefixError(std::string(label));
        return Iri(ns->str() + std::string(qname.substr(colon + 1)));
    }

    // Prefixed form using the longest matching namespace.
    std::optional<std::string> compact(const Iri& iri) const {
        const std::pair<std::string, Iri>* best = nullptr;
        for (const auto& binding : bindings_) {
            const auto& ns = binding.second.str();
            if (iri.str().size() >= ns.size() && iri.str().compare(0, ns.size(), ns) == 0 &&
                (!best || ns.size() > best->second.str().size()))
                best = &binding;
        }
        if (!best) return std::nullopt;
        return best->first + ":" + iri.str().substr(best->second.str().size());
    }

    // Renders an IRI as a prefixed name when possible, else as <iri>.
    std::string shorten(const Iri& iri) const {
        if (auto q = compact(iri); q && is_valid_local_name(q->substr(q->find(':') + 1))) return *q;
        return "<" + iri.str() + ">";
    }

    std::string shorten(const Term& term) const {
        if (term.is_iri()) return shorten(term.as_iri());
        return term.key();
    }

    // Bindings in order of first declaration.
    const std::vector<std::pair<std::string, Iri>>& bindings() const noexcept { return bindings_; }
    std::size_t size() const noexcept { return bindings_.size(); }
    bool empty() const noexcept { return bindings_.empty(); }

private:
    std::vector<std::pair<std::string, Iri>> bindings_;
};

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

class BlankMatcher {
public:
    BlankMatcher(const Graph& a, const Graph& b) : a_(a), b_(b) {}

    bool run() {
        if (a_.size() != b_.size()) return false;
        auto blanks_a = a_.blank_nodes();
        auto blanks_b = b_.blank_nodes();
        if (blanks_a.size() != blanks_b.size()) return false;

        for (const auto& t : a_)
            if (!t.subject().is_blank() && !t.object().is_blank() && !b_.contains(t)) return false;

        refine_colors(blanks_a, blanks_b);
        for (const auto& n : blanks_a) order_.push_back(n);
        std::map<std::size_t, std::size_t> class_size;
        for (const auto& [node, color] : color_b_) ++class_size[color];
        for (const auto& n : blanks_a) {
            auto it = class_size.find(color_a_[n]);
            if (it == class_size.end()) return false;
        }
        std::stable_sort(order_.begin(), order_.end(), [&](const Term& x, const Term& y) {
            return class_size[color_a_[x]] < class_size[color_a_[y]];
        });
        for (const auto& n : blanks_b) candidates_[color_b_[n]].push_back(n);
        return search(0);
    }

private:
    // Iterated colour refinement over both graphs with a shared palette.
    void refine_colors(const std::set<Term>& blanks_a, const std::set<Term>& blanks_b) {
        for (const auto& n : blanks_a) color_a_[n] = 0;
        for (const auto& n : blanks_b) color_b_[n] = 0;
        std::size_t classes = 1;
        for (std::size_t round = 0; round <= blanks_a.size(); ++round) {
            std::map<std::string, std::size_t> palette;
            auto signature = [](const Graph& g, const Term& n, const std::map<Term, std::size_t>& colors) {
                auto label = [&](const Term& t) {
                    return t.is_blank() ? "#" + std::to_string(colors.at(t)) : t.key();
                };
                std::vector<std::string> edges;
                for (const auto& t : g.match({n, Variable("p"), Variable("o")}))
                    edges.push_back("out " + t.predicate().key() + " " + label(t.object()));
                for (const auto& t : g.match({Variable("s"), Variable("p"), n}))
                    edges.push_back("in " + t.predicate().key() + " " + label(t.subject()));
                std::sort(edges.begin(), edges.end());
                std::string sig = "#" + std::to_string(colors.at(n));
                for (auto& e : edges) sig += "|" + e;
                return sig;
            };
            std::map<Term, std::string> sig_a, sig_b;
            for (const auto& n : blanks_a) sig_a[n] = signature(a_, n, color_a_);
            for (const auto& n : blanks_b) sig_b[n] = signature(b_, n, color_b_);
            for (auto& [n, s] : sig_a) palette.try_emplace(s, palette.size());
            for (auto& [n, s] : sig_b) palette.try_emplace(s, palette.size());
            for (auto& [n, s] : sig_a) color_a_[n] = palette[s];
            for (auto& [n, s] : sig_b) color_b_[n] = palette[s];
            if (palette.size() == classes) break;
            classes = palette.size();
        }
    }

    Term map_term(const Term& t) const {
        if (!t.is_blank()) return t;
        return mapping_.at(t);
    }

    bool consistent(const Term& node) const {
        auto mapped = [this](const Term& t) { return !t.is_blank() || mapping_.count(t) != 0; };
        for (const auto& t : a_.match({node, Variable("p"), Variable("o")}))
            if (mapped(t.object()) && !b_.contains(Triple(map_term(t.subject()), t.predicate(), map_term(t.object()))))
                return false;
        for (const auto& t : a_.match({Variable("s"), Variable("p"), node}))
            if (mapped(t.subject()) && !b_.contains(Triple(map_term(t.subject()), t.predicate(), map_term(t.object()))))
                return false;
        return true;
    }

    bool search(std::size_t depth) {
        if (depth == order_.size()) return true;
        const Term& node = order_[depth];
        for (const auto& candidate : candidates_[color_a_[node]]) {
            if (used_.count(candidate)) continue;
            mapping_.emplace(node, candidate);
            used_.insert(candidate);
            if (consistent(node) && search(depth + 1)) return true;
            mapping_.erase(node);
            used_.erase(candidate);
        }
        return false;
    }

    const Graph& a_;
    const Graph& b_;
    std::map<Term, std::size_t> color_a_;
    std::map<Term, std::size_t> color_b_;
    std::vector<Term> order_;
    std::map<std::size_t, std::vector<Term>> candidates_;
    std::map<Term, Term> mapping_;
    std::set<Term> used_;
};

}  // namespace detail

// True iff some bijection between blank nodes maps `a` exactly onto `b`.
inline bool isomorphic(const Graph& a, const Graph& b) {
    return detail::BlankMatcher(a, b).run();
}

}  // namespace cloudeng
