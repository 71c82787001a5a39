#include "cloudeng/rdf.hpp"
#include "cloudeng/turtle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

namespace cloudeng {
namespace {

using namespace cloudeng::testing;

// Linear-scan oracle for pattern matching.
std::vector<Triple> scan_match(const Graph& g, const TriplePattern& p) {
    std::vector<Triple> all(g.begin(), g.end());
    std::vector<Triple> out;
    for (const auto& t : all) {
        Binding b;
        auto slot_ok = [&b](const PatternSlot& slot, const Term& value) {
            if (const auto* term = std::get_if<Term>(&slot)) return *term == value;
            const auto& name = std::get<Variable>(slot).name;
            if (b.count(name)) return b.at(name) == value;
            b.emplace(name, value);
            return true;
        };
        if (slot_ok(p.subject, t.subject()) && slot_ok(p.predicate, t.predicate()) && slot_ok(p.object, t.object()))
            out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct RandomTriples {
    explicit RandomTriples(unsigned seed) : rng(seed) {}

    Term node() {
        std::uniform_int_distribution<int> pick(0, 9);
        int n = pick(rng);
        if (n < 2) return Term::blank("n" + std::to_string(n));
        return Term::iri("urn:n:" + std::to_string(n));
    }
    Term predicate() { return Term::iri("urn:p:" + std::to_string(std::uniform_int_distribution<int>(0, 3)(rng))); }
    Term object() {
        if (std::uniform_int_distribution<int>(0, 4)(rng) == 0)
            return Term::literal("v" + std::to_string(std::uniform_int_distribution<int>(0, 2)(rng)));
        return node();
    }
    Triple triple() { return Triple(node(), predicate(), object()); }

    std::mt19937 rng;
};

TEST(TermTest, RejectsMalformedIris) {
    EXPECT_THROW(Iri(""), std::invalid_argument);
    EXPECT_THROW(Iri("http://a b"), std::invalid_argument);
    EXPECT_THROW(Iri("http://a<b"), std::invalid_argument);
    EXPECT_NO_THROW(Iri("urn:x"));
}

TEST(TermTest, LiteralEqualityIsLexicalAndDatatype) {
    EXPECT_EQ(Term::literal("1"), Term::literal("1"));
    EXPECT_NE(Term::literal("1"), Term::literal("1", Iri(std::string(kXsdInteger))));
    EXPECT_NE(Term::literal("urn:x"), Term::iri("urn:x"));
}

TEST(TripleTest, EnforcesPositions) {
    EXPECT_THROW(Triple(Term::literal("x"), Term::iri("urn:p"), Term::iri("urn:o")), std::invalid_argument);
    EXPECT_THROW(Triple(Term::iri("urn:s"), Term::blank("b"), Term::iri("urn:o")), std::invalid_argument);
    EXPECT_NO_THROW(Triple(Term::blank("b"), Term::iri("urn:p"), Term::literal("o")));
}

TEST(GraphTest, InsertTwiceIsIdempotent) {
    Graph g;
    Triple t(ce("OCCI"), rdf_type(), ce("ControlInterface"));
    EXPECT_TRUE(g.insert(t));
    EXPECT_FALSE(g.insert(t));
    EXPECT_EQ(g.size(), 1u);
}

TEST(GraphTest, InsertIntoEmptyGraph) {
    Graph g;
    g.insert(aws("S3"), sec("encryptsData"), sec("AES256"));
    EXPECT_EQ(g.size(), 1u);
}

TEST(GraphTest, SizeMatchesDedupedListOracle) {
    RandomTriples gen(7);
    Graph g;
    std::vector<Triple> list;
    for (int i = 0; i < 500; ++i) {
        Triple t = gen.triple();
        g.insert(t);
        if (std::find(list.begin(), list.end(), t) == list.end()) list.push_back(t);
    }
    EXPECT_EQ(g.size(), list.size());
}

TEST(GraphTest, MatchDataInterfacesInModel) {
    auto doc = load_fixture("cloudengine.ttl");
    auto rows = doc.graph.match({Variable("s"), Term(rdf_type()), ce("DataInterface")});
    std::vector<Term> subjects;
    for (const auto& t : rows) subjects.push_back(t.subject());
    EXPECT_EQ(subjects, (std::vector<Term>{ce("Swift"), aws("S3")}));
}

TEST(GraphTest, MatchOnEmptyGraph) {
    Graph g;
    EXPECT_TRUE(g.match({Variable("s"), Variable("p"), Variable("o")}).empty());
}

TEST(GraphTest, MatchEqualsLinearScanOnModel) {
    auto doc = load_fixture("cloudengine.ttl");
    const auto& g = doc.graph;
    std::vector<TriplePattern> patterns = {
        {Variable("s"), Variable("p"), Variable("o")},
        {Variable("s"), sec("implementsStandard"), Variable("o")},
        {Variable("s"), Variable("p"), iso("A.9.4.1")},
        {aws("S3"), Variable("p"), Variable("o")},
        {aws("S3"), sec("encryptsData"), sec("AES256")},
        {Variable("x"), Variable("p"), Variable("x")},
        {ce("Nope"), Variable("p"), Variable("o")},
    };
    for (const auto& p : patterns) EXPECT_EQ(g.match(p), scan_match(g, p));
}

TEST(GraphTest, RandomInterleavedInsertsKeepIndexesConsistent) {
    for (unsigned seed = 0; seed < 20; ++seed) {
        RandomTriples gen(seed);
        Graph g;
        std::set<Triple> oracle;
        std::bernoulli_distribution erase(0.25);
        for (int i = 0; i < 200; ++i) {
            Triple t = gen.triple();
            if (erase(gen.rng)) {
                EXPECT_EQ(g.erase(t), oracle.erase(t) == 1);
            } else {
                std::size_t before = g.size();
                EXPECT_EQ(g.insert(t), oracle.insert(t).second);
                EXPECT_LE(g.size(), before + 1);
            }
        }
        ASSERT_TRUE(g.verify_indexes()) << "seed " << seed;
        EXPECT_EQ(g.size(), oracle.size());
        for (int i = 0; i < 20; ++i) {
            TriplePattern p{gen.node(), Variable("p"), Variable("o")};
            if (i % 3 == 1) p = {Variable("s"), gen.predicate(), Variable("o")};
            if (i % 3 == 2) p = {Variable("s"), Variable("p"), gen.object()};
            EXPECT_EQ(g.match(p), scan_match(g, p));
        }
        Graph copy = g;
        EXPECT_TRUE(copy.verify_indexes());
        EXPECT_EQ(copy, g);
    }
}

TEST(PrefixMapTest, ExpandsModelPrefixes) {
    auto doc = load_fixture("cloudengine.ttl");
    EXPECT_EQ(doc.prefixes.expand("sec:RBAC").str(), "http://example.org/security#RBAC");
    EXPECT_EQ(doc.prefixes.expand("iso27001:A.9.4.1").str(), "https://www.iso.org/standard/27001#A.9.4.1");
    EXPECT_THROW(doc.prefixes.expand("nosuch:x"), UnknownPrefixError);
}

TEST(PrefixMapTest, RebindingReplaces) {
    PrefixMap pm;
    pm.bind("ex", Iri("urn:a:"));
    pm.bind("ex", Iri("urn:b:"));
    EXPECT_EQ(pm.size(), 1u);
    EXPECT_EQ(pm.expand("ex:x").str(), "urn:b:x");
}

TEST(PrefixMapTest, CompactRoundTripsForBoundNamespaces) {
    auto doc = load_fixture("cloudengine.ttl");
    for (const auto& t : doc.graph) {
        for (const Term* term : {&t.subject(), &t.predicate(), &t.object()}) {
            if (!term->is_iri()) continue;
            auto q = doc.prefixes.compact(term->as_iri());
            if (q) {
                EXPECT_EQ(doc.prefixes.expand(*q), term->as_iri());
            }
        }
    }
    PrefixMap pm;
    pm.bind("a", Iri("urn:x:"));
    pm.bind("ab", Iri("urn:x:y/"));
    EXPECT_EQ(pm.compact(Iri("urn:x:y/z")), "ab:z");
    EXPECT_EQ(pm.compact(Iri("urn:q")), std::nullopt);
}

TEST(IsomorphismTest, GraphIsIsomorphicToItself) {
    auto doc = load_fixture("cloudengine.ttl");
    EXPECT_TRUE(isomorphic(doc.graph, doc.graph));
}

TEST(IsomorphismTest, RelabelledBlankNode) {
    auto doc = load_fixture("cloudengine.ttl");
    ASSERT_EQ(doc.graph.blank_nodes().size(), 1u);
    Graph relabelled;
    auto rename = [](const Term& t) { return t.is_blank() ? Term::blank("other") : t; };
    for (const auto& t : doc.graph) relabelled.insert(rename(t.subject()), t.predicate(), rename(t.object()));
    EXPECT_FALSE(relabelled == doc.graph);
    EXPECT_TRUE(isomorphic(doc.graph, relabelled));
}

TEST(IsomorphismTest, MissingTripleIsNotIsomorphic) {
    auto doc = load_fixture("cloudengine.ttl");
    Graph smaller = doc.graph;
    smaller.erase(*smaller.begin());
    EXPECT_FALSE(isomorphic(doc.graph, smaller));
}

TEST(IsomorphismTest, DistinguishesBlankStructure) {
    auto p = Term::iri("urn:p");
    Graph chain, star;
    chain.insert(Term::blank("a"), p, Term::blank("b"));
    chain.insert(Term::blank("b"), p, Term::blank("c"));
    star.insert(Term::blank("a"), p, Term::blank("b"));
    star.insert(Term::blank("a"), p, Term::blank("c"));
    EXPECT_FALSE(isomorphic(chain, star));

    Graph chain2;
    chain2.insert(Term::blank("y"), p, Term::blank("z"));
    chain2.insert(Term::blank("x"), p, Term::blank("y"));
    EXPECT_TRUE(isomorphic(chain, chain2));
}

TEST(IsomorphismTest, RandomPermutationsOfBlankLabels) {
    for (unsigned seed = 0; seed < 10; ++seed) {
        std::mt19937 rng(seed);
        Graph g;
        std::uniform_int_distribution<int> pick(0, 5);
        for (int i = 0; i < 15; ++i) {
            g.insert(Term::blank("b" + std::to_string(pick(rng))), Term::iri("urn:p" + std::to_string(pick(rng) % 2)),
                     pick(rng) < 4 ? Term::blank("b" + std::to_string(pick(rng))) : Term::iri("urn:o"));
        }
        std::vector<int> perm = {0, 1, 2, 3, 4, 5};
        std::shuffle(perm.begin(), perm.end(), rng);
        auto rename = [&](const Term& t) {
            return t.is_blank() ? Term::blank("r" + std::to_string(perm[t.value()[1] - '0'])) : t;
        };
        Graph h;
        for (const auto& t : g) h.insert(rename(t.subject()), t.predicate(), rename(t.object()));
        EXPECT_TRUE(isomorphic(g, h)) << "seed " << seed;
    }
}

}  // namespace
}  // namespace cloudeng
