#include "cloudeng/turtle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace cloudeng {
namespace {

using namespace cloudeng::testing;

const std::string kPrefixes =
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
    "@prefix cloudeng: <http://example.org/cloudengine#> .\n"
    "@prefix sec: <http://example.org/security#> .\n"
    "@prefix iso27001: <https://www.iso.org/standard/27001#> .\n";

ParseError parse_error(const std::string& text) {
    try {
        parse_turtle(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError for: " << text;
    return ParseError(0, 0, ParseErrorKind::UnexpectedToken, "none");
}

TEST(TurtleParseTest, SingleStatementWithAKeyword) {
    auto doc = parse_turtle(kPrefixes + "cloudeng:OCCI a cloudeng:ControlInterface .");
    ASSERT_EQ(doc.graph.size(), 1u);
    const auto& t = *doc.graph.begin();
    EXPECT_EQ(t.subject(), ce("OCCI"));
    EXPECT_EQ(t.predicate(), Term(rdf_type()));
    EXPECT_EQ(t.object(), ce("ControlInterface"));
}

TEST(TurtleParseTest, EmptyAndCommentOnlyInput) {
    for (const char* text : {"", "   \n\t", "# just a comment\n# another"}) {
        auto doc = parse_turtle(text);
        EXPECT_TRUE(doc.graph.empty());
        EXPECT_TRUE(doc.prefixes.empty());
    }
}

TEST(TurtleParseTest, FullModelMatchesReferenceParserCount) {
    // 282 triples and 11 prefixes as counted by rdflib on the same file.
    auto doc = load_fixture("cloudengine.ttl");
    EXPECT_EQ(doc.graph.size(), 282u);
    EXPECT_EQ(doc.prefixes.size(), 11u);
    EXPECT_EQ(doc.prefixes.bindings().front().first, "rdf");
    EXPECT_EQ(doc.prefixes.bindings().back().first, "csa");
}

TEST(TurtleParseTest, CommentInsideObjectList) {
    auto doc = parse_turtle(kPrefixes +
                            "sec:OAuth2 sec:implementsStandard iso27001:A.9.2.2,    # comment\n"
                            "  iso27001:A.9.4.2 .");
    EXPECT_EQ(doc.graph.size(), 2u);
    EXPECT_TRUE(doc.graph.contains(Triple(sec("OAuth2"), sec("implementsStandard"), iso("A.9.2.2"))));
    EXPECT_TRUE(doc.graph.contains(Triple(sec("OAuth2"), sec("implementsStandard"), iso("A.9.4.2"))));
}

TEST(TurtleParseTest, DotsInsideLocalNames) {
    auto doc = parse_turtle(kPrefixes + "sec:RBAC sec:implementsStandard iso27001:A.9.4.1 .\n"
                                        "sec:X sec:implementsStandard iso27001:A.10.1.1.\n"
                                        "sec:Y sec:implementsStandard iso27001:A.1#c\n.");
    EXPECT_TRUE(doc.graph.contains(Triple(sec("RBAC"), sec("implementsStandard"), iso("A.9.4.1"))));
    EXPECT_TRUE(doc.graph.contains(Triple(sec("X"), sec("implementsStandard"), iso("A.10.1.1"))));
    EXPECT_TRUE(doc.graph.contains(Triple(sec("Y"), sec("implementsStandard"), iso("A.1"))));
}

TEST(TurtleParseTest, BlankNodePropertyListsAndTrailingSemicolon) {
    auto doc = load_fixture("shapes_data_encryption.ttl");
    EXPECT_EQ(doc.graph.size(), 6u);
    auto blanks = doc.graph.blank_nodes();
    ASSERT_EQ(blanks.size(), 1u);
    EXPECT_EQ(blanks.begin()->value(), "b1");
    auto min = doc.graph.objects(*blanks.begin(), Term::iri("http://www.w3.org/ns/shacl#minCount"));
    ASSERT_EQ(min.size(), 1u);
    EXPECT_EQ(min[0], Term::literal("1", Iri(std::string(kXsdInteger))));
}

TEST(TurtleParseTest, LabelledBlankNodesShareIdentity) {
    auto doc = parse_turtle(kPrefixes + "_:x sec:p _:y . _:y sec:p _:x . [] sec:q _:x .");
    EXPECT_EQ(doc.graph.size(), 3u);
    EXPECT_EQ(doc.graph.blank_nodes().size(), 3u);
}

TEST(TurtleParseTest, StringEscapes) {
    auto doc = parse_turtle(kPrefixes + R"(sec:a sec:b "q\"b\\n\n\tt" .)");
    EXPECT_EQ(doc.graph.begin()->object().value(), "q\"b\\n\n\tt");
}

TEST(TurtleParseTest, IriEscapes) {
    auto doc = parse_turtle(R"(<urn:a> <urn:b> <urn:é\U0001F600> .)");
    EXPECT_EQ(doc.graph.begin()->object().value(), "urn:\xC3\xA9\xF0\x9F\x98\x80");
}

TEST(TurtleParseTest, RebindingPrefixAppliesToLaterStatements) {
    auto doc = parse_turtle("@prefix e: <urn:a:> . e:x e:p e:o . @prefix e: <urn:b:> . e:x e:p e:o .");
    EXPECT_EQ(doc.graph.size(), 2u);
    EXPECT_EQ(doc.prefixes.size(), 1u);
    EXPECT_EQ(doc.prefixes.namespace_of("e")->str(), "urn:b:");
}

struct ErrorCase {
    std::string text;
    ParseErrorKind kind;
    std::size_t line;
    std::size_t column;
};

TEST(TurtleParseTest, ErrorsCarryKindAndPosition) {
    const std::vector<ErrorCase> cases = {
        {"nosuch:x <urn:p> <urn:o> .", ParseErrorKind::UnknownPrefix, 1, 1},
        {"<urn:s> <urn:p> \"abc .", ParseErrorKind::UnterminatedString, 1, 17},
        {"<urn:s> <urn:p> \"ab\nc\" .", ParseErrorKind::UnterminatedString, 1, 17},
        {"<urn:s> <urn:p> <urn:o", ParseErrorKind::UnterminatedIri, 1, 17},
        {"<urn:s> <urn:p> \"a\\qb\" .", ParseErrorKind::BadEscape, 1, 19},
        {"<urn:s> <urn:p> <urn:\\x> .", ParseErrorKind::BadEscape, 1, 22},
        {"@prefix e: <urn:e:> .\ne:s e:p e:-x .", ParseErrorKind::BadLocalName, 2, 11},
        {"@prefix e: <urn:e:> .\ne:s e:p e:a%20b .", ParseErrorKind::BadLocalName, 2, 12},
        {"@base <urn:x> .", ParseErrorKind::UnexpectedToken, 1, 1},
        {"<s> <urn:p> <urn:o> .", ParseErrorKind::UnexpectedToken, 1, 1},
        {"<urn:s> <urn:p> \"x\"@en .", ParseErrorKind::UnexpectedToken, 1, 20},
        {"<urn:s> <urn:p> \"x\"^^<urn:t> .", ParseErrorKind::UnexpectedToken, 1, 20},
        {"<urn:s> <urn:p> 1.5 .", ParseErrorKind::UnexpectedToken, 1, 17},
        {"<urn:s> <urn:p> true .", ParseErrorKind::UnexpectedToken, 1, 17},
        {"<urn:s> <urn:p> ( <urn:o> ) .", ParseErrorKind::UnexpectedToken, 1, 17},
        {"<urn:s> <urn:p> \"\"\"long\"\"\" .", ParseErrorKind::UnexpectedToken, 1, 17},
        {"<urn:s> <urn:p> <urn:o>", ParseErrorKind::UnexpectedToken, 1, 24},
        {"<urn:s> <urn:p> <urn:o> ;\n  <urn:q> .\n", ParseErrorKind::UnexpectedToken, 2, 11},
        {"<urn:s> <urn:p> <urn:o> .\n\"lit\" <urn:p> <urn:o> .", ParseErrorKind::UnexpectedToken, 2, 1},
        {"PREFIX e: <urn:e:>", ParseErrorKind::UnexpectedToken, 1, 1},
    };
    for (const auto& c : cases) {
        auto e = parse_error(c.text);
        EXPECT_EQ(e.kind(), c.kind) << c.text << " -> " << e.what();
        EXPECT_EQ(e.line(), c.line) << c.text << " -> " << e.what();
        EXPECT_EQ(e.column(), c.column) << c.text << " -> " << e.what();
    }
}

// Byte offsets outside strings, IRIs and comments whose character is
// whitespace (or end of input): a lone '@' there starts a new token.
std::vector<std::size_t> injection_points(const std::string& text) {
    std::vector<std::size_t> out;
    enum { Code, InString, InIri, InComment } state = Code;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        switch (state) {
            case Code:
                if (c == '"') state = InString;
                else if (c == '<') state = InIri;
                else if (c == '#') state = InComment;
                else if (c == ' ' || c == '\n' || c == '\t') out.push_back(i);
                break;
            case InString:
                if (c == '\\') ++i;
                else if (c == '"') state = Code;
                break;
            case InIri:
                if (c == '>') state = Code;
                break;
            case InComment:
                if (c == '\n') state = Code;
                break;
        }
    }
    out.push_back(text.size());
    return out;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

TEST(TurtleParseTest, InjectedAtSignIsReportedAtItsOffset) {
    const std::string text = read_fixture("cloudengine.ttl");
    auto points = injection_points(text);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = pick(rng);
        k = points[k];
        std::string mutated = text;
        mutated.insert(k, "@");
        auto e = parse_error(mutated);
        auto [line, column] = line_column(mutated, k);
        EXPECT_EQ(e.line(), line) << "offset " << k << ": " << e.what();
        EXPECT_EQ(e.column(), column) << "offset " << k << ": " << e.what();
    }
}

TEST(TurtleParseTest, ParsingIsDeterministic) {
    const std::string text = read_fixture("cloudengine.ttl");
    auto a = parse_turtle(text);
    auto b = parse_turtle(text);
    EXPECT_EQ(a.graph, b.graph);
}

TEST(TurtleSerializeTest, EmptyDocument) {
    EXPECT_EQ(serialize_turtle(Document{}), "");
    Document doc;
    doc.prefixes.bind("sec", Iri(kSec));
    EXPECT_EQ(serialize_turtle(doc), "@prefix sec: <http://example.org/security#> .\n");
}

TEST(TurtleSerializeTest, OneTripleIsOneStatement) {
    Document doc;
    doc.prefixes.bind("cloudeng", Iri(kCloudeng));
    doc.graph.insert(ce("OCCI"), rdf_type(), ce("ControlInterface"));
    std::string out = serialize_turtle(doc);
    EXPECT_EQ(out,
              "@prefix cloudeng: <http://example.org/cloudengine#> .\n"
              "\n"
              "cloudeng:OCCI\n"
              "    a cloudeng:ControlInterface .\n");
}

TEST(TurtleSerializeTest, ModelRoundTripsToIsomorphicGraph) {
    auto doc = load_fixture("cloudengine.ttl");
    std::string text = serialize_turtle(doc);
    auto again = parse_turtle(text);
    EXPECT_EQ(again.graph.size(), doc.graph.size());
    EXPECT_TRUE(isomorphic(doc.graph, again.graph));
    EXPECT_EQ(serialize_turtle(again), text);
    EXPECT_NE(text.find("rdfs:domain [\n"), std::string::npos);
}

TEST(TurtleSerializeTest, SortedOutput) {
    Document doc;
    doc.prefixes.bind("z", Iri("urn:z:"));
    doc.prefixes.bind("a", Iri("urn:a:"));
    doc.graph.insert(Term::iri("urn:z:s"), Term::iri("urn:a:q"), Term::literal("2"));
    doc.graph.insert(Term::iri("urn:z:s"), Term::iri("urn:a:q"), Term::literal("1"));
    doc.graph.insert(Term::iri("urn:z:s"), Term::iri("urn:a:p"), Term::iri("urn:a:o"));
    doc.graph.insert(Term::iri("urn:a:s"), Term::iri("urn:a:p"), Term::literal("a\"b\nc"));
    EXPECT_EQ(serialize_turtle(doc),
              "@prefix a: <urn:a:> .\n"
              "@prefix z: <urn:z:> .\n"
              "\n"
              "a:s\n"
              "    a:p \"a\\\"b\\nc\" .\n"
              "\n"
              "z:s\n"
              "    a:p a:o ;\n"
              "    a:q \"1\", \"2\" .\n");
}

TEST(TurtleSerializeTest, TypeIsWrittenFirst) {
    Document doc;
    doc.prefixes.bind("cloudeng", Iri(kCloudeng));
    doc.graph.insert(ce("Swift"), Term::iri("http://www.w3.org/2000/01/rdf-schema#label"), Term::literal("Swift"));
    doc.graph.insert(ce("Swift"), rdf_type(), ce("DataInterface"));
    doc.graph.insert(ce("Swift"), ce("serviceType"), Term::literal("object-store"));
    EXPECT_EQ(serialize_turtle(doc),
              "@prefix cloudeng: <http://example.org/cloudengine#> .\n"
              "\n"
              "cloudeng:Swift\n"
              "    a cloudeng:DataInterface ;\n"
              "    cloudeng:serviceType \"object-store\" ;\n"
              "    <http://www.w3.org/2000/01/rdf-schema#label> \"Swift\" .\n");
}

TEST(TurtleSerializeTest, NonCompactableIrisUseIriref) {
    Document doc;
    doc.prefixes.bind("i", Iri("urn:i:"));
    doc.graph.insert(Term::iri("urn:i:service/keystone"), Term::iri("urn:i:p"), Term::iri("urn:i:A."));
    auto text = serialize_turtle(doc);
    EXPECT_NE(text.find("<urn:i:service/keystone>"), std::string::npos);
    EXPECT_NE(text.find("<urn:i:A.>"), std::string::npos);
    EXPECT_EQ(parse_turtle(text).graph, doc.graph);
}

// Random documents built from the supported subset, including shared and
// cyclic blank nodes.
TEST(TurtleSerializeTest, RandomDocumentsRoundTrip) {
    for (unsigned seed = 0; seed < 100; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> pick(0, 7);
        Document doc;
        doc.prefixes.bind("ex", Iri("urn:ex:"));
        doc.prefixes.bind("", Iri("http://example.org/d#"));
        auto node = [&]() -> Term {
            int n = pick(rng);
            if (n < 3) return Term::blank("x" + std::to_string(n));
            if (n < 5) return Term::iri("urn:ex:n" + std::to_string(n) + ".v-1");
            return Term::iri("http://example.org/d#" + std::to_string(n));
        };
        auto object = [&]() -> Term {
            int n = pick(rng);
            if (n == 0) return Term::literal("s \"" + std::to_string(n) + "\"\t\\");
            if (n == 1) return Term::literal(std::to_string(seed), Iri(std::string(kXsdInteger)));
            return node();
        };
        int count = pick(rng) * 3;
        for (int i = 0; i < count; ++i)
            doc.graph.insert(node(), Term::iri("urn:ex:p" + std::to_string(pick(rng) % 3)), object());
        auto text = serialize_turtle(doc);
        Document back;
        ASSERT_NO_THROW(back = parse_turtle(text)) << text;
        EXPECT_TRUE(isomorphic(doc.graph, back.graph)) << "seed " << seed << "\n" << text;
    }
}

}  // namespace
}  // namespace cloudeng
