#pragma once
// Standards coverage for cloud engine instances.
//
// A policy standard is Covered when an interface attached to the engine
// implements it directly, or through one mechanism it links to via one of
// the five mechanism properties. Matching is by exact IRI.

#include "cloudeng/error.hpp"
#include "cloudeng/rdf.hpp"
#include "cloudeng/vocab.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace cloudeng {

class NoPolicyError : public Error {
public:
    using Error::Error;
};

enum class CoverageVia { Direct, Mechanism };
enum class CoverageState { Covered, Gap };

inline std::string_view to_string(CoverageVia via) { return via == CoverageVia::Direct ? "Direct" : "Mechanism"; }
inline std::string_view to_string(CoverageState state) { return state == CoverageState::Covered ? "Covered" : "Gap"; }

struct CoverageEvidence {
    Iri standard;
    Iri interface;
    CoverageVia via;
    std::optional<Iri> mechanism;
    std::optional<Iri> linking_property;
    Iri attachment;  // has*Interface property joining engine and interface

    friend bool operator==(const CoverageEvidence&, const CoverageEvidence&) = default;
};

struct StandardStatus {
    Iri standard;
    std::optional<std::string> label;
    CoverageState state;
    std::vector<CoverageEvidence> evidence;
};

struct ComplianceReport {
    Iri engine;
    Iri policy;  // smallest policy IRI when there are several
    std::vector<StandardStatus> statuses;
    std::size_t gap_count = 0;
    std::vector<std::string> warnings;
};

inline const std::array<Iri, 4>& attachment_properties() {
    using namespace vocab::cloudeng;
    static const std::array<Iri, 4> props{hasControlInterface, hasBusinessInterface, hasAuditInterface,
                                          hasDataInterface};
    return props;
}

inline const std::array<Iri, 5>& mechanism_properties() {
    using namespace vocab::sec;
    static const std::array<Iri, 5> props{supportsAuthentication, enforcesAuthorization, encryptsData,
                                          usesTransportSecurity, usesIdentityProvider};
    return props;
}

inline std::set<Iri> attached_interfaces(const Graph& graph, const Iri& engine) {
    std::set<Iri> out;
    for (const auto& prop : attachment_properties())
        for (const auto& o : graph.objects(engine, prop))
            if (o.is_iri()) out.insert(o.as_iri());
    return out;
}

inline std::set<Iri> standards_of(const Graph& graph, const Iri& node) {
    std::set<Iri> out;
    for (const auto& o : graph.objects(node, vocab::sec::implementsStandard))
        if (o.is_iri()) out.insert(o.as_iri());
    return out;
}

namespace detail {

inline std::optional<std::string> first_label(const Graph& graph, const Iri& node) {
    for (const auto& o : graph.objects(node, vocab::rdfs::label))
        if (o.is_literal()) return o.value();
    return std::nullopt;
}

inline auto evidence_key(const CoverageEvidence& e) {
    return std::tuple(e.interface, e.via, e.linking_property, e.mechanism, e.attachment);
}

}  // namespace detail

inline ComplianceReport coverage(const Graph& graph, const Iri& engine) {
    using namespace vocab;
    std::vector<Iri> policies;
    for (const auto& o : graph.objects(engine, sec::hasSecurityPolicy))
        if (o.is_iri()) policies.push_back(o.as_iri());
    if (policies.empty()) throw NoPolicyError("engine <" + engine.str() + "> has no sec:hasSecurityPolicy");

    ComplianceReport report{engine, policies.front(), {}, 0, {}};
    if (policies.size() > 1)
        report.warnings.push_back("engine <" + engine.str() + "> has " + std::to_string(policies.size()) +
                                  " security policies; using the union of their sec:compliesWith");

    std::set<Iri> required;
    for (const auto& policy : policies)
        for (const auto& o : graph.objects(policy, sec::compliesWith))
            if (o.is_iri()) required.insert(o.as_iri());

    // (interface, attachment) pairs; an interface may be attached twice.
    std::vector<std::pair<Iri, Iri>> attached;
    for (const auto& prop : attachment_properties())
        for (const auto& o : graph.objects(engine, prop))
            if (o.is_iri()) attached.emplace_back(o.as_iri(), prop);

    for (const auto& standard : required) {
        StandardStatus status{standard, detail::first_label(graph, standard), CoverageState::Gap, {}};
        for (const auto& [iface, attachment] : attached) {
            if (graph.contains(Triple(iface, sec::implementsStandard, standard)))
                status.evidence.push_back({standard, iface, CoverageVia::Direct, std::nullopt, std::nullopt, attachment});
            for (const auto& link : mechanism_properties())
                for (const auto& m : graph.objects(iface, link))
                    if (m.is_iri() && graph.contains(Triple(m, sec::implementsStandard, standard)))
                        status.evidence.push_back({standard, iface, CoverageVia::Mechanism, m.as_iri(), link, attachment});
        }
        std::sort(status.evidence.begin(), status.evidence.end(),
                  [](const auto& a, const auto& b) { return detail::evidence_key(a) < detail::evidence_key(b); });
        if (!status.evidence.empty()) status.state = CoverageState::Covered;
        else ++report.gap_count;
        report.statuses.push_back(std::move(status));
    }
    return report;
}

inline std::vector<Iri> gaps(const ComplianceReport& report) {
    std::vector<Iri> out;
    for (const auto& s : report.statuses)
        if (s.state == CoverageState::Gap) out.push_back(s.standard);
    return out;
}

// Triples an evidence chain relies on, engine first.
inline std::vector<Triple> cited_triples(const Iri& engine, const CoverageEvidence& e) {
    const Term implements = vocab::sec::implementsStandard;
    std::vector<Triple> out{Triple(engine, e.attachment, e.interface)};
    if (e.via == CoverageVia::Direct) {
        out.emplace_back(e.interface, implements, e.standard);
    } else {
        out.emplace_back(e.interface, *e.linking_property, *e.mechanism);
        out.emplace_back(*e.mechanism, implements, e.standard);
    }
    return out;
}

inline bool replays(const Graph& graph, const Iri& engine, const CoverageEvidence& e) {
    auto triples = cited_triples(engine, e);
    return std::all_of(triples.begin(), triples.end(), [&](const Triple& t) { return graph.contains(t); });
}

// Queries in the SPARQL subset whose combined answer is non-empty exactly
// when `standard` is covered for `engine`: one per attachment property for
// direct coverage and one per (attachment, mechanism property) pair.
inline std::vector<std::string> coverage_queries(const Iri& engine, const Iri& standard) {
    auto ref = [](const Iri& i) { return "<" + i.str() + ">"; };
    const std::string implements = ref(vocab::sec::implementsStandard);
    std::vector<std::string> out;
    for (const auto& att : attachment_properties()) {
        std::string head = "SELECT ?i WHERE { " + ref(engine) + " " + ref(att) + " ?i . FILTER EXISTS { ";
        out.push_back(head + "?i " + implements + " " + ref(standard) + " } }");
        for (const auto& link : mechanism_properties())
            out.push_back(head + "?i " + ref(link) + " ?m . ?m " + implements + " " + ref(standard) + " } }");
    }
    return out;
}

inline std::vector<std::string> remediation_hints(const ComplianceReport& report, const Graph& graph,
                                                  const PrefixMap& prefixes) {
    std::vector<std::string> hints;
    for (const auto& s : report.statuses) {
        if (s.state != CoverageState::Gap) continue;
        auto implementers = graph.subjects(vocab::sec::implementsStandard, s.standard);
        std::string hint = prefixes.shorten(s.standard) + ": ";
        if (implementers.empty()) {
            hint += "no node in the model implements this standard";
        } else {
            hint += "attach an interface or mechanism that implements it:";
            for (const auto& n : implementers) hint += " " + prefixes.shorten(n);
        }
        hints.push_back(std::move(hint));
    }
    return hints;
}

inline nlohmann::ordered_json to_json(const CoverageEvidence& e) {
    nlohmann::ordered_json j;
    j["interface"] = e.interface.str();
    j["via"] = std::string(to_string(e.via));
    j["attachment"] = e.attachment.str();
    if (e.mechanism) {
        j["mechanism"] = e.mechanism->str();
        j["linkingProperty"] = e.linking_property->str();
    }
    return j;
}

inline nlohmann::ordered_json to_json(const ComplianceReport& report) {
    nlohmann::ordered_json j;
    j["engine"] = report.engine.str();
    j["policy"] = report.policy.str();
    auto standards = nlohmann::ordered_json::array();
    auto gap_list = nlohmann::ordered_json::array();
    for (const auto& s : report.statuses) {
        nlohmann::ordered_json item;
        item["iri"] = s.standard.str();
        item["label"] = s.label ? nlohmann::ordered_json(*s.label) : nlohmann::ordered_json(nullptr);
        item["state"] = std::string(to_string(s.state));
        auto evidence = nlohmann::ordered_json::array();
        for (const auto& e : s.evidence) evidence.push_back(to_json(e));
        item["evidence"] = std::move(evidence);
        standards.push_back(std::move(item));
        if (s.state == CoverageState::Gap) gap_list.push_back(s.standard.str());
    }
    j["standards"] = std::move(standards);
    j["gaps"] = std::move(gap_list);
    return j;
}

inline std::string render_report(const ComplianceReport& report, const PrefixMap& prefixes,
                                 const std::vector<std::string>& hints = {}) {
    std::string out = "Engine: " + prefixes.shorten(report.engine) + "\nPolicy: " + prefixes.shorten(report.policy) + "\n";
    for (const auto& s : report.statuses) {
        out += std::string(s.state == CoverageState::Covered ? "  Covered  " : "  Gap      ") + prefixes.shorten(s.standard);
        if (s.label) out += "  (" + *s.label + ")";
        out += "\n";
        for (const auto& e : s.evidence) {
            out += "      " + prefixes.shorten(e.interface);
            if (e.via == CoverageVia::Direct) out += " implements it directly\n";
            else out += " " + prefixes.shorten(*e.linking_property) + " " + prefixes.shorten(*e.mechanism) + "\n";
        }
    }
    if (!hints.empty()) {
        out += "Remediation:\n";
        for (const auto& h : hints) out += "  " + h + "\n";
    }
    out += "Gaps: " + std::to_string(report.gap_count) + " of " + std::to_string(report.statuses.size()) + "\n";
    return out;
}

}  // namespace cloudeng
