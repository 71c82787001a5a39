#pragma once
// OpenStack CLI exports (`openstack ... list -f json`) to instance Turtle.

#include "cloudeng/error.hpp"
#include "cloudeng/rdf.hpp"
#include "cloudeng/turtle.hpp"
#include "cloudeng/vocab.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cloudeng {

class JsonShapeError : public Error {
public:
    using Error::Error;
};

class IngestError : public Error {
public:
    using Error::Error;
};

struct EndpointRecord {
    std::string id;
    std::string service_name;
    std::string service_type;
    std::string interface;
    std::string url;
    std::optional<std::string> region;
    bool enabled = true;
};

struct IdentityRecord {
    std::string id;
    std::string name;
    std::optional<std::string> domain_id;
    std::optional<bool> enabled;
};
using ProjectRecord = IdentityRecord;
using UserRecord = IdentityRecord;

struct RoleAssignmentRecord {
    std::string role;
    std::optional<std::string> user_id;
    std::optional<std::string> group_id;
    std::optional<std::string> project_id;
};

struct IngestInputs {
    std::vector<EndpointRecord> endpoints;
    std::vector<ProjectRecord> projects;
    std::vector<UserRecord> users;
    std::vector<RoleAssignmentRecord> assignments;
};

inline std::map<std::string, std::vector<Iri>> default_service_type_map() {
    using namespace vocab;
    return {
        {"identity", {cloudeng::ControlInterface, sec::IdentityProvider}},
        {"object-store", {cloudeng::DataInterface}},
        {"metering", {cloudeng::AuditInterface}},
        {"telemetry", {cloudeng::AuditInterface}},
        {"network", {cloudeng::ControlInterface}},
        {"key-manager", {sec::KeyManagement}},
    };
}

struct IngestConfig {
    Iri instance_namespace{"urn:cloudeng:inst:"};
    std::map<std::string, std::vector<Iri>> service_type_map = default_service_type_map();
    std::map<std::string, std::string> version_metadata;  // service name -> version
    std::map<std::string, std::string> policy_files;      // service name -> path
};

// Lowercase hex SHA-256.
inline std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

// Keeps RFC 3986 unreserved characters, %XX-encodes every other byte.
inline std::string percent_encode(std::string_view s) {
    static const char* kHex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xF];
        }
    }
    return out;
}

namespace detail {

// "Service Name" and "service_name" both normalize to "service_name".
inline std::string normalize_key(std::string_view key) {
    std::string out;
    for (char c : key) out += c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

struct FieldName {
    const char* snake;
    const char* cli;  // as printed by the openstack client
};

class JsonRow {
public:
    JsonRow(const nlohmann::json& object, std::size_t index) : index_(index) {
        for (const auto& [k, v] : object.items()) values_[normalize_key(k)] = v;
    }

    std::optional<std::string> text(FieldName f) const {
        auto it = values_.find(f.snake);
        if (it == values_.end() || it->second.is_null()) return std::nullopt;
        if (!it->second.is_string()) fail(f, "must be a string");
        auto s = it->second.get<std::string>();
        if (s.empty()) return std::nullopt;
        return s;
    }

    std::string required(FieldName f) const {
        auto v = text(f);
        if (!v)
            throw JsonShapeError("element " + std::to_string(index_) + ": missing key \"" + f.cli + "\" (or \"" +
                                 f.snake + "\")");
        return *v;
    }

    std::optional<bool> flag(FieldName f) const {
        auto it = values_.find(f.snake);
        if (it == values_.end() || it->second.is_null()) return std::nullopt;
        if (it->second.is_boolean()) return it->second.get<bool>();
        if (it->second.is_string()) {
            auto s = normalize_key(it->second.get<std::string>());
            if (s == "true") return true;
            if (s == "false") return false;
        }
        fail(f, "must be a boolean");
    }

    // First present key among aliases.
    std::optional<std::string> text_any(std::initializer_list<FieldName> names) const {
        for (const auto& f : names)
            if (auto v = text(f)) return v;
        return std::nullopt;
    }

private:
    [[noreturn]] void fail(FieldName f, const char* what) const {
        throw JsonShapeError("element " + std::to_string(index_) + ": \"" + f.cli + "\" " + what);
    }

    std::size_t index_;
    std::map<std::string, nlohmann::json> values_;
};

inline EndpointRecord record_from(const JsonRow& row, EndpointRecord*) {
    EndpointRecord r;
    r.id = row.required({"id", "ID"});
    r.service_name = row.required({"service_name", "Service Name"});
    r.service_type = row.required({"service_type", "Service Type"});
    r.interface = row.required({"interface", "Interface"});
    r.url = row.required({"url", "URL"});
    r.region = row.text_any({{"region", "Region"}, {"region_id", "Region ID"}});
    r.enabled = row.flag({"enabled", "Enabled"}).value_or(true);
    return r;
}

inline IdentityRecord record_from(const JsonRow& row, IdentityRecord*) {
    IdentityRecord r;
    r.id = row.required({"id", "ID"});
    r.name = row.required({"name", "Name"});
    r.domain_id = row.text_any({{"domain_id", "Domain ID"}, {"domain", "Domain"}});
    r.enabled = row.flag({"enabled", "Enabled"});
    return r;
}

inline RoleAssignmentRecord record_from(const JsonRow& row, RoleAssignmentRecord*) {
    RoleAssignmentRecord r;
    r.role = row.required({"role", "Role"});
    r.user_id = row.text_any({{"user", "User"}, {"user_id", "User ID"}});
    r.group_id = row.text_any({{"group", "Group"}, {"group_id", "Group ID"}});
    r.project_id = row.text_any({{"project", "Project"}, {"project_id", "Project ID"}});
    return r;
}

inline nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonShapeError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace detail

// Parses the JSON array printed by `openstack <kind> list -f json`. Keys are
// matched case-insensitively with spaces read as underscores; unknown keys
// are ignored.
template <class Record>
std::vector<Record> parse_cli_json(std::string_view text) {
    auto doc = detail::parse_json_text(text);
    if (!doc.is_array()) throw JsonShapeError("expected a JSON array of objects");
    std::vector<Record> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_object()) throw JsonShapeError("element " + std::to_string(i) + " is not an object");
        out.push_back(detail::record_from(detail::JsonRow(doc[i], i), static_cast<Record*>(nullptr)));
    }
    return out;
}

template <class Record>
std::vector<Record> parse_cli_json(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_cli_json<Record>(std::string_view(text));
}

// {"service name": "version", ...}
inline std::map<std::string, std::string> parse_versions_json(std::string_view text) {
    auto doc = detail::parse_json_text(text);
    if (!doc.is_object()) throw JsonShapeError("versions file must be a JSON object");
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : doc.items()) {
        if (!v.is_string()) throw JsonShapeError("version of \"" + k + "\" must be a string");
        out[k] = v.get<std::string>();
    }
    return out;
}

namespace detail {

class Ingestor {
public:
    explicit Ingestor(const IngestConfig& config) : config_(config) {
        using namespace vocab;
        doc_.prefixes.bind("rdf", Iri(kRdfNs));
        doc_.prefixes.bind("rdfs", Iri(kRdfsNs));
        doc_.prefixes.bind("cloudeng", Iri(kCloudengNs));
        doc_.prefixes.bind("sec", Iri(kSecNs));
    }

    Document run(const IngestInputs& in) {
        for (std::size_t i = 0; i < in.endpoints.size(); ++i) endpoint(in.endpoints[i], i);
        for (std::size_t i = 0; i < in.projects.size(); ++i)
            identity(in.projects[i], i, "project", "projects", vocab::cloudeng::Project);
        for (std::size_t i = 0; i < in.users.size(); ++i) identity(in.users[i], i, "user", "users", vocab::cloudeng::User);
        for (std::size_t i = 0; i < in.assignments.size(); ++i) assignment(in.assignments[i], i);
        for (const auto& [service, version] : config_.version_metadata)
            add(node("service", service), vocab::cloudeng::serviceVersion, Term::literal(version));
        for (const auto& [service, path] : config_.policy_files)
            add(node("service", service), vocab::cloudeng::policyFileHash, Term::literal(sha256_hex(read_file(path))));
        return std::move(doc_);
    }

private:
    Term node(std::string_view kind, std::string_view id) const {
        return Term::iri(config_.instance_namespace.str() + std::string(kind) + "/" + percent_encode(id));
    }

    void add(const Term& s, const Iri& p, const Term& o) { doc_.graph.insert(s, p, o); }

    [[noreturn]] static void invalid(const char* list, std::size_t index, const char* field, const char* what) {
        throw IngestError(std::string(list) + "[" + std::to_string(index) + "]." + field + " " + what);
    }

    void endpoint(const EndpointRecord& r, std::size_t i) {
        using namespace vocab;
        if (r.id.empty()) invalid("endpoints", i, "id", "must not be empty");
        if (r.url.empty()) invalid("endpoints", i, "url", "must not be empty");
        if (r.service_name.empty()) invalid("endpoints", i, "service_name", "must not be empty");
        Term service = node("service", r.service_name);
        Term ep = node("endpoint", r.id);
        auto mapped = config_.service_type_map.find(r.service_type);
        if (mapped == config_.service_type_map.end()) add(service, rdf::type, Term(cloudeng::Interface));
        else
            for (const auto& cls : mapped->second) add(service, rdf::type, Term(cls));
        add(service, rdfs::label, Term::literal(r.service_name));
        add(service, cloudeng::serviceType, Term::literal(r.service_type));
        add(service, cloudeng::hasEndpoint, ep);
        add(ep, rdf::type, Term(cloudeng::Endpoint));
        add(ep, cloudeng::endpointUrl, Term::literal(r.url));
        add(ep, cloudeng::endpointInterface, Term::literal(r.interface));
        if (r.region) add(ep, cloudeng::region, Term::literal(*r.region));
        add(ep, cloudeng::enabled, Term::literal(r.enabled ? "true" : "false"));
    }

    void identity(const IdentityRecord& r, std::size_t i, const char* kind, const char* list, const Iri& cls) {
        using namespace vocab;
        if (r.id.empty()) invalid(list, i, "id", "must not be empty");
        Term n = node(kind, r.id);
        add(n, rdf::type, Term(cls));
        if (!r.name.empty()) add(n, rdfs::label, Term::literal(r.name));
        if (r.domain_id) add(n, cloudeng::domainId, Term::literal(*r.domain_id));
        if (r.enabled) add(n, cloudeng::enabled, Term::literal(*r.enabled ? "true" : "false"));
    }

    void assignment(const RoleAssignmentRecord& r, std::size_t i) {
        using namespace vocab;
        if (r.role.empty()) invalid("assignments", i, "role", "must not be empty");
        if (r.user_id.has_value() == r.group_id.has_value())
            invalid("assignments", i, "user_id", "and group_id: exactly one must be present");
        Term a = node("assignment", std::to_string(i + 1));
        add(a, rdf::type, Term(cloudeng::RoleAssignment));
        add(a, cloudeng::roleName, Term::literal(r.role));
        if (r.user_id) {
            add(a, cloudeng::assignee, node("user", *r.user_id));
        } else {
            Term group = node("group", *r.group_id);
            add(group, rdf::type, Term(cloudeng::Group));
            add(a, cloudeng::assignee, group);
        }
        if (r.project_id) add(a, cloudeng::scopeProject, node("project", *r.project_id));
    }

    static std::string read_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IngestError("cannot read policy file " + path);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    const IngestConfig& config_;
    Document doc_;
};

}  // namespace detail

inline Document ingest(const IngestInputs& inputs, const IngestConfig& config = {}) {
    return detail::Ingestor(config).run(inputs);
}

}  // namespace cloudeng
