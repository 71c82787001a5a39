#pragma once
// The `cloudeng` command line. run() takes arguments without the program
// name and returns the process exit code.

#include "cloudeng/compliance.hpp"
#include "cloudeng/openstack.hpp"
#include "cloudeng/rdfs.hpp"
#include "cloudeng/shacl.hpp"
#include "cloudeng/sparql.hpp"
#include "cloudeng/turtle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

namespace cloudeng::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kViolations = 2, kGaps = 3 };

// A failure tied to one input file, reported as "file: message", or as
// "file:line:col: ..." for syntax errors. Exit code 1.
class InputError : public Error {
public:
    InputError(const std::string& file, const std::string& message) : Error(file + ": " + message) {}
    explicit InputError(const std::string& file, const ParseError& e) : Error(file + ":" + e.what()) {}
};

namespace detail {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, "cannot read file");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs `fn` and tags any parse or shape failure with `path`.
template <class Fn>
auto from_file(const std::string& path, Fn fn) {
    std::string text = read_text(path);
    try {
        return fn(text);
    } catch (const InputError&) {
        throw;
    } catch (const ParseError& e) {
        throw InputError(path, e);
    } catch (const Error& e) {
        throw InputError(path, e.what());
    }
}

inline Document load_turtle(const std::string& path) {
    return from_file(path, [](const std::string& text) { return parse_turtle(text); });
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) throw InputError(path, "cannot write file");
}

// Accepts <iri>, prefix:local under the document's prefixes, or an
// absolute IRI.
inline Iri resolve_iri(const std::string& arg, const PrefixMap& prefixes) {
    if (arg.size() > 2 && arg.front() == '<' && arg.back() == '>') return Iri(arg.substr(1, arg.size() - 2));
    auto colon = arg.find(':');
    if (colon != std::string::npos && prefixes.namespace_of(arg.substr(0, colon))) return prefixes.expand(arg);
    if (colon == std::string::npos) throw Error("cannot resolve '" + arg + "' to an IRI");
    return Iri(arg);
}

inline PrefixMap merged(PrefixMap base, const PrefixMap& extra) {
    for (const auto& [label, ns] : extra.bindings())
        if (!base.namespace_of(label)) base.bind(label, ns);
    return base;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ontology-driven compliance checks for cloud engine models", "cloudeng"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    bool no_inference = false;
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_no_inference = [&](CLI::App* cmd) {
        cmd->add_flag("--no-inference", no_inference, "Use the asserted graph without RDFS materialization");
    };

    std::string model, second, output, engine;

    auto* parse_cmd = app.add_subcommand("parse", "Syntax-check a Turtle file");
    parse_cmd->add_option("file", model, "Turtle file")->required();
    add_format(parse_cmd);

    auto* infer_cmd = app.add_subcommand("infer", "Write the RDFS-materialized graph");
    infer_cmd->add_option("file", model, "Turtle file")->required();
    infer_cmd->add_option("-o,--output", output, "Output Turtle file (default stdout)");

    auto* query_cmd = app.add_subcommand("query", "Evaluate a SELECT query");
    query_cmd->add_option("file", model, "Turtle file")->required();
    query_cmd->add_option("query", second, "Query file")->required();
    add_format(query_cmd);
    add_no_inference(query_cmd);

    auto* validate_cmd = app.add_subcommand("validate", "Validate against SHACL shapes");
    validate_cmd->add_option("file", model, "Turtle file")->required();
    validate_cmd->add_option("shapes", second, "Shapes file")->required();
    add_format(validate_cmd);
    add_no_inference(validate_cmd);

    auto* compliance_cmd = app.add_subcommand("compliance", "Report standards coverage for an engine");
    compliance_cmd->add_option("file", model, "Turtle file")->required();
    compliance_cmd->add_option("--engine", engine, "Engine IRI or prefixed name")->required();
    add_format(compliance_cmd);
    add_no_inference(compliance_cmd);

    auto* ingest_cmd = app.add_subcommand("ingest", "Convert inventory exports to Turtle");
    ingest_cmd->require_subcommand(1);
    auto* openstack_cmd = ingest_cmd->add_subcommand("openstack", "OpenStack CLI JSON exports");
    std::string endpoints, projects, users, assignments, versions, metadata;
    std::vector<std::string> policy_files;
    openstack_cmd->add_option("--endpoints", endpoints, "openstack endpoint list -f json")->required();
    openstack_cmd->add_option("--projects", projects, "openstack project list -f json");
    openstack_cmd->add_option("--users", users, "openstack user list -f json");
    openstack_cmd->add_option("--assignments", assignments, "openstack role assignment list -f json");
    openstack_cmd->add_option("--versions", versions, "JSON object of service name to version");
    openstack_cmd->add_option("--policy-file", policy_files, "SERVICE=PATH, hashed into the output")
        ->take_all()
        ->allow_extra_args(false);
    openstack_cmd->add_option("--metadata", metadata, "Supplementary Turtle merged into the output");
    openstack_cmd->add_option("-o,--output", output, "Output Turtle file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    auto working_graph = [&](const Graph& asserted) {
        return no_inference ? asserted : materialize(asserted).graph;
    };

    try {
        if (*parse_cmd) {
            auto doc = detail::load_turtle(model);
            if (format == "json") {
                nlohmann::ordered_json j;
                j["file"] = model;
                j["triples"] = doc.graph.size();
                j["prefixes"] = doc.prefixes.size();
                out << detail::dump(j);
            } else {
                out << model << ": " << doc.graph.size() << " triples, " << doc.prefixes.size() << " prefixes\n";
            }
            return kOk;
        }

        if (*infer_cmd) {
            auto doc = detail::load_turtle(model);
            auto closure = materialize(doc.graph);
            doc.graph = std::move(closure.graph);
            detail::write_text(output, serialize_turtle(doc), out);
            err << "inferred " << closure.inferred_count << " triples in " << closure.iterations << " iterations\n";
            return kOk;
        }

        if (*query_cmd) {
            auto doc = detail::load_turtle(model);
            auto query = detail::from_file(second, [](const std::string& text) { return parse_query(text); });
            auto table = evaluate(query, working_graph(doc.graph));
            if (format == "json") out << detail::dump(to_json(table));
            else out << render_table(table, detail::merged(query.prefixes, doc.prefixes));
            return kOk;
        }

        if (*validate_cmd) {
            auto doc = detail::load_turtle(model);
            auto shapes_doc = detail::load_turtle(second);
            std::vector<NodeShapeSpec> shapes;
            try {
                shapes = parse_shapes(shapes_doc);
            } catch (const ShapeError& e) {
                throw InputError(second, e.what());
            }
            auto report = validate(working_graph(doc.graph), shapes);
            if (format == "json") out << detail::dump(to_json(report));
            else out << render_report(report, detail::merged(doc.prefixes, shapes_doc.prefixes));
            return report.conforms ? kOk : kViolations;
        }

        if (*compliance_cmd) {
            auto doc = detail::load_turtle(model);
            Iri engine_iri = detail::resolve_iri(engine, doc.prefixes);
            Graph g = working_graph(doc.graph);
            auto report = coverage(g, engine_iri);
            for (const auto& w : report.warnings) err << "warning: " << w << "\n";
            auto hints = remediation_hints(report, g, doc.prefixes);
            if (format == "json") {
                auto j = to_json(report);
                j["hints"] = hints;
                out << detail::dump(j);
            } else {
                out << render_report(report, doc.prefixes, hints);
            }
            return report.gap_count == 0 ? kOk : kGaps;
        }

        if (*openstack_cmd) {
            IngestInputs in;
            auto records = [](const std::string& path, auto* tag) {
                using Record = std::remove_pointer_t<decltype(tag)>;
                if (path.empty()) return std::vector<Record>{};
                return detail::from_file(path, [](const std::string& text) { return parse_cli_json<Record>(text); });
            };
            in.endpoints = records(endpoints, static_cast<EndpointRecord*>(nullptr));
            in.projects = records(projects, static_cast<ProjectRecord*>(nullptr));
            in.users = records(users, static_cast<UserRecord*>(nullptr));
            in.assignments = records(assignments, static_cast<RoleAssignmentRecord*>(nullptr));
            IngestConfig config;
            if (!versions.empty())
                config.version_metadata =
                    detail::from_file(versions, [](const std::string& text) { return parse_versions_json(text); });
            for (const auto& spec : policy_files) {
                auto eq = spec.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
                    throw Error("--policy-file expects SERVICE=PATH, got '" + spec + "'");
                config.policy_files[spec.substr(0, eq)] = spec.substr(eq + 1);
            }
            auto doc = ingest(in, config);
            if (!metadata.empty()) {
                auto extra = detail::load_turtle(metadata);
                doc.graph.insert_all(extra.graph);
                doc.prefixes = detail::merged(doc.prefixes, extra.prefixes);
            }
            detail::write_text(output, serialize_turtle(doc), out);
            return kOk;
        }
    } catch (const InputError& e) {
        err << e.what() << "\n";
        return kFailure;
    } catch (const Error& e) {
        err << "cloudeng: " << e.what() << "\n";
        return kFailure;
    } catch (const std::invalid_argument& e) {
        err << "cloudeng: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

}  // namespace cloudeng::cli
