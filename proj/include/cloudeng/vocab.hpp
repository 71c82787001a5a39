#pragma once
// IRIs of the Cloud Engine and security ontologies plus the W3C terms the
// toolkit traverses.

#include "cloudeng/rdf.hpp"

#include <string>

namespace cloudeng::vocab {

inline constexpr const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kShNs = "http://www.w3.org/ns/shacl#";
inline constexpr const char* kCloudengNs = "http://example.org/cloudengine#";
inline constexpr const char* kSecNs = "http://example.org/security#";

namespace rdf {
inline const Iri type{std::string(kRdfNs) + "type"};
inline const Iri Property{std::string(kRdfNs) + "Property"};
}  // namespace rdf

namespace rdfs {
inline const Iri Class{std::string(kRdfsNs) + "Class"};
inline const Iri subClassOf{std::string(kRdfsNs) + "subClassOf"};
inline const Iri label{std::string(kRdfsNs) + "label"};
inline const Iri comment{std::string(kRdfsNs) + "comment"};
inline const Iri domain{std::string(kRdfsNs) + "domain"};
inline const Iri range{std::string(kRdfsNs) + "range"};
}  // namespace rdfs

namespace sh {
inline const Iri NodeShape{std::string(kShNs) + "NodeShape"};
inline const Iri targetClass{std::string(kShNs) + "targetClass"};
inline const Iri property{std::string(kShNs) + "property"};
inline const Iri path{std::string(kShNs) + "path"};
inline const Iri minCount{std::string(kShNs) + "minCount"};
inline const Iri maxCount{std::string(kShNs) + "maxCount"};
inline const Iri class_{std::string(kShNs) + "class"};
inline const Iri message{std::string(kShNs) + "message"};
}  // namespace sh

namespace cloudeng {
inline const Iri CloudEngine{std::string(kCloudengNs) + "CloudEngine"};
inline const Iri Interface{std::string(kCloudengNs) + "Interface"};
inline const Iri ControlInterface{std::string(kCloudengNs) + "ControlInterface"};
inline const Iri BusinessInterface{std::string(kCloudengNs) + "BusinessInterface"};
inline const Iri AuditInterface{std::string(kCloudengNs) + "AuditInterface"};
inline const Iri DataInterface{std::string(kCloudengNs) + "DataInterface"};
inline const Iri hasControlInterface{std::string(kCloudengNs) + "hasControlInterface"};
inline const Iri hasBusinessInterface{std::string(kCloudengNs) + "hasBusinessInterface"};
inline const Iri hasAuditInterface{std::string(kCloudengNs) + "hasAuditInterface"};
inline const Iri hasDataInterface{std::string(kCloudengNs) + "hasDataInterface"};
inline const Iri serviceVersion{std::string(kCloudengNs) + "serviceVersion"};
inline const Iri policyFileHash{std::string(kCloudengNs) + "policyFileHash"};

// Inventory terms emitted by the OpenStack importer.
inline const Iri Endpoint{std::string(kCloudengNs) + "Endpoint"};
inline const Iri Project{std::string(kCloudengNs) + "Project"};
inline const Iri User{std::string(kCloudengNs) + "User"};
inline const Iri Group{std::string(kCloudengNs) + "Group"};
inline const Iri RoleAssignment{std::string(kCloudengNs) + "RoleAssignment"};
inline const Iri serviceType{std::string(kCloudengNs) + "serviceType"};
inline const Iri hasEndpoint{std::string(kCloudengNs) + "hasEndpoint"};
inline const Iri endpointUrl{std::string(kCloudengNs) + "endpointUrl"};
inline const Iri endpointInterface{std::string(kCloudengNs) + "endpointInterface"};
inline const Iri region{std::string(kCloudengNs) + "region"};
inline const Iri enabled{std::string(kCloudengNs) + "enabled"};
inline const Iri domainId{std::string(kCloudengNs) + "domainId"};
inline const Iri roleName{std::string(kCloudengNs) + "roleName"};
inline const Iri assignee{std::string(kCloudengNs) + "assignee"};
inline const Iri scopeProject{std::string(kCloudengNs) + "scopeProject"};
}  // namespace cloudeng

namespace sec {
inline const Iri SecurityPolicy{std::string(kSecNs) + "SecurityPolicy"};
inline const Iri IdentityProvider{std::string(kSecNs) + "IdentityProvider"};
inline const Iri AuthenticationMechanism{std::string(kSecNs) + "AuthenticationMechanism"};
inline const Iri AuthorizationMechanism{std::string(kSecNs) + "AuthorizationMechanism"};
inline const Iri EncryptionMethod{std::string(kSecNs) + "EncryptionMethod"};
inline const Iri EncryptionScope{std::string(kSecNs) + "EncryptionScope"};
inline const Iri TransportSecurityProtocol{std::string(kSecNs) + "TransportSecurityProtocol"};
inline const Iri ComplianceStandard{std::string(kSecNs) + "ComplianceStandard"};
inline const Iri KeyManagement{std::string(kSecNs) + "KeyManagement"};
inline const Iri hasSecurityPolicy{std::string(kSecNs) + "hasSecurityPolicy"};
inline const Iri usesIdentityProvider{std::string(kSecNs) + "usesIdentityProvider"};
inline const Iri supportsAuthentication{std::string(kSecNs) + "supportsAuthentication"};
inline const Iri enforcesAuthorization{std::string(kSecNs) + "enforcesAuthorization"};
inline const Iri encryptsData{std::string(kSecNs) + "encryptsData"};
inline const Iri encryptionScope{std::string(kSecNs) + "encryptionScope"};
inline const Iri usesTransportSecurity{std::string(kSecNs) + "usesTransportSecurity"};
inline const Iri compliesWith{std::string(kSecNs) + "compliesWith"};
inline const Iri implementsStandard{std::string(kSecNs) + "implementsStandard"};
inline const Iri usesKMS{std::string(kSecNs) + "usesKMS"};
}  // namespace sec

// Prefix block of the published model.
inline PrefixMap model_prefixes() {
    PrefixMap pm;
    pm.bind("rdf", Iri(kRdfNs));
    pm.bind("rdfs", Iri(kRdfsNs));
    pm.bind("xsd", Iri(kXsdNs));
    pm.bind("cloudeng", Iri(kCloudengNs));
    pm.bind("sec", Iri(kSecNs));
    pm.bind("iso27001", Iri("https://www.iso.org/standard/27001#"));
    pm.bind("nist80053", Iri("https://csrc.nist.gov/publications/detail/sp/800-53/rev-5/final#"));
    pm.bind("aws", Iri("https://aws.amazon.com/architecture/well-architected#"));
    pm.bind("openstack", Iri("https://docs.openstack.org/#"));
    pm.bind("gdpr", Iri("https://eur-lex.europa.eu/legal-content/EN/TXT/?uri=CELEX:32016R0679#"));
    pm.bind("csa", Iri("https://cloudsecurityalliance.org/artifacts/cloud-controls-matrix/#"));
    return pm;
}

}  // namespace cloudeng::vocab
