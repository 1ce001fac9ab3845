#ifndef COPRI_MODEL_HPP
#define COPRI_MODEL_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "copri/diagnostics.hpp"

namespace copri {

// ===========================================================================
// Vocabulary
// ===========================================================================

enum class ElementKind {
    Role,
    Agent,
    Goal,
    PersonalInformation,
    PublicInformation,
    Situation,
    Vulnerability,
    IntentionalThreat,
    IncidentalThreat,
    AttackMethod,
    PrivacyGoal,
    PrivacyPolicy,
    PrivacyMechanism,
    PrivacyRequirement,
};
inline constexpr int kElementKindCount = 14;

// Ordered: Restricted < Confidential < Sensitive < Secret.
enum class SensitivityLevel { Restricted, Confidential, Sensitive, Secret };

enum class UseType { Produce, Read, Modify, Collect };
enum class NeedToUse { Require, Optional };
enum class PurposeOfUse { Compatible, Incompatible };
enum class ProvisionType { Confidential, NonConfidential };

// What a delegation / trust / monitoring relationship is about.
enum class SubjectKind { Goal, Permission };

enum class TrustLevel { Trust, Distrust };

// Shared scale for impact severity and incidental-threat probability.
enum class RiskLevel { Low, Medium, High };

enum class ThreatKind { Intentional, Incidental };

enum class RequirementKind {
    Confidentiality,
    Anonymity,
    Unlinkability,
    Unobservability,
    Notice,
    Transparency,
    Accountability,
};

// What a privacy mechanism actually does to the information it is applied to.
enum class MechanismCapability { Anonymize, Unlink, Other };

// Plain binary relations stored as edges. Everything with extra payload
// (uses, permissions, provisions, delegations, trust, monitoring, threats,
// impacts, requirements, mechanisms) is a record instead.
enum class EdgeKind {
    Aims,           // Actor -> Goal
    Plays,          // Agent -> Role
    IsA,            // Role -> Role (specialization)
    PartOf,         // Information -> Information (part -> whole)
    Own,            // Actor -> PersonalInformation
    Describes,      // PersonalInformation -> Goal
    Determines,     // Situation -> PersonalInformation, carries a level
    IsSubjectTo,    // PersonalInformation -> Vulnerability
    Mitigates,      // PrivacyGoal -> Vulnerability
    RealizedBy,     // PrivacyGoal -> PrivacyPolicy | PrivacyMechanism
    AndDecomposed,  // Goal -> subgoal
    OrDecomposed,   // Goal -> subgoal
    Adopts,         // Actor -> Delegation
};
inline constexpr int kEdgeKindCount = 13;

const char* to_string(ElementKind k);
const char* to_string(SensitivityLevel s);
const char* to_string(UseType t);
const char* to_string(NeedToUse n);
const char* to_string(PurposeOfUse p);
const char* to_string(ProvisionType p);
const char* to_string(SubjectKind s);
const char* to_string(TrustLevel t);
const char* to_string(RiskLevel l);
const char* to_string(ThreatKind k);
const char* to_string(RequirementKind k);
const char* to_string(MechanismCapability c);
const char* to_string(EdgeKind k);

std::optional<SensitivityLevel> sensitivity_from_letter(char c);  // R C S T
char sensitivity_letter(SensitivityLevel s);
std::optional<RiskLevel> risk_from_letter(char c);  // L M H
char risk_letter(RiskLevel l);

// ===========================================================================
// Records
// ===========================================================================

// Reference to another element or record by id. Carries the source position
// of the mention so unresolved-reference diagnostics point at the use site,
// not the statement. Implicitly constructible from a string for builder code
// that has no source text.
struct Ref {
    std::string id;
    SourceSpan span;

    Ref() = default;
    Ref(std::string i) : id(std::move(i)) {}  // NOLINT: implicit by design
    Ref(const char* i) : id(i) {}             // NOLINT
    Ref(std::string i, SourceSpan s) : id(std::move(i)), span(std::move(s)) {}
};

inline bool operator==(const Ref& a, const Ref& b) { return a.id == b.id; }
inline bool operator<(const Ref& a, const Ref& b) { return a.id < b.id; }

struct Element {
    std::string id;
    ElementKind kind = ElementKind::Role;
    std::string label;  // optional human-readable name; may be empty
    std::optional<SensitivityLevel> sensitivity;  // personal information only
    SourceSpan span;
};

// A goal reading/producing/modifying/collecting some information.
struct UseRecord {
    Ref goal;
    Ref info;
    UseType type = UseType::Read;
    NeedToUse need = NeedToUse::Require;
    PurposeOfUse purpose = PurposeOfUse::Compatible;
    SourceSpan span;
};

struct PermissionRecord {
    std::string id;
    Ref holder;
    UseType type = UseType::Read;
    Ref over;  // personal information the permission is about
    SourceSpan span;
};

struct ProvisionRecord {
    std::string id;
    Ref of;    // information being transmitted
    Ref from;  // sending actor
    Ref to;    // receiving actor
    ProvisionType type = ProvisionType::Confidential;
    SourceSpan span;
};

struct DelegationRecord {
    std::string id;
    Ref delegator;
    Ref delegatee;
    SubjectKind kind = SubjectKind::Permission;
    Ref delegatum;  // Goal element or Permission record, matching `kind`
    SourceSpan span;
};

struct TrustRecord {
    std::string id;
    Ref trustor;
    Ref trustee;
    SubjectKind kind = SubjectKind::Permission;
    Ref trustum;
    TrustLevel level = TrustLevel::Trust;
    SourceSpan span;
};

struct MonitorRecord {
    std::string id;
    Ref monitor;
    Ref monitoree;
    SubjectKind kind = SubjectKind::Permission;
    Ref subject;
    SourceSpan span;
};

// Threats are elements (so they can be referenced) plus this payload.
struct ThreatRecord {
    std::string id;
    ThreatKind kind = ThreatKind::Intentional;
    std::string label;
    std::vector<Ref> threatens;            // personal information, at least one
    std::vector<Ref> exploits;             // vulnerabilities
    std::optional<Ref> actor;              // intentional only
    std::optional<Ref> method;             // intentional only
    std::optional<RiskLevel> probability;  // incidental only
    SourceSpan span;
};

struct ImpactRecord {
    Ref threat;
    RiskLevel severity = RiskLevel::Low;
    Ref over;  // personal information the impact lands on
    SourceSpan span;
};

struct RequirementRecord {
    std::string id;
    RequirementKind kind = RequirementKind::Confidentiality;
    Ref concerning;                   // personal information
    std::vector<Ref> interpreted_by;  // privacy goals
    SourceSpan span;
};

struct MechanismRecord {
    std::string id;
    std::string label;
    MechanismCapability capability = MechanismCapability::Other;
    std::vector<Ref> applied_to;  // personal information
    SourceSpan span;
};

struct Edge {
    EdgeKind kind = EdgeKind::Aims;
    Ref source;
    Ref target;
    std::optional<SensitivityLevel> level;  // Determines only
    SourceSpan span;
};

// ===========================================================================
// Node kinds
// ===========================================================================

// Identified records share the id namespace with elements; signature checks
// need to classify both. One NodeKind per element kind plus one per
// identified record type.
enum class NodeKind {
    Role,
    Agent,
    Goal,
    PersonalInformation,
    PublicInformation,
    Situation,
    Vulnerability,
    IntentionalThreat,
    IncidentalThreat,
    AttackMethod,
    PrivacyGoal,
    PrivacyPolicy,
    PrivacyMechanism,
    PrivacyRequirement,
    Permission,
    Provision,
    Delegation,
    Trust,
    Monitor,
};

const char* to_string(NodeKind k);
NodeKind node_kind_of(ElementKind k);

bool is_actor(NodeKind k);        // Role | Agent
bool is_information(NodeKind k);  // Personal | Public
bool is_threat(NodeKind k);       // Intentional | Incidental
bool is_constraint(NodeKind k);   // PrivacyPolicy | PrivacyMechanism

// ===========================================================================
// Graph
// ===========================================================================

class UnknownElementError : public std::invalid_argument {
  public:
    explicit UnknownElementError(const std::string& id)
        : std::invalid_argument("unknown element '" + id + "'"), id_(id) {}
    const std::string& id() const { return id_; }

  private:
    std::string id_;
};

struct PermissionOptions {
    // When set, a permission over a whole extends to every transitive part.
    bool parts_inherit = false;
};

// Immutable, fully resolved model. Produced only by ModelBuilder::finalize;
// every Ref in it names an existing node and all ids are unique.
class ModelGraph {
  public:
    const std::string& name() const { return name_; }

    // --- node lookup ------------------------------------------------------
    bool has_node(const std::string& id) const;
    const Element* find_element(const std::string& id) const;  // nullptr if absent
    // Classifies elements and identified records alike; throws UnknownElementError.
    NodeKind node_kind(const std::string& id) const;

    const std::map<std::string, Element>& elements() const { return elements_; }
    // Ids of all elements of one kind, sorted.
    const std::vector<std::string>& elements_of_kind(ElementKind k) const;

    // --- records ----------------------------------------------------------
    const std::vector<UseRecord>& uses() const { return uses_; }
    const std::map<std::string, PermissionRecord>& permissions() const { return permissions_; }
    const std::map<std::string, ProvisionRecord>& provisions() const { return provisions_; }
    const std::map<std::string, DelegationRecord>& delegations() const { return delegations_; }
    const std::map<std::string, TrustRecord>& trusts() const { return trusts_; }
    const std::map<std::string, MonitorRecord>& monitors() const { return monitors_; }
    const std::vector<ImpactRecord>& impacts() const { return impacts_; }
    const std::map<std::string, ThreatRecord>& threats() const { return threats_; }
    const std::map<std::string, RequirementRecord>& requirements() const { return requirements_; }
    const std::map<std::string, MechanismRecord>& mechanisms() const { return mechanisms_; }

    const PermissionRecord* find_permission(const std::string& id) const;
    const DelegationRecord* find_delegation(const std::string& id) const;
    const ThreatRecord* find_threat(const std::string& id) const;

    // --- edges --------------------------------------------------------------
    const std::vector<Edge>& edges() const { return edges_; }
    // Edges of one kind leaving / entering a node, in deterministic order.
    std::vector<const Edge*> out_edges(const std::string& id, EdgeKind k) const;
    std::vector<const Edge*> in_edges(const std::string& id, EdgeKind k) const;

    // --- derived queries ----------------------------------------------------
    // Roles an actor has, directly or through specialization. For an agent:
    // every role it plays plus all their is_a ancestors. For a role: itself
    // plus its ancestors. Cycle-safe. Throws UnknownElementError.
    std::set<std::string> role_closure(const std::string& actor_id) const;

    // Owner of a piece of information, if any. Public information and
    // unowned personal information yield nullopt.
    std::optional<std::string> owner_of(const std::string& info_id) const;

    // The information itself plus everything that is transitively partOf it.
    std::set<std::string> transitive_parts(const std::string& info_id) const;

    // Every (use type, information) pair the actor may exercise: permissions
    // held directly, permissions held by any role in role_closure, and full
    // control over everything the actor (or such a role) owns.
    std::set<std::pair<UseType, std::string>> effective_permissions(
        const std::string& actor_id, const PermissionOptions& opts = {}) const;

  private:
    friend class ModelBuilder;

    void build_indexes();
    void require_node(const std::string& id) const;

    std::string name_;
    std::map<std::string, Element> elements_;
    std::vector<UseRecord> uses_;
    std::map<std::string, PermissionRecord> permissions_;
    std::map<std::string, ProvisionRecord> provisions_;
    std::map<std::string, DelegationRecord> delegations_;
    std::map<std::string, TrustRecord> trusts_;
    std::map<std::string, MonitorRecord> monitors_;
    std::vector<ImpactRecord> impacts_;
    std::map<std::string, ThreatRecord> threats_;
    std::map<std::string, RequirementRecord> requirements_;
    std::map<std::string, MechanismRecord> mechanisms_;
    std::vector<Edge> edges_;

    std::map<std::string, NodeKind> node_kinds_;
    std::array<std::vector<std::string>, kElementKindCount> by_kind_;
    // Adjacency as indexes into edges_, one map per edge kind.
    std::array<std::map<std::string, std::vector<size_t>>, kEdgeKindCount> out_;
    std::array<std::map<std::string, std::vector<size_t>>, kEdgeKindCount> in_;
    std::map<std::string, std::vector<std::string>> perms_by_holder_;
};

// Result of finalize: exactly one of graph / diagnostics is populated.
struct BuildResult {
    std::optional<ModelGraph> graph;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return graph.has_value(); }
};

// Accumulates declarations in any order; finalize resolves references and
// reports every problem it can find in one pass (no fail-fast). Move-only:
// a builder belongs to one producer and is consumed by finalize.
class ModelBuilder {
  public:
    ModelBuilder() = default;
    ModelBuilder(const ModelBuilder&) = delete;
    ModelBuilder& operator=(const ModelBuilder&) = delete;
    ModelBuilder(ModelBuilder&&) = default;
    ModelBuilder& operator=(ModelBuilder&&) = default;

    ModelBuilder& set_name(std::string name);

    ModelBuilder& add_element(ElementKind kind, std::string id, std::string label = "",
                              std::optional<SensitivityLevel> sensitivity = {},
                              SourceSpan span = {});
    ModelBuilder& add_use(UseRecord use);
    ModelBuilder& add_permission(PermissionRecord perm);
    ModelBuilder& add_provision(ProvisionRecord prov);
    ModelBuilder& add_delegation(DelegationRecord del);
    ModelBuilder& add_trust(TrustRecord trust);
    ModelBuilder& add_monitor(MonitorRecord mon);
    ModelBuilder& add_threat(ThreatRecord threat);  // creates the element too
    ModelBuilder& add_impact(ImpactRecord impact);
    ModelBuilder& add_requirement(RequirementRecord req);  // creates the element too
    ModelBuilder& add_mechanism(MechanismRecord mech);     // creates the element too
    ModelBuilder& add_edge(EdgeKind kind, Ref source, Ref target,
                           std::optional<SensitivityLevel> level = {}, SourceSpan span = {});

    // Checks: DuplicateId, UnresolvedReference, KindMismatch (delegatum /
    // trustum / monitored subject vs. declared subject kind, and threat
    // attributes vs. threat kind), MissingAttribute, MultipleOwners.
    BuildResult finalize() &&;

  private:
    std::string name_;
    std::vector<Element> elements_;
    std::vector<UseRecord> uses_;
    std::vector<PermissionRecord> permissions_;
    std::vector<ProvisionRecord> provisions_;
    std::vector<DelegationRecord> delegations_;
    std::vector<TrustRecord> trusts_;
    std::vector<MonitorRecord> monitors_;
    std::vector<ImpactRecord> impacts_;
    std::vector<ThreatRecord> threats_;
    std::vector<RequirementRecord> requirements_;
    std::vector<MechanismRecord> mechanisms_;
    std::vector<Edge> edges_;
};

}  // namespace copri

#endif
