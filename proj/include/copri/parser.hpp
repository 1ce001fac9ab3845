#ifndef COPRI_PARSER_HPP
#define COPRI_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "copri/diagnostics.hpp"
#include "copri/model.hpp"

// Text front end for the modeling language. One declaration per statement;
// statements may appear in any order and reference ids declared later.
namespace copri::cml {

// ===========================================================================
// Tokens
// ===========================================================================

enum class TokenType { Word, String, Punct, End };

struct Token {
    TokenType type = TokenType::End;
    std::string text;  // word spelling, string contents, or the punct char
    SourceSpan span;
};

// Splits the input into words, quoted strings and punctuation ({ } [ ] ,).
// `//` starts a line comment. Problems (unterminated string, character
// outside the alphabet) are reported and skipped, not fatal.
std::vector<Token> tokenize(std::string_view text, const std::string& file,
                            std::vector<Diagnostic>& diags);

// ===========================================================================
// Ast
// ===========================================================================

enum class DecompKind { And, Or };

struct RoleDecl {
    Ref id;
    std::string label;
    std::optional<Ref> parent;  // is_a
};

struct AgentDecl {
    Ref id;
    std::string label;
    std::vector<Ref> plays;
};

struct GoalDecl {
    Ref id;
    std::string label;
    std::optional<Ref> aimed_by;
    std::optional<DecompKind> decomp;
    std::vector<Ref> subgoals;
};

struct InfoDecl {
    Ref id;
    std::string label;
    bool personal = false;
    std::optional<Ref> owner;                      // personal only
    std::optional<SensitivityLevel> sensitivity;   // personal only
    std::optional<Ref> part_of;
};

struct UseDecl {
    Ref goal;
    UseType type = UseType::Read;
    Ref info;
    // Absent means the clause was not written; lowering applies the defaults
    // (need -> required, purpose -> compatible).
    std::optional<NeedToUse> need;
    std::optional<PurposeOfUse> purpose;
};

struct PermissionDecl {
    Ref id;
    UseType type = UseType::Read;
    Ref over;
    Ref held_by;
};

struct ProvisionDecl {
    Ref id;
    Ref of;
    Ref from;
    Ref to;
    ProvisionType type = ProvisionType::Confidential;
};

struct DelegateDecl {
    SubjectKind kind = SubjectKind::Permission;
    Ref id;
    Ref from;
    Ref to;
    Ref of;
};

struct AdoptDecl {
    Ref actor;
    Ref delegation;
};

struct TrustDecl {
    Ref id;
    Ref from;
    Ref to;
    SubjectKind kind = SubjectKind::Permission;
    Ref subject;
    TrustLevel level = TrustLevel::Trust;
};

struct MonitorDecl {
    Ref id;
    Ref by;  // the monitoring actor
    Ref of;  // the monitored actor
    SubjectKind kind = SubjectKind::Permission;
    Ref subject;
};

struct VulnerabilityDecl {
    Ref id;
    std::string label;
    std::vector<Ref> on;  // information subject to this vulnerability
};

struct ImpactClause {
    RiskLevel severity = RiskLevel::Low;
    Ref over;
};

struct ThreatDecl {
    ThreatKind kind = ThreatKind::Intentional;
    Ref id;
    std::string label;
    std::vector<Ref> threatens;
    std::vector<Ref> exploits;
    std::optional<Ref> actor;
    std::optional<Ref> method;
    std::optional<RiskLevel> probability;
    std::vector<ImpactClause> impacts;
};

struct AttackMethodDecl {
    Ref id;
    std::string label;
};

struct PrivacyGoalDecl {
    Ref id;
    std::string label;
    std::vector<Ref> mitigates;
    std::vector<Ref> realized_by;
};

struct PolicyDecl {
    Ref id;
    std::string label;
};

struct MechanismDecl {
    Ref id;
    std::string label;
    MechanismCapability capability = MechanismCapability::Other;
    std::vector<Ref> applied_to;
};

struct RequirementDecl {
    RequirementKind kind = RequirementKind::Confidentiality;
    Ref id;
    Ref concerning;
    std::vector<Ref> interpreted_by;
};

struct DescribesDecl {
    Ref info;
    Ref goal;
};

struct SituationDecl {
    Ref id;
    Ref info;
    SensitivityLevel level = SensitivityLevel::Restricted;
};

using Statement =
    std::variant<RoleDecl, AgentDecl, GoalDecl, InfoDecl, UseDecl, PermissionDecl, ProvisionDecl,
                 DelegateDecl, AdoptDecl, TrustDecl, MonitorDecl, VulnerabilityDecl, ThreatDecl,
                 AttackMethodDecl, PrivacyGoalDecl, PolicyDecl, MechanismDecl, RequirementDecl,
                 DescribesDecl, SituationDecl>;

struct Ast {
    bool has_header = false;
    std::string model_name;
    std::vector<Statement> statements;
};

// Structural equality, ignoring source positions (Ref compares by id only).
bool operator==(const Ast& a, const Ast& b);

// ===========================================================================
// Operations
// ===========================================================================

// Recursive-descent parse with per-statement recovery: an error inside one
// statement never swallows the statements after it.
Ast parse(const std::vector<Token>& tokens, std::vector<Diagnostic>& diags);

// Maps every declaration onto builder calls, in statement order. Name
// resolution happens later, in finalize.
ModelBuilder lower(const Ast& ast);

// Canonical text form; parse(pretty_print(ast)) reproduces ast.
std::string pretty_print(const Ast& ast);

struct ParseResult {
    std::optional<ModelGraph> graph;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return graph.has_value(); }
};

// tokenize + parse + lower + finalize. Diagnostics come back sorted by
// position; the graph is absent whenever any stage reported an error.
ParseResult parse_model(std::string_view text, const std::string& file);

}  // namespace copri::cml

#endif
