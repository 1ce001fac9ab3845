#include "copri/parser.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <set>
#include <sstream>

namespace copri::cml {

// ===========================================================================
// Lexer
// ===========================================================================

namespace {

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool punct_char(char c) {
    return c == '{' || c == '}' || c == '[' || c == ']' || c == ',';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& file,
                            std::vector<Diagnostic>& diags) {
    std::vector<Token> tokens;
    int line = 1;
    int column = 1;
    size_t i = 0;

    auto span_here = [&](int length) {
        SourceSpan s;
        s.file = file;
        s.line = line;
        s.column = column;
        s.length = length;
        return s;
    };
    auto bump = [&](char c) {
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump(c);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') bump(text[i]);
            continue;
        }
        if (word_char(c)) {
            SourceSpan span = span_here(0);
            std::string word;
            while (i < text.size() && word_char(text[i])) {
                word.push_back(text[i]);
                bump(text[i]);
            }
            span.length = static_cast<int>(word.size());
            tokens.push_back({TokenType::Word, std::move(word), std::move(span)});
            continue;
        }
        if (c == '"') {
            SourceSpan span = span_here(1);
            bump(c);
            std::string value;
            bool closed = false;
            while (i < text.size() && text[i] != '\n') {
                char d = text[i];
                if (d == '"') {
                    bump(d);
                    closed = true;
                    break;
                }
                if (d == '\\' && i + 1 < text.size() &&
                    (text[i + 1] == '"' || text[i + 1] == '\\')) {
                    bump(d);
                    value.push_back(text[i]);
                    bump(text[i]);
                    continue;
                }
                value.push_back(d);
                bump(d);
            }
            if (!closed) {
                diags.push_back({span, Severity::Error, "UnterminatedString",
                                 "string literal is missing its closing quote"});
            }
            span.length = column - span.column;
            tokens.push_back({TokenType::String, std::move(value), std::move(span)});
            continue;
        }
        if (punct_char(c)) {
            tokens.push_back({TokenType::Punct, std::string(1, c), span_here(1)});
            bump(c);
            continue;
        }
        diags.push_back({span_here(1), Severity::Error, "IllegalCharacter",
                         std::string("character '") + c + "' is not part of the language"});
        bump(c);
    }

    SourceSpan end = span_here(0);
    tokens.push_back({TokenType::End, "", std::move(end)});
    return tokens;
}

// ===========================================================================
// Ast equality (spans ignored; Ref compares by id)
// ===========================================================================

namespace {

bool eq(const std::optional<Ref>& a, const std::optional<Ref>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || a->id == b->id;
}

}  // namespace

static bool operator==(const ImpactClause& a, const ImpactClause& b) {
    return a.severity == b.severity && a.over == b.over;
}

static bool operator==(const RoleDecl& a, const RoleDecl& b) {
    return a.id == b.id && a.label == b.label && eq(a.parent, b.parent);
}
static bool operator==(const AgentDecl& a, const AgentDecl& b) {
    return a.id == b.id && a.label == b.label && a.plays == b.plays;
}
static bool operator==(const GoalDecl& a, const GoalDecl& b) {
    return a.id == b.id && a.label == b.label && eq(a.aimed_by, b.aimed_by) &&
           a.decomp == b.decomp && a.subgoals == b.subgoals;
}
static bool operator==(const InfoDecl& a, const InfoDecl& b) {
    return a.id == b.id && a.label == b.label && a.personal == b.personal &&
           eq(a.owner, b.owner) && a.sensitivity == b.sensitivity && eq(a.part_of, b.part_of);
}
static bool operator==(const UseDecl& a, const UseDecl& b) {
    return a.goal == b.goal && a.type == b.type && a.info == b.info && a.need == b.need &&
           a.purpose == b.purpose;
}
static bool operator==(const PermissionDecl& a, const PermissionDecl& b) {
    return a.id == b.id && a.type == b.type && a.over == b.over && a.held_by == b.held_by;
}
static bool operator==(const ProvisionDecl& a, const ProvisionDecl& b) {
    return a.id == b.id && a.of == b.of && a.from == b.from && a.to == b.to && a.type == b.type;
}
static bool operator==(const DelegateDecl& a, const DelegateDecl& b) {
    return a.kind == b.kind && a.id == b.id && a.from == b.from && a.to == b.to && a.of == b.of;
}
static bool operator==(const AdoptDecl& a, const AdoptDecl& b) {
    return a.actor == b.actor && a.delegation == b.delegation;
}
static bool operator==(const TrustDecl& a, const TrustDecl& b) {
    return a.id == b.id && a.from == b.from && a.to == b.to && a.kind == b.kind &&
           a.subject == b.subject && a.level == b.level;
}
static bool operator==(const MonitorDecl& a, const MonitorDecl& b) {
    return a.id == b.id && a.by == b.by && a.of == b.of && a.kind == b.kind &&
           a.subject == b.subject;
}
static bool operator==(const VulnerabilityDecl& a, const VulnerabilityDecl& b) {
    return a.id == b.id && a.label == b.label && a.on == b.on;
}
static bool operator==(const ThreatDecl& a, const ThreatDecl& b) {
    return a.kind == b.kind && a.id == b.id && a.label == b.label && a.threatens == b.threatens &&
           a.exploits == b.exploits && eq(a.actor, b.actor) && eq(a.method, b.method) &&
           a.probability == b.probability && a.impacts == b.impacts;
}
static bool operator==(const AttackMethodDecl& a, const AttackMethodDecl& b) {
    return a.id == b.id && a.label == b.label;
}
static bool operator==(const PrivacyGoalDecl& a, const PrivacyGoalDecl& b) {
    return a.id == b.id && a.label == b.label && a.mitigates == b.mitigates &&
           a.realized_by == b.realized_by;
}
static bool operator==(const PolicyDecl& a, const PolicyDecl& b) {
    return a.id == b.id && a.label == b.label;
}
static bool operator==(const MechanismDecl& a, const MechanismDecl& b) {
    return a.id == b.id && a.label == b.label && a.capability == b.capability &&
           a.applied_to == b.applied_to;
}
static bool operator==(const RequirementDecl& a, const RequirementDecl& b) {
    return a.kind == b.kind && a.id == b.id && a.concerning == b.concerning &&
           a.interpreted_by == b.interpreted_by;
}
static bool operator==(const DescribesDecl& a, const DescribesDecl& b) {
    return a.info == b.info && a.goal == b.goal;
}
static bool operator==(const SituationDecl& a, const SituationDecl& b) {
    return a.id == b.id && a.info == b.info && a.level == b.level;
}

bool operator==(const Ast& a, const Ast& b) {
    return a.has_header == b.has_header && a.model_name == b.model_name &&
           a.statements == b.statements;
}

// ===========================================================================
// Parser
// ===========================================================================

namespace {

const std::set<std::string>& statement_starters() {
    static const std::set<std::string> starters = {
        "model",     "role",    "agent",         "goal",        "info",
        "use",       "permission", "provision",  "delegate",    "adopt",
        "trust",     "monitor", "vulnerability", "threat",      "attackmethod",
        "privacygoal", "policy", "mechanism",    "requirement", "describes",
        "situation"};
    return starters;
}

std::string show(const Token& t) {
    switch (t.type) {
        case TokenType::Word: return "'" + t.text + "'";
        case TokenType::String: return "string \"" + t.text + "\"";
        case TokenType::Punct: return "'" + t.text + "'";
        case TokenType::End: return "end of file";
    }
    return "?";
}

class Parser {
  public:
    Parser(const std::vector<Token>& tokens, std::vector<Diagnostic>& diags)
        : tokens_(tokens), diags_(diags) {}

    Ast run() {
        Ast ast;
        if (at_word("model")) {
            advance();
            ast.has_header = true;
            if (peek().type == TokenType::String) ast.model_name = advance().text;
        }
        while (peek().type != TokenType::End) {
            try {
                parse_statement(ast);
            } catch (const Bail&) {
                sync();
            }
        }
        return ast;
    }

  private:
    struct Bail {};

    const std::vector<Token>& tokens_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;

    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool at_word(const char* w) const {
        return peek().type == TokenType::Word && peek().text == w;
    }
    bool accept_word(const char* w) {
        if (!at_word(w)) return false;
        advance();
        return true;
    }

    [[noreturn]] void fail(std::string code, std::string message) {
        diags_.push_back({peek().span, Severity::Error, std::move(code), std::move(message)});
        throw Bail{};
    }

    // Skip to the next statement keyword. The failing statement's own keyword
    // was already consumed, so this always makes progress.
    void sync() {
        while (peek().type != TokenType::End &&
               !(peek().type == TokenType::Word && statement_starters().count(peek().text))) {
            advance();
        }
    }

    void expect_word(const char* kw) {
        if (!accept_word(kw)) {
            fail("MissingClause", "expected '" + std::string(kw) + "', got " + show(peek()));
        }
    }

    Ref expect_id(const char* what) {
        if (peek().type != TokenType::Word) {
            fail("UnexpectedToken",
                 "expected " + std::string(what) + " identifier, got " + show(peek()));
        }
        const Token& t = advance();
        return Ref(t.text, t.span);
    }

    std::string accept_label() {
        if (peek().type != TokenType::String) return "";
        return advance().text;
    }

    bool accept_punct(char c) {
        if (peek().type == TokenType::Punct && peek().text[0] == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c)) {
            fail("UnexpectedToken",
                 "expected '" + std::string(1, c) + "', got " + show(peek()));
        }
    }

    std::string expect_one_of(std::initializer_list<const char*> words) {
        if (peek().type == TokenType::Word) {
            for (const char* w : words) {
                if (peek().text == w) return advance().text;
            }
        }
        std::ostringstream msg;
        msg << "expected one of";
        for (const char* w : words) msg << " '" << w << "'";
        msg << ", got " << show(peek());
        fail("UnexpectedToken", msg.str());
    }

    std::vector<Ref> id_list(const char* what) {
        std::vector<Ref> ids;
        ids.push_back(expect_id(what));
        while (accept_punct(',')) ids.push_back(expect_id(what));
        return ids;
    }

    UseType expect_use_type() {
        std::string w = expect_one_of({"produce", "read", "modify", "collect"});
        if (w == "produce") return UseType::Produce;
        if (w == "read") return UseType::Read;
        if (w == "modify") return UseType::Modify;
        return UseType::Collect;
    }

    SubjectKind expect_subject_kind() {
        return expect_one_of({"goal", "permission"}) == "goal" ? SubjectKind::Goal
                                                               : SubjectKind::Permission;
    }

    SensitivityLevel expect_sensitivity() {
        std::string w = expect_one_of({"R", "C", "S", "T"});
        return *sensitivity_from_letter(w[0]);
    }

    RiskLevel expect_risk() {
        std::string w = expect_one_of({"L", "M", "H"});
        return *risk_from_letter(w[0]);
    }

    void parse_statement(Ast& ast) {
        const Token& t = peek();
        if (t.type != TokenType::Word) {
            diags_.push_back({t.span, Severity::Error, "UnexpectedToken",
                              "expected a declaration, got " + show(t)});
            advance();
            return;
        }
        if (!statement_starters().count(t.text)) {
            diags_.push_back({t.span, Severity::Error, "UnknownKeyword",
                              "unknown declaration '" + t.text + "'"});
            advance();
            sync();  // one diagnostic per junk statement, not per junk word
            return;
        }
        if (t.text == "model") {
            diags_.push_back({t.span, Severity::Error, "UnexpectedToken",
                              "'model' must be the first statement of the file"});
            advance();
            if (peek().type == TokenType::String) advance();
            return;
        }

        std::string kw = advance().text;
        if (kw == "role") {
            RoleDecl d;
            d.id = expect_id("role");
            d.label = accept_label();
            if (accept_word("is_a")) d.parent = expect_id("role");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "agent") {
            AgentDecl d;
            d.id = expect_id("agent");
            d.label = accept_label();
            if (accept_word("plays")) d.plays = id_list("role");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "goal") {
            GoalDecl d;
            d.id = expect_id("goal");
            d.label = accept_label();
            if (accept_word("aimedBy")) d.aimed_by = expect_id("actor");
            if (accept_punct('{')) {
                d.decomp = expect_one_of({"and", "or"}) == "and" ? DecompKind::And : DecompKind::Or;
                expect_punct('[');
                d.subgoals = id_list("goal");
                expect_punct(']');
                expect_punct('}');
            }
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "info") {
            InfoDecl d;
            d.id = expect_id("information");
            d.label = accept_label();
            if (accept_word("personal")) {
                d.personal = true;
                expect_punct('{');
                expect_word("owner");
                d.owner = expect_id("actor");
                expect_word("sensitivity");
                d.sensitivity = expect_sensitivity();
                expect_punct('}');
            } else if (accept_word("public")) {
                d.personal = false;
            } else {
                fail("MissingClause",
                     "information must be declared 'personal' or 'public', got " + show(peek()));
            }
            if (accept_word("partOf")) d.part_of = expect_id("information");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "use") {
            UseDecl d;
            d.goal = expect_id("goal");
            d.type = expect_use_type();
            d.info = expect_id("information");
            if (accept_punct('{')) {
                if (accept_word("need")) {
                    d.need = expect_one_of({"required", "optional"}) == "required"
                                 ? NeedToUse::Require
                                 : NeedToUse::Optional;
                }
                if (accept_word("purpose")) {
                    d.purpose = expect_one_of({"compatible", "incompatible"}) == "compatible"
                                    ? PurposeOfUse::Compatible
                                    : PurposeOfUse::Incompatible;
                }
                expect_punct('}');
            }
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "permission") {
            PermissionDecl d;
            d.id = expect_id("permission");
            d.type = expect_use_type();
            expect_word("over");
            d.over = expect_id("information");
            expect_word("heldBy");
            d.held_by = expect_id("actor");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "provision") {
            ProvisionDecl d;
            d.id = expect_id("provision");
            expect_word("of");
            d.of = expect_id("information");
            expect_word("from");
            d.from = expect_id("actor");
            expect_word("to");
            d.to = expect_id("actor");
            d.type = expect_one_of({"confidential", "nonconfidential"}) == "confidential"
                         ? ProvisionType::Confidential
                         : ProvisionType::NonConfidential;
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "delegate") {
            DelegateDecl d;
            d.kind = expect_subject_kind();
            d.id = expect_id("delegation");
            expect_word("from");
            d.from = expect_id("actor");
            expect_word("to");
            d.to = expect_id("actor");
            expect_word("of");
            d.of = expect_id("delegated subject");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "adopt") {
            AdoptDecl d;
            d.actor = expect_id("actor");
            d.delegation = expect_id("delegation");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "trust") {
            TrustDecl d;
            d.id = expect_id("trust");
            expect_word("from");
            d.from = expect_id("actor");
            expect_word("to");
            d.to = expect_id("actor");
            expect_word("on");
            d.kind = expect_subject_kind();
            d.subject = expect_id("trusted subject");
            expect_word("level");
            d.level = expect_one_of({"trust", "distrust"}) == "trust" ? TrustLevel::Trust
                                                                      : TrustLevel::Distrust;
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "monitor") {
            MonitorDecl d;
            d.id = expect_id("monitoring");
            expect_word("by");
            d.by = expect_id("actor");
            expect_word("of");
            d.of = expect_id("actor");
            expect_word("on");
            d.kind = expect_subject_kind();
            d.subject = expect_id("monitored subject");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "vulnerability") {
            VulnerabilityDecl d;
            d.id = expect_id("vulnerability");
            d.label = accept_label();
            expect_word("on");
            d.on = id_list("information");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "threat") {
            ThreatDecl d;
            d.kind = expect_one_of({"intentional", "incidental"}) == "intentional"
                         ? ThreatKind::Intentional
                         : ThreatKind::Incidental;
            d.id = expect_id("threat");
            d.label = accept_label();
            expect_punct('{');
            expect_word("threatens");
            d.threatens = id_list("information");
            if (accept_word("exploits")) d.exploits = id_list("vulnerability");
            if (accept_word("actor")) d.actor = expect_id("actor");
            if (accept_word("method")) d.method = expect_id("attack method");
            if (accept_word("probability")) d.probability = expect_risk();
            do {
                expect_word("impact");
                expect_word("severity");
                ImpactClause impact;
                impact.severity = expect_risk();
                expect_word("over");
                impact.over = expect_id("information");
                d.impacts.push_back(std::move(impact));
            } while (at_word("impact"));
            expect_punct('}');
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "attackmethod") {
            AttackMethodDecl d;
            d.id = expect_id("attack method");
            d.label = accept_label();
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "privacygoal") {
            PrivacyGoalDecl d;
            d.id = expect_id("privacy goal");
            d.label = accept_label();
            if (accept_word("mitigates")) d.mitigates = id_list("vulnerability");
            if (accept_word("realizedBy")) d.realized_by = id_list("privacy constraint");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "policy") {
            PolicyDecl d;
            d.id = expect_id("policy");
            d.label = accept_label();
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "mechanism") {
            MechanismDecl d;
            d.id = expect_id("mechanism");
            d.label = accept_label();
            expect_word("capability");
            std::string cap = expect_one_of({"anonymize", "unlink", "other"});
            d.capability = cap == "anonymize" ? MechanismCapability::Anonymize
                           : cap == "unlink"  ? MechanismCapability::Unlink
                                              : MechanismCapability::Other;
            if (accept_word("appliedTo")) d.applied_to = id_list("information");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "requirement") {
            RequirementDecl d;
            std::string kind =
                expect_one_of({"confidentiality", "anonymity", "unlinkability", "unobservability",
                               "notice", "transparency", "accountability"});
            d.kind = kind == "confidentiality"  ? RequirementKind::Confidentiality
                     : kind == "anonymity"      ? RequirementKind::Anonymity
                     : kind == "unlinkability"  ? RequirementKind::Unlinkability
                     : kind == "unobservability" ? RequirementKind::Unobservability
                     : kind == "notice"         ? RequirementKind::Notice
                     : kind == "transparency"   ? RequirementKind::Transparency
                                                : RequirementKind::Accountability;
            d.id = expect_id("requirement");
            expect_word("concerning");
            d.concerning = expect_id("information");
            if (accept_word("interpretedBy")) d.interpreted_by = id_list("privacy goal");
            ast.statements.emplace_back(std::move(d));
        } else if (kw == "describes") {
            DescribesDecl d;
            d.info = expect_id("information");
            d.goal = expect_id("goal");
            ast.statements.emplace_back(std::move(d));
        } else {  // situation
            SituationDecl d;
            d.id = expect_id("situation");
            expect_word("determines");
            d.info = expect_id("information");
            d.level = expect_sensitivity();
            ast.statements.emplace_back(std::move(d));
        }
    }
};

}  // namespace

Ast parse(const std::vector<Token>& tokens, std::vector<Diagnostic>& diags) {
    return Parser(tokens, diags).run();
}

// ===========================================================================
// Lowering
// ===========================================================================

namespace {

struct Lowerer {
    ModelBuilder& b;

    static SourceSpan stmt_span(const Ref& id) { return id.span; }

    void operator()(const RoleDecl& d) {
        b.add_element(ElementKind::Role, d.id.id, d.label, {}, stmt_span(d.id));
        if (d.parent) b.add_edge(EdgeKind::IsA, d.id, *d.parent, {}, stmt_span(d.id));
    }
    void operator()(const AgentDecl& d) {
        b.add_element(ElementKind::Agent, d.id.id, d.label, {}, stmt_span(d.id));
        for (const Ref& r : d.plays) b.add_edge(EdgeKind::Plays, d.id, r, {}, stmt_span(d.id));
    }
    void operator()(const GoalDecl& d) {
        b.add_element(ElementKind::Goal, d.id.id, d.label, {}, stmt_span(d.id));
        if (d.aimed_by) b.add_edge(EdgeKind::Aims, *d.aimed_by, d.id, {}, stmt_span(d.id));
        if (d.decomp) {
            EdgeKind kind = *d.decomp == DecompKind::And ? EdgeKind::AndDecomposed
                                                         : EdgeKind::OrDecomposed;
            for (const Ref& sub : d.subgoals) b.add_edge(kind, d.id, sub, {}, stmt_span(d.id));
        }
    }
    void operator()(const InfoDecl& d) {
        ElementKind kind = d.personal ? ElementKind::PersonalInformation
                                      : ElementKind::PublicInformation;
        b.add_element(kind, d.id.id, d.label, d.sensitivity, stmt_span(d.id));
        if (d.owner) b.add_edge(EdgeKind::Own, *d.owner, d.id, {}, stmt_span(d.id));
        if (d.part_of) b.add_edge(EdgeKind::PartOf, d.id, *d.part_of, {}, stmt_span(d.id));
    }
    void operator()(const UseDecl& d) {
        UseRecord u;
        u.goal = d.goal;
        u.info = d.info;
        u.type = d.type;
        u.need = d.need.value_or(NeedToUse::Require);
        u.purpose = d.purpose.value_or(PurposeOfUse::Compatible);
        u.span = stmt_span(d.goal);
        b.add_use(std::move(u));
    }
    void operator()(const PermissionDecl& d) {
        PermissionRecord p;
        p.id = d.id.id;
        p.holder = d.held_by;
        p.type = d.type;
        p.over = d.over;
        p.span = stmt_span(d.id);
        b.add_permission(std::move(p));
    }
    void operator()(const ProvisionDecl& d) {
        ProvisionRecord p;
        p.id = d.id.id;
        p.of = d.of;
        p.from = d.from;
        p.to = d.to;
        p.type = d.type;
        p.span = stmt_span(d.id);
        b.add_provision(std::move(p));
    }
    void operator()(const DelegateDecl& d) {
        DelegationRecord rec;
        rec.id = d.id.id;
        rec.delegator = d.from;
        rec.delegatee = d.to;
        rec.kind = d.kind;
        rec.delegatum = d.of;
        rec.span = stmt_span(d.id);
        b.add_delegation(std::move(rec));
    }
    void operator()(const AdoptDecl& d) {
        b.add_edge(EdgeKind::Adopts, d.actor, d.delegation, {}, stmt_span(d.actor));
    }
    void operator()(const TrustDecl& d) {
        TrustRecord t;
        t.id = d.id.id;
        t.trustor = d.from;
        t.trustee = d.to;
        t.kind = d.kind;
        t.trustum = d.subject;
        t.level = d.level;
        t.span = stmt_span(d.id);
        b.add_trust(std::move(t));
    }
    void operator()(const MonitorDecl& d) {
        MonitorRecord m;
        m.id = d.id.id;
        m.monitor = d.by;
        m.monitoree = d.of;
        m.kind = d.kind;
        m.subject = d.subject;
        m.span = stmt_span(d.id);
        b.add_monitor(std::move(m));
    }
    void operator()(const VulnerabilityDecl& d) {
        b.add_element(ElementKind::Vulnerability, d.id.id, d.label, {}, stmt_span(d.id));
        for (const Ref& info : d.on) {
            b.add_edge(EdgeKind::IsSubjectTo, info, d.id, {}, stmt_span(d.id));
        }
    }
    void operator()(const ThreatDecl& d) {
        ThreatRecord t;
        t.id = d.id.id;
        t.kind = d.kind;
        t.label = d.label;
        t.threatens = d.threatens;
        t.exploits = d.exploits;
        t.actor = d.actor;
        t.method = d.method;
        t.probability = d.probability;
        t.span = stmt_span(d.id);
        b.add_threat(std::move(t));
        for (const ImpactClause& i : d.impacts) {
            ImpactRecord rec;
            rec.threat = d.id;
            rec.severity = i.severity;
            rec.over = i.over;
            rec.span = stmt_span(d.id);
            b.add_impact(std::move(rec));
        }
    }
    void operator()(const AttackMethodDecl& d) {
        b.add_element(ElementKind::AttackMethod, d.id.id, d.label, {}, stmt_span(d.id));
    }
    void operator()(const PrivacyGoalDecl& d) {
        b.add_element(ElementKind::PrivacyGoal, d.id.id, d.label, {}, stmt_span(d.id));
        for (const Ref& v : d.mitigates) {
            b.add_edge(EdgeKind::Mitigates, d.id, v, {}, stmt_span(d.id));
        }
        for (const Ref& c : d.realized_by) {
            b.add_edge(EdgeKind::RealizedBy, d.id, c, {}, stmt_span(d.id));
        }
    }
    void operator()(const PolicyDecl& d) {
        b.add_element(ElementKind::PrivacyPolicy, d.id.id, d.label, {}, stmt_span(d.id));
    }
    void operator()(const MechanismDecl& d) {
        MechanismRecord m;
        m.id = d.id.id;
        m.label = d.label;
        m.capability = d.capability;
        m.applied_to = d.applied_to;
        m.span = stmt_span(d.id);
        b.add_mechanism(std::move(m));
    }
    void operator()(const RequirementDecl& d) {
        RequirementRecord r;
        r.id = d.id.id;
        r.kind = d.kind;
        r.concerning = d.concerning;
        r.interpreted_by = d.interpreted_by;
        r.span = stmt_span(d.id);
        b.add_requirement(std::move(r));
    }
    void operator()(const DescribesDecl& d) {
        b.add_edge(EdgeKind::Describes, d.info, d.goal, {}, stmt_span(d.info));
    }
    void operator()(const SituationDecl& d) {
        b.add_element(ElementKind::Situation, d.id.id, "", {}, stmt_span(d.id));
        b.add_edge(EdgeKind::Determines, d.id, d.info, d.level, stmt_span(d.id));
    }
};

}  // namespace

ModelBuilder lower(const Ast& ast) {
    ModelBuilder builder;
    builder.set_name(ast.model_name);
    Lowerer lowerer{builder};
    for (const Statement& s : ast.statements) std::visit(lowerer, s);
    return builder;
}

// ===========================================================================
// Pretty printer
// ===========================================================================

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

struct Printer {
    std::ostringstream& out;

    void label(const std::string& s) {
        if (!s.empty()) out << " " << quoted(s);
    }
    void ids(const std::vector<Ref>& refs) {
        for (size_t i = 0; i < refs.size(); ++i) out << (i ? ", " : " ") << refs[i].id;
    }

    void operator()(const RoleDecl& d) {
        out << "role " << d.id.id;
        label(d.label);
        if (d.parent) out << " is_a " << d.parent->id;
    }
    void operator()(const AgentDecl& d) {
        out << "agent " << d.id.id;
        label(d.label);
        if (!d.plays.empty()) {
            out << " plays";
            ids(d.plays);
        }
    }
    void operator()(const GoalDecl& d) {
        out << "goal " << d.id.id;
        label(d.label);
        if (d.aimed_by) out << " aimedBy " << d.aimed_by->id;
        if (d.decomp) {
            out << " { " << (*d.decomp == DecompKind::And ? "and" : "or") << " [";
            ids(d.subgoals);
            out << " ] }";
        }
    }
    void operator()(const InfoDecl& d) {
        out << "info " << d.id.id;
        label(d.label);
        if (d.personal) {
            out << " personal { owner " << (d.owner ? d.owner->id : "") << " sensitivity "
                << (d.sensitivity ? sensitivity_letter(*d.sensitivity) : '?') << " }";
        } else {
            out << " public";
        }
        if (d.part_of) out << " partOf " << d.part_of->id;
    }
    void operator()(const UseDecl& d) {
        out << "use " << d.goal.id << " " << to_string(d.type) << " " << d.info.id;
        if (d.need || d.purpose) {
            out << " {";
            if (d.need) out << " need " << to_string(*d.need);
            if (d.purpose) out << " purpose " << to_string(*d.purpose);
            out << " }";
        }
    }
    void operator()(const PermissionDecl& d) {
        out << "permission " << d.id.id << " " << to_string(d.type) << " over " << d.over.id
            << " heldBy " << d.held_by.id;
    }
    void operator()(const ProvisionDecl& d) {
        out << "provision " << d.id.id << " of " << d.of.id << " from " << d.from.id << " to "
            << d.to.id << " " << to_string(d.type);
    }
    void operator()(const DelegateDecl& d) {
        out << "delegate " << to_string(d.kind) << " " << d.id.id << " from " << d.from.id
            << " to " << d.to.id << " of " << d.of.id;
    }
    void operator()(const AdoptDecl& d) { out << "adopt " << d.actor.id << " " << d.delegation.id; }
    void operator()(const TrustDecl& d) {
        out << "trust " << d.id.id << " from " << d.from.id << " to " << d.to.id << " on "
            << to_string(d.kind) << " " << d.subject.id << " level " << to_string(d.level);
    }
    void operator()(const MonitorDecl& d) {
        out << "monitor " << d.id.id << " by " << d.by.id << " of " << d.of.id << " on "
            << to_string(d.kind) << " " << d.subject.id;
    }
    void operator()(const VulnerabilityDecl& d) {
        out << "vulnerability " << d.id.id;
        label(d.label);
        out << " on";
        ids(d.on);
    }
    void operator()(const ThreatDecl& d) {
        out << "threat " << to_string(d.kind) << " " << d.id.id;
        label(d.label);
        out << " { threatens";
        ids(d.threatens);
        if (!d.exploits.empty()) {
            out << " exploits";
            ids(d.exploits);
        }
        if (d.actor) out << " actor " << d.actor->id;
        if (d.method) out << " method " << d.method->id;
        if (d.probability) out << " probability " << risk_letter(*d.probability);
        for (const ImpactClause& i : d.impacts) {
            out << " impact severity " << risk_letter(i.severity) << " over " << i.over.id;
        }
        out << " }";
    }
    void operator()(const AttackMethodDecl& d) {
        out << "attackmethod " << d.id.id;
        label(d.label);
    }
    void operator()(const PrivacyGoalDecl& d) {
        out << "privacygoal " << d.id.id;
        label(d.label);
        if (!d.mitigates.empty()) {
            out << " mitigates";
            ids(d.mitigates);
        }
        if (!d.realized_by.empty()) {
            out << " realizedBy";
            ids(d.realized_by);
        }
    }
    void operator()(const PolicyDecl& d) {
        out << "policy " << d.id.id;
        label(d.label);
    }
    void operator()(const MechanismDecl& d) {
        out << "mechanism " << d.id.id;
        label(d.label);
        out << " capability " << to_string(d.capability);
        if (!d.applied_to.empty()) {
            out << " appliedTo";
            ids(d.applied_to);
        }
    }
    void operator()(const RequirementDecl& d) {
        out << "requirement " << to_string(d.kind) << " " << d.id.id << " concerning "
            << d.concerning.id;
        if (!d.interpreted_by.empty()) {
            out << " interpretedBy";
            ids(d.interpreted_by);
        }
    }
    void operator()(const DescribesDecl& d) { out << "describes " << d.info.id << " " << d.goal.id; }
    void operator()(const SituationDecl& d) {
        out << "situation " << d.id.id << " determines " << d.info.id << " "
            << sensitivity_letter(d.level);
    }
};

}  // namespace

std::string pretty_print(const Ast& ast) {
    std::ostringstream out;
    if (ast.has_header) {
        out << "model";
        if (!ast.model_name.empty()) out << " " << quoted(ast.model_name);
        out << "\n";
    }
    Printer printer{out};
    for (const Statement& s : ast.statements) {
        std::visit(printer, s);
        out << "\n";
    }
    return out.str();
}

// ===========================================================================
// Pipeline
// ===========================================================================

ParseResult parse_model(std::string_view text, const std::string& file) {
    std::vector<Diagnostic> diags;
    std::vector<Token> tokens = tokenize(text, file, diags);

    // Tokenizer errors are local (a skipped character, a patched-up string),
    // so parsing still sees a usable stream and runs regardless. Dropped
    // statements are another matter: resolving names against a partial AST
    // would blame every reference to the dropped declaration, so resolution
    // only runs when the parser itself stayed clean.
    size_t before_parse = diags.size();
    Ast ast = parse(tokens, diags);
    bool parse_failed = diags.size() > before_parse;

    if (!parse_failed) {
        BuildResult built = lower(ast).finalize();
        for (Diagnostic& d : built.diagnostics) diags.push_back(std::move(d));
        if (built.ok() && !has_errors(diags)) {
            sort_diagnostics(diags);
            return {std::move(built.graph), std::move(diags)};
        }
    }
    sort_diagnostics(diags);
    return {std::nullopt, std::move(diags)};
}

}  // namespace copri::cml
