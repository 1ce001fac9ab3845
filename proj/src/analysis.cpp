#include "copri/analysis.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace copri::analysis {

// ===========================================================================
// Check ids
// ===========================================================================

std::string to_string(CheckId id) {
    return "CQ" + std::to_string(static_cast<int>(id));
}

std::optional<CheckId> parse_check_id(const std::string& text) {
    if (text.size() < 3 || text[0] != 'C' || text[1] != 'Q') return std::nullopt;
    int value = 0;
    for (size_t i = 2; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') return std::nullopt;
        value = value * 10 + (text[i] - '0');
        if (value > 26) return std::nullopt;
    }
    if (value < 1) return std::nullopt;
    return static_cast<CheckId>(value);
}

const std::vector<CheckId>& all_checks() {
    static const std::vector<CheckId> all = [] {
        std::vector<CheckId> v;
        for (int i = 1; i <= 26; ++i) v.push_back(static_cast<CheckId>(i));
        return v;
    }();
    return all;
}

std::optional<std::vector<CheckId>> parse_check_set(const std::string& text, std::string& error) {
    std::set<CheckId> selected;
    std::stringstream stream(text);
    std::string item;
    bool any = false;
    while (std::getline(stream, item, ',')) {
        // tolerate spaces around items
        size_t begin = item.find_first_not_of(" \t");
        size_t end = item.find_last_not_of(" \t");
        if (begin == std::string::npos) continue;
        item = item.substr(begin, end - begin + 1);
        any = true;

        size_t dash = item.find('-');
        if (dash == std::string::npos) {
            std::optional<CheckId> id = parse_check_id(item);
            if (!id) {
                error = "unknown check id '" + item + "'";
                return std::nullopt;
            }
            selected.insert(*id);
        } else {
            std::optional<CheckId> lo = parse_check_id(item.substr(0, dash));
            std::optional<CheckId> hi = parse_check_id(item.substr(dash + 1));
            if (!lo || !hi || static_cast<int>(*lo) > static_cast<int>(*hi)) {
                error = "invalid check range '" + item + "'";
                return std::nullopt;
            }
            for (int i = static_cast<int>(*lo); i <= static_cast<int>(*hi); ++i) {
                selected.insert(static_cast<CheckId>(i));
            }
        }
    }
    if (!any) {
        error = "empty check list";
        return std::nullopt;
    }
    return std::vector<CheckId>(selected.begin(), selected.end());
}

std::string describe_check(CheckId id) {
    switch (id) {
        case CheckId::CQ1: return "permission delegations lacking both trust and monitoring";
        case CheckId::CQ2: return "monitoring of delegatees that are already trusted";
        case CheckId::CQ3: return "personal information grouped by sensitivity level";
        case CheckId::CQ4: return "vulnerabilities and the personal information subject to them";
        case CheckId::CQ5: return "vulnerabilities and the threats that can exploit them";
        case CheckId::CQ6: return "vulnerabilities not mitigated by any privacy goal";
        case CheckId::CQ7: return "threats and the personal information they threaten";
        case CheckId::CQ8: return "threats filtered by impact severity";
        case CheckId::CQ9: return "intentional threats and the information they threaten";
        case CheckId::CQ10: return "threat actors and the intentional threats they intend";
        case CheckId::CQ11: return "attack methods and the intentional threats using them";
        case CheckId::CQ12: return "incidental threats and the information they threaten";
        case CheckId::CQ13: return "incidental threats filtered by probability";
        case CheckId::CQ14: return "privacy goals realized by at least one constraint";
        case CheckId::CQ15: return "privacy mechanisms and the information they are applied to";
        case CheckId::CQ16: return "reads of personal information without permission";
        case CheckId::CQ17: return "non-confidential provision of personal information";
        case CheckId::CQ18: return "uses of personal information that are not strictly required";
        case CheckId::CQ19: return "uses of personal information for incompatible purposes";
        case CheckId::CQ20: return "anonymity requirements without an applied anonymization mechanism";
        case CheckId::CQ21: return "unlinkability requirements without an applied unlinking mechanism";
        case CheckId::CQ22: return "owner activity observable through collection by other actors";
        case CheckId::CQ23: return "collection of personal information without permission (no notice)";
        case CheckId::CQ24: return "actors that cannot be authenticated or act as threat actors";
        case CheckId::CQ25: return "any use of personal information without the matching permission";
        case CheckId::CQ26: return "delegations never adopted by their delegatee";
    }
    return "";
}

const char* to_string(FindingKind k) {
    switch (k) {
        case FindingKind::QueryRow: return "QueryRow";
        case FindingKind::DesignSmell: return "DesignSmell";
        case FindingKind::Disclosure: return "Disclosure";
        case FindingKind::Identifiability: return "Identifiability";
        case FindingKind::Linkability: return "Linkability";
        case FindingKind::Observability: return "Observability";
        case FindingKind::Unnotified: return "Unnotified";
        case FindingKind::Untransparent: return "Untransparent";
        case FindingKind::Unaccountable: return "Unaccountable";
    }
    return "?";
}

std::optional<FindingKind> parse_finding_kind(const std::string& text) {
    static const std::map<std::string, FindingKind> names = {
        {"QueryRow", FindingKind::QueryRow},
        {"DesignSmell", FindingKind::DesignSmell},
        {"Disclosure", FindingKind::Disclosure},
        {"Identifiability", FindingKind::Identifiability},
        {"Linkability", FindingKind::Linkability},
        {"Observability", FindingKind::Observability},
        {"Unnotified", FindingKind::Unnotified},
        {"Untransparent", FindingKind::Untransparent},
        {"Unaccountable", FindingKind::Unaccountable},
    };
    auto it = names.find(text);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

FindingKind kind_of(CheckId id) {
    switch (id) {
        case CheckId::CQ1:
        case CheckId::CQ2: return FindingKind::DesignSmell;
        case CheckId::CQ16:
        case CheckId::CQ17:
        case CheckId::CQ18:
        case CheckId::CQ19: return FindingKind::Disclosure;
        case CheckId::CQ20: return FindingKind::Identifiability;
        case CheckId::CQ21: return FindingKind::Linkability;
        case CheckId::CQ22: return FindingKind::Observability;
        case CheckId::CQ23: return FindingKind::Unnotified;
        case CheckId::CQ24:
        case CheckId::CQ25: return FindingKind::Untransparent;
        case CheckId::CQ26: return FindingKind::Unaccountable;
        default: return FindingKind::QueryRow;
    }
}

bool is_violation(FindingKind k) {
    return k != FindingKind::QueryRow;
}

bool operator==(const Finding& a, const Finding& b) {
    return a.check == b.check && a.kind == b.kind && a.elements == b.elements &&
           a.message == b.message;
}

bool finding_less(const Finding& a, const Finding& b) {
    return std::tie(a.check, a.elements, a.message) < std::tie(b.check, b.elements, b.message);
}

void sort_findings(std::vector<Finding>& findings) {
    std::stable_sort(findings.begin(), findings.end(), finding_less);
}

FilterError::FilterError(Code code, CheckId check)
    : std::invalid_argument(code == Code::Required
                                ? to_string(check) + " requires a level filter"
                                : to_string(check) + " does not take a level filter"),
      code_(code) {}

// ===========================================================================
// Shared helpers
// ===========================================================================

namespace {

bool is_personal(const ModelGraph& g, const std::string& id) {
    const Element* e = g.find_element(id);
    return e && e->kind == ElementKind::PersonalInformation;
}

Finding make(CheckId check, std::vector<std::string> elements, std::string message) {
    return Finding{check, kind_of(check), std::move(elements), std::move(message)};
}

// Memoized goal -> using-actors resolution. Direct aims win; goals without
// any inherit the union of their decomposition parents' actors.
class ActorResolver {
  public:
    explicit ActorResolver(const ModelGraph& g) : g_(g) {}

    const std::vector<std::string>& resolve(const std::string& goal) {
        auto it = memo_.find(goal);
        if (it != memo_.end()) return it->second;
        if (!in_progress_.insert(goal).second) {
            static const std::vector<std::string> kEmpty;
            return kEmpty;
        }

        std::set<std::string> actors;
        for (const Edge* e : g_.in_edges(goal, EdgeKind::Aims)) actors.insert(e->source.id);
        if (actors.empty()) {
            for (EdgeKind k : {EdgeKind::AndDecomposed, EdgeKind::OrDecomposed}) {
                for (const Edge* e : g_.in_edges(goal, k)) {
                    for (const std::string& a : resolve(e->source.id)) actors.insert(a);
                }
            }
        }
        in_progress_.erase(goal);
        return memo_.emplace(goal, std::vector<std::string>(actors.begin(), actors.end()))
            .first->second;
    }

  private:
    const ModelGraph& g_;
    std::map<std::string, std::vector<std::string>> memo_;
    std::set<std::string> in_progress_;
};

// effective_permissions is closure-heavy; one computation per actor per check.
class PermCache {
  public:
    PermCache(const ModelGraph& g, const AnalysisOptions& opts) : g_(g) {
        opts_.parts_inherit = opts.parts_inherit_permissions;
    }

    bool has(const std::string& actor, UseType type, const std::string& info) {
        auto it = cache_.find(actor);
        if (it == cache_.end()) {
            it = cache_.emplace(actor, g_.effective_permissions(actor, opts_)).first;
        }
        return it->second.count({type, info}) != 0;
    }

  private:
    const ModelGraph& g_;
    PermissionOptions opts_;
    std::map<std::string, std::set<std::pair<UseType, std::string>>> cache_;
};

// Delegation/trust/monitor matching for CQ1/CQ2, permission delegations only.
bool has_matching_trust(const ModelGraph& g, const DelegationRecord& d) {
    for (const auto& [id, t] : g.trusts()) {
        if (t.kind == SubjectKind::Permission && t.level == TrustLevel::Trust &&
            t.trustor.id == d.delegator.id && t.trustee.id == d.delegatee.id &&
            t.trustum.id == d.delegatum.id) {
            return true;
        }
    }
    return false;
}

bool has_matching_monitor(const ModelGraph& g, const DelegationRecord& d) {
    for (const auto& [id, m] : g.monitors()) {
        if (m.kind == SubjectKind::Permission && m.monitor.id == d.delegator.id &&
            m.monitoree.id == d.delegatee.id && m.subject.id == d.delegatum.id) {
            return true;
        }
    }
    return false;
}

// Common core of CQ16/CQ23/CQ25.
std::vector<Finding> use_permission_check(const ModelGraph& g, const AnalysisOptions& opts,
                                          CheckId check, std::optional<UseType> only,
                                          const std::function<std::string(const UseRecord&)>& msg) {
    std::vector<Finding> out;
    ActorResolver actors(g);
    PermCache perms(g, opts);
    for (const UseRecord& u : g.uses()) {
        if (only && u.type != *only) continue;
        if (!is_personal(g, u.info.id)) continue;
        std::optional<std::string> owner = g.owner_of(u.info.id);
        for (const std::string& actor : actors.resolve(u.goal.id)) {
            if (owner && *owner == actor) continue;
            if (perms.has(actor, u.type, u.info.id)) continue;
            out.push_back(make(check, {actor, u.goal.id, u.info.id}, msg(u)));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> rows_from_set(CheckId check, const std::set<std::vector<std::string>>& rows,
                                   const std::string& message) {
    std::vector<Finding> out;
    out.reserve(rows.size());
    for (const std::vector<std::string>& row : rows) out.push_back(make(check, row, message));
    return out;
}

}  // namespace

// ===========================================================================
// Organizational checks
// ===========================================================================

std::vector<Finding> cq1_trustless_permission_delegation(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const auto& [id, d] : g.delegations()) {
        if (d.kind != SubjectKind::Permission) continue;
        if (!has_matching_trust(g, d) && !has_matching_monitor(g, d)) {
            out.push_back(
                make(CheckId::CQ1, {id}, "permission delegated without trust or monitoring"));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> cq2_redundant_monitoring(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const auto& [id, d] : g.delegations()) {
        if (d.kind != SubjectKind::Permission) continue;
        if (has_matching_trust(g, d) && has_matching_monitor(g, d)) {
            out.push_back(make(CheckId::CQ2, {id}, "monitoring a trusted delegatee is redundant"));
        }
    }
    sort_findings(out);
    return out;
}

// ===========================================================================
// Privacy queries (CQ3) and risk view (CQ4-CQ13)
// ===========================================================================

std::vector<Finding> cq3_by_sensitivity(const ModelGraph& g, SensitivityLevel level) {
    std::vector<Finding> out;
    std::string message = std::string("personal information with sensitivity ") + to_string(level);
    for (const std::string& id : g.elements_of_kind(ElementKind::PersonalInformation)) {
        const Element* e = g.find_element(id);
        if (e->sensitivity && *e->sensitivity == level) {
            out.push_back(make(CheckId::CQ3, {id}, message));
        }
    }
    return out;
}

std::vector<Finding> risk_query(const ModelGraph& g, CheckId check,
                                std::optional<RiskLevel> filter) {
    int n = static_cast<int>(check);
    if (n < 4 || n > 13) {
        throw std::invalid_argument("risk_query answers CQ4..CQ13, not " + to_string(check));
    }
    bool wants_filter = check == CheckId::CQ8 || check == CheckId::CQ13;
    if (wants_filter && !filter) throw FilterError(FilterError::Code::Required, check);
    if (!wants_filter && filter) throw FilterError(FilterError::Code::NotApplicable, check);

    std::set<std::vector<std::string>> rows;
    std::string message;

    switch (check) {
        case CheckId::CQ4:
            message = "vulnerability with the personal information subject to it";
            for (const Edge& e : g.edges()) {
                if (e.kind == EdgeKind::IsSubjectTo) rows.insert({e.target.id, e.source.id});
            }
            break;
        case CheckId::CQ5:
            message = "vulnerability with a threat that can exploit it";
            for (const auto& [id, t] : g.threats()) {
                for (const Ref& v : t.exploits) rows.insert({v.id, id});
            }
            break;
        case CheckId::CQ6:
            message = "vulnerability not mitigated by any privacy goal";
            for (const std::string& v : g.elements_of_kind(ElementKind::Vulnerability)) {
                if (g.in_edges(v, EdgeKind::Mitigates).empty()) rows.insert({v});
            }
            break;
        case CheckId::CQ7:
            message = "threat threatening personal information";
            for (const auto& [id, t] : g.threats()) {
                for (const Ref& i : t.threatens) rows.insert({id, i.id});
            }
            break;
        case CheckId::CQ8:
            message = std::string("threat with impact severity ") + to_string(*filter);
            for (const ImpactRecord& i : g.impacts()) {
                if (i.severity == *filter) rows.insert({i.threat.id});
            }
            break;
        case CheckId::CQ9:
            message = "intentional threat threatening personal information";
            for (const auto& [id, t] : g.threats()) {
                if (t.kind != ThreatKind::Intentional) continue;
                for (const Ref& i : t.threatens) rows.insert({id, i.id});
            }
            break;
        case CheckId::CQ10:
            message = "actor intending an intentional threat";
            for (const auto& [id, t] : g.threats()) {
                if (t.kind == ThreatKind::Intentional && t.actor) rows.insert({t.actor->id, id});
            }
            break;
        case CheckId::CQ11:
            message = "attack method used by an intentional threat";
            for (const auto& [id, t] : g.threats()) {
                if (t.kind == ThreatKind::Intentional && t.method) rows.insert({t.method->id, id});
            }
            break;
        case CheckId::CQ12:
            message = "incidental threat threatening personal information";
            for (const auto& [id, t] : g.threats()) {
                if (t.kind != ThreatKind::Incidental) continue;
                for (const Ref& i : t.threatens) rows.insert({id, i.id});
            }
            break;
        case CheckId::CQ13:
            message = std::string("incidental threat with probability ") + to_string(*filter);
            for (const auto& [id, t] : g.threats()) {
                if (t.kind == ThreatKind::Incidental && t.probability &&
                    *t.probability == *filter) {
                    rows.insert({id});
                }
            }
            break;
        default: break;
    }
    return rows_from_set(check, rows, message);
}

std::vector<Finding> treatment_query(const ModelGraph& g, CheckId check) {
    if (check != CheckId::CQ14 && check != CheckId::CQ15) {
        throw std::invalid_argument("treatment_query answers CQ14 and CQ15, not " +
                                    to_string(check));
    }
    std::set<std::vector<std::string>> rows;
    std::string message;
    if (check == CheckId::CQ14) {
        message = "privacy goal realized by at least one privacy constraint";
        for (const std::string& pg : g.elements_of_kind(ElementKind::PrivacyGoal)) {
            if (!g.out_edges(pg, EdgeKind::RealizedBy).empty()) rows.insert({pg});
        }
    } else {
        message = "privacy mechanism applied to personal information";
        for (const auto& [id, m] : g.mechanisms()) {
            for (const Ref& i : m.applied_to) rows.insert({id, i.id});
        }
    }
    return rows_from_set(check, rows, message);
}

// ===========================================================================
// Violation checks (CQ16-CQ26)
// ===========================================================================

std::vector<Finding> cq16_nondisclosure_read(const ModelGraph& g, const AnalysisOptions& opts) {
    return use_permission_check(g, opts, CheckId::CQ16, UseType::Read, [](const UseRecord&) {
        return "personal information is read without the owner's permission";
    });
}

std::vector<Finding> cq17_confidential_provision(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const auto& [id, p] : g.provisions()) {
        if (p.type == ProvisionType::NonConfidential && is_personal(g, p.of.id)) {
            out.push_back(make(CheckId::CQ17, {id},
                               "personal information provisioned over a non-confidential channel"));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> cq18_need_to_know(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const UseRecord& u : g.uses()) {
        if (u.need == NeedToUse::Optional && is_personal(g, u.info.id)) {
            out.push_back(make(CheckId::CQ18, {u.goal.id, u.info.id},
                               std::string("personal information is used (") + to_string(u.type) +
                                   ") without being strictly required"));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> cq19_purpose_of_use(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const UseRecord& u : g.uses()) {
        if (u.purpose == PurposeOfUse::Incompatible && is_personal(g, u.info.id)) {
            out.push_back(make(CheckId::CQ19, {u.goal.id, u.info.id},
                               std::string("personal information is used (") + to_string(u.type) +
                                   ") for a purpose incompatible with the owner's interest"));
        }
    }
    sort_findings(out);
    return out;
}

namespace {

std::vector<Finding> mechanism_gap_check(const ModelGraph& g, CheckId check,
                                         RequirementKind requirement,
                                         MechanismCapability capability, const char* message) {
    std::vector<Finding> out;
    for (const auto& [id, r] : g.requirements()) {
        if (r.kind != requirement) continue;
        bool satisfied = false;
        for (const auto& [mid, m] : g.mechanisms()) {
            if (m.capability != capability) continue;
            for (const Ref& i : m.applied_to) {
                if (i.id == r.concerning.id) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) break;
        }
        if (!satisfied) out.push_back(make(check, {id, r.concerning.id}, message));
    }
    sort_findings(out);
    return out;
}

}  // namespace

std::vector<Finding> cq20_anonymity(const ModelGraph& g) {
    return mechanism_gap_check(
        g, CheckId::CQ20, RequirementKind::Anonymity, MechanismCapability::Anonymize,
        "no anonymization mechanism is applied to information under an anonymity requirement");
}

std::vector<Finding> cq21_unlinkability(const ModelGraph& g) {
    return mechanism_gap_check(
        g, CheckId::CQ21, RequirementKind::Unlinkability, MechanismCapability::Unlink,
        "no unlinking mechanism is applied to information under an unlinkability requirement");
}

std::vector<Finding> cq22_unobservability(const ModelGraph& g) {
    std::vector<Finding> out;
    ActorResolver actors(g);
    for (const auto& [id, r] : g.requirements()) {
        if (r.kind != RequirementKind::Unobservability) continue;
        const std::string& info = r.concerning.id;
        if (!g.has_node(info)) continue;
        std::optional<std::string> owner = g.owner_of(info);
        if (!owner) continue;

        // The information must describe an activity of its own owner.
        bool owners_activity = false;
        for (const Edge* d : g.out_edges(info, EdgeKind::Describes)) {
            for (const Edge* a : g.in_edges(d->target.id, EdgeKind::Aims)) {
                if (a->source.id == *owner) {
                    owners_activity = true;
                    break;
                }
            }
            if (owners_activity) break;
        }
        if (!owners_activity) continue;

        bool observed = false;
        for (const UseRecord& u : g.uses()) {
            if (u.type != UseType::Collect || u.info.id != info) continue;
            for (const std::string& actor : actors.resolve(u.goal.id)) {
                if (actor != *owner) {
                    observed = true;
                    break;
                }
            }
            if (observed) break;
        }
        if (observed) {
            out.push_back(make(CheckId::CQ22, {id, info},
                               "personal information describing the owner's activity is "
                               "collected by another actor"));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> cq23_notice(const ModelGraph& g, const AnalysisOptions& opts) {
    return use_permission_check(g, opts, CheckId::CQ23, UseType::Collect, [](const UseRecord&) {
        return "personal information is collected without a collect permission";
    });
}

std::vector<Finding> cq24_authentication(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const std::string& agent : g.elements_of_kind(ElementKind::Agent)) {
        if (g.role_closure(agent).empty()) {
            out.push_back(make(CheckId::CQ24, {agent},
                               "agent plays no role and cannot be authenticated"));
        }
    }
    std::set<std::string> intenders;
    for (const auto& [id, t] : g.threats()) {
        if (t.kind == ThreatKind::Intentional && t.actor) intenders.insert(t.actor->id);
    }
    for (const std::string& actor : intenders) {
        out.push_back(
            make(CheckId::CQ24, {actor}, "actor plays a threat-actor role (intends a threat)"));
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> cq25_authorization(const ModelGraph& g, const AnalysisOptions& opts) {
    return use_permission_check(g, opts, CheckId::CQ25, std::nullopt, [](const UseRecord& u) {
        return std::string("personal information is used without a matching ") +
               to_string(u.type) + " permission";
    });
}

std::vector<Finding> cq26_non_repudiation(const ModelGraph& g) {
    std::vector<Finding> out;
    for (const auto& [id, d] : g.delegations()) {
        bool adopted = false;
        for (const Edge* e : g.in_edges(id, EdgeKind::Adopts)) {
            if (e->source.id == d.delegatee.id) {
                adopted = true;
                break;
            }
        }
        if (!adopted) {
            out.push_back(
                make(CheckId::CQ26, {id}, "delegation was never adopted by its delegatee"));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<std::string> using_actors(const ModelGraph& g, const std::string& goal_id) {
    ActorResolver resolver(g);
    return resolver.resolve(goal_id);
}

// ===========================================================================
// Engine
// ===========================================================================

int Report::error_count() const {
    int n = 0;
    for (const Diagnostic& d : diagnostics) n += d.severity == Severity::Error;
    return n;
}

int Report::warning_count() const {
    int n = 0;
    for (const Diagnostic& d : diagnostics) n += d.severity == Severity::Warning;
    return n;
}

int Report::violation_count() const {
    int n = 0;
    for (const Finding& f : findings) n += is_violation(f.kind);
    return n;
}

int Report::query_row_count() const {
    int n = 0;
    for (const Finding& f : findings) n += f.kind == FindingKind::QueryRow;
    return n;
}

bool operator==(const Report& a, const Report& b) {
    return a.model_name == b.model_name && a.source == b.source &&
           a.diagnostics == b.diagnostics && a.findings == b.findings;
}

namespace {

std::vector<Finding> evaluate_check(const ModelGraph& g, const RunConfig& config, CheckId id) {
    static constexpr RiskLevel kRiskLevels[] = {RiskLevel::Low, RiskLevel::Medium,
                                                RiskLevel::High};
    static constexpr SensitivityLevel kSensitivityLevels[] = {
        SensitivityLevel::Restricted, SensitivityLevel::Confidential, SensitivityLevel::Sensitive,
        SensitivityLevel::Secret};

    switch (id) {
        case CheckId::CQ1: return cq1_trustless_permission_delegation(g);
        case CheckId::CQ2: return cq2_redundant_monitoring(g);
        case CheckId::CQ3: {
            std::vector<Finding> out;
            for (SensitivityLevel level : kSensitivityLevels) {
                for (Finding& f : cq3_by_sensitivity(g, level)) out.push_back(std::move(f));
            }
            return out;
        }
        case CheckId::CQ8:
        case CheckId::CQ13: {
            std::optional<RiskLevel> filter =
                id == CheckId::CQ8 ? config.severity : config.probability;
            if (filter) return risk_query(g, id, *filter);
            std::vector<Finding> out;
            for (RiskLevel level : kRiskLevels) {
                for (Finding& f : risk_query(g, id, level)) out.push_back(std::move(f));
            }
            return out;
        }
        case CheckId::CQ4:
        case CheckId::CQ5:
        case CheckId::CQ6:
        case CheckId::CQ7:
        case CheckId::CQ9:
        case CheckId::CQ10:
        case CheckId::CQ11:
        case CheckId::CQ12: return risk_query(g, id);
        case CheckId::CQ14:
        case CheckId::CQ15: return treatment_query(g, id);
        case CheckId::CQ16: return cq16_nondisclosure_read(g, config.options);
        case CheckId::CQ17: return cq17_confidential_provision(g);
        case CheckId::CQ18: return cq18_need_to_know(g);
        case CheckId::CQ19: return cq19_purpose_of_use(g);
        case CheckId::CQ20: return cq20_anonymity(g);
        case CheckId::CQ21: return cq21_unlinkability(g);
        case CheckId::CQ22: return cq22_unobservability(g);
        case CheckId::CQ23: return cq23_notice(g, config.options);
        case CheckId::CQ24: return cq24_authentication(g);
        case CheckId::CQ25: return cq25_authorization(g, config.options);
        case CheckId::CQ26: return cq26_non_repudiation(g);
    }
    return {};
}

}  // namespace

Report run_all(const ModelGraph& g, const RunConfig& config) {
    Report report;
    report.model_name = g.name();

    const std::vector<CheckId>& enabled = config.checks.empty() ? all_checks() : config.checks;

    if (config.parallel) {
        std::vector<std::future<std::vector<Finding>>> futures;
        futures.reserve(enabled.size());
        for (CheckId id : enabled) {
            futures.push_back(std::async(std::launch::async, evaluate_check, std::cref(g),
                                         std::cref(config), id));
        }
        for (auto& future : futures) {
            for (Finding& f : future.get()) report.findings.push_back(std::move(f));
        }
    } else {
        for (CheckId id : enabled) {
            for (Finding& f : evaluate_check(g, config, id)) report.findings.push_back(std::move(f));
        }
    }

    sort_findings(report.findings);
    return report;
}

}  // namespace copri::analysis
