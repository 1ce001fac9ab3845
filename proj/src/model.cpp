#include "copri/model.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace copri {

// ===========================================================================
// Enum names
// ===========================================================================

const char* to_string(ElementKind k) {
    switch (k) {
        case ElementKind::Role: return "role";
        case ElementKind::Agent: return "agent";
        case ElementKind::Goal: return "goal";
        case ElementKind::PersonalInformation: return "personal information";
        case ElementKind::PublicInformation: return "public information";
        case ElementKind::Situation: return "situation";
        case ElementKind::Vulnerability: return "vulnerability";
        case ElementKind::IntentionalThreat: return "intentional threat";
        case ElementKind::IncidentalThreat: return "incidental threat";
        case ElementKind::AttackMethod: return "attack method";
        case ElementKind::PrivacyGoal: return "privacy goal";
        case ElementKind::PrivacyPolicy: return "privacy policy";
        case ElementKind::PrivacyMechanism: return "privacy mechanism";
        case ElementKind::PrivacyRequirement: return "privacy requirement";
    }
    return "?";
}

const char* to_string(SensitivityLevel s) {
    switch (s) {
        case SensitivityLevel::Restricted: return "Restricted";
        case SensitivityLevel::Confidential: return "Confidential";
        case SensitivityLevel::Sensitive: return "Sensitive";
        case SensitivityLevel::Secret: return "Secret";
    }
    return "?";
}

const char* to_string(UseType t) {
    switch (t) {
        case UseType::Produce: return "produce";
        case UseType::Read: return "read";
        case UseType::Modify: return "modify";
        case UseType::Collect: return "collect";
    }
    return "?";
}

const char* to_string(NeedToUse n) {
    return n == NeedToUse::Require ? "required" : "optional";
}

const char* to_string(PurposeOfUse p) {
    return p == PurposeOfUse::Compatible ? "compatible" : "incompatible";
}

const char* to_string(ProvisionType p) {
    return p == ProvisionType::Confidential ? "confidential" : "nonconfidential";
}

const char* to_string(SubjectKind s) {
    return s == SubjectKind::Goal ? "goal" : "permission";
}

const char* to_string(TrustLevel t) {
    return t == TrustLevel::Trust ? "trust" : "distrust";
}

const char* to_string(RiskLevel l) {
    switch (l) {
        case RiskLevel::Low: return "Low";
        case RiskLevel::Medium: return "Medium";
        case RiskLevel::High: return "High";
    }
    return "?";
}

const char* to_string(ThreatKind k) {
    return k == ThreatKind::Intentional ? "intentional" : "incidental";
}

const char* to_string(RequirementKind k) {
    switch (k) {
        case RequirementKind::Confidentiality: return "confidentiality";
        case RequirementKind::Anonymity: return "anonymity";
        case RequirementKind::Unlinkability: return "unlinkability";
        case RequirementKind::Unobservability: return "unobservability";
        case RequirementKind::Notice: return "notice";
        case RequirementKind::Transparency: return "transparency";
        case RequirementKind::Accountability: return "accountability";
    }
    return "?";
}

const char* to_string(MechanismCapability c) {
    switch (c) {
        case MechanismCapability::Anonymize: return "anonymize";
        case MechanismCapability::Unlink: return "unlink";
        case MechanismCapability::Other: return "other";
    }
    return "?";
}

const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Aims: return "aims";
        case EdgeKind::Plays: return "plays";
        case EdgeKind::IsA: return "is_a";
        case EdgeKind::PartOf: return "partOf";
        case EdgeKind::Own: return "own";
        case EdgeKind::Describes: return "describes";
        case EdgeKind::Determines: return "determines";
        case EdgeKind::IsSubjectTo: return "isSubjectTo";
        case EdgeKind::Mitigates: return "mitigates";
        case EdgeKind::RealizedBy: return "realizedBy";
        case EdgeKind::AndDecomposed: return "andDecomposed";
        case EdgeKind::OrDecomposed: return "orDecomposed";
        case EdgeKind::Adopts: return "adopts";
    }
    return "?";
}

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Permission: return "permission";
        case NodeKind::Provision: return "provision";
        case NodeKind::Delegation: return "delegation";
        case NodeKind::Trust: return "trust";
        case NodeKind::Monitor: return "monitoring";
        default: return to_string(static_cast<ElementKind>(k));
    }
}

NodeKind node_kind_of(ElementKind k) {
    return static_cast<NodeKind>(k);
}

bool is_actor(NodeKind k) {
    return k == NodeKind::Role || k == NodeKind::Agent;
}

bool is_information(NodeKind k) {
    return k == NodeKind::PersonalInformation || k == NodeKind::PublicInformation;
}

bool is_threat(NodeKind k) {
    return k == NodeKind::IntentionalThreat || k == NodeKind::IncidentalThreat;
}

bool is_constraint(NodeKind k) {
    return k == NodeKind::PrivacyPolicy || k == NodeKind::PrivacyMechanism;
}

std::optional<SensitivityLevel> sensitivity_from_letter(char c) {
    switch (c) {
        case 'R': return SensitivityLevel::Restricted;
        case 'C': return SensitivityLevel::Confidential;
        case 'S': return SensitivityLevel::Sensitive;
        case 'T': return SensitivityLevel::Secret;
        default: return std::nullopt;
    }
}

char sensitivity_letter(SensitivityLevel s) {
    switch (s) {
        case SensitivityLevel::Restricted: return 'R';
        case SensitivityLevel::Confidential: return 'C';
        case SensitivityLevel::Sensitive: return 'S';
        case SensitivityLevel::Secret: return 'T';
    }
    return '?';
}

std::optional<RiskLevel> risk_from_letter(char c) {
    switch (c) {
        case 'L': return RiskLevel::Low;
        case 'M': return RiskLevel::Medium;
        case 'H': return RiskLevel::High;
        default: return std::nullopt;
    }
}

char risk_letter(RiskLevel l) {
    switch (l) {
        case RiskLevel::Low: return 'L';
        case RiskLevel::Medium: return 'M';
        case RiskLevel::High: return 'H';
    }
    return '?';
}

// ===========================================================================
// ModelGraph lookups
// ===========================================================================

bool ModelGraph::has_node(const std::string& id) const {
    return node_kinds_.count(id) != 0;
}

const Element* ModelGraph::find_element(const std::string& id) const {
    auto it = elements_.find(id);
    return it == elements_.end() ? nullptr : &it->second;
}

NodeKind ModelGraph::node_kind(const std::string& id) const {
    auto it = node_kinds_.find(id);
    if (it == node_kinds_.end()) throw UnknownElementError(id);
    return it->second;
}

void ModelGraph::require_node(const std::string& id) const {
    if (!has_node(id)) throw UnknownElementError(id);
}

const std::vector<std::string>& ModelGraph::elements_of_kind(ElementKind k) const {
    return by_kind_[static_cast<size_t>(k)];
}

const PermissionRecord* ModelGraph::find_permission(const std::string& id) const {
    auto it = permissions_.find(id);
    return it == permissions_.end() ? nullptr : &it->second;
}

const DelegationRecord* ModelGraph::find_delegation(const std::string& id) const {
    auto it = delegations_.find(id);
    return it == delegations_.end() ? nullptr : &it->second;
}

const ThreatRecord* ModelGraph::find_threat(const std::string& id) const {
    auto it = threats_.find(id);
    return it == threats_.end() ? nullptr : &it->second;
}

std::vector<const Edge*> ModelGraph::out_edges(const std::string& id, EdgeKind k) const {
    std::vector<const Edge*> result;
    const auto& index = out_[static_cast<size_t>(k)];
    auto it = index.find(id);
    if (it == index.end()) return result;
    result.reserve(it->second.size());
    for (size_t i : it->second) result.push_back(&edges_[i]);
    return result;
}

std::vector<const Edge*> ModelGraph::in_edges(const std::string& id, EdgeKind k) const {
    std::vector<const Edge*> result;
    const auto& index = in_[static_cast<size_t>(k)];
    auto it = index.find(id);
    if (it == index.end()) return result;
    result.reserve(it->second.size());
    for (size_t i : it->second) result.push_back(&edges_[i]);
    return result;
}

// ===========================================================================
// Derived queries
// ===========================================================================

std::set<std::string> ModelGraph::role_closure(const std::string& actor_id) const {
    require_node(actor_id);

    std::vector<std::string> pending;
    auto it = node_kinds_.find(actor_id);
    if (it->second == NodeKind::Agent) {
        for (const Edge* e : out_edges(actor_id, EdgeKind::Plays)) pending.push_back(e->target.id);
    } else if (it->second == NodeKind::Role) {
        pending.push_back(actor_id);
    } else {
        return {};
    }

    // Walk is_a upward; the visited set keeps cyclic hierarchies from looping.
    std::set<std::string> closure;
    while (!pending.empty()) {
        std::string role = std::move(pending.back());
        pending.pop_back();
        if (!closure.insert(role).second) continue;
        for (const Edge* e : out_edges(role, EdgeKind::IsA)) pending.push_back(e->target.id);
    }
    return closure;
}

std::optional<std::string> ModelGraph::owner_of(const std::string& info_id) const {
    require_node(info_id);
    auto owners = in_edges(info_id, EdgeKind::Own);
    if (owners.empty()) return std::nullopt;
    return owners.front()->source.id;
}

std::set<std::string> ModelGraph::transitive_parts(const std::string& info_id) const {
    require_node(info_id);

    std::set<std::string> parts;
    std::vector<std::string> pending{info_id};
    while (!pending.empty()) {
        std::string cur = std::move(pending.back());
        pending.pop_back();
        if (!parts.insert(cur).second) continue;
        for (const Edge* e : in_edges(cur, EdgeKind::PartOf)) pending.push_back(e->source.id);
    }
    return parts;
}

std::set<std::pair<UseType, std::string>> ModelGraph::effective_permissions(
    const std::string& actor_id, const PermissionOptions& opts) const {
    require_node(actor_id);

    std::set<std::string> holders = role_closure(actor_id);
    holders.insert(actor_id);

    static constexpr UseType kAllTypes[] = {UseType::Produce, UseType::Read, UseType::Modify,
                                            UseType::Collect};

    std::set<std::pair<UseType, std::string>> granted;
    for (const std::string& holder : holders) {
        auto pit = perms_by_holder_.find(holder);
        if (pit != perms_by_holder_.end()) {
            for (const std::string& perm_id : pit->second) {
                const PermissionRecord& p = permissions_.at(perm_id);
                granted.emplace(p.type, p.over.id);
            }
        }
        // Owning information grants every kind of use over it.
        for (const Edge* e : out_edges(holder, EdgeKind::Own)) {
            for (UseType t : kAllTypes) granted.emplace(t, e->target.id);
        }
    }

    if (opts.parts_inherit) {
        std::set<std::pair<UseType, std::string>> expanded;
        for (const auto& [type, info] : granted) {
            if (has_node(info)) {
                for (const std::string& part : transitive_parts(info)) {
                    expanded.emplace(type, part);
                }
            } else {
                expanded.emplace(type, info);
            }
        }
        granted = std::move(expanded);
    }
    return granted;
}

// ===========================================================================
// Builder
// ===========================================================================

ModelBuilder& ModelBuilder::set_name(std::string name) {
    name_ = std::move(name);
    return *this;
}

ModelBuilder& ModelBuilder::add_element(ElementKind kind, std::string id, std::string label,
                                        std::optional<SensitivityLevel> sensitivity,
                                        SourceSpan span) {
    Element e;
    e.id = std::move(id);
    e.kind = kind;
    e.label = std::move(label);
    e.sensitivity = sensitivity;
    e.span = std::move(span);
    elements_.push_back(std::move(e));
    return *this;
}

ModelBuilder& ModelBuilder::add_use(UseRecord use) {
    uses_.push_back(std::move(use));
    return *this;
}

ModelBuilder& ModelBuilder::add_permission(PermissionRecord perm) {
    permissions_.push_back(std::move(perm));
    return *this;
}

ModelBuilder& ModelBuilder::add_provision(ProvisionRecord prov) {
    provisions_.push_back(std::move(prov));
    return *this;
}

ModelBuilder& ModelBuilder::add_delegation(DelegationRecord del) {
    delegations_.push_back(std::move(del));
    return *this;
}

ModelBuilder& ModelBuilder::add_trust(TrustRecord trust) {
    trusts_.push_back(std::move(trust));
    return *this;
}

ModelBuilder& ModelBuilder::add_monitor(MonitorRecord mon) {
    monitors_.push_back(std::move(mon));
    return *this;
}

ModelBuilder& ModelBuilder::add_threat(ThreatRecord threat) {
    threats_.push_back(std::move(threat));
    return *this;
}

ModelBuilder& ModelBuilder::add_impact(ImpactRecord impact) {
    impacts_.push_back(std::move(impact));
    return *this;
}

ModelBuilder& ModelBuilder::add_requirement(RequirementRecord req) {
    requirements_.push_back(std::move(req));
    return *this;
}

ModelBuilder& ModelBuilder::add_mechanism(MechanismRecord mech) {
    mechanisms_.push_back(std::move(mech));
    return *this;
}

ModelBuilder& ModelBuilder::add_edge(EdgeKind kind, Ref source, Ref target,
                                     std::optional<SensitivityLevel> level, SourceSpan span) {
    Edge e;
    e.kind = kind;
    e.source = std::move(source);
    e.target = std::move(target);
    e.level = level;
    e.span = std::move(span);
    edges_.push_back(std::move(e));
    return *this;
}

namespace {

// Prefer the precise span of a reference; fall back to the enclosing record.
const SourceSpan& pick_span(const SourceSpan& ref_span, const SourceSpan& record_span) {
    if (ref_span.synthetic() && ref_span.file.empty()) return record_span;
    return ref_span;
}

std::string describe_first(const std::pair<NodeKind, SourceSpan>& first) {
    std::ostringstream out;
    out << "first declared as " << to_string(first.first);
    if (!first.second.synthetic()) {
        out << " at ";
        if (!first.second.file.empty()) out << first.second.file << ":";
        out << first.second.line << ":" << first.second.column;
    }
    return out.str();
}

}  // namespace

BuildResult ModelBuilder::finalize() && {
    std::vector<Diagnostic> diags;

    // Ids of elements and identified records live in one namespace.
    std::map<std::string, std::pair<NodeKind, SourceSpan>> nodes;
    // Positions in the duplicate set; entries flagged here are dropped so the
    // surviving graph, if any, keeps the first declaration.
    auto claim = [&](const std::string& id, NodeKind kind, const SourceSpan& span) -> bool {
        auto [it, inserted] = nodes.emplace(id, std::make_pair(kind, span));
        if (!inserted) {
            diags.push_back({span, Severity::Error, "DuplicateId",
                             "duplicate id '" + id + "' (" + describe_first(it->second) + ")"});
            return false;
        }
        return true;
    };

    // Threats, requirements and mechanisms double as elements.
    for (const ThreatRecord& t : threats_) {
        ElementKind kind = t.kind == ThreatKind::Intentional ? ElementKind::IntentionalThreat
                                                             : ElementKind::IncidentalThreat;
        Element e;
        e.id = t.id;
        e.kind = kind;
        e.label = t.label;
        e.span = t.span;
        elements_.push_back(std::move(e));
    }
    for (const RequirementRecord& r : requirements_) {
        Element e;
        e.id = r.id;
        e.kind = ElementKind::PrivacyRequirement;
        e.span = r.span;
        elements_.push_back(std::move(e));
    }
    for (const MechanismRecord& m : mechanisms_) {
        Element e;
        e.id = m.id;
        e.kind = ElementKind::PrivacyMechanism;
        e.label = m.label;
        e.span = m.span;
        elements_.push_back(std::move(e));
    }

    std::vector<char> element_ok(elements_.size(), 1);
    for (size_t i = 0; i < elements_.size(); ++i) {
        element_ok[i] = claim(elements_[i].id, node_kind_of(elements_[i].kind), elements_[i].span);
    }
    std::vector<char> permission_ok(permissions_.size(), 1);
    for (size_t i = 0; i < permissions_.size(); ++i) {
        permission_ok[i] = claim(permissions_[i].id, NodeKind::Permission, permissions_[i].span);
    }
    std::vector<char> provision_ok(provisions_.size(), 1);
    for (size_t i = 0; i < provisions_.size(); ++i) {
        provision_ok[i] = claim(provisions_[i].id, NodeKind::Provision, provisions_[i].span);
    }
    std::vector<char> delegation_ok(delegations_.size(), 1);
    for (size_t i = 0; i < delegations_.size(); ++i) {
        delegation_ok[i] = claim(delegations_[i].id, NodeKind::Delegation, delegations_[i].span);
    }
    std::vector<char> trust_ok(trusts_.size(), 1);
    for (size_t i = 0; i < trusts_.size(); ++i) {
        trust_ok[i] = claim(trusts_[i].id, NodeKind::Trust, trusts_[i].span);
    }
    std::vector<char> monitor_ok(monitors_.size(), 1);
    for (size_t i = 0; i < monitors_.size(); ++i) {
        monitor_ok[i] = claim(monitors_[i].id, NodeKind::Monitor, monitors_[i].span);
    }

    auto resolve = [&](const Ref& ref, const SourceSpan& record_span,
                       const std::string& what) -> const NodeKind* {
        auto it = nodes.find(ref.id);
        if (it == nodes.end()) {
            diags.push_back({pick_span(ref.span, record_span), Severity::Error,
                             "UnresolvedReference",
                             what + " '" + ref.id + "' is not declared anywhere"});
            return nullptr;
        }
        return &it->second.first;
    };

    // Subject of a delegation/trust/monitoring statement must exist and match
    // the declared subject kind; everything else about reference kinds is
    // left to the wellformedness signature check.
    auto resolve_subject = [&](const Ref& ref, SubjectKind kind, const SourceSpan& record_span,
                               const std::string& what) {
        const NodeKind* nk = resolve(ref, record_span, what);
        if (!nk) return;
        bool matches = kind == SubjectKind::Goal ? *nk == NodeKind::Goal
                                                 : *nk == NodeKind::Permission;
        if (!matches) {
            diags.push_back({pick_span(ref.span, record_span), Severity::Error, "KindMismatch",
                             what + " '" + ref.id + "' must be a " +
                                 (kind == SubjectKind::Goal ? "goal" : "permission") + ", not a " +
                                 std::string(to_string(*nk))});
        }
    };

    for (const UseRecord& u : uses_) {
        resolve(u.goal, u.span, "goal");
        resolve(u.info, u.span, "information");
    }
    for (const PermissionRecord& p : permissions_) {
        resolve(p.holder, p.span, "permission holder");
        resolve(p.over, p.span, "information");
    }
    for (const ProvisionRecord& p : provisions_) {
        resolve(p.of, p.span, "information");
        resolve(p.from, p.span, "provision source");
        resolve(p.to, p.span, "provision recipient");
    }
    for (const DelegationRecord& d : delegations_) {
        resolve(d.delegator, d.span, "delegator");
        resolve(d.delegatee, d.span, "delegatee");
        resolve_subject(d.delegatum, d.kind, d.span, "delegated subject");
    }
    for (const TrustRecord& t : trusts_) {
        resolve(t.trustor, t.span, "trustor");
        resolve(t.trustee, t.span, "trustee");
        resolve_subject(t.trustum, t.kind, t.span, "trusted subject");
    }
    for (const MonitorRecord& m : monitors_) {
        resolve(m.monitor, m.span, "monitoring actor");
        resolve(m.monitoree, m.span, "monitored actor");
        resolve_subject(m.subject, m.kind, m.span, "monitored subject");
    }
    for (const ThreatRecord& t : threats_) {
        for (const Ref& r : t.threatens) resolve(r, t.span, "threatened information");
        for (const Ref& r : t.exploits) resolve(r, t.span, "exploited vulnerability");
        if (t.actor) resolve(*t.actor, t.span, "threat actor");
        if (t.method) resolve(*t.method, t.span, "attack method");
        if (t.kind == ThreatKind::Intentional) {
            if (!t.actor) {
                diags.push_back({t.span, Severity::Error, "MissingAttribute",
                                 "intentional threat '" + t.id + "' has no actor"});
            }
            if (!t.method) {
                diags.push_back({t.span, Severity::Error, "MissingAttribute",
                                 "intentional threat '" + t.id + "' has no attack method"});
            }
            if (t.probability) {
                diags.push_back({t.span, Severity::Error, "KindMismatch",
                                 "intentional threat '" + t.id +
                                     "' must not declare a probability"});
            }
        } else {
            if (!t.probability) {
                diags.push_back({t.span, Severity::Error, "MissingAttribute",
                                 "incidental threat '" + t.id + "' has no probability"});
            }
            if (t.actor) {
                diags.push_back({t.span, Severity::Error, "KindMismatch",
                                 "incidental threat '" + t.id + "' must not declare an actor"});
            }
            if (t.method) {
                diags.push_back({t.span, Severity::Error, "KindMismatch",
                                 "incidental threat '" + t.id +
                                     "' must not declare an attack method"});
            }
        }
    }
    for (const ImpactRecord& i : impacts_) {
        resolve(i.threat, i.span, "threat");
        resolve(i.over, i.span, "impacted information");
    }
    for (const RequirementRecord& r : requirements_) {
        resolve(r.concerning, r.span, "information");
        for (const Ref& g : r.interpreted_by) resolve(g, r.span, "privacy goal");
    }
    for (const MechanismRecord& m : mechanisms_) {
        for (const Ref& i : m.applied_to) resolve(i, m.span, "information");
    }
    for (const Edge& e : edges_) {
        resolve(e.source, e.span, std::string(to_string(e.kind)) + " source");
        resolve(e.target, e.span, std::string(to_string(e.kind)) + " target");
    }

    // At most one owner per piece of information.
    {
        std::map<std::string, std::vector<const Edge*>> owners;
        for (const Edge& e : edges_) {
            if (e.kind == EdgeKind::Own && nodes.count(e.target.id)) {
                owners[e.target.id].push_back(&e);
            }
        }
        for (const auto& [info, own_edges] : owners) {
            if (own_edges.size() > 1) {
                diags.push_back({own_edges[1]->span, Severity::Error, "MultipleOwners",
                                 "information '" + info + "' has " +
                                     std::to_string(own_edges.size()) + " owners"});
            }
        }
    }

    if (!diags.empty()) {
        sort_diagnostics(diags);
        return {std::nullopt, std::move(diags)};
    }

    ModelGraph g;
    g.name_ = std::move(name_);
    for (auto& e : elements_) {
        std::string id = e.id;
        g.elements_.emplace(std::move(id), std::move(e));
    }
    for (auto& p : permissions_) g.permissions_.emplace(p.id, std::move(p));
    for (auto& p : provisions_) g.provisions_.emplace(p.id, std::move(p));
    for (auto& d : delegations_) g.delegations_.emplace(d.id, std::move(d));
    for (auto& t : trusts_) g.trusts_.emplace(t.id, std::move(t));
    for (auto& m : monitors_) g.monitors_.emplace(m.id, std::move(m));
    for (auto& t : threats_) g.threats_.emplace(t.id, std::move(t));
    for (auto& r : requirements_) g.requirements_.emplace(r.id, std::move(r));
    for (auto& m : mechanisms_) g.mechanisms_.emplace(m.id, std::move(m));
    g.uses_ = std::move(uses_);
    g.impacts_ = std::move(impacts_);
    g.edges_ = std::move(edges_);
    for (auto& [id, info] : nodes) g.node_kinds_.emplace(id, info.first);

    g.build_indexes();
    return {std::move(g), {}};
}

void ModelGraph::build_indexes() {
    // Record order must not depend on declaration order.
    std::stable_sort(uses_.begin(), uses_.end(), [](const UseRecord& a, const UseRecord& b) {
        return std::tie(a.goal.id, a.info.id, a.type, a.need, a.purpose) <
               std::tie(b.goal.id, b.info.id, b.type, b.need, b.purpose);
    });
    std::stable_sort(impacts_.begin(), impacts_.end(),
                     [](const ImpactRecord& a, const ImpactRecord& b) {
                         return std::tie(a.threat.id, a.over.id, a.severity) <
                                std::tie(b.threat.id, b.over.id, b.severity);
                     });
    std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.kind, a.source.id, a.target.id) <
               std::tie(b.kind, b.source.id, b.target.id);
    });

    for (const auto& [id, e] : elements_) {
        by_kind_[static_cast<size_t>(e.kind)].push_back(id);
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        out_[static_cast<size_t>(e.kind)][e.source.id].push_back(i);
        in_[static_cast<size_t>(e.kind)][e.target.id].push_back(i);
    }
    for (const auto& [id, p] : permissions_) {
        perms_by_holder_[p.holder.id].push_back(id);
    }
}

}  // namespace copri
