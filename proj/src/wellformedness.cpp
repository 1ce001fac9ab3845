#include "copri/wellformedness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace copri::wf {

namespace {

// Domain/range classes for signature checks; broader than NodeKind because
// several positions accept a family of kinds.
enum class KindClass {
    Actor,
    Agent,
    Role,
    Goal,
    Information,
    PersonalInformation,
    Situation,
    Vulnerability,
    AttackMethod,
    Threat,
    PrivacyGoal,
    PrivacyConstraint,
    DelegationRecord,
};

bool matches(KindClass c, NodeKind k) {
    switch (c) {
        case KindClass::Actor: return is_actor(k);
        case KindClass::Agent: return k == NodeKind::Agent;
        case KindClass::Role: return k == NodeKind::Role;
        case KindClass::Goal: return k == NodeKind::Goal;
        case KindClass::Information: return is_information(k);
        case KindClass::PersonalInformation: return k == NodeKind::PersonalInformation;
        case KindClass::Situation: return k == NodeKind::Situation;
        case KindClass::Vulnerability: return k == NodeKind::Vulnerability;
        case KindClass::AttackMethod: return k == NodeKind::AttackMethod;
        case KindClass::Threat: return is_threat(k);
        case KindClass::PrivacyGoal: return k == NodeKind::PrivacyGoal;
        case KindClass::PrivacyConstraint: return is_constraint(k);
        case KindClass::DelegationRecord: return k == NodeKind::Delegation;
    }
    return false;
}

const char* describe(KindClass c) {
    switch (c) {
        case KindClass::Actor: return "an actor";
        case KindClass::Agent: return "an agent";
        case KindClass::Role: return "a role";
        case KindClass::Goal: return "a goal";
        case KindClass::Information: return "information";
        case KindClass::PersonalInformation: return "personal information";
        case KindClass::Situation: return "a situation";
        case KindClass::Vulnerability: return "a vulnerability";
        case KindClass::AttackMethod: return "an attack method";
        case KindClass::Threat: return "a threat";
        case KindClass::PrivacyGoal: return "a privacy goal";
        case KindClass::PrivacyConstraint: return "a privacy policy or mechanism";
        case KindClass::DelegationRecord: return "a delegation";
    }
    return "?";
}

struct EdgeSignature {
    KindClass domain;
    KindClass range;
};

const EdgeSignature& signature_of(EdgeKind k) {
    static const std::map<EdgeKind, EdgeSignature> table = {
        {EdgeKind::Aims, {KindClass::Actor, KindClass::Goal}},
        {EdgeKind::Plays, {KindClass::Agent, KindClass::Role}},
        {EdgeKind::IsA, {KindClass::Role, KindClass::Role}},
        {EdgeKind::PartOf, {KindClass::Information, KindClass::Information}},
        {EdgeKind::Own, {KindClass::Actor, KindClass::PersonalInformation}},
        {EdgeKind::Describes, {KindClass::PersonalInformation, KindClass::Goal}},
        {EdgeKind::Determines, {KindClass::Situation, KindClass::PersonalInformation}},
        {EdgeKind::IsSubjectTo, {KindClass::PersonalInformation, KindClass::Vulnerability}},
        {EdgeKind::Mitigates, {KindClass::PrivacyGoal, KindClass::Vulnerability}},
        {EdgeKind::RealizedBy, {KindClass::PrivacyGoal, KindClass::PrivacyConstraint}},
        {EdgeKind::AndDecomposed, {KindClass::Goal, KindClass::Goal}},
        {EdgeKind::OrDecomposed, {KindClass::Goal, KindClass::Goal}},
        {EdgeKind::Adopts, {KindClass::Actor, KindClass::DelegationRecord}},
    };
    return table.at(k);
}

struct SignatureChecker {
    const ModelGraph& g;
    std::vector<Diagnostic>& out;

    void require(KindClass want, const Ref& ref, const SourceSpan& fallback,
                 const std::string& what) {
        NodeKind actual = g.node_kind(ref.id);
        if (matches(want, actual)) return;
        const SourceSpan& span =
            (ref.span.synthetic() && ref.span.file.empty()) ? fallback : ref.span;
        out.push_back({span, Severity::Error, "WF-SIG",
                       what + " '" + ref.id + "' must be " + describe(want) + ", not " +
                           std::string(to_string(actual))});
    }
};

// Tarjan strongly-connected components over one relation family. Used instead
// of plain DFS so each cycle is reported once, as its full member set.
class SccFinder {
  public:
    explicit SccFinder(const std::map<std::string, std::vector<std::string>>& adj) : adj_(adj) {}

    // Returns node sets that lie on a cycle: components of size > 1 plus
    // single nodes with a self-loop.
    std::vector<std::vector<std::string>> cyclic_components() {
        for (const auto& [node, _] : adj_) {
            if (!state_.count(node)) strongconnect(node);
        }
        return result_;
    }

  private:
    struct NodeState {
        int index = 0;
        int lowlink = 0;
        bool on_stack = false;
    };

    void strongconnect(const std::string& v) {
        // Iterative Tarjan; recursion depth on pathological chains would be
        // proportional to the model size.
        struct Frame {
            std::string node;
            size_t next_child = 0;
        };
        std::vector<Frame> call_stack{{v, 0}};
        begin(v);

        while (!call_stack.empty()) {
            Frame& frame = call_stack.back();
            const auto& children = adj_.at(frame.node);
            if (frame.next_child < children.size()) {
                const std::string& w = children[frame.next_child++];
                auto it = state_.find(w);
                if (it == state_.end()) {
                    begin(w);
                    call_stack.push_back({w, 0});
                } else if (it->second.on_stack) {
                    state_[frame.node].lowlink =
                        std::min(state_[frame.node].lowlink, it->second.index);
                }
                continue;
            }

            NodeState& st = state_[frame.node];
            if (st.lowlink == st.index) pop_component(frame.node);
            std::string finished = frame.node;
            call_stack.pop_back();
            if (!call_stack.empty()) {
                NodeState& parent = state_[call_stack.back().node];
                parent.lowlink = std::min(parent.lowlink, state_[finished].lowlink);
            }
        }
    }

    void begin(const std::string& v) {
        state_[v] = {counter_, counter_, true};
        ++counter_;
        stack_.push_back(v);
    }

    void pop_component(const std::string& root) {
        std::vector<std::string> component;
        while (true) {
            std::string w = stack_.back();
            stack_.pop_back();
            state_[w].on_stack = false;
            component.push_back(w);
            if (w == root) break;
        }
        bool cyclic = component.size() > 1;
        if (!cyclic) {
            const auto& children = adj_.at(component[0]);
            cyclic = std::find(children.begin(), children.end(), component[0]) != children.end();
        }
        if (cyclic) {
            std::sort(component.begin(), component.end());
            result_.push_back(std::move(component));
        }
    }

    const std::map<std::string, std::vector<std::string>>& adj_;
    std::map<std::string, NodeState> state_;
    std::vector<std::string> stack_;
    int counter_ = 0;
    std::vector<std::vector<std::string>> result_;
};

void find_cycles(const ModelGraph& g, const std::vector<EdgeKind>& kinds, const char* family,
                 std::vector<Diagnostic>& out) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const Edge& e : g.edges()) {
        if (std::find(kinds.begin(), kinds.end(), e.kind) == kinds.end()) continue;
        adj[e.source.id].push_back(e.target.id);
        adj.try_emplace(e.target.id);
    }

    for (std::vector<std::string>& component : SccFinder(adj).cyclic_components()) {
        std::string members;
        for (size_t i = 0; i < component.size(); ++i) {
            members += (i ? ", " : "") + component[i];
        }
        SourceSpan span;
        if (const Element* e = g.find_element(component.front())) span = e->span;
        out.push_back({span, Severity::Error, "WF-CYCLE",
                       std::string(family) + " cycle through: " + members});
    }
}

}  // namespace

std::vector<Diagnostic> check_signatures(const ModelGraph& g) {
    std::vector<Diagnostic> out;
    SignatureChecker check{g, out};

    for (const Edge& e : g.edges()) {
        const EdgeSignature& sig = signature_of(e.kind);
        std::string name = to_string(e.kind);
        check.require(sig.domain, e.source, e.span, name + " source");
        check.require(sig.range, e.target, e.span, name + " target");
    }
    for (const UseRecord& u : g.uses()) {
        check.require(KindClass::Goal, u.goal, u.span, "using goal");
        check.require(KindClass::Information, u.info, u.span, "used information");
    }
    for (const auto& [id, p] : g.permissions()) {
        check.require(KindClass::Actor, p.holder, p.span, "permission holder");
        check.require(KindClass::PersonalInformation, p.over, p.span, "permission subject");
    }
    for (const auto& [id, p] : g.provisions()) {
        check.require(KindClass::Information, p.of, p.span, "provisioned information");
        check.require(KindClass::Actor, p.from, p.span, "provision source");
        check.require(KindClass::Actor, p.to, p.span, "provision recipient");
    }
    for (const auto& [id, d] : g.delegations()) {
        check.require(KindClass::Actor, d.delegator, d.span, "delegator");
        check.require(KindClass::Actor, d.delegatee, d.span, "delegatee");
    }
    for (const auto& [id, t] : g.trusts()) {
        check.require(KindClass::Actor, t.trustor, t.span, "trustor");
        check.require(KindClass::Actor, t.trustee, t.span, "trustee");
    }
    for (const auto& [id, m] : g.monitors()) {
        check.require(KindClass::Actor, m.monitor, m.span, "monitoring actor");
        check.require(KindClass::Actor, m.monitoree, m.span, "monitored actor");
    }
    for (const auto& [id, t] : g.threats()) {
        for (const Ref& r : t.threatens) {
            check.require(KindClass::PersonalInformation, r, t.span, "threatened information");
        }
        for (const Ref& r : t.exploits) {
            check.require(KindClass::Vulnerability, r, t.span, "exploited vulnerability");
        }
        if (t.actor) check.require(KindClass::Actor, *t.actor, t.span, "threat actor");
        if (t.method) check.require(KindClass::AttackMethod, *t.method, t.span, "attack method");
    }
    for (const ImpactRecord& i : g.impacts()) {
        check.require(KindClass::Threat, i.threat, i.span, "impacting threat");
        check.require(KindClass::PersonalInformation, i.over, i.span, "impacted information");
    }
    for (const auto& [id, r] : g.requirements()) {
        check.require(KindClass::PersonalInformation, r.concerning, r.span,
                      "requirement subject");
        for (const Ref& pg : r.interpreted_by) {
            check.require(KindClass::PrivacyGoal, pg, r.span, "interpreting privacy goal");
        }
    }
    for (const auto& [id, m] : g.mechanisms()) {
        for (const Ref& i : m.applied_to) {
            check.require(KindClass::PersonalInformation, i, m.span, "application subject");
        }
    }

    sort_diagnostics(out);
    return out;
}

std::vector<Diagnostic> check_cycles(const ModelGraph& g) {
    std::vector<Diagnostic> out;
    find_cycles(g, {EdgeKind::IsA}, "is_a", out);
    find_cycles(g, {EdgeKind::PartOf}, "partOf", out);
    find_cycles(g, {EdgeKind::AndDecomposed, EdgeKind::OrDecomposed}, "goal decomposition", out);
    sort_diagnostics(out);
    return out;
}

std::vector<Diagnostic> check_cardinalities(const ModelGraph& g) {
    std::vector<Diagnostic> out;
    // Multi-owner and threat-attribute cardinalities cannot survive finalize;
    // what remains observable here is absence.
    for (const auto& [id, e] : g.elements()) {
        if (e.kind == ElementKind::PersonalInformation) {
            if (g.in_edges(id, EdgeKind::Own).empty()) {
                out.push_back({e.span, Severity::Error, "WF-CARD",
                               "personal information '" + id + "' has no owner"});
            }
            if (!e.sensitivity) {
                out.push_back({e.span, Severity::Error, "WF-CARD",
                               "personal information '" + id + "' declares no sensitivity"});
            }
        } else if (e.sensitivity) {
            out.push_back({e.span, Severity::Error, "WF-CARD",
                           std::string(to_string(e.kind)) + " '" + id +
                               "' must not declare a sensitivity"});
        }
    }
    sort_diagnostics(out);
    return out;
}

std::vector<Diagnostic> check_isolated(const ModelGraph& g) {
    std::set<std::string> connected;
    auto touch = [&](const Ref& r) { connected.insert(r.id); };

    for (const Edge& e : g.edges()) {
        touch(e.source);
        touch(e.target);
    }
    for (const UseRecord& u : g.uses()) {
        touch(u.goal);
        touch(u.info);
    }
    for (const auto& [id, p] : g.permissions()) {
        touch(p.holder);
        touch(p.over);
    }
    for (const auto& [id, p] : g.provisions()) {
        touch(p.of);
        touch(p.from);
        touch(p.to);
    }
    for (const auto& [id, d] : g.delegations()) {
        touch(d.delegator);
        touch(d.delegatee);
        touch(d.delegatum);
    }
    for (const auto& [id, t] : g.trusts()) {
        touch(t.trustor);
        touch(t.trustee);
        touch(t.trustum);
    }
    for (const auto& [id, m] : g.monitors()) {
        touch(m.monitor);
        touch(m.monitoree);
        touch(m.subject);
    }
    for (const ImpactRecord& i : g.impacts()) {
        touch(i.threat);
        touch(i.over);
    }
    // Payload-bearing elements count as connected when their payload points
    // anywhere: a threat relates to whatever it threatens even if nothing
    // points back at the threat itself.
    for (const auto& [id, t] : g.threats()) {
        bool any = !t.threatens.empty() || !t.exploits.empty() || t.actor || t.method;
        for (const Ref& r : t.threatens) touch(r);
        for (const Ref& r : t.exploits) touch(r);
        if (t.actor) touch(*t.actor);
        if (t.method) touch(*t.method);
        if (any) connected.insert(id);
    }
    for (const auto& [id, r] : g.requirements()) {
        touch(r.concerning);
        for (const Ref& pg : r.interpreted_by) touch(pg);
        connected.insert(id);
    }
    for (const auto& [id, m] : g.mechanisms()) {
        for (const Ref& i : m.applied_to) touch(i);
        if (!m.applied_to.empty()) connected.insert(id);
    }

    std::vector<Diagnostic> out;
    for (const auto& [id, e] : g.elements()) {
        if (!connected.count(id)) {
            out.push_back({e.span, Severity::Warning, "WF-ISOLATED",
                           std::string(to_string(e.kind)) + " '" + id +
                               "' participates in no relationship"});
        }
    }
    sort_diagnostics(out);
    return out;
}

std::vector<Diagnostic> check_misc(const ModelGraph& g) {
    std::vector<Diagnostic> out;
    for (const auto& [id, d] : g.delegations()) {
        if (d.delegator.id == d.delegatee.id) {
            out.push_back({d.span, Severity::Warning, "WF-SELF",
                           "delegation '" + id + "' delegates from '" + d.delegator.id +
                               "' to itself"});
        }
    }
    for (const auto& [id, t] : g.trusts()) {
        if (t.trustor.id == t.trustee.id) {
            out.push_back({t.span, Severity::Warning, "WF-SELF",
                           "trust '" + id + "' goes from '" + t.trustor.id + "' to itself"});
        }
    }
    for (const Edge& e : g.edges()) {
        if (e.kind != EdgeKind::Determines || !e.level) continue;
        const Element* info = g.find_element(e.target.id);
        if (info && info->sensitivity && *info->sensitivity != *e.level) {
            out.push_back({e.span, Severity::Warning, "WF-SENS-CONFLICT",
                           "situation '" + e.source.id + "' determines sensitivity " +
                               to_string(*e.level) + " for '" + e.target.id + "', which declares " +
                               to_string(*info->sensitivity)});
        }
    }
    sort_diagnostics(out);
    return out;
}

std::vector<Diagnostic> check_all(const ModelGraph& g) {
    std::vector<Diagnostic> out = check_signatures(g);
    for (auto& source : {check_cycles(g), check_cardinalities(g), check_isolated(g),
                         check_misc(g)}) {
        for (const Diagnostic& d : source) out.push_back(d);
    }
    sort_diagnostics(out);
    return out;
}

}  // namespace copri::wf
