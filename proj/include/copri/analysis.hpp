#ifndef COPRI_ANALYSIS_HPP
#define COPRI_ANALYSIS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copri/diagnostics.hpp"
#include "copri/model.hpp"

// The 26 competency checks. CQ1/CQ2 flag design smells around permission
// delegation, CQ3-CQ15 are plain queries (sensitivity catalogue, risk view,
// treatment view), CQ16-CQ26 detect privacy requirement violations.
// All checks are pure functions over a well-formed graph.
namespace copri::analysis {

// ===========================================================================
// Identifiers and findings
// ===========================================================================

enum class CheckId : int {
    CQ1 = 1, CQ2, CQ3, CQ4, CQ5, CQ6, CQ7, CQ8, CQ9, CQ10, CQ11, CQ12, CQ13,
    CQ14, CQ15, CQ16, CQ17, CQ18, CQ19, CQ20, CQ21, CQ22, CQ23, CQ24, CQ25, CQ26,
};

std::string to_string(CheckId id);
std::optional<CheckId> parse_check_id(const std::string& text);
const std::vector<CheckId>& all_checks();

// Comma-separated names and inclusive ranges: "CQ1,CQ4-CQ13,CQ26".
// On failure returns nullopt and sets `error`.
std::optional<std::vector<CheckId>> parse_check_set(const std::string& text, std::string& error);

// One short line per check, for --list-checks.
std::string describe_check(CheckId id);

enum class FindingKind {
    QueryRow,
    DesignSmell,
    Disclosure,
    Identifiability,
    Linkability,
    Observability,
    Unnotified,
    Untransparent,
    Unaccountable,
};

const char* to_string(FindingKind k);
std::optional<FindingKind> parse_finding_kind(const std::string& text);
FindingKind kind_of(CheckId id);
// Everything except a QueryRow counts against the violation exit threshold.
bool is_violation(FindingKind k);

struct Finding {
    CheckId check = CheckId::CQ1;
    FindingKind kind = FindingKind::QueryRow;
    std::vector<std::string> elements;  // non-empty, order fixed per check
    std::string message;
};

bool operator==(const Finding& a, const Finding& b);
bool finding_less(const Finding& a, const Finding& b);  // (check, elements, message)
void sort_findings(std::vector<Finding>& findings);

// CQ8/CQ13 take a mandatory level filter; the other risk queries take none.
class FilterError : public std::invalid_argument {
  public:
    enum class Code { Required, NotApplicable };

    FilterError(Code code, CheckId check);
    Code code() const { return code_; }

  private:
    Code code_;
};

struct AnalysisOptions {
    // Extend permissions over a whole to its transitive parts.
    bool parts_inherit_permissions = false;
};

// ===========================================================================
// Individual checks
// ===========================================================================

// Permission delegation with neither a matching trust (level trust, same
// delegator/delegatee/delegatum) nor a matching monitoring relationship.
std::vector<Finding> cq1_trustless_permission_delegation(const ModelGraph& g);
// Monitoring on a delegation whose delegatee is already trusted.
std::vector<Finding> cq2_redundant_monitoring(const ModelGraph& g);
// Personal information carrying the given sensitivity level.
std::vector<Finding> cq3_by_sensitivity(const ModelGraph& g, SensitivityLevel level);
// CQ4-CQ13 over the risk view; `filter` is the severity (CQ8) or
// probability (CQ13) level and must be given exactly for those two.
std::vector<Finding> risk_query(const ModelGraph& g, CheckId check,
                                std::optional<RiskLevel> filter = {});
// CQ14 (realized privacy goals) and CQ15 (mechanism application pairs).
std::vector<Finding> treatment_query(const ModelGraph& g, CheckId check);

std::vector<Finding> cq16_nondisclosure_read(const ModelGraph& g, const AnalysisOptions& = {});
std::vector<Finding> cq17_confidential_provision(const ModelGraph& g);
std::vector<Finding> cq18_need_to_know(const ModelGraph& g);
std::vector<Finding> cq19_purpose_of_use(const ModelGraph& g);
std::vector<Finding> cq20_anonymity(const ModelGraph& g);
std::vector<Finding> cq21_unlinkability(const ModelGraph& g);
std::vector<Finding> cq22_unobservability(const ModelGraph& g);
std::vector<Finding> cq23_notice(const ModelGraph& g, const AnalysisOptions& = {});
std::vector<Finding> cq24_authentication(const ModelGraph& g);
std::vector<Finding> cq25_authorization(const ModelGraph& g, const AnalysisOptions& = {});
std::vector<Finding> cq26_non_repudiation(const ModelGraph& g);

// Actors a use record is exercised by: the direct aims sources of its goal,
// or, for goals reachable only through decomposition, the aiming actors
// inherited from the nearest decomposition ancestors. Sorted, deduplicated.
std::vector<std::string> using_actors(const ModelGraph& g, const std::string& goal_id);

// ===========================================================================
// Engine
// ===========================================================================

struct RunConfig {
    std::vector<CheckId> checks;  // empty = all 26
    AnalysisOptions options;
    std::optional<RiskLevel> severity;     // CQ8; all three levels when absent
    std::optional<RiskLevel> probability;  // CQ13; all three levels when absent
    bool parallel = false;                 // evaluate checks concurrently
};

struct Report {
    std::string model_name;
    std::string source;  // input path; empty for graphs built in memory
    std::vector<Diagnostic> diagnostics;
    std::vector<Finding> findings;

    int error_count() const;
    int warning_count() const;
    int violation_count() const;
    int query_row_count() const;
};

bool operator==(const Report& a, const Report& b);

// Runs the enabled checks and merges their findings into deterministic
// (check, elements, message) order. Sequential and parallel execution
// produce identical reports.
Report run_all(const ModelGraph& g, const RunConfig& config = {});

}  // namespace copri::analysis

#endif
