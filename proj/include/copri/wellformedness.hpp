#ifndef COPRI_WELLFORMEDNESS_HPP
#define COPRI_WELLFORMEDNESS_HPP

#include <vector>

#include "copri/diagnostics.hpp"
#include "copri/model.hpp"

// Structural rules a finalized graph must satisfy before analysis runs.
// Codes are part of the CLI contract:
//   WF-SIG           Error    edge or record field with the wrong node kind
//   WF-CYCLE         Error    cycle in is_a / partOf / goal decomposition
//   WF-CARD          Error    owner or sensitivity cardinality broken
//   WF-ISOLATED      Warning  element participating in no relationship
//   WF-SELF          Warning  self-delegation or self-trust
//   WF-SENS-CONFLICT Warning  situation level contradicts declared sensitivity
namespace copri::wf {

std::vector<Diagnostic> check_signatures(const ModelGraph& g);
std::vector<Diagnostic> check_cycles(const ModelGraph& g);
std::vector<Diagnostic> check_cardinalities(const ModelGraph& g);
std::vector<Diagnostic> check_isolated(const ModelGraph& g);
std::vector<Diagnostic> check_misc(const ModelGraph& g);

// All of the above, merged and sorted; the result does not depend on the
// order the individual checks ran in.
std::vector<Diagnostic> check_all(const ModelGraph& g);

}  // namespace copri::wf

#endif
