#ifndef COPRI_TESTS_GENERATORS_HPP
#define COPRI_TESTS_GENERATORS_HPP

#include <random>
#include <string>

#include "copri/model.hpp"

namespace gen {

// Random model that finalizes cleanly and passes wellformedness without
// errors: signatures hold by construction, hierarchies are acyclic (edges
// only point to lower indexes), personal information has exactly one owner
// and a sensitivity. Violations of the privacy checks are deliberately
// common. Throws std::logic_error if the builder rejects the model.
copri::ModelGraph random_model(std::mt19937& rng, int max_elements = 20);

// CML source for a synthetic model with ~element_count elements and
// proportionally many uses, permissions, delegations, and threats.
std::string scale_model_text(int element_count);

}  // namespace gen

#endif
