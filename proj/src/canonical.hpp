#ifndef GLPSTAR_CANONICAL_HPP
#define GLPSTAR_CANONICAL_HPP

#include <vector>

#include "delta_index.hpp"
#include "glpstar/decide.hpp"

namespace glpstar::detail {

std::vector<HintikkaWorld> enumerate_candidates(const DeltaIndex& ix, std::size_t cap);

/// Worlds named w0.., relations from the canonical relation, valuation by
/// membership of the variables of the set.
KripkeModel model_from_worlds(const DeltaIndex& ix, const std::vector<HintikkaWorld>& worlds,
                              RelationConditions conditions = RelationConditions::Full);

bool truth_lemma(const DeltaIndex& ix, const KripkeModel& model, const std::vector<HintikkaWorld>& worlds);

}  // namespace glpstar::detail

#endif
