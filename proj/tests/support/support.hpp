// Test-side helpers: random generators and small reference implementations
// written directly from the definitions, kept independent of the library
// code they are used to check.
#ifndef GLPSTAR_TEST_SUPPORT_HPP
#define GLPSTAR_TEST_SUPPORT_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "glpstar/formula.hpp"
#include "glpstar/kripke.hpp"

namespace testsupport {

using glpstar::Formula;
using glpstar::KripkeModel;
using glpstar::Sort;

using Rng = std::mt19937_64;

struct FormulaShape {
    std::vector<std::pair<std::string, Sort>> variables{{"p", Sort(0)}, {"q", Sort(1)}};
    std::vector<unsigned> modalities{0, 1, 2};
    int depth = 3;
    bool constants = true;
};

Formula random_formula(Rng& rng, const FormulaShape& shape);

/// Random pool of variables named p, q, ... with sorts drawn from `sorts`.
std::vector<std::pair<std::string, Sort>> random_variables(Rng& rng, std::size_t count, const std::vector<Sort>& sorts);

/// Reference checks written from the definitions.
bool ref_is_jstar_frame(const glpstar::KripkeFrame& f);
bool ref_is_persistent(const KripkeModel& m);
bool ref_holds(const KripkeModel& m, glpstar::World x, const Formula& f);

struct ModelShape {
    std::size_t min_worlds = 1;
    std::size_t max_worlds = 5;
    std::vector<unsigned> modalities{0, 1, 2};
    std::vector<std::pair<std::string, Sort>> variables{{"p", Sort(0)}, {"q", Sort(1)}, {"r", Sort::omega()}};
    double edge_density = 0.4;
};

/// Random J*-frame with a strongly persistent valuation.
KripkeModel random_persistent_model(Rng& rng, const ModelShape& shape);

/// Flips variable truth values at random worlds; may or may not break
/// persistence.
KripkeModel perturb(Rng& rng, const KripkeModel& m);

/// Replaces one occurrence of a subformula by a different subformula of
/// the same formula (or negates a leaf-only formula). Never returns `f`.
Formula swap_subformula(Rng& rng, const Formula& f);

}  // namespace testsupport

#endif
