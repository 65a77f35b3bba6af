#ifndef GLPSTAR_REDUCTIONS_HPP
#define GLPSTAR_REDUCTIONS_HPP

#include <set>

#include "glpstar/formula.hpp"

namespace glpstar {

using ModalitySet = std::set<unsigned>;

enum class NPlusVariant {
    Default,  // boxes over N(phi)
    Literal,  // boxes over phi itself
};

enum class NPairing {
    SameBody,  // <m_j>phi_i -> <m_i>phi_i for m_i < m_j
    Crossed,   // <m_j>phi_j -> <m_i>phi_i for every i < j
};

// All outputs are conjunctions built left-nested, with T for the empty case.
// No simplification is applied.

/// Conjunction of (<j>phi_i -> <m_i>phi_i) over diamond subformulas and
/// m_i < j <= max level.
Formula m_formula(const Formula& f);
/// M(phi) & [0]M(phi) & ... & [n]M(phi); T without diamonds.
Formula m_plus(const Formula& f);

/// Pairs diamond subformulas i < j in level order. SameBody keeps only the
/// level shift of each body, Crossed pairs the two entries as they stand.
Formula n_formula(const Formula& f, NPairing pairing = NPairing::SameBody);
Formula n_plus(const Formula& f, NPlusVariant variant = NPlusVariant::Default,
               NPairing pairing = NPairing::SameBody);

/// Conjunction of (phi_i -> <n_i>phi_i) over diamond subformulas.
Formula h_formula(const Formula& f);

Formula r_theta(const Formula& f, const ModalitySet& theta);
Formula r_theta_plus(const Formula& f, const ModalitySet& theta);

}  // namespace glpstar

#endif
