#include "glpstar/reductions.hpp"

#include <algorithm>

namespace glpstar {

Formula m_formula(const Formula& f) {
    const auto diamonds = diamond_subformulas(f);
    if (diamonds.empty()) return Formula::top();
    unsigned top_level = 0;
    for (const auto& d : diamonds) top_level = std::max(top_level, d.modality);

    std::vector<Formula> parts;
    for (const auto& d : diamonds)
        for (unsigned j = d.modality + 1; j <= top_level; ++j)
            parts.push_back(Formula::implies(Formula::dia(j, d.body), Formula::dia(d.modality, d.body)));
    return Formula::conj_all(parts);
}

Formula m_plus(const Formula& f) {
    const auto diamonds = diamond_subformulas(f);
    if (diamonds.empty()) return Formula::top();
    unsigned top_level = 0;
    for (const auto& d : diamonds) top_level = std::max(top_level, d.modality);

    const Formula m = m_formula(f);
    std::vector<Formula> parts{m};
    for (unsigned i = 0; i <= top_level; ++i) parts.push_back(Formula::box(i, m));
    return Formula::conj_all(parts);
}

Formula n_formula(const Formula& f, NPairing pairing) {
    const auto diamonds = diamond_subformulas_by_level(f);
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < diamonds.size(); ++i)
        for (std::size_t j = i + 1; j < diamonds.size(); ++j) {
            const auto& lo = diamonds[i];
            const auto& hi = diamonds[j];
            if (pairing == NPairing::Crossed)
                parts.push_back(Formula::implies(Formula::dia(hi.modality, hi.body), Formula::dia(lo.modality, lo.body)));
            else if (hi.modality > lo.modality)
                parts.push_back(Formula::implies(Formula::dia(hi.modality, lo.body), Formula::dia(lo.modality, lo.body)));
        }
    return Formula::conj_all(parts);
}

Formula n_plus(const Formula& f, NPlusVariant variant, NPairing pairing) {
    const auto diamonds = diamond_subformulas_by_level(f);
    if (diamonds.empty()) return Formula::top();
    const Formula n = n_formula(f, pairing);
    const Formula& boxed = variant == NPlusVariant::Default ? n : f;

    std::vector<Formula> parts{n};
    std::set<unsigned> levels;
    for (const auto& d : diamonds) levels.insert(d.modality);
    for (unsigned m : levels) parts.push_back(Formula::box(m, boxed));
    return Formula::conj_all(parts);
}

Formula h_formula(const Formula& f) {
    std::vector<Formula> parts;
    for (const auto& d : diamond_subformulas(f))
        parts.push_back(Formula::implies(d.body, Formula::dia(d.modality, d.body)));
    return Formula::conj_all(parts);
}

Formula r_theta(const Formula& f, const ModalitySet& theta) {
    std::vector<Formula> parts;
    for (const auto& v : variables_of(f)) {
        if (v.sort.is_omega()) continue;
        const Formula p = Formula::var(v.name, v.sort);
        const Formula not_p = Formula::neg(p);
        for (unsigned j : theta)
            if (j >= v.sort.value()) parts.push_back(Formula::implies(Formula::dia(j, p), p));
        for (unsigned j : theta)
            if (j > v.sort.value()) parts.push_back(Formula::implies(Formula::dia(j, not_p), not_p));
    }
    return Formula::conj_all(parts);
}

Formula r_theta_plus(const Formula& f, const ModalitySet& theta) {
    if (theta.empty()) return Formula::top();
    const Formula r = r_theta(f, theta);
    std::vector<Formula> parts{r};
    for (unsigned j : theta) parts.push_back(Formula::box(j, r));
    return Formula::conj_all(parts);
}

}  // namespace glpstar
