// Positional view of an adequate set shared by the explicit and symbolic
// canonical constructions. Every member is a boolean combination of atoms
// (variables and diamonds), so a world is fixed by its atom values.
#ifndef GLPSTAR_DELTA_INDEX_HPP
#define GLPSTAR_DELTA_INDEX_HPP

#include <array>
#include <map>
#include <set>
#include <vector>

#include "glpstar/decide.hpp"
#include "glpstar/formula.hpp"

namespace glpstar::detail {

class DeltaIndex {
public:
    static constexpr std::size_t npos = FormulaSet::npos;

    struct Diamond {
        std::size_t pos;   // of <n>body in delta
        unsigned level;    // n
        std::size_t body;  // position of body in delta
        std::size_t atom;  // atom number
    };

    struct Constraint {
        // antecedent atom implies the consequent member
        std::size_t atom;
        std::size_t consequent;
    };

    explicit DeltaIndex(const FormulaSet& delta);

    const FormulaSet& delta() const { return *delta_; }
    std::size_t size() const { return delta_->size(); }

    std::size_t atom_count() const { return atoms_.size(); }
    std::size_t atom_pos(std::size_t atom) const { return atoms_[atom]; }
    /// Atom number of a member, or npos when the member is compound.
    std::size_t atom_of(std::size_t pos) const { return atom_of_[pos]; }

    const std::array<std::size_t, 2>& kids(std::size_t pos) const { return kids_[pos]; }
    Kind kind(std::size_t pos) const { return (*delta_)[pos].kind(); }
    /// Member positions, children before parents.
    const std::vector<std::size_t>& bottom_up() const { return bottom_up_; }

    const std::set<unsigned>& levels() const { return levels_; }
    const std::vector<Diamond>& diamonds() const { return diamonds_; }
    /// Position of <n>body, or npos.
    std::size_t find_diamond(unsigned n, std::size_t body) const;

    /// <n>psi => psi for sort(psi) <= n, and <m><n>psi => <m>psi for m < n.
    const std::vector<Constraint>& local_constraints() const { return constraints_; }

    /// Truth of one member under a (sufficiently complete) atom valuation.
    bool eval(std::size_t pos, const std::vector<char>& atom_values) const;
    /// Full membership vector for an atom valuation.
    HintikkaWorld complete(const std::vector<char>& atom_values) const;
    std::vector<char> atom_values(const HintikkaWorld& world) const;
    bool locally_consistent(const HintikkaWorld& world) const;

    /// Canonical relation between two members-vectors.
    bool related(const HintikkaWorld& x, const HintikkaWorld& y, unsigned n,
                 RelationConditions conditions = RelationConditions::Full) const;

    /// Atoms a member's truth depends on.
    std::vector<std::size_t> atoms_under(std::size_t pos) const;

private:
    const FormulaSet* delta_;
    std::vector<std::size_t> atoms_;
    std::vector<std::size_t> atom_of_;
    std::vector<std::array<std::size_t, 2>> kids_;
    std::vector<std::size_t> bottom_up_;
    std::set<unsigned> levels_;
    std::vector<Diamond> diamonds_;
    std::map<std::pair<unsigned, std::size_t>, std::size_t> diamond_pos_;
    std::vector<Constraint> constraints_;
};

}  // namespace glpstar::detail

#endif
