#ifndef GLPSTAR_FORMULA_HPP
#define GLPSTAR_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace glpstar {

/// A sort is a natural number or omega. Successor saturates at omega.
class Sort {
public:
    constexpr Sort() = default;
    constexpr explicit Sort(unsigned n) : value_(n) {}

    static constexpr Sort omega() { Sort s; s.value_ = kOmega; return s; }

    constexpr bool is_omega() const { return value_ == kOmega; }
    constexpr bool is_finite() const { return value_ != kOmega; }
    /// Only meaningful for finite sorts.
    constexpr unsigned value() const { return value_; }

    constexpr Sort succ() const { return is_omega() ? *this : Sort(value_ + 1); }

    /// sort <= n for a finite modality index n.
    constexpr bool at_most(unsigned n) const { return is_finite() && value_ <= n; }
    /// sort < n for a finite modality index n.
    constexpr bool below(unsigned n) const { return is_finite() && value_ < n; }

    constexpr auto operator<=>(const Sort&) const = default;

    std::string to_string() const;

private:
    static constexpr unsigned kOmega = 0xffffffffu;
    unsigned value_ = 0;
};

constexpr Sort max(Sort a, Sort b) { return a < b ? b : a; }

enum class Kind : std::uint8_t { Top, Bot, Var, Neg, And, Or, Dia };

/// Immutable core formula: T, F, sorted variables, negation, conjunction,
/// disjunction and indexed diamonds. Implication and boxes are built through
/// the sugar helpers and never appear as node kinds.
class Formula {
public:
    Formula();  // T

    static Formula top();
    static Formula bot();
    static Formula var(std::string name, Sort sort);
    static Formula neg(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula dia(unsigned n, Formula f);

    // Sugar, expanded on construction.
    static Formula implies(Formula a, Formula b);  // ~a | b
    static Formula box(unsigned n, Formula f);     // ~<n>~f
    static Formula iff(Formula a, Formula b);      // (a -> b) & (b -> a)

    /// Left-nested conjunction; T when empty.
    static Formula conj_all(const std::vector<Formula>& parts);

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return node_->kind == k; }
    const std::string& name() const { return node_->name; }
    Sort var_sort() const { return node_->sort; }
    unsigned modality() const { return node_->modality; }
    const Formula& child() const { return node_->kids[0]; }
    const Formula& left() const { return node_->kids[0]; }
    const Formula& right() const { return node_->kids[1]; }
    std::size_t arity() const;

    std::size_t hash() const { return node_->hash; }
    /// Number of nodes in the tree.
    std::size_t size() const { return node_->size; }
    /// Modal nesting depth plus connective depth (leaves have depth 0).
    std::size_t depth() const { return node_->depth; }

    const void* identity() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    struct Node {
        Kind kind = Kind::Top;
        unsigned modality = 0;
        Sort sort;
        std::string name;
        std::vector<Formula> kids;
        std::size_t hash = 0;
        std::size_t size = 1;
        std::size_t depth = 0;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Kind k, unsigned modality, Sort sort, std::string name, std::vector<Formula> kids);

    std::shared_ptr<const Node> node_;
};

/// Total structural order, used for deterministic output.
std::strong_ordering compare(const Formula& a, const Formula& b);

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct FormulaLess {
    bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

/// Finite set of formulas keyed by structural identity. Iteration follows
/// insertion order, which makes every derived construction reproducible.
class FormulaSet {
public:
    FormulaSet() = default;
    FormulaSet(std::initializer_list<Formula> init);

    bool insert(const Formula& f);
    bool contains(const Formula& f) const { return index_.count(f) != 0; }
    /// Position in insertion order, or npos.
    std::size_t index_of(const Formula& f) const;
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const Formula& operator[](std::size_t i) const { return items_[i]; }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    const std::vector<Formula>& items() const { return items_; }
    /// Members in structural order.
    std::vector<Formula> sorted() const;

    bool includes(const FormulaSet& other) const;
    /// Set equality, ignoring insertion order.
    friend bool operator==(const FormulaSet& a, const FormulaSet& b);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<Formula> items_;
    std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

/// Raised when one variable name is used with two different sorts.
class SortConflict : public std::runtime_error {
public:
    SortConflict(const std::string& name, Sort first, Sort second);
    const std::string& variable() const { return name_; }

private:
    std::string name_;
};

/// Surface formula before desugaring: may contain implications and boxes.
struct RawFormula {
    enum class Kind { Top, Bot, Var, Neg, And, Or, Dia, Imp, Box };
    Kind kind = Kind::Top;
    unsigned modality = 0;
    std::string name;
    Sort sort;
    std::vector<RawFormula> kids;

    static RawFormula lift(const Formula& f);
};

Formula desugar(const RawFormula& raw);

Sort sort_of(const Formula& f);

/// Strips one top-level negation, otherwise negates.
Formula modified_negation(const Formula& f);

FormulaSet subformulas(const Formula& f);

struct DiamondEntry {
    unsigned modality;
    Formula body;
    friend bool operator==(const DiamondEntry&, const DiamondEntry&) = default;
};

/// Distinct subformulas <k>psi in leftmost-outermost order.
std::vector<DiamondEntry> diamond_subformulas(const Formula& f);
/// Same entries, stable-sorted by modality index.
std::vector<DiamondEntry> diamond_subformulas_by_level(const Formula& f);

/// Indices n with some <n>phi a (top-level) member of the set.
std::set<unsigned> modal_levels(const FormulaSet& delta);
/// Every modality index occurring anywhere in the formula.
std::set<unsigned> modalities_in(const Formula& f);

/// Least adequate superset: contains T and is closed under subformulas,
/// modified negation and the three diamond/variable rules.
FormulaSet adequate_closure(const FormulaSet& gamma);

/// True iff the set already satisfies every adequacy rule.
bool is_adequate(const FormulaSet& delta);

Formula to_omega_sorted(const Formula& f);

struct Variable {
    std::string name;
    Sort sort;
    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Distinct variables in order of first occurrence (preorder).
std::vector<Variable> variables_of(const Formula& f);

/// Throws SortConflict if a name occurs with two sorts.
void check_well_sorted(const Formula& f);

}  // namespace glpstar

template <>
struct std::hash<glpstar::Formula> {
    std::size_t operator()(const glpstar::Formula& f) const noexcept { return f.hash(); }
};

#endif
