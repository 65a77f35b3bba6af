#include "glpstar/formula.hpp"

#include <algorithm>
#include <functional>

namespace glpstar {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string Sort::to_string() const {
    return is_omega() ? std::string("w") : std::to_string(value_);
}

Formula::Formula() : Formula(top()) {}

Formula Formula::make(Kind k, unsigned modality, Sort sort, std::string name, std::vector<Formula> kids) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->modality = modality;
    n->sort = sort;
    n->name = std::move(name);
    n->kids = std::move(kids);
    std::size_t h = mix(static_cast<std::size_t>(k) + 1, modality);
    if (k == Kind::Var) {
        h = mix(h, std::hash<std::string>{}(n->name));
        h = mix(h, sort.is_omega() ? 0xfffffULL : sort.value());
    }
    for (const auto& c : n->kids) {
        h = mix(h, c.hash());
        n->size += c.size();
        n->depth = std::max(n->depth, c.depth() + 1);
    }
    n->hash = h;
    return Formula(std::move(n));
}

Formula Formula::top() {
    static const Formula t = make(Kind::Top, 0, Sort(0), {}, {});
    return t;
}

Formula Formula::bot() {
    static const Formula b = make(Kind::Bot, 0, Sort(0), {}, {});
    return b;
}

Formula Formula::var(std::string name, Sort sort) { return make(Kind::Var, 0, sort, std::move(name), {}); }
Formula Formula::neg(Formula f) { return make(Kind::Neg, 0, Sort(0), {}, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, 0, Sort(0), {}, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, 0, Sort(0), {}, {std::move(a), std::move(b)}); }
Formula Formula::dia(unsigned n, Formula f) { return make(Kind::Dia, n, Sort(0), {}, {std::move(f)}); }

Formula Formula::implies(Formula a, Formula b) { return disj(neg(std::move(a)), std::move(b)); }
Formula Formula::box(unsigned n, Formula f) { return neg(dia(n, neg(std::move(f)))); }
Formula Formula::iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula Formula::conj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) return top();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

std::size_t Formula::arity() const { return node_->kids.size(); }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.modality != y.modality) return false;
    if (x.kind == Kind::Var) return x.name == y.name && x.sort == y.sort;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (!(x.kids[i] == y.kids[i])) return false;
    return true;
}

std::strong_ordering compare(const Formula& a, const Formula& b) {
    if (a.identity() == b.identity()) return std::strong_ordering::equal;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
    case Kind::Top:
    case Kind::Bot:
        return std::strong_ordering::equal;
    case Kind::Var:
        if (auto c = a.name() <=> b.name(); c != 0) return c;
        return a.var_sort() <=> b.var_sort();
    case Kind::Dia:
        if (auto c = a.modality() <=> b.modality(); c != 0) return c;
        return compare(a.child(), b.child());
    case Kind::Neg:
        return compare(a.child(), b.child());
    case Kind::And:
    case Kind::Or:
        if (auto c = compare(a.left(), b.left()); c != 0) return c;
        return compare(a.right(), b.right());
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

FormulaSet::FormulaSet(std::initializer_list<Formula> init) {
    for (const auto& f : init) insert(f);
}

bool FormulaSet::insert(const Formula& f) {
    auto [it, fresh] = index_.emplace(f, items_.size());
    if (fresh) items_.push_back(f);
    return fresh;
}

std::size_t FormulaSet::index_of(const Formula& f) const {
    auto it = index_.find(f);
    return it == index_.end() ? npos : it->second;
}

std::vector<Formula> FormulaSet::sorted() const {
    std::vector<Formula> out = items_;
    std::sort(out.begin(), out.end(), FormulaLess{});
    return out;
}

bool FormulaSet::includes(const FormulaSet& other) const {
    return std::all_of(other.begin(), other.end(), [&](const Formula& f) { return contains(f); });
}

bool operator==(const FormulaSet& a, const FormulaSet& b) {
    return a.size() == b.size() && a.includes(b);
}

SortConflict::SortConflict(const std::string& name, Sort first, Sort second)
    : std::runtime_error("variable '" + name + "' used with sorts " + first.to_string() + " and " +
                         second.to_string()),
      name_(name) {}

// ---------------------------------------------------------------------------

RawFormula RawFormula::lift(const Formula& f) {
    RawFormula r;
    switch (f.kind()) {
    case glpstar::Kind::Top: r.kind = Kind::Top; break;
    case glpstar::Kind::Bot: r.kind = Kind::Bot; break;
    case glpstar::Kind::Var:
        r.kind = Kind::Var;
        r.name = f.name();
        r.sort = f.var_sort();
        break;
    case glpstar::Kind::Neg:
        r.kind = Kind::Neg;
        r.kids.push_back(lift(f.child()));
        break;
    case glpstar::Kind::And:
    case glpstar::Kind::Or:
        r.kind = f.is(glpstar::Kind::And) ? Kind::And : Kind::Or;
        r.kids.push_back(lift(f.left()));
        r.kids.push_back(lift(f.right()));
        break;
    case glpstar::Kind::Dia:
        r.kind = Kind::Dia;
        r.modality = f.modality();
        r.kids.push_back(lift(f.child()));
        break;
    }
    return r;
}

Formula desugar(const RawFormula& raw) {
    using K = RawFormula::Kind;
    switch (raw.kind) {
    case K::Top: return Formula::top();
    case K::Bot: return Formula::bot();
    case K::Var: return Formula::var(raw.name, raw.sort);
    case K::Neg: return Formula::neg(desugar(raw.kids.at(0)));
    case K::And: return Formula::conj(desugar(raw.kids.at(0)), desugar(raw.kids.at(1)));
    case K::Or: return Formula::disj(desugar(raw.kids.at(0)), desugar(raw.kids.at(1)));
    case K::Dia: return Formula::dia(raw.modality, desugar(raw.kids.at(0)));
    case K::Imp: return Formula::implies(desugar(raw.kids.at(0)), desugar(raw.kids.at(1)));
    case K::Box: return Formula::box(raw.modality, desugar(raw.kids.at(0)));
    }
    return Formula::top();
}

Sort sort_of(const Formula& f) {
    switch (f.kind()) {
    case Kind::Top:
    case Kind::Bot: return Sort(0);
    case Kind::Var: return f.var_sort();
    case Kind::Neg: return sort_of(f.child()).succ();
    case Kind::And:
    case Kind::Or: return max(sort_of(f.left()), sort_of(f.right()));
    case Kind::Dia: return Sort(f.modality());
    }
    return Sort(0);
}

Formula modified_negation(const Formula& f) {
    return f.is(Kind::Neg) ? f.child() : Formula::neg(f);
}

namespace {

void collect_subformulas(const Formula& f, FormulaSet& out) {
    if (!out.insert(f)) return;
    for (std::size_t i = 0; i < f.arity(); ++i) collect_subformulas(i == 0 ? f.left() : f.right(), out);
}

void collect_diamonds(const Formula& f, std::vector<DiamondEntry>& out, FormulaSet& seen) {
    if (f.is(Kind::Dia) && seen.insert(f)) out.push_back({f.modality(), f.child()});
    for (std::size_t i = 0; i < f.arity(); ++i) collect_diamonds(i == 0 ? f.left() : f.right(), out, seen);
}

}  // namespace

FormulaSet subformulas(const Formula& f) {
    FormulaSet out;
    collect_subformulas(f, out);
    return out;
}

std::vector<DiamondEntry> diamond_subformulas(const Formula& f) {
    std::vector<DiamondEntry> out;
    FormulaSet seen;
    collect_diamonds(f, out, seen);
    return out;
}

std::vector<DiamondEntry> diamond_subformulas_by_level(const Formula& f) {
    auto out = diamond_subformulas(f);
    std::stable_sort(out.begin(), out.end(),
                     [](const DiamondEntry& a, const DiamondEntry& b) { return a.modality < b.modality; });
    return out;
}

std::set<unsigned> modal_levels(const FormulaSet& delta) {
    std::set<unsigned> out;
    for (const auto& f : delta)
        if (f.is(Kind::Dia)) out.insert(f.modality());
    return out;
}

std::set<unsigned> modalities_in(const Formula& f) {
    std::set<unsigned> out;
    for (const auto& d : diamond_subformulas(f)) out.insert(d.modality);
    return out;
}

FormulaSet adequate_closure(const FormulaSet& gamma) {
    FormulaSet delta;
    delta.insert(Formula::top());
    for (const auto& f : gamma) delta.insert(f);

    // Worklist over insertion order; diamond levels and bodies are tracked so
    // that the cross rules fire again whenever either side grows.
    std::set<unsigned> levels;
    FormulaSet bodies;
    std::vector<Formula> finite_vars;  // p^m and ~p^m already in delta, m finite
    std::vector<Formula> finite_negvars;

    bool changed = true;
    std::size_t scanned = 0;
    while (changed) {
        changed = false;
        for (; scanned < delta.size(); ++scanned) {
            const Formula f = delta[scanned];
            for (std::size_t i = 0; i < f.arity(); ++i) delta.insert(i == 0 ? f.left() : f.right());
            delta.insert(modified_negation(f));
            if (f.is(Kind::Dia)) {
                levels.insert(f.modality());
                bodies.insert(f.child());
            } else if (f.is(Kind::Var) && f.var_sort().is_finite()) {
                finite_vars.push_back(f);
            } else if (f.is(Kind::Neg) && f.child().is(Kind::Var) && f.child().var_sort().is_finite()) {
                finite_negvars.push_back(f);
            }
        }
        const std::size_t before = delta.size();
        for (unsigned m : levels)
            for (const auto& b : bodies) delta.insert(Formula::dia(m, b));
        for (unsigned n : levels) {
            for (const auto& p : finite_vars)
                if (n >= p.var_sort().value()) delta.insert(Formula::dia(n, p));
            for (const auto& np : finite_negvars)
                if (n > np.child().var_sort().value()) delta.insert(Formula::dia(n, np));
        }
        changed = delta.size() != before || scanned != delta.size();
    }
    return delta;
}

bool is_adequate(const FormulaSet& delta) {
    if (!delta.contains(Formula::top())) return false;
    const auto levels = modal_levels(delta);
    for (const auto& f : delta) {
        for (std::size_t i = 0; i < f.arity(); ++i)
            if (!delta.contains(i == 0 ? f.left() : f.right())) return false;
        if (!delta.contains(modified_negation(f))) return false;
        if (f.is(Kind::Dia)) {
            for (unsigned m : levels)
                if (!delta.contains(Formula::dia(m, f.child()))) return false;
        } else if (f.is(Kind::Var) && f.var_sort().is_finite()) {
            for (unsigned n : levels)
                if (n >= f.var_sort().value() && !delta.contains(Formula::dia(n, f))) return false;
        } else if (f.is(Kind::Neg) && f.child().is(Kind::Var) && f.child().var_sort().is_finite()) {
            for (unsigned n : levels)
                if (n > f.child().var_sort().value() && !delta.contains(Formula::dia(n, f))) return false;
        }
    }
    return true;
}

Formula to_omega_sorted(const Formula& f) {
    switch (f.kind()) {
    case Kind::Top:
    case Kind::Bot: return f;
    case Kind::Var: return f.var_sort().is_omega() ? f : Formula::var(f.name(), Sort::omega());
    case Kind::Neg: return Formula::neg(to_omega_sorted(f.child()));
    case Kind::And: return Formula::conj(to_omega_sorted(f.left()), to_omega_sorted(f.right()));
    case Kind::Or: return Formula::disj(to_omega_sorted(f.left()), to_omega_sorted(f.right()));
    case Kind::Dia: return Formula::dia(f.modality(), to_omega_sorted(f.child()));
    }
    return f;
}

namespace {

void collect_variables(const Formula& f, std::vector<Variable>& out) {
    if (f.is(Kind::Var)) {
        Variable v{f.name(), f.var_sort()};
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        return;
    }
    for (std::size_t i = 0; i < f.arity(); ++i) collect_variables(i == 0 ? f.left() : f.right(), out);
}

}  // namespace

std::vector<Variable> variables_of(const Formula& f) {
    std::vector<Variable> out;
    collect_variables(f, out);
    return out;
}

void check_well_sorted(const Formula& f) {
    std::unordered_map<std::string, Sort> seen;
    for (const auto& v : variables_of(f)) {
        auto [it, fresh] = seen.emplace(v.name, v.sort);
        if (!fresh && it->second != v.sort) throw SortConflict(v.name, it->second, v.sort);
    }
}

}  // namespace glpstar
