#include "support.hpp"

#include <algorithm>
#include <numeric>

namespace testsupport {

using glpstar::Kind;
using glpstar::KripkeFrame;
using glpstar::World;

namespace {

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

Formula leaf(Rng& rng, const FormulaShape& shape) {
    if (shape.variables.empty() || (shape.constants && chance(rng, 0.15)))
        return chance(rng, 0.5) ? Formula::top() : Formula::bot();
    const auto& [name, sort] = pick(rng, shape.variables);
    return Formula::var(name, sort);
}

}  // namespace

Formula random_formula(Rng& rng, const FormulaShape& shape) {
    if (shape.depth <= 0 || chance(rng, 0.2)) return leaf(rng, shape);
    FormulaShape sub = shape;
    sub.depth = shape.depth - 1;
    const int op = std::uniform_int_distribution<int>(0, 6)(rng);
    const bool modal = !shape.modalities.empty();
    switch (op) {
    case 0: return Formula::neg(random_formula(rng, sub));
    case 1: return Formula::conj(random_formula(rng, sub), random_formula(rng, sub));
    case 2: return Formula::disj(random_formula(rng, sub), random_formula(rng, sub));
    case 3: return Formula::implies(random_formula(rng, sub), random_formula(rng, sub));
    case 4:
    case 5:
        if (modal) return Formula::dia(pick(rng, shape.modalities), random_formula(rng, sub));
        return Formula::neg(random_formula(rng, sub));
    default:
        if (modal) return Formula::box(pick(rng, shape.modalities), random_formula(rng, sub));
        return Formula::conj(random_formula(rng, sub), random_formula(rng, sub));
    }
}

std::vector<std::pair<std::string, Sort>> random_variables(Rng& rng, std::size_t count, const std::vector<Sort>& sorts) {
    std::vector<std::pair<std::string, Sort>> out;
    const char* names[] = {"p", "q", "r", "s", "t", "u"};
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(names[i % 6], pick(rng, sorts));
    return out;
}

bool ref_is_jstar_frame(const KripkeFrame& f) {
    const std::size_t n = f.size();
    const auto mods = f.modalities();
    for (unsigned a : mods)
        for (World x = 0; x < n; ++x) {
            if (f.has_edge(a, x, x)) return false;
            for (World y = 0; y < n; ++y)
                for (World z = 0; z < n; ++z)
                    if (f.has_edge(a, x, y) && f.has_edge(a, y, z) && !f.has_edge(a, x, z)) return false;
        }
    for (unsigned m : mods)
        for (unsigned k : mods) {
            if (m >= k) continue;
            for (World x = 0; x < n; ++x)
                for (World y = 0; y < n; ++y) {
                    if (f.has_edge(k, x, y))
                        for (World z = 0; z < n; ++z)
                            if (f.has_edge(m, x, z) != f.has_edge(m, y, z)) return false;
                    if (f.has_edge(m, x, y))
                        for (World z = 0; z < n; ++z)
                            if (f.has_edge(k, y, z) && !f.has_edge(m, x, z)) return false;
                }
        }
    return true;
}

namespace {

bool truth(const KripkeModel& m, const std::string& name, Sort sort, World x) {
    auto it = m.valuation.find(name);
    if (it == m.valuation.end() || it->second.sort != sort) return false;
    return x < it->second.truth.size() && it->second.truth[x];
}

}  // namespace

bool ref_is_persistent(const KripkeModel& m) {
    for (const auto& [name, v] : m.valuation) {
        if (v.sort.is_omega()) continue;
        for (unsigned n : m.frame.modalities())
            for (World x = 0; x < m.size(); ++x)
                for (World y = 0; y < m.size(); ++y) {
                    if (!m.frame.has_edge(n, x, y)) continue;
                    const bool px = truth(m, name, v.sort, x), py = truth(m, name, v.sort, y);
                    if (v.sort.value() <= n && py && !px) return false;
                    if (v.sort.value() < n && !py && px) return false;
                }
    }
    return true;
}

bool ref_holds(const KripkeModel& m, World x, const Formula& f) {
    switch (f.kind()) {
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Var: return truth(m, f.name(), f.var_sort(), x);
    case Kind::Neg: return !ref_holds(m, x, f.child());
    case Kind::And: return ref_holds(m, x, f.left()) && ref_holds(m, x, f.right());
    case Kind::Or: return ref_holds(m, x, f.left()) || ref_holds(m, x, f.right());
    case Kind::Dia:
        for (World y = 0; y < m.size(); ++y)
            if (m.frame.has_edge(f.modality(), x, y) && ref_holds(m, y, f.child())) return true;
        return false;
    }
    return false;
}

KripkeModel random_persistent_model(Rng& rng, const ModelShape& shape) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(shape.min_worlds, shape.max_worlds)(rng);
    std::vector<unsigned> mods = shape.modalities;
    std::sort(mods.begin(), mods.end());

    // rel[i][x][y] for mods[i]
    using Matrix = std::vector<std::vector<char>>;
    std::vector<Matrix> rel;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        Matrix chosen(n, std::vector<char>(n, 0));
        double density = shape.edge_density;
        for (int attempt = 0; attempt < 40; ++attempt, density *= 0.9) {
            std::vector<std::size_t> rank(n);
            std::iota(rank.begin(), rank.end(), std::size_t{0});
            std::shuffle(rank.begin(), rank.end(), rng);
            Matrix r(n, std::vector<char>(n, 0));
            for (World x = 0; x < n; ++x)
                for (World y = 0; y < n; ++y) {
                    if (rank[x] >= rank[y]) continue;
                    bool same = true;  // identical lower successor sets
                    for (std::size_t j = 0; j < i && same; ++j) same = rel[j][x] == rel[j][y];
                    if (same && chance(rng, density)) r[x][y] = 1;
                }
            for (World k = 0; k < n; ++k)
                for (World x = 0; x < n; ++x)
                    for (World y = 0; y < n; ++y)
                        if (r[x][k] && r[k][y]) r[x][y] = 1;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                for (World x = 0; x < n && ok; ++x)
                    for (World y = 0; y < n && ok; ++y)
                        for (World z = 0; z < n && ok; ++z)
                            if (rel[j][x][y] && r[y][z] && !rel[j][x][z]) ok = false;
            if (ok) {
                chosen = r;
                break;
            }
        }
        rel.push_back(chosen);
    }

    KripkeModel m;
    for (World x = 0; x < n; ++x) m.frame.add_world("w" + std::to_string(x));
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (World x = 0; x < n; ++x)
            for (World y = 0; y < n; ++y)
                if (rel[i][x][y]) m.frame.add_edge(mods[i], x, y);

    for (const auto& [name, sort] : shape.variables) {
        std::vector<char> t(n);
        for (auto& b : t) b = chance(rng, 0.5);
        if (sort.is_finite()) {
            // Close either the true set or the false set until persistent.
            const bool grow_true = chance(rng, 0.5);
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t i = 0; i < mods.size(); ++i)
                    for (World x = 0; x < n; ++x)
                        for (World y = 0; y < n; ++y) {
                            if (!rel[i][x][y]) continue;
                            const bool le = sort.value() <= mods[i], lt = sort.value() < mods[i];
                            if (grow_true) {
                                if (le && t[y] && !t[x]) t[x] = 1, changed = true;
                                if (lt && t[x] && !t[y]) t[y] = 1, changed = true;
                            } else {
                                if (le && !t[x] && t[y]) t[y] = 0, changed = true;
                                if (lt && !t[y] && t[x]) t[x] = 0, changed = true;
                            }
                        }
            }
        }
        m.declare(name, sort);
        for (World x = 0; x < n; ++x)
            if (t[x]) m.set_true(name, x);
    }
    return m;
}

KripkeModel perturb(Rng& rng, const KripkeModel& m) {
    KripkeModel out = m;
    if (out.valuation.empty() || out.size() == 0) return out;
    std::vector<std::string> names;
    for (const auto& [name, v] : out.valuation) names.push_back(name);
    const int flips = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < flips; ++i) {
        auto& v = out.valuation[pick(rng, names)];
        const World x = std::uniform_int_distribution<World>(0, out.size() - 1)(rng);
        v.truth.flip(x);
    }
    return out;
}

}  // namespace testsupport

namespace testsupport {

namespace {

// Node at preorder position `pos`, rebuilt with `with` in its place.
Formula replace_at(const Formula& f, std::size_t& pos, const Formula& with, Formula& old) {
    if (pos == 0) {
        old = f;
        pos = static_cast<std::size_t>(-1);
        return with;
    }
    --pos;
    switch (f.kind()) {
    case glpstar::Kind::Neg: return Formula::neg(replace_at(f.child(), pos, with, old));
    case glpstar::Kind::Dia: return Formula::dia(f.modality(), replace_at(f.child(), pos, with, old));
    case glpstar::Kind::And:
    case glpstar::Kind::Or: {
        const Formula l = replace_at(f.left(), pos, with, old);
        const Formula r = pos == static_cast<std::size_t>(-1) ? f.right() : replace_at(f.right(), pos, with, old);
        return f.is(glpstar::Kind::And) ? Formula::conj(l, r) : Formula::disj(l, r);
    }
    default: return f;
    }
}

}  // namespace

Formula swap_subformula(Rng& rng, const Formula& f) {
    const auto subs = glpstar::subformulas(f).items();
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::size_t pos = std::uniform_int_distribution<std::size_t>(0, f.size() - 1)(rng);
        const Formula with = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
        Formula old;
        const Formula g = replace_at(f, pos, with, old);
        if (g != f) return g;
    }
    return Formula::neg(f);
}

}  // namespace testsupport
