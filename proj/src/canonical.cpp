#include "canonical.hpp"

#include <string>

namespace glpstar {

using detail::DeltaIndex;

namespace detail {

std::vector<HintikkaWorld> enumerate_candidates(const DeltaIndex& ix, std::size_t cap) {
    const std::size_t n = ix.atom_count();
    // Each local constraint is checked once all of its atoms are assigned.
    std::vector<std::vector<DeltaIndex::Constraint>> ready(n);
    for (const auto& c : ix.local_constraints()) {
        std::size_t last = c.atom;
        for (std::size_t a : ix.atoms_under(c.consequent)) last = std::max(last, a);
        ready[last].push_back(c);
    }

    std::vector<HintikkaWorld> out;
    std::vector<char> values(n, 0);
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            if (out.size() >= cap)
                throw ResourceLimitExceeded("more than " + std::to_string(cap) + " candidate worlds");
            out.push_back(ix.complete(values));
            return;
        }
        for (char v : {0, 1}) {
            values[i] = v;
            bool ok = true;
            for (const auto& c : ready[i])
                if (values[c.atom] && !ix.eval(c.consequent, values)) {
                    ok = false;
                    break;
                }
            if (ok) self(self, i + 1);
        }
        values[i] = 0;
    };
    dfs(dfs, 0);
    return out;
}

KripkeModel model_from_worlds(const DeltaIndex& ix, const std::vector<HintikkaWorld>& worlds,
                              RelationConditions conditions) {
    KripkeModel m;
    for (std::size_t i = 0; i < worlds.size(); ++i) m.frame.add_world("w" + std::to_string(i));
    for (unsigned n : ix.levels())
        for (std::size_t x = 0; x < worlds.size(); ++x)
            for (std::size_t y = 0; y < worlds.size(); ++y)
                if (ix.related(worlds[x], worlds[y], n, conditions)) m.frame.add_edge(n, x, y);
    const FormulaSet& delta = ix.delta();
    for (std::size_t p = 0; p < delta.size(); ++p) {
        if (!delta[p].is(Kind::Var)) continue;
        m.declare(delta[p].name(), delta[p].var_sort());
        for (std::size_t x = 0; x < worlds.size(); ++x)
            if (worlds[x][p]) m.set_true(delta[p].name(), x);
    }
    return m;
}

bool truth_lemma(const DeltaIndex& ix, const KripkeModel& model, const std::vector<HintikkaWorld>& worlds) {
    const FormulaSet& delta = ix.delta();
    for (std::size_t p = 0; p < delta.size(); ++p) {
        const WorldSet ext = extension(model, delta[p]);
        for (std::size_t x = 0; x < worlds.size(); ++x)
            if (ext[x] != worlds[x][p]) return false;
    }
    return true;
}

}  // namespace detail

std::vector<HintikkaWorld> hintikka_candidates(const FormulaSet& delta, std::size_t cap) {
    const DeltaIndex ix(delta);
    return detail::enumerate_candidates(ix, cap);
}

bool canonical_relation(const FormulaSet& delta, const HintikkaWorld& x, const HintikkaWorld& y, unsigned n,
                        RelationConditions conditions) {
    const DeltaIndex ix(delta);
    return ix.related(x, y, n, conditions);
}

CanonicalModel build_canonical(const FormulaSet& delta, const CanonicalOptions& options) {
    const DeltaIndex ix(delta);
    CanonicalModel out;
    std::vector<HintikkaWorld> alive = detail::enumerate_candidates(ix, options.candidate_cap);
    out.candidates = alive.size();

    for (std::size_t round = 1;; ++round) {
        std::vector<HintikkaWorld> next;
        for (const auto& x : alive) {
            bool witnessed = true;
            for (const auto& d : ix.diamonds()) {
                if (!x[d.pos]) continue;
                bool found = false;
                for (const auto& y : alive)
                    if (y[d.body] && ix.related(x, y, d.level, options.conditions)) {
                        found = true;
                        break;
                    }
                if (!found) {
                    witnessed = false;
                    break;
                }
            }
            if (witnessed) next.push_back(x);
        }
        EliminationRound r{round, static_cast<double>(alive.size()), static_cast<double>(next.size()), 0};
        out.rounds.push_back(r);
        if (options.on_round) options.on_round(r);
        const bool stable = next.size() == alive.size();
        alive = std::move(next);
        if (stable) break;
    }

    out.model = detail::model_from_worlds(ix, alive, options.conditions);
    out.worlds = std::move(alive);
    return out;
}

bool truth_lemma_holds(const FormulaSet& delta, const CanonicalModel& canonical) {
    const DeltaIndex ix(delta);
    return detail::truth_lemma(ix, canonical.model, canonical.worlds);
}

}  // namespace glpstar
