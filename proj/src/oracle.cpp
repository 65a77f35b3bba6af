#include "glpstar/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace glpstar {

namespace {

using Mask = std::uint32_t;
using Relation = std::vector<Mask>;  // successor mask per world

// Irreflexive transitive relations on k points, in the order produced by
// deciding the ordered pairs lexicographically, "absent" first.
std::vector<Relation> strict_orders(std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) pairs.emplace_back(i, j);
    auto index = [&](std::size_t i, std::size_t j) { return i * (k - 1) + (j < i ? j : j - 1); };

    // Triples to test once their last pair is decided.
    struct Triple {
        std::size_t a, b, c;
    };
    std::vector<std::vector<Triple>> due(pairs.size());
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c) {
                if (a == b || b == c || a == c) continue;
                const std::size_t last = std::max({index(a, b), index(b, c), index(a, c)});
                due[last].push_back({a, b, c});
            }

    std::vector<Relation> out;
    Relation r(k, 0);
    auto dfs = [&](auto&& self, std::size_t p) -> void {
        if (p == pairs.size()) {
            out.push_back(r);
            return;
        }
        const auto [i, j] = pairs[p];
        for (int take = 0; take < 2; ++take) {
            if (take) {
                if (r[j] >> i & 1u) break;  // would create a 2-cycle
                r[i] |= Mask{1} << j;
            }
            bool ok = true;
            for (const auto& t : due[p]) {
                const bool ab = r[t.a] >> t.b & 1u, bc = r[t.b] >> t.c & 1u, ac = r[t.a] >> t.c & 1u;
                if (ab && bc && !ac) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, p + 1);
            if (take) r[i] &= ~(Mask{1} << j);
        }
    };
    dfs(dfs, 0);
    return out;
}

// Conditions (ii) and (iii) between a lower relation rm and a higher rn.
bool compatible(const Relation& rm, const Relation& rn) {
    const std::size_t k = rm.size();
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y)
            if ((rn[x] >> y & 1u) && rm[x] != rm[y]) return false;
        for (std::size_t y = 0; y < k; ++y)
            if ((rm[x] >> y & 1u) && (rn[y] & ~rm[x])) return false;
    }
    return true;
}

// Extensions of a variable of the given sort allowed by strong persistence.
std::vector<Mask> persistent_sets(Sort sort, const std::vector<unsigned>& modalities,
                                  const std::vector<Relation>& frame, std::size_t k) {
    std::vector<Mask> out;
    for (Mask t = 0; t < (Mask{1} << k); ++t) {
        bool ok = true;
        for (std::size_t i = 0; i < modalities.size() && ok; ++i) {
            const unsigned n = modalities[i];
            for (std::size_t x = 0; x < k && ok; ++x) {
                const Mask succ = frame[i][x];
                const bool in_x = t >> x & 1u;
                // true successor forces truth below; a true world forces truth above
                if (sort.at_most(n) && !in_x && (succ & t)) ok = false;
                if (sort.below(n) && in_x && (succ & ~t)) ok = false;
            }
        }
        if (ok) out.push_back(t);
    }
    return out;
}

using CoreVisitor = std::function<bool(std::size_t k, const std::vector<Relation>&, const std::vector<Mask>&)>;

EnumerationStats enumerate_core(const std::vector<Variable>& variables, std::vector<unsigned> modalities,
                                const SearchBudget& budget, const CoreVisitor& visit) {
    if (budget.max_worlds > kMaxOracleWorlds)
        throw std::invalid_argument("oracle supports at most " + std::to_string(kMaxOracleWorlds) + " worlds");
    std::sort(modalities.begin(), modalities.end());
    modalities.erase(std::unique(modalities.begin(), modalities.end()), modalities.end());

    EnumerationStats stats;
    for (std::size_t k = 1; k <= budget.max_worlds; ++k) {
        const auto orders = strict_orders(k);
        std::vector<Relation> frame(modalities.size());
        std::vector<Mask> vals(variables.size());

        auto valuations = [&](const std::vector<std::vector<Mask>>& choices) -> bool {
            auto go = [&](auto&& self, std::size_t v) -> bool {
                if (v == variables.size()) {
                    if (stats.models >= budget.max_models) {
                        stats.truncated = true;
                        return false;
                    }
                    ++stats.models;
                    if (!visit(k, frame, vals)) {
                        stats.stopped = true;
                        return false;
                    }
                    return true;
                }
                for (Mask t : choices[v]) {
                    vals[v] = t;
                    if (!self(self, v + 1)) return false;
                }
                return true;
            };
            return go(go, 0);
        };

        auto relations = [&](auto&& self, std::size_t i) -> bool {
            if (i == modalities.size()) {
                std::map<Sort, std::vector<Mask>> by_sort;
                std::vector<std::vector<Mask>> choices;
                for (const auto& var : variables) {
                    auto it = by_sort.find(var.sort);
                    if (it == by_sort.end())
                        it = by_sort.emplace(var.sort, persistent_sets(var.sort, modalities, frame, k)).first;
                    choices.push_back(it->second);
                }
                return valuations(choices);
            }
            for (const auto& r : orders) {
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(frame[j], r);
                if (!ok) continue;
                frame[i] = r;
                if (!self(self, i + 1)) return false;
            }
            return true;
        };
        if (!relations(relations, 0)) break;
    }
    return stats;
}

KripkeModel to_model(std::size_t k, const std::vector<unsigned>& modalities, const std::vector<Relation>& frame,
                     const std::vector<Variable>& variables, const std::vector<Mask>& vals) {
    KripkeModel m;
    for (std::size_t i = 0; i < k; ++i) m.frame.add_world("w" + std::to_string(i));
    for (std::size_t i = 0; i < modalities.size(); ++i)
        for (std::size_t x = 0; x < k; ++x)
            for (std::size_t y = 0; y < k; ++y)
                if (frame[i][x] >> y & 1u) m.frame.add_edge(modalities[i], x, y);
    for (std::size_t v = 0; v < variables.size(); ++v) {
        m.declare(variables[v].name, variables[v].sort);
        for (std::size_t x = 0; x < k; ++x)
            if (vals[v] >> x & 1u) m.set_true(variables[v].name, x);
    }
    return m;
}

std::vector<unsigned> sorted_unique(std::vector<unsigned> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// The formula's subformulas as a DAG evaluated bottom-up on world masks.
class Compiled {
public:
    Compiled(const Formula& f, const std::vector<Variable>& variables, const std::vector<unsigned>& modalities) {
        const FormulaSet subs = subformulas(f);
        std::vector<Formula> order = subs.items();
        std::stable_sort(order.begin(), order.end(), [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
        FormulaSet pos;
        for (const auto& g : order) pos.insert(g);
        for (const auto& g : order) {
            Node n{g.kind(), 0, 0, 0};
            switch (g.kind()) {
            case Kind::Var:
                n.a = static_cast<std::size_t>(std::find_if(variables.begin(), variables.end(), [&](const Variable& v) {
                                                   return v.name == g.name();
                                               }) - variables.begin());
                break;
            case Kind::Neg: n.a = pos.index_of(g.child()); break;
            case Kind::And:
            case Kind::Or:
                n.a = pos.index_of(g.left());
                n.b = pos.index_of(g.right());
                break;
            case Kind::Dia:
                n.a = pos.index_of(g.child());
                n.rel = static_cast<std::size_t>(std::find(modalities.begin(), modalities.end(), g.modality()) -
                                                 modalities.begin());
                break;
            default: break;
            }
            nodes_.push_back(n);
        }
        values_.resize(nodes_.size());
    }

    Mask eval(std::size_t k, const std::vector<Relation>& frame, const std::vector<Mask>& vals) {
        const Mask full = (Mask{1} << k) - 1;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            Mask m = 0;
            switch (n.kind) {
            case Kind::Top: m = full; break;
            case Kind::Bot: m = 0; break;
            case Kind::Var: m = vals[n.a]; break;
            case Kind::Neg: m = ~values_[n.a] & full; break;
            case Kind::And: m = values_[n.a] & values_[n.b]; break;
            case Kind::Or: m = values_[n.a] | values_[n.b]; break;
            case Kind::Dia:
                if (n.rel < frame.size())
                    for (std::size_t x = 0; x < k; ++x)
                        if (frame[n.rel][x] & values_[n.a]) m |= Mask{1} << x;
                break;
            }
            values_[i] = m;
        }
        return values_.back();
    }

private:
    struct Node {
        Kind kind;
        std::size_t a, b, rel;
    };
    std::vector<Node> nodes_;
    std::vector<Mask> values_;
};

}  // namespace

EnumerationStats enumerate_models(const std::vector<Variable>& variables, const std::vector<unsigned>& modalities,
                                  const SearchBudget& budget,
                                  const std::function<bool(const KripkeModel&)>& visit) {
    const auto mods = sorted_unique(modalities);
    return enumerate_core(variables, mods, budget,
                          [&](std::size_t k, const std::vector<Relation>& frame, const std::vector<Mask>& vals) {
                              return visit(to_model(k, mods, frame, variables, vals));
                          });
}

OracleResult brute_force_countermodel(const Formula& f, const SearchBudget& budget) {
    check_well_sorted(f);
    const auto variables = variables_of(f);
    std::vector<unsigned> mods;
    if (budget.modalities) {
        mods = sorted_unique(*budget.modalities);
    } else {
        const auto in = modalities_in(f);
        mods.assign(in.begin(), in.end());
    }
    Compiled compiled(f, variables, mods);

    OracleResult result;
    const auto stats =
        enumerate_core(variables, mods, budget,
                       [&](std::size_t k, const std::vector<Relation>& frame, const std::vector<Mask>& vals) {
                           const Mask ext = compiled.eval(k, frame, vals);
                           const Mask full = (Mask{1} << k) - 1;
                           if (ext == full) return true;
                           World w = 0;
                           while (ext >> w & 1u) ++w;
                           result.model = to_model(k, mods, frame, variables, vals);
                           result.world = w;
                           return false;
                       });
    result.examined = stats.models;
    result.truncated = stats.truncated;

    if (result.model) {
        KripkeModel& m = *result.model;
        if (find_roots(m)[*result.world]) m.root = result.world;
        if (!check_jstar_frame(m.frame).empty() || !check_strong_persistence(m).empty() ||
            model_check(m, *result.world, f))
            throw std::logic_error("oracle produced an invalid countermodel");
    }
    return result;
}

const char* to_string(Agreement a) {
    switch (a) {
    case Agreement::Agree: return "agreement";
    case Agreement::Disagree: return "disagreement";
    case Agreement::Inconclusive: return "inconclusive";
    }
    return "?";
}

CrossValidation cross_validate(const Formula& f, SystemId system, const SearchBudget& budget,
                               const DecideOptions& options) {
    CrossValidation cv;
    const Verdict v = decide(system, f, options);
    cv.target = v.target;
    cv.theorem = v.theorem;
    if (v.countermodel) cv.countermodel_worlds = v.countermodel->model.size();
    cv.oracle = brute_force_countermodel(v.target, budget);

    if (v.theorem) {
        if (cv.oracle.found()) {
            cv.outcome = Agreement::Disagree;
            cv.detail = "decide reports a theorem but the oracle found a countermodel";
        } else if (cv.oracle.truncated) {
            cv.outcome = Agreement::Inconclusive;
            cv.detail = "oracle budget exhausted";
        } else {
            cv.outcome = Agreement::Agree;
        }
        return cv;
    }
    if (cv.oracle.found()) {
        cv.outcome = Agreement::Agree;
    } else if (*cv.countermodel_worlds <= budget.max_worlds && !cv.oracle.truncated) {
        cv.outcome = Agreement::Disagree;
        cv.detail = "decide produced a countermodel within the budget that the oracle missed";
    } else {
        cv.outcome = Agreement::Inconclusive;
        cv.detail = "countermodel larger than the oracle budget";
    }
    return cv;
}

}  // namespace glpstar
