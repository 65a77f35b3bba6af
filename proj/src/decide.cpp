#include "glpstar/decide.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include "bdd.hpp"
#include "canonical.hpp"
#include "delta_index.hpp"

namespace glpstar {

using detail::DeltaIndex;

std::string to_string(SystemId s) {
    switch (s) {
    case SystemId::Jstar: return "J*";
    case SystemId::GLPstar: return "GLP*";
    case SystemId::GLP: return "GLP";
    case SystemId::GLPSstar: return "GLPS*";
    }
    return "?";
}

std::optional<SystemId> parse_system(std::string_view name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "jstar" || s == "j*") return SystemId::Jstar;
    if (s == "glpstar" || s == "glp*") return SystemId::GLPstar;
    if (s == "glp") return SystemId::GLP;
    if (s == "glpsstar" || s == "glps*") return SystemId::GLPSstar;
    return std::nullopt;
}

namespace {

// Elimination over atom valuations. Current-world atoms and successor atoms
// are interleaved in the variable order.
class SymbolicElimination {
public:
    SymbolicElimination(const DeltaIndex& ix, std::size_t node_cap)
        : ix_(ix), mgr_(static_cast<unsigned>(2 * ix.atom_count()), node_cap) {
        order_atoms();
        fx_.assign(ix.size(), bdd::kFalse);
        fy_.assign(ix.size(), bdd::kFalse);
        for (std::size_t pos : ix.bottom_up()) {
            fx_[pos] = encode(pos, fx_, false);
            fy_[pos] = encode(pos, fy_, true);
        }
        std::vector<unsigned> ys;
        for (std::size_t a = 0; a < ix.atom_count(); ++a) ys.push_back(yv(a));
        ycube_ = mgr_.cube(ys);
        to_y_.resize(mgr_.num_vars());
        std::iota(to_y_.begin(), to_y_.end(), 0u);
        for (std::size_t a = 0; a < ix.atom_count(); ++a) to_y_[xv(a)] = yv(a);

        states_ = bdd::kTrue;
        for (const auto& c : ix.local_constraints())
            states_ = mgr_.land(states_, mgr_.implies(mgr_.var(xv(c.atom)), fx_[c.consequent]));
        for (unsigned n : ix.levels()) rel_[n] = relation(n);
    }

    void run(std::vector<EliminationRound>& rounds, const std::function<void(const EliminationRound&)>& cb) {
        for (std::size_t round = 1;; ++round) {
            const bdd::Ref sy = mgr_.rename(states_, to_y_);
            bdd::Ref next = states_;
            for (unsigned n : ix_.levels()) {
                const bdd::Ref g = mgr_.land(sy, rel_.at(n));
                for (const auto& d : ix_.diamonds()) {
                    if (d.level != n) continue;
                    const bdd::Ref want = mgr_.land(fy_[d.body], mgr_.nvar(yv(d.atom)));
                    const bdd::Ref w = mgr_.and_exists(g, want, ycube_);
                    next = mgr_.land(next, mgr_.lor(mgr_.nvar(xv(d.atom)), w));
                }
            }
            EliminationRound r{round, count(states_), count(next), mgr_.node_count()};
            rounds.push_back(r);
            if (cb) cb(r);
            if (next == states_) break;
            states_ = next;
        }
    }

    bool satisfiable_with(std::size_t pos) { return mgr_.land(states_, fx_[pos]) != bdd::kFalse; }

    HintikkaWorld pick_with(std::size_t pos) { return pick(mgr_.land(states_, fx_[pos])); }

    /// A surviving y with x R_n y, body in y and <n>body not in y.
    std::optional<HintikkaWorld> witness(const HintikkaWorld& x, const DeltaIndex::Diamond& d) {
        bdd::Ref c = mgr_.land(states_, fx_[d.body]);
        c = mgr_.land(c, mgr_.nvar(xv(d.atom)));
        for (const auto& e : ix_.diamonds()) {
            if (e.level < d.level) {
                c = mgr_.land(c, x[e.pos] ? mgr_.var(xv(e.atom)) : mgr_.nvar(xv(e.atom)));
            } else if (e.level == d.level && !x[e.pos]) {
                c = mgr_.land(c, mgr_.lnot(fx_[e.body]));
                for (const auto& f : ix_.diamonds())
                    if (f.body == e.body && f.level >= d.level) c = mgr_.land(c, mgr_.nvar(xv(f.atom)));
            }
            if (c == bdd::kFalse) return std::nullopt;
        }
        return pick(c);
    }

    std::size_t node_count() const { return mgr_.node_count(); }

private:
    unsigned xv(std::size_t atom) const { return 2 * rank_[atom]; }
    unsigned yv(std::size_t atom) const { return 2 * rank_[atom] + 1; }

    // Variables, then diamonds grouped by body so that <m>psi and <n>psi
    // sit next to each other.
    void order_atoms() {
        const std::size_t n = ix_.atom_count();
        std::vector<std::size_t> atoms(n);
        std::iota(atoms.begin(), atoms.end(), std::size_t{0});
        auto key = [&](std::size_t a) {
            const std::size_t pos = ix_.atom_pos(a);
            if (ix_.kind(pos) == Kind::Var) return std::tuple<int, std::size_t, std::size_t, unsigned>(0, 0, pos, 0);
            const std::size_t body = ix_.kids(pos)[0];
            return std::tuple<int, std::size_t, std::size_t, unsigned>(1, ix_.delta()[body].size(), body,
                                                                       ix_.delta()[pos].modality());
        };
        std::stable_sort(atoms.begin(), atoms.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        rank_.assign(n, 0);
        for (std::size_t r = 0; r < n; ++r) rank_[atoms[r]] = static_cast<unsigned>(r);
    }

    bdd::Ref encode(std::size_t pos, const std::vector<bdd::Ref>& done, bool succ) {
        const std::size_t atom = ix_.atom_of(pos);
        if (atom != DeltaIndex::npos) return mgr_.var(succ ? yv(atom) : xv(atom));
        const auto& k = ix_.kids(pos);
        switch (ix_.kind(pos)) {
        case Kind::Top: return bdd::kTrue;
        case Kind::Bot: return bdd::kFalse;
        case Kind::Neg: return mgr_.lnot(done[k[0]]);
        case Kind::And: return mgr_.land(done[k[0]], done[k[1]]);
        case Kind::Or: return mgr_.lor(done[k[0]], done[k[1]]);
        default: return bdd::kFalse;
        }
    }

    // Everything in the canonical relation except the strictness clause,
    // which every use below enforces by asking for <n>body outside y.
    bdd::Ref relation(unsigned n) {
        bdd::Ref r = bdd::kTrue;
        for (const auto& d : ix_.diamonds()) {
            if (d.level < n) {
                r = mgr_.land(r, mgr_.iff(mgr_.var(xv(d.atom)), mgr_.var(yv(d.atom))));
            } else if (d.level == n) {
                bdd::Ref blocked = mgr_.lnot(fy_[d.body]);
                for (const auto& e : ix_.diamonds())
                    if (e.body == d.body && e.level >= n) blocked = mgr_.land(blocked, mgr_.nvar(yv(e.atom)));
                r = mgr_.land(r, mgr_.lor(mgr_.var(xv(d.atom)), blocked));
            }
        }
        return r;
    }

    HintikkaWorld pick(bdd::Ref f) {
        const auto assignment = mgr_.pick_one(f);
        std::vector<char> values(ix_.atom_count(), 0);
        for (std::size_t a = 0; a < values.size(); ++a) values[a] = assignment[xv(a)] == 1;
        return ix_.complete(values);
    }

    double count(bdd::Ref f) {
        return std::ldexp(mgr_.sat_count(f), -static_cast<int>(ix_.atom_count()));
    }

    const DeltaIndex& ix_;
    bdd::Manager mgr_;
    std::vector<unsigned> rank_;
    std::vector<bdd::Ref> fx_, fy_;
    bdd::Ref ycube_ = bdd::kTrue;
    std::vector<unsigned> to_y_;
    bdd::Ref states_ = bdd::kTrue;
    std::map<unsigned, bdd::Ref> rel_;
};

using WitnessFn = std::function<std::optional<HintikkaWorld>(const HintikkaWorld&, const DeltaIndex::Diamond&)>;

// Starting from the root type, adds witnesses until every diamond of every
// collected type has one among the collected types.
std::vector<HintikkaWorld> collect_types(const DeltaIndex& ix, const HintikkaWorld& root, const WitnessFn& witness) {
    std::vector<HintikkaWorld> types{root};
    for (std::size_t i = 0; i < types.size(); ++i) {
        for (const auto& d : ix.diamonds()) {
            if (!types[i][d.pos]) continue;
            const HintikkaWorld x = types[i];
            const bool have = std::any_of(types.begin(), types.end(), [&](const HintikkaWorld& y) {
                return y[d.body] && ix.related(x, y, d.level);
            });
            if (have) continue;
            auto y = witness(x, d);
            if (!y) throw std::logic_error("surviving world without a witness");
            types.push_back(std::move(*y));
        }
    }
    return types;
}

bool acceptable(const KripkeModel& m, const Formula& target) {
    if (!check_jstar_frame(m.frame).empty()) return false;
    if (!check_strong_persistence(m).empty()) return false;
    if (!m.root || !find_roots(m)[*m.root]) return false;
    return !model_check(m, *m.root, target);
}

KripkeModel renamed(const KripkeModel& m) {
    KripkeModel out;
    for (std::size_t i = 0; i < m.size(); ++i) out.frame.add_world("w" + std::to_string(i));
    for (unsigned n : m.frame.modalities())
        for (std::size_t x = 0; x < m.size(); ++x) {
            const WorldSet succ = m.frame.successors(n, x);
            for (auto y = succ.find_first(); y != WorldSet::npos; y = succ.find_next(y)) out.frame.add_edge(n, x, y);
        }
    for (const auto& [name, v] : m.valuation) {
        out.declare(name, v.sort);
        for (auto w = v.truth.find_first(); w != WorldSet::npos; w = v.truth.find_next(w)) out.set_true(name, w);
    }
    out.root = m.root;
    return out;
}

KripkeModel minimized(KripkeModel m, const Formula& target) {
    // Root is world 0 throughout; try dropping the others, last first.
    for (std::size_t i = m.size(); i-- > 1;) {
        WorldSet keep = m.frame.full_set();
        keep.reset(i);
        KripkeModel sub = m.restrict_to(keep);
        sub.root = 0;
        if (acceptable(sub, target)) m = std::move(sub);
    }
    return m;
}

Countermodel extract(const DeltaIndex& ix, const HintikkaWorld& root, const WitnessFn& witness,
                     const Formula& target, bool minimize, std::size_t& extracted) {
    const auto types = collect_types(ix, root, witness);
    extracted = types.size();
    KripkeModel m = detail::model_from_worlds(ix, types);
    m.root = 0;

    if (!check_jstar_frame(m.frame).empty()) throw std::logic_error("extracted frame violates the J* conditions");
    if (!check_strong_persistence(m).empty()) throw std::logic_error("extracted valuation is not persistent");
    if (!detail::truth_lemma(ix, m, types)) throw std::logic_error("truth lemma fails on extracted model");
    if (!find_roots(m)[0]) m = adjoin_root(m);
    if (!acceptable(m, target)) throw std::logic_error("extracted model does not falsify the target");

    if (minimize && m.root == World{0}) m = minimized(std::move(m), target);
    return {renamed(m), target};
}

}  // namespace

Formula jstar_target(SystemId system, const Formula& f, const DecideOptions& options) {
    switch (system) {
    case SystemId::Jstar: return f;
    case SystemId::GLPstar:
        if (options.route == GlpStarRoute::NPlus) return Formula::implies(n_plus(f, options.nplus_variant, options.n_pairing), f);
        return Formula::implies(m_plus(f), f);
    case SystemId::GLP: return jstar_target(SystemId::GLPstar, to_omega_sorted(f), options);
    case SystemId::GLPSstar: return jstar_target(SystemId::GLPstar, Formula::implies(h_formula(f), f), options);
    }
    return f;
}

Verdict decide(SystemId system, const Formula& f, const DecideOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    check_well_sorted(f);

    Verdict v;
    v.target = jstar_target(system, f, options);
    const Formula refutation = modified_negation(v.target);
    FormulaSet gamma = subformulas(v.target);
    gamma.insert(refutation);
    const FormulaSet delta = adequate_closure(gamma);
    const DeltaIndex ix(delta);
    const std::size_t neg_pos = delta.index_of(refutation);

    v.stats.delta_size = delta.size();
    v.stats.atoms = ix.atom_count();

    std::optional<HintikkaWorld> root;
    WitnessFn witness;
    std::optional<SymbolicElimination> symbolic;
    std::vector<HintikkaWorld> survivors;

    if (options.engine == Engine::Symbolic) {
        try {
            symbolic.emplace(ix, options.node_cap);
            symbolic->run(v.stats.rounds, options.on_round);
            if (symbolic->satisfiable_with(neg_pos)) root = symbolic->pick_with(neg_pos);
        } catch (const bdd::NodeLimitExceeded& e) {
            throw ResourceLimitExceeded(e.what());
        }
        witness = [&](const HintikkaWorld& x, const DeltaIndex::Diamond& d) { return symbolic->witness(x, d); };
    } else {
        CanonicalOptions co;
        co.candidate_cap = options.candidate_cap;
        co.on_round = options.on_round;
        CanonicalModel canonical = build_canonical(delta, co);
        v.stats.rounds = canonical.rounds;
        survivors = std::move(canonical.worlds);
        for (const auto& w : survivors)
            if (w[neg_pos]) {
                root = w;
                break;
            }
        witness = [&](const HintikkaWorld& x, const DeltaIndex::Diamond& d) -> std::optional<HintikkaWorld> {
            for (const auto& y : survivors)
                if (y[d.body] && !y[d.pos] && ix.related(x, y, d.level)) return y;
            return std::nullopt;
        };
    }

    v.theorem = !root.has_value();
    if (root) {
        try {
            v.countermodel = extract(ix, *root, witness, v.target, options.minimize, v.stats.extracted_worlds);
        } catch (const bdd::NodeLimitExceeded& e) {
            throw ResourceLimitExceeded(e.what());
        }
    }
    v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

}  // namespace glpstar
