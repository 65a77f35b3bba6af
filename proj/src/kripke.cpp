#include "glpstar/kripke.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace glpstar {

KripkeFrame::KripkeFrame(std::vector<std::string> worlds) : names_(std::move(worlds)) {}

std::optional<World> KripkeFrame::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<World>(it - names_.begin());
}

World KripkeFrame::add_world(std::string name) {
    names_.push_back(std::move(name));
    for (auto& [n, succ] : rel_) {
        for (auto& s : succ) s.resize(names_.size());
        succ.emplace_back(names_.size());
    }
    return names_.size() - 1;
}

void KripkeFrame::add_edge(unsigned n, World x, World y) {
    auto& succ = rel_[n];
    if (succ.empty()) succ.assign(size(), WorldSet(size()));
    succ.at(x).set(y);
}

bool KripkeFrame::has_edge(unsigned n, World x, World y) const {
    auto it = rel_.find(n);
    return it != rel_.end() && it->second.at(x).test(y);
}

WorldSet KripkeFrame::successors(unsigned n, World x) const {
    auto it = rel_.find(n);
    if (it == rel_.end()) return empty_set();
    return it->second.at(x);
}

std::vector<unsigned> KripkeFrame::modalities() const {
    std::vector<unsigned> out;
    for (const auto& [n, succ] : rel_)
        if (std::any_of(succ.begin(), succ.end(), [](const WorldSet& s) { return s.any(); })) out.push_back(n);
    return out;
}

std::size_t KripkeFrame::edge_count() const {
    std::size_t c = 0;
    for (const auto& [n, succ] : rel_)
        for (const auto& s : succ) c += s.count();
    return c;
}

KripkeFrame KripkeFrame::restrict_to(const WorldSet& keep) const {
    std::vector<World> old_of;
    std::vector<std::string> names;
    for (World w = 0; w < size(); ++w)
        if (keep.test(w)) {
            old_of.push_back(w);
            names.push_back(names_[w]);
        }
    KripkeFrame out(std::move(names));
    for (const auto& [n, succ] : rel_)
        for (World i = 0; i < old_of.size(); ++i)
            for (World j = 0; j < old_of.size(); ++j)
                if (succ[old_of[i]].test(old_of[j])) out.add_edge(n, i, j);
    return out;
}

bool operator==(const KripkeFrame& a, const KripkeFrame& b) {
    if (a.names_ != b.names_) return false;
    const auto mods = a.modalities();
    if (mods != b.modalities()) return false;
    for (unsigned n : mods)
        for (World x = 0; x < a.size(); ++x)
            if (a.successors(n, x) != b.successors(n, x)) return false;
    return true;
}

VarValuation& KripkeModel::declare(const std::string& name, Sort sort) {
    auto& v = valuation[name];
    v.sort = sort;
    v.truth.resize(size());
    return v;
}

void KripkeModel::set_true(const std::string& name, World w) {
    auto it = valuation.find(name);
    if (it == valuation.end()) throw std::invalid_argument("undeclared variable '" + name + "'");
    it->second.truth.resize(size());
    it->second.truth.set(w);
}

bool KripkeModel::holds_var(const std::string& name, World w) const {
    auto it = valuation.find(name);
    return it != valuation.end() && w < it->second.truth.size() && it->second.truth.test(w);
}

World KripkeModel::world(const std::string& name) const {
    auto w = frame.find(name);
    if (!w) throw UnknownWorld(name);
    return *w;
}

KripkeModel KripkeModel::restrict_to(const WorldSet& keep) const {
    KripkeModel out;
    out.frame = frame.restrict_to(keep);
    std::vector<World> new_of(size(), size());
    World next = 0;
    for (World w = 0; w < size(); ++w)
        if (keep.test(w)) new_of[w] = next++;
    for (const auto& [name, v] : valuation) {
        auto& nv = out.declare(name, v.sort);
        for (World w = 0; w < size(); ++w)
            if (keep.test(w) && v.truth.test(w)) nv.truth.set(new_of[w]);
    }
    if (root && keep.test(*root)) out.root = new_of[*root];
    return out;
}

// ---------------------------------------------------------------------------

const char* to_string(Condition c) {
    switch (c) {
    case Condition::Irreflexivity: return "irreflexivity";
    case Condition::Transitivity: return "transitivity";
    case Condition::ConditionII: return "condition-ii";
    case Condition::ConditionIII: return "condition-iii";
    case Condition::PersistenceI: return "persistence-i";
    case Condition::PersistenceII: return "persistence-ii";
    }
    return "?";
}

std::string Violation::describe() const {
    std::ostringstream os;
    os << to_string(condition);
    if (!modalities.empty()) {
        os << " [R";
        for (std::size_t i = 0; i < modalities.size(); ++i) os << (i ? ",R" : "") << modalities[i];
        os << "]";
    }
    if (!variable.empty()) os << " variable " << variable;
    os << " at";
    for (const auto& w : worlds) os << ' ' << w;
    return os.str();
}

bool ViolationReport::has(Condition c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; });
}

std::string ViolationReport::describe() const {
    std::string out;
    for (const auto& v : violations) out += v.describe() + "\n";
    return out;
}

ViolationReport check_jstar_frame(const KripkeFrame& frame) {
    ViolationReport report;
    const auto mods = frame.modalities();
    const auto nm = [&](World w) { return frame.name(w); };
    const std::size_t size = frame.size();

    for (unsigned k : mods) {
        for (World x = 0; x < size; ++x) {
            const auto sx = frame.successors(k, x);
            if (sx.test(x)) report.violations.push_back({Condition::Irreflexivity, {k}, {nm(x)}, {}});
            for (World y = sx.find_first(); y != WorldSet::npos; y = sx.find_next(y)) {
                const auto missing = frame.successors(k, y) - sx;
                for (World z = missing.find_first(); z != WorldSet::npos; z = missing.find_next(z))
                    report.violations.push_back({Condition::Transitivity, {k}, {nm(x), nm(y), nm(z)}, {}});
            }
        }
    }
    // Relations absent from the frame are empty, so only pairs of present
    // indices can produce violations, except (ii) where R_m may be empty
    // while R_n is not; an empty R_m trivially agrees.
    for (unsigned n : mods) {
        for (unsigned m : mods) {
            if (m >= n) continue;
            for (World x = 0; x < size; ++x) {
                const auto sn = frame.successors(n, x);
                const auto smx = frame.successors(m, x);
                for (World y = sn.find_first(); y != WorldSet::npos; y = sn.find_next(y)) {
                    const auto diff = smx ^ frame.successors(m, y);
                    for (World z = diff.find_first(); z != WorldSet::npos; z = diff.find_next(z))
                        report.violations.push_back({Condition::ConditionII, {m, n}, {nm(x), nm(y), nm(z)}, {}});
                }
                // (iii): x R_m y, y R_n z => x R_m z
                for (World y = smx.find_first(); y != WorldSet::npos; y = smx.find_next(y)) {
                    const auto missing = frame.successors(n, y) - smx;
                    for (World z = missing.find_first(); z != WorldSet::npos; z = missing.find_next(z))
                        report.violations.push_back({Condition::ConditionIII, {m, n}, {nm(x), nm(y), nm(z)}, {}});
                }
            }
        }
    }
    return report;
}

ViolationReport check_strong_persistence(const KripkeModel& model) {
    ViolationReport report;
    const auto& frame = model.frame;
    for (const auto& [name, v] : model.valuation) {
        if (v.sort.is_omega()) continue;
        for (unsigned n : frame.modalities()) {
            const bool clause_i = v.sort.at_most(n);
            const bool clause_ii = v.sort.below(n);
            if (!clause_i && !clause_ii) continue;
            for (World x = 0; x < frame.size(); ++x) {
                const auto sx = frame.successors(n, x);
                for (World y = sx.find_first(); y != WorldSet::npos; y = sx.find_next(y)) {
                    const bool tx = v.truth.test(x), ty = v.truth.test(y);
                    if (clause_i && ty && !tx)
                        report.violations.push_back(
                            {Condition::PersistenceI, {n}, {frame.name(x), frame.name(y)}, name});
                    if (clause_ii && !ty && tx)
                        report.violations.push_back(
                            {Condition::PersistenceII, {n}, {frame.name(x), frame.name(y)}, name});
                }
            }
        }
    }
    return report;
}

namespace {

class Evaluator {
public:
    Evaluator(const KripkeModel& m, Warnings* w) : model_(m), warnings_(w) {}

    WorldSet eval(const Formula& f) {
        if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
        WorldSet out = compute(f);
        memo_.emplace(f.identity(), out);
        return out;
    }

private:
    WorldSet compute(const Formula& f) {
        const auto& frame = model_.frame;
        switch (f.kind()) {
        case Kind::Top: return frame.full_set();
        case Kind::Bot: return frame.empty_set();
        case Kind::Var: {
            auto it = model_.valuation.find(f.name());
            if (it == model_.valuation.end() || it->second.sort != f.var_sort()) {
                if (warnings_) {
                    std::string msg = "variable " + f.name() + ":" + f.var_sort().to_string() +
                                      " not in valuation; read as false";
                    if (std::find(warnings_->begin(), warnings_->end(), msg) == warnings_->end())
                        warnings_->push_back(msg);
                }
                return frame.empty_set();
            }
            WorldSet t = it->second.truth;
            t.resize(frame.size());
            return t;
        }
        case Kind::Neg: return ~eval(f.child());
        case Kind::And: return eval(f.left()) & eval(f.right());
        case Kind::Or: return eval(f.left()) | eval(f.right());
        case Kind::Dia: {
            const WorldSet body = eval(f.child());
            WorldSet out = frame.empty_set();
            for (World x = 0; x < frame.size(); ++x)
                if (frame.successors(f.modality(), x).intersects(body)) out.set(x);
            return out;
        }
        }
        return frame.empty_set();
    }

    const KripkeModel& model_;
    Warnings* warnings_;
    std::unordered_map<const void*, WorldSet> memo_;
};

}  // namespace

WorldSet extension(const KripkeModel& model, const Formula& f, Warnings* warnings) {
    return Evaluator(model, warnings).eval(f);
}

bool model_check(const KripkeModel& model, World x, const Formula& f, Warnings* warnings) {
    if (x >= model.size()) throw UnknownWorld("#" + std::to_string(x));
    return extension(model, f, warnings).test(x);
}

bool model_check(const KripkeModel& model, const std::string& world, const Formula& f, Warnings* warnings) {
    return model_check(model, model.world(world), f, warnings);
}

bool valid_in_model(const KripkeModel& model, const Formula& f, Warnings* warnings) {
    return extension(model, f, warnings).all();
}

WorldSet find_roots(const KripkeModel& model, bool transitive) {
    const auto& frame = model.frame;
    const std::size_t size = frame.size();
    std::vector<WorldSet> reach(size, frame.empty_set());
    for (World x = 0; x < size; ++x) {
        reach[x].set(x);
        for (unsigned n : frame.modalities()) reach[x] |= frame.successors(n, x);
    }
    if (transitive) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (World x = 0; x < size; ++x) {
                WorldSet next = reach[x];
                for (World y = reach[x].find_first(); y != WorldSet::npos; y = reach[x].find_next(y))
                    next |= reach[y];
                if (next != reach[x]) {
                    reach[x] = std::move(next);
                    changed = true;
                }
            }
        }
    }
    WorldSet roots = frame.empty_set();
    for (World x = 0; x < size; ++x)
        if (reach[x].all()) roots.set(x);
    return roots;
}

KripkeModel adjoin_root(const KripkeModel& model) {
    if (!model.root) throw std::invalid_argument("adjoin_root: model has no designated root");
    const World old_root = *model.root;

    std::string fresh = "0";
    for (int i = 0; model.frame.find(fresh); ++i) fresh = "r" + std::to_string(i);

    KripkeModel out;
    std::vector<std::string> names{fresh};
    for (const auto& n : model.frame.names()) names.push_back(n);
    out.frame = KripkeFrame(std::move(names));
    for (unsigned n : model.frame.modalities())
        for (World x = 0; x < model.size(); ++x) {
            const auto sx = model.frame.successors(n, x);
            for (World y = sx.find_first(); y != WorldSet::npos; y = sx.find_next(y)) out.frame.add_edge(n, x + 1, y + 1);
        }
    for (World x = 0; x < model.size(); ++x) out.frame.add_edge(0, 0, x + 1);
    for (const auto& [name, v] : model.valuation) {
        auto& nv = out.declare(name, v.sort);
        for (World x = 0; x < model.size(); ++x)
            if (v.truth.test(x)) nv.truth.set(x + 1);
        if (v.truth.test(old_root)) nv.truth.set(0);
    }
    out.root = 0;
    return out;
}

}  // namespace glpstar
