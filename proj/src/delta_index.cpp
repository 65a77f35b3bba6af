#include "delta_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace glpstar::detail {

DeltaIndex::DeltaIndex(const FormulaSet& delta) : delta_(&delta) {
    const std::size_t size = delta.size();
    atom_of_.assign(size, npos);
    kids_.assign(size, {npos, npos});

    auto pos_of = [&](const Formula& f) {
        const std::size_t p = delta.index_of(f);
        if (p == npos) throw std::invalid_argument("set is not closed under subformulas");
        return p;
    };

    // Variables first, then diamonds; both in insertion order.
    for (std::size_t i = 0; i < size; ++i)
        if (delta[i].is(Kind::Var)) {
            atom_of_[i] = atoms_.size();
            atoms_.push_back(i);
        }
    for (std::size_t i = 0; i < size; ++i) {
        const Formula& f = delta[i];
        switch (f.kind()) {
        case Kind::Neg: kids_[i][0] = pos_of(f.child()); break;
        case Kind::And:
        case Kind::Or:
            kids_[i][0] = pos_of(f.left());
            kids_[i][1] = pos_of(f.right());
            break;
        case Kind::Dia: {
            const std::size_t body = pos_of(f.child());
            kids_[i][0] = body;
            atom_of_[i] = atoms_.size();
            atoms_.push_back(i);
            diamonds_.push_back({i, f.modality(), body, atom_of_[i]});
            diamond_pos_[{f.modality(), body}] = i;
            levels_.insert(f.modality());
            break;
        }
        default: break;
        }
    }

    bottom_up_.resize(size);
    std::iota(bottom_up_.begin(), bottom_up_.end(), std::size_t{0});
    std::stable_sort(bottom_up_.begin(), bottom_up_.end(),
                     [&](std::size_t a, std::size_t b) { return delta[a].size() < delta[b].size(); });

    for (const auto& d : diamonds_) {
        const Formula& body = delta[d.body];
        if (sort_of(body).at_most(d.level)) constraints_.push_back({d.atom, d.body});
        if (body.is(Kind::Dia) && body.modality() > d.level) {
            const std::size_t inner = kids_[d.body][0];
            const std::size_t target = find_diamond(d.level, inner);
            if (target != npos) constraints_.push_back({d.atom, target});
        }
    }
}

std::size_t DeltaIndex::find_diamond(unsigned n, std::size_t body) const {
    auto it = diamond_pos_.find({n, body});
    return it == diamond_pos_.end() ? npos : it->second;
}

bool DeltaIndex::eval(std::size_t pos, const std::vector<char>& values) const {
    if (atom_of_[pos] != npos) return values[atom_of_[pos]] != 0;
    switch (kind(pos)) {
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Neg: return !eval(kids_[pos][0], values);
    case Kind::And: return eval(kids_[pos][0], values) && eval(kids_[pos][1], values);
    case Kind::Or: return eval(kids_[pos][0], values) || eval(kids_[pos][1], values);
    default: throw std::logic_error("unexpected atom");
    }
}

HintikkaWorld DeltaIndex::complete(const std::vector<char>& values) const {
    HintikkaWorld w(size());
    for (std::size_t pos : bottom_up_) {
        bool v = false;
        if (atom_of_[pos] != npos) {
            v = values[atom_of_[pos]] != 0;
        } else {
            const auto& k = kids_[pos];
            switch (kind(pos)) {
            case Kind::Top: v = true; break;
            case Kind::Bot: v = false; break;
            case Kind::Neg: v = !w[k[0]]; break;
            case Kind::And: v = w[k[0]] && w[k[1]]; break;
            case Kind::Or: v = w[k[0]] || w[k[1]]; break;
            default: break;
            }
        }
        w[pos] = v;
    }
    return w;
}

std::vector<char> DeltaIndex::atom_values(const HintikkaWorld& world) const {
    std::vector<char> values(atoms_.size());
    for (std::size_t a = 0; a < atoms_.size(); ++a) values[a] = world[atoms_[a]];
    return values;
}

bool DeltaIndex::locally_consistent(const HintikkaWorld& world) const {
    for (const auto& c : constraints_)
        if (world[atoms_[c.atom]] && !world[c.consequent]) return false;
    return true;
}

bool DeltaIndex::related(const HintikkaWorld& x, const HintikkaWorld& y, unsigned n,
                         RelationConditions conditions) const {
    if (!levels_.count(n)) return false;
    bool strict = false;
    for (const auto& d : diamonds_) {
        const bool in_x = x[d.pos], in_y = y[d.pos];
        if (d.level < n) {
            if (in_x != in_y) return false;
        } else if (d.level == n) {
            if (!in_x && (y[d.body] || in_y)) return false;
            if (in_x && !in_y) strict = true;
        } else if (conditions == RelationConditions::Full && in_y) {
            const std::size_t lower = find_diamond(n, d.body);
            if (lower != npos && !x[lower]) return false;
        }
    }
    return strict;
}

std::vector<std::size_t> DeltaIndex::atoms_under(std::size_t pos) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{pos};
    std::vector<char> seen(size(), 0);
    while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        if (seen[p]) continue;
        seen[p] = 1;
        if (atom_of_[p] != npos) {
            out.push_back(atom_of_[p]);
            continue;
        }
        for (std::size_t k : kids_[p])
            if (k != npos) stack.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace glpstar::detail
