#include "bdd.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace glpstar::bdd {

namespace {

constexpr std::uint32_t kNil = 0xffffffffu;

std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = a * 0x9E3779B97F4A7C15ULL;
    h ^= b + 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= c * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return h ^ (h >> 31);
}

}  // namespace

NodeLimitExceeded::NodeLimitExceeded(std::size_t limit)
    : std::runtime_error("BDD node limit of " + std::to_string(limit) + " exceeded") {}

Manager::Manager(unsigned num_vars, std::size_t node_limit) : num_vars_(num_vars), limit_(node_limit) {
    nodes_.reserve(1u << 12);
    nodes_.push_back({num_vars_, kFalse, kFalse, kNil});
    nodes_.push_back({num_vars_, kTrue, kTrue, kNil});
    buckets_.assign(1u << 12, kNil);
    cache_.resize(1u << 14);
}

void Manager::grow_table() {
    buckets_.assign(buckets_.size() * 2, kNil);
    const std::size_t mask = buckets_.size() - 1;
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
        auto& n = nodes_[i];
        const std::size_t b = hash3(n.var, n.lo, n.hi) & mask;
        n.next = buckets_[b];
        buckets_[b] = i;
    }
    if (cache_.size() < buckets_.size()) cache_.assign(buckets_.size(), CacheEntry{});
}

Ref Manager::mk(std::uint32_t v, Ref lo, Ref hi) {
    if (lo == hi) return lo;
    const std::size_t mask = buckets_.size() - 1;
    std::size_t b = hash3(v, lo, hi) & mask;
    for (std::uint32_t i = buckets_[b]; i != kNil; i = nodes_[i].next) {
        const auto& n = nodes_[i];
        if (n.var == v && n.lo == lo && n.hi == hi) return i;
    }
    if (nodes_.size() >= limit_) throw NodeLimitExceeded(limit_);
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({v, lo, hi, buckets_[b]});
    buckets_[b] = id;
    if (nodes_.size() > buckets_.size()) grow_table();
    return id;
}

std::size_t Manager::slot(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return hash3((static_cast<std::uint64_t>(op) << 32) | a, b, c) & (cache_.size() - 1);
}

bool Manager::lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, Ref& out) const {
    const auto& e = cache_[slot(op, a, b, c)];
    if (e.op == op && e.a == a && e.b == b && e.c == c) {
        out = e.result;
        return true;
    }
    return false;
}

void Manager::store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, Ref r) {
    cache_[slot(op, a, b, c)] = {op, a, b, c, r};
}

Ref Manager::var(unsigned v) { return mk(v, kFalse, kTrue); }
Ref Manager::nvar(unsigned v) { return mk(v, kTrue, kFalse); }

Ref Manager::land(Ref a, Ref b) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue || a == b) return a;
    if (a > b) std::swap(a, b);
    Ref r;
    if (lookup(kAnd, a, b, 0, r)) return r;
    const Node na = nodes_[a], nb = nodes_[b];
    const std::uint32_t v = std::min(na.var, nb.var);
    const Ref a0 = na.var == v ? na.lo : a, a1 = na.var == v ? na.hi : a;
    const Ref b0 = nb.var == v ? nb.lo : b, b1 = nb.var == v ? nb.hi : b;
    const Ref lo = land(a0, b0);
    const Ref hi = land(a1, b1);
    r = mk(v, lo, hi);
    store(kAnd, a, b, 0, r);
    return r;
}

Ref Manager::lor(Ref a, Ref b) {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse) return b;
    if (b == kFalse || a == b) return a;
    if (a > b) std::swap(a, b);
    Ref r;
    if (lookup(kOr, a, b, 0, r)) return r;
    const Node na = nodes_[a], nb = nodes_[b];
    const std::uint32_t v = std::min(na.var, nb.var);
    const Ref a0 = na.var == v ? na.lo : a, a1 = na.var == v ? na.hi : a;
    const Ref b0 = nb.var == v ? nb.lo : b, b1 = nb.var == v ? nb.hi : b;
    const Ref lo = lor(a0, b0);
    const Ref hi = lor(a1, b1);
    r = mk(v, lo, hi);
    store(kOr, a, b, 0, r);
    return r;
}

Ref Manager::lnot(Ref a) {
    if (a <= kTrue) return a ^ 1u;
    Ref r;
    if (lookup(kNot, a, 0, 0, r)) return r;
    const Node n = nodes_[a];
    const Ref lo = lnot(n.lo);
    const Ref hi = lnot(n.hi);
    r = mk(n.var, lo, hi);
    store(kNot, a, 0, 0, r);
    return r;
}

Ref Manager::iff(Ref a, Ref b) {
    if (a == b) return kTrue;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
    if (a == kFalse) return lnot(b);
    if (b == kFalse) return lnot(a);
    if (a > b) std::swap(a, b);
    Ref r;
    if (lookup(kIff, a, b, 0, r)) return r;
    const Node na = nodes_[a], nb = nodes_[b];
    const std::uint32_t v = std::min(na.var, nb.var);
    const Ref a0 = na.var == v ? na.lo : a, a1 = na.var == v ? na.hi : a;
    const Ref b0 = nb.var == v ? nb.lo : b, b1 = nb.var == v ? nb.hi : b;
    const Ref lo = iff(a0, b0);
    const Ref hi = iff(a1, b1);
    r = mk(v, lo, hi);
    store(kIff, a, b, 0, r);
    return r;
}

Ref Manager::cube(const std::vector<unsigned>& vars) {
    std::vector<unsigned> sorted = vars;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Ref c = kTrue;
    for (unsigned v : sorted) c = mk(v, kFalse, c);
    return c;
}

Ref Manager::exists(Ref f, Ref c) {
    if (f <= kTrue) return f;
    const Node n = nodes_[f];
    while (c != kTrue && nodes_[c].var < n.var) c = nodes_[c].hi;
    if (c == kTrue) return f;
    Ref r;
    if (lookup(kExists, f, c, 0, r)) return r;
    if (nodes_[c].var == n.var) {
        const Ref rest = nodes_[c].hi;
        const Ref lo = exists(n.lo, rest);
        r = lo == kTrue ? kTrue : lor(lo, exists(n.hi, rest));
    } else {
        const Ref lo = exists(n.lo, c);
        const Ref hi = exists(n.hi, c);
        r = mk(n.var, lo, hi);
    }
    store(kExists, f, c, 0, r);
    return r;
}

Ref Manager::and_exists(Ref f, Ref g, Ref c) {
    if (f == kFalse || g == kFalse) return kFalse;
    if (f == kTrue && g == kTrue) return kTrue;
    if (f == kTrue) return exists(g, c);
    if (g == kTrue || f == g) return exists(f, c);
    if (f > g) std::swap(f, g);
    const Node nf = nodes_[f], ng = nodes_[g];
    const std::uint32_t v = std::min(nf.var, ng.var);
    while (c != kTrue && nodes_[c].var < v) c = nodes_[c].hi;
    if (c == kTrue) return land(f, g);
    Ref r;
    if (lookup(kAndExists, f, g, c, r)) return r;
    const Ref f0 = nf.var == v ? nf.lo : f, f1 = nf.var == v ? nf.hi : f;
    const Ref g0 = ng.var == v ? ng.lo : g, g1 = ng.var == v ? ng.hi : g;
    if (nodes_[c].var == v) {
        const Ref rest = nodes_[c].hi;
        const Ref lo = and_exists(f0, g0, rest);
        r = lo == kTrue ? kTrue : lor(lo, and_exists(f1, g1, rest));
    } else {
        const Ref lo = and_exists(f0, g0, c);
        const Ref hi = and_exists(f1, g1, c);
        r = mk(v, lo, hi);
    }
    store(kAndExists, f, g, c, r);
    return r;
}

Ref Manager::rename(Ref f, const std::vector<unsigned>& map) {
    std::unordered_map<Ref, Ref> memo;
    auto go = [&](auto&& self, Ref g) -> Ref {
        if (g <= kTrue) return g;
        if (auto it = memo.find(g); it != memo.end()) return it->second;
        const Node n = nodes_[g];
        const Ref lo = self(self, n.lo);
        const Ref hi = self(self, n.hi);
        const Ref r = mk(map.at(n.var), lo, hi);
        memo.emplace(g, r);
        return r;
    };
    return go(go, f);
}

std::vector<signed char> Manager::pick_one(Ref f) {
    std::vector<signed char> out(num_vars_, -1);
    if (f == kFalse) return {};
    while (f != kTrue) {
        const Node& n = nodes_[f];
        if (n.lo != kFalse) {
            out[n.var] = 0;
            f = n.lo;
        } else {
            out[n.var] = 1;
            f = n.hi;
        }
    }
    return out;
}

double Manager::sat_count(Ref f) {
    std::unordered_map<Ref, double> memo;
    // Fraction of assignments satisfying the node, then scaled.
    auto go = [&](auto&& self, Ref g) -> double {
        if (g == kFalse) return 0.0;
        if (g == kTrue) return 1.0;
        if (auto it = memo.find(g); it != memo.end()) return it->second;
        const Node n = nodes_[g];
        const double r = 0.5 * self(self, n.lo) + 0.5 * self(self, n.hi);
        memo.emplace(g, r);
        return r;
    };
    return go(go, f) * std::ldexp(1.0, static_cast<int>(num_vars_));
}

}  // namespace glpstar::bdd
