// Small reduced ordered BDD package backing the symbolic type elimination.
// No complement edges and no garbage collection: a Manager lives for one
// decision run and is dropped afterwards.
#ifndef GLPSTAR_BDD_HPP
#define GLPSTAR_BDD_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace glpstar::bdd {

using Ref = std::uint32_t;
inline constexpr Ref kFalse = 0;
inline constexpr Ref kTrue = 1;

class NodeLimitExceeded : public std::runtime_error {
public:
    explicit NodeLimitExceeded(std::size_t limit);
};

class Manager {
public:
    Manager(unsigned num_vars, std::size_t node_limit);

    unsigned num_vars() const { return num_vars_; }
    std::size_t node_count() const { return nodes_.size(); }

    Ref var(unsigned v);
    Ref nvar(unsigned v);

    Ref land(Ref a, Ref b);
    Ref lor(Ref a, Ref b);
    Ref lnot(Ref a);
    Ref implies(Ref a, Ref b) { return lor(lnot(a), b); }
    Ref iff(Ref a, Ref b);

    /// Positive conjunction of the given variables, for quantification.
    Ref cube(const std::vector<unsigned>& vars);
    Ref exists(Ref f, Ref cube);
    /// exists cube. (f & g), without building f & g.
    Ref and_exists(Ref f, Ref g, Ref cube);

    /// Substitutes variable v by map[v]. The map must be strictly increasing
    /// on the support of f so that the order is preserved.
    Ref rename(Ref f, const std::vector<unsigned>& map);

    /// One satisfying assignment, preferring false at every branch. Entries
    /// are 0, 1, or -1 for variables the path does not test.
    std::vector<signed char> pick_one(Ref f);

    /// Number of satisfying assignments over all num_vars() variables.
    double sat_count(Ref f);

    unsigned top_var(Ref f) const { return nodes_[f].var; }

private:
    struct Node {
        std::uint32_t var, lo, hi, next;
    };
    enum Op : std::uint32_t { kAnd = 1, kOr, kNot, kIff, kExists, kAndExists };
    struct CacheEntry {
        std::uint32_t op = 0, a = 0, b = 0, c = 0;
        Ref result = 0;
    };

    Ref mk(std::uint32_t v, Ref lo, Ref hi);
    void grow_table();
    std::size_t slot(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c) const;
    bool lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, Ref& out) const;
    void store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, Ref r);

    unsigned num_vars_;
    std::size_t limit_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> buckets_;
    std::vector<CacheEntry> cache_;
};

}  // namespace glpstar::bdd

#endif
