#ifndef GLPSTAR_KRIPKE_HPP
#define GLPSTAR_KRIPKE_HPP

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glpstar/formula.hpp"

namespace glpstar {

using WorldSet = boost::dynamic_bitset<>;
using World = std::size_t;

/// Finite frame: named worlds and, per modality index, a successor set for
/// every world. Relations not present in the map are empty.
class KripkeFrame {
public:
    KripkeFrame() = default;
    explicit KripkeFrame(std::vector<std::string> worlds);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(World w) const { return names_.at(w); }
    std::optional<World> find(const std::string& name) const;

    World add_world(std::string name);
    void add_edge(unsigned n, World x, World y);
    bool has_edge(unsigned n, World x, World y) const;
    /// Successors of x along R_n (empty set for absent relations).
    WorldSet successors(unsigned n, World x) const;
    /// Indices with at least one edge, ascending.
    std::vector<unsigned> modalities() const;
    std::size_t edge_count() const;

    /// Subframe on the worlds of `keep`, renumbered in ascending order.
    KripkeFrame restrict_to(const WorldSet& keep) const;

    WorldSet empty_set() const { return WorldSet(size()); }
    WorldSet full_set() const { return WorldSet(size()).set(); }

    friend bool operator==(const KripkeFrame& a, const KripkeFrame& b);

private:
    std::vector<std::string> names_;
    std::map<unsigned, std::vector<WorldSet>> rel_;
};

struct VarValuation {
    Sort sort;
    WorldSet truth;
    friend bool operator==(const VarValuation&, const VarValuation&) = default;
};

class KripkeModel {
public:
    KripkeFrame frame;
    std::map<std::string, VarValuation> valuation;
    std::optional<World> root;

    std::size_t size() const { return frame.size(); }

    /// Declares (or re-sorts) a variable with an empty extension.
    VarValuation& declare(const std::string& name, Sort sort);
    void set_true(const std::string& name, World w);
    bool holds_var(const std::string& name, World w) const;

    World world(const std::string& name) const;  // throws UnknownWorld

    KripkeModel restrict_to(const WorldSet& keep) const;

    friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

class UnknownWorld : public std::runtime_error {
public:
    explicit UnknownWorld(const std::string& name) : std::runtime_error("unknown world '" + name + "'") {}
};

enum class Condition {
    Irreflexivity,
    Transitivity,
    ConditionII,
    ConditionIII,
    PersistenceI,
    PersistenceII,
};

const char* to_string(Condition c);

struct Violation {
    Condition condition;
    /// Modality indices involved (one for single-relation conditions).
    std::vector<unsigned> modalities;
    std::vector<std::string> worlds;
    std::string variable;

    std::string describe() const;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }
    std::size_t size() const { return violations.size(); }
    bool has(Condition c) const;
    std::string describe() const;
};

ViolationReport check_jstar_frame(const KripkeFrame& frame);
ViolationReport check_strong_persistence(const KripkeModel& model);

/// Warnings collected while evaluating (e.g. variables missing from the
/// valuation, which are read as false everywhere).
using Warnings = std::vector<std::string>;

/// The set of worlds where the formula holds.
WorldSet extension(const KripkeModel& model, const Formula& f, Warnings* warnings = nullptr);
bool model_check(const KripkeModel& model, World x, const Formula& f, Warnings* warnings = nullptr);
bool model_check(const KripkeModel& model, const std::string& world, const Formula& f,
                 Warnings* warnings = nullptr);
bool valid_in_model(const KripkeModel& model, const Formula& f, Warnings* warnings = nullptr);

/// Roots: worlds r with r R_k x for some k, or r = x, for every world x.
/// With `transitive` set, reachability along any path counts instead.
WorldSet find_roots(const KripkeModel& model, bool transitive = false);

/// New world below the designated root, seeing every old world along R_0 and
/// copying the root's valuation. The new world becomes the root.
KripkeModel adjoin_root(const KripkeModel& model);

}  // namespace glpstar

#endif
