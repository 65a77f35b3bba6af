#ifndef GLPSTAR_DECIDE_HPP
#define GLPSTAR_DECIDE_HPP

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glpstar/formula.hpp"
#include "glpstar/kripke.hpp"
#include "glpstar/reductions.hpp"

namespace glpstar {

enum class SystemId { Jstar, GLPstar, GLP, GLPSstar };

std::string to_string(SystemId s);
/// Accepts jstar, glpstar, glp, glpsstar (case-insensitive).
std::optional<SystemId> parse_system(std::string_view name);

/// A candidate world of the canonical construction: the members of an
/// adequate set it contains, indexed by the set's insertion order.
using HintikkaWorld = boost::dynamic_bitset<>;

class ResourceLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All subsets of an adequate set that contain T, decide every member
/// against its modified negation coherently, and are closed under
/// <n>psi => psi (sort(psi) <= n) and <m><n>psi => <m>psi (m < n).
std::vector<HintikkaWorld> hintikka_candidates(const FormulaSet& delta, std::size_t cap = std::size_t{1} << 20);

enum class RelationConditions {
    /// The four membership conditions plus: <k>phi in y, k > n  =>  <n>phi in x.
    /// The extra clause makes the relation compose as J*-frame condition
    /// (iii) demands.
    Full,
    /// Only the four membership conditions.
    Basic,
};

bool canonical_relation(const FormulaSet& delta, const HintikkaWorld& x, const HintikkaWorld& y, unsigned n,
                        RelationConditions conditions = RelationConditions::Full);

struct EliminationRound {
    std::size_t round = 0;
    double candidates = 0;  // worlds entering the round
    double survivors = 0;   // worlds leaving it
    std::size_t bdd_nodes = 0;
};

struct CanonicalOptions {
    std::size_t candidate_cap = std::size_t{1} << 20;
    RelationConditions conditions = RelationConditions::Full;
    std::function<void(const EliminationRound&)> on_round;
};

struct CanonicalModel {
    KripkeModel model;                 // world i is worlds[i], named "w<i>"
    std::vector<HintikkaWorld> worlds;
    std::size_t candidates = 0;
    std::vector<EliminationRound> rounds;
};

/// Candidates, iterated witness elimination, relations and valuation read
/// off membership. The result may have no worlds.
CanonicalModel build_canonical(const FormulaSet& delta, const CanonicalOptions& options = {});

/// Membership coincides with satisfaction for every member at every world.
bool truth_lemma_holds(const FormulaSet& delta, const CanonicalModel& canonical);

enum class GlpStarRoute { MPlus, NPlus };
enum class Engine {
    Symbolic,  // BDD-based elimination over atom valuations
    Explicit,  // enumerated candidates, as build_canonical
};

struct DecideOptions {
    GlpStarRoute route = GlpStarRoute::MPlus;
    NPlusVariant nplus_variant = NPlusVariant::Default;
    NPairing n_pairing = NPairing::SameBody;
    Engine engine = Engine::Symbolic;
    std::size_t candidate_cap = std::size_t{1} << 20;
    std::size_t node_cap = std::size_t{1} << 23;
    bool minimize = true;
    std::function<void(const EliminationRound&)> on_round;
};

struct Countermodel {
    KripkeModel model;  // rooted; the root falsifies `falsified`
    Formula falsified;
};

struct DecideStats {
    std::size_t delta_size = 0;
    std::size_t atoms = 0;
    std::size_t extracted_worlds = 0;  // before minimization
    std::vector<EliminationRound> rounds;
    double seconds = 0;
};

struct Verdict {
    bool theorem = false;
    Formula target;  // the J* formula actually decided
    std::optional<Countermodel> countermodel;
    DecideStats stats;
};

/// The J*-level formula whose validity decides `f` in `system`.
Formula jstar_target(SystemId system, const Formula& f, const DecideOptions& options = {});

/// Throws ResourceLimitExceeded when a cap is hit and SortConflict on
/// ill-sorted input.
Verdict decide(SystemId system, const Formula& f, const DecideOptions& options = {});

}  // namespace glpstar

#endif
