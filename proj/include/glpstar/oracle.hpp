#ifndef GLPSTAR_ORACLE_HPP
#define GLPSTAR_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glpstar/decide.hpp"
#include "glpstar/formula.hpp"
#include "glpstar/kripke.hpp"

namespace glpstar {

struct SearchBudget {
    std::size_t max_worlds = 4;
    /// Relations to populate; unset means the modalities of the formula.
    std::optional<std::vector<unsigned>> modalities;
    std::uint64_t max_models = 10'000'000;
};

/// Largest world count the enumerator accepts.
inline constexpr std::size_t kMaxOracleWorlds = 7;

struct EnumerationStats {
    std::uint64_t models = 0;
    bool truncated = false;  // budget ran out before the space was exhausted
    bool stopped = false;    // the visitor asked to stop
};

/// Every strongly persistent J*-model with 1..max_worlds worlds over the
/// given variables and relations, ordered by world count, then relations,
/// then valuations. Worlds are named w0, w1, ... The visitor returns false
/// to stop early.
EnumerationStats enumerate_models(const std::vector<Variable>& variables, const std::vector<unsigned>& modalities,
                                  const SearchBudget& budget,
                                  const std::function<bool(const KripkeModel&)>& visit);

struct OracleResult {
    std::optional<KripkeModel> model;
    std::optional<World> world;  // falsifies the formula in `model`
    std::uint64_t examined = 0;
    bool truncated = false;

    bool found() const { return model.has_value(); }
};

/// First enumerated model and world where the formula fails. Absence
/// proves nothing beyond the budget.
OracleResult brute_force_countermodel(const Formula& f, const SearchBudget& budget = {});

enum class Agreement { Agree, Disagree, Inconclusive };

const char* to_string(Agreement a);

struct CrossValidation {
    Agreement outcome = Agreement::Inconclusive;
    Formula target;
    bool theorem = false;  // decide's verdict
    std::optional<std::size_t> countermodel_worlds;
    OracleResult oracle;
    std::string detail;
};

/// Runs decide and the oracle on the system's J*-level target.
CrossValidation cross_validate(const Formula& f, SystemId system, const SearchBudget& budget = {},
                               const DecideOptions& options = {});

}  // namespace glpstar

#endif
