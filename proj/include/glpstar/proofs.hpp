#ifndef GLPSTAR_PROOFS_HPP
#define GLPSTAR_PROOFS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glpstar/decide.hpp"
#include "glpstar/formula.hpp"

namespace glpstar {

enum class SchemeId {
    Taut,
    Distribution,   // <n>(a | b) -> <n>a | <n>b
    BoxTop,         // [n]T
    Loeb,           // <n>a -> <n>(a & ~<n>a)
    Persist,        // <m>a -> [n]<m>a, m < n
    Mono,           // <n>a -> <m>a, m < n
    SigmaComplete,  // <n>a -> a, sort(a) <= n
    Transit,        // <m><n>a -> <m>a, m < n
    Reflexive,      // a -> <n>a
};

std::string to_string(SchemeId s);
/// Ids used in proof files: taut dist boxtop loeb persist mono sigma transit reflexive.
std::optional<SchemeId> parse_scheme(std::string_view id);

bool scheme_available(SchemeId scheme, SystemId system);

class SchemeUnavailable : public std::invalid_argument {
public:
    SchemeUnavailable(SchemeId scheme, SystemId system);
};

struct MatchOptions {
    /// Match Loeb as <n>a -> <n>(a & <n>~a) instead of the standard form.
    bool loeb_literal = false;
};

/// Throws SchemeUnavailable when the system lacks the scheme.
bool match_axiom(const Formula& f, SchemeId scheme, SystemId system, const MatchOptions& options = {});

/// Truth-table check over the maximal non-boolean subformulas. Empty when
/// there are more than `max_atoms` of them.
std::optional<bool> tautology(const Formula& f, std::size_t max_atoms = 16);

struct Justification {
    enum class Kind { Axiom, ModusPonens, DiaMono, Necessitation };
    Kind kind = Kind::Axiom;
    SchemeId scheme = SchemeId::Taut;  // Axiom
    std::size_t premise = 0;           // ModusPonens: minor premise; DiaMono and Necessitation: the premise
    std::size_t major = 0;             // ModusPonens: the implication
    unsigned modality = 0;             // DiaMono, Necessitation
};

struct ProofLine {
    std::size_t index = 0;  // 1-based
    Formula formula;
    Justification justification;
};

struct ProofObject {
    SystemId system = SystemId::GLPstar;
    Formula goal;
    std::vector<ProofLine> lines;
};

/// Header lines `system <name>` and `goal <formula>`, then lines
/// `<k>. <formula> ; ax <scheme> | mp <i> <j> | mono <i> <n> | nec <i> <n>`
/// numbered 1, 2, ... '#' starts a comment. Throws ParseError.
ProofObject parse_proof(std::string_view text);
std::string render_proof(const ProofObject& proof);

struct ProofCheck {
    bool accepted = false;
    std::size_t line = 0;  // first failing line (0 for whole-proof problems)
    std::string reason;
};

ProofCheck check_proof(const ProofObject& proof, const MatchOptions& options = {});

}  // namespace glpstar

#endif
