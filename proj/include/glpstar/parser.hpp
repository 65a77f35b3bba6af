#ifndef GLPSTAR_PARSER_HPP
#define GLPSTAR_PARSER_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glpstar/formula.hpp"
#include "glpstar/kripke.hpp"

namespace glpstar {

/// Byte offsets [start, end) into the parsed text.
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceSpan span)
        : std::runtime_error(message), span_(span) {}
    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

/// ASCII grammar, loosest to tightest binding:
///   imp   := or ['->' imp]
///   or    := and {'|' and}
///   and   := unary {'&' unary}
///   unary := '~' unary | '<' n '>' unary | '[' n ']' unary | atom
///   atom  := 'T' | 'F' | name [':' (n | 'w')] | '(' imp ')'
/// Unicode aliases ◊n □n ¬ ∧ ∨ → ⊤ ⊥ ω are accepted. Unannotated variables
/// have sort omega. The result is desugared.
Formula parse_formula(std::string_view text);
RawFormula parse_raw_formula(std::string_view text);

/// One formula per non-empty line; '#' starts a comment.
std::vector<Formula> parse_formula_list(std::string_view text);

/// Surface syntax with minimal parentheses; parse_formula inverts it.
std::string render_formula(const Formula& f);

/// Line-oriented model format:
///   worlds a b c
///   rel <n>: <x> <y>
///   val <name>:<sort> = {w1, w2}
///   root <w>
KripkeModel parse_model(std::string_view text);
std::string render_model(const KripkeModel& model);

std::string export_dot(const KripkeModel& model, std::optional<World> highlight = std::nullopt);

}  // namespace glpstar

#endif
