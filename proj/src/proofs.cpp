#include "glpstar/proofs.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "glpstar/parser.hpp"

namespace glpstar {

namespace {

struct SchemeName {
    SchemeId id;
    const char* name;
};

constexpr SchemeName kSchemes[] = {
    {SchemeId::Taut, "taut"},       {SchemeId::Distribution, "dist"},   {SchemeId::BoxTop, "boxtop"},
    {SchemeId::Loeb, "loeb"},       {SchemeId::Persist, "persist"},     {SchemeId::Mono, "mono"},
    {SchemeId::SigmaComplete, "sigma"}, {SchemeId::Transit, "transit"}, {SchemeId::Reflexive, "reflexive"},
};

// a -> b, stored as ~a | b.
std::optional<std::pair<Formula, Formula>> as_implication(const Formula& f) {
    if (!f.is(Kind::Or) || !f.left().is(Kind::Neg)) return std::nullopt;
    return std::make_pair(f.left().child(), f.right());
}

std::optional<std::pair<unsigned, Formula>> as_dia(const Formula& f) {
    if (!f.is(Kind::Dia)) return std::nullopt;
    return std::make_pair(f.modality(), f.child());
}

// [n]a, stored as ~<n>~a.
std::optional<std::pair<unsigned, Formula>> as_box(const Formula& f) {
    if (!f.is(Kind::Neg) || !f.child().is(Kind::Dia) || !f.child().child().is(Kind::Neg)) return std::nullopt;
    return std::make_pair(f.child().modality(), f.child().child().child());
}

bool match_scheme(const Formula& f, SchemeId scheme, const MatchOptions& options) {
    if (scheme == SchemeId::Taut) return tautology(f).value_or(false);
    if (scheme == SchemeId::BoxTop) {
        const auto b = as_box(f);
        return b && b->second.is(Kind::Top);
    }
    const auto imp = as_implication(f);
    if (!imp) return false;
    const auto& [lhs, rhs] = *imp;

    if (scheme == SchemeId::Reflexive) {
        const auto r = as_dia(rhs);
        return r && r->second == lhs;
    }
    const auto l = as_dia(lhs);
    if (!l) return false;
    const auto& [n, body] = *l;

    switch (scheme) {
    case SchemeId::Distribution: {
        if (!body.is(Kind::Or) || !rhs.is(Kind::Or)) return false;
        return rhs.left() == Formula::dia(n, body.left()) && rhs.right() == Formula::dia(n, body.right());
    }
    case SchemeId::Loeb: {
        const Formula tail = options.loeb_literal ? Formula::dia(n, Formula::neg(body))
                                                  : Formula::neg(Formula::dia(n, body));
        return rhs == Formula::dia(n, Formula::conj(body, tail));
    }
    case SchemeId::Persist: {
        // <m>a -> [k]<m>a with m < k
        const auto b = as_box(rhs);
        return b && b->first > n && b->second == lhs;
    }
    case SchemeId::Mono: {
        const auto r = as_dia(rhs);
        return r && r->first < n && r->second == body;
    }
    case SchemeId::SigmaComplete: return rhs == body && sort_of(body).at_most(n);
    case SchemeId::Transit: {
        const auto inner = as_dia(body);
        return inner && inner->first > n && rhs == Formula::dia(n, inner->second);
    }
    default: return false;
    }
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::optional<std::size_t> number(const std::string& s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::string to_string(SchemeId s) {
    for (const auto& e : kSchemes)
        if (e.id == s) return e.name;
    return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view id) {
    for (const auto& e : kSchemes)
        if (id == e.name) return e.id;
    return std::nullopt;
}

bool scheme_available(SchemeId scheme, SystemId system) {
    switch (scheme) {
    case SchemeId::Taut:
    case SchemeId::Distribution:
    case SchemeId::BoxTop:
    case SchemeId::Loeb: return true;
    case SchemeId::Persist: return system == SystemId::GLP;
    case SchemeId::Mono: return system != SystemId::Jstar;
    case SchemeId::SigmaComplete: return system != SystemId::GLP;
    case SchemeId::Transit: return system == SystemId::Jstar;
    case SchemeId::Reflexive: return system == SystemId::GLPSstar;
    }
    return false;
}

SchemeUnavailable::SchemeUnavailable(SchemeId scheme, SystemId system)
    : std::invalid_argument("scheme " + to_string(scheme) + " is not available in " + to_string(system)) {}

bool match_axiom(const Formula& f, SchemeId scheme, SystemId system, const MatchOptions& options) {
    if (!scheme_available(scheme, system)) throw SchemeUnavailable(scheme, system);
    return match_scheme(f, scheme, options);
}

std::optional<bool> tautology(const Formula& f, std::size_t max_atoms) {
    FormulaSet atoms;
    auto collect = [&](auto&& self, const Formula& g) -> void {
        switch (g.kind()) {
        case Kind::Var:
        case Kind::Dia: atoms.insert(g); break;
        case Kind::Neg: self(self, g.child()); break;
        case Kind::And:
        case Kind::Or:
            self(self, g.left());
            self(self, g.right());
            break;
        default: break;
        }
    };
    collect(collect, f);
    if (atoms.size() > max_atoms) return std::nullopt;

    std::uint64_t assignment = 0;
    auto eval = [&](auto&& self, const Formula& g) -> bool {
        switch (g.kind()) {
        case Kind::Top: return true;
        case Kind::Bot: return false;
        case Kind::Neg: return !self(self, g.child());
        case Kind::And: return self(self, g.left()) && self(self, g.right());
        case Kind::Or: return self(self, g.left()) || self(self, g.right());
        default: return assignment >> atoms.index_of(g) & 1u;
        }
    };
    const std::uint64_t total = std::uint64_t{1} << atoms.size();
    for (assignment = 0; assignment < total; ++assignment)
        if (!eval(eval, f)) return false;
    return true;
}

ProofObject parse_proof(std::string_view text) {
    ProofObject proof;
    bool have_system = false, have_goal = false;
    std::size_t offset = 0;

    while (offset <= text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(offset, end - offset);
        const std::size_t start = offset;
        offset = end + 1;

        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const SourceSpan span{start, start + raw.size()};

        // Formulas are parsed from the raw text so that error spans stay
        // meaningful; `inner` is the offset of `body` within the file.
        auto formula_at = [&](std::string_view body, std::size_t inner) {
            try {
                return parse_formula(body);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), {inner + e.span().start, inner + e.span().end});
            }
        };

        const std::size_t lead = raw.find_first_not_of(" \t\r");
        if (line.rfind("system", 0) == 0 && (line.size() == 6 || std::isspace(static_cast<unsigned char>(line[6])))) {
            const auto w = words(line);
            if (w.size() != 2) throw ParseError("expected 'system <name>'", span);
            const auto sys = parse_system(w[1]);
            if (!sys) throw ParseError("unknown system '" + w[1] + "'", span);
            if (have_system) throw ParseError("duplicate system line", span);
            proof.system = *sys;
            have_system = true;
            continue;
        }
        if (line.rfind("goal", 0) == 0 && line.size() > 4 && std::isspace(static_cast<unsigned char>(line[4]))) {
            if (have_goal) throw ParseError("duplicate goal line", span);
            const std::size_t at = lead + 4;
            proof.goal = formula_at(raw.substr(at), start + at);
            have_goal = true;
            continue;
        }

        const std::size_t dot = raw.find('.');
        const std::size_t semi = raw.rfind(';');
        if (dot == std::string_view::npos || semi == std::string_view::npos || semi < dot)
            throw ParseError("expected '<k>. <formula> ; <justification>'", span);
        const auto index = number(trim(raw.substr(0, dot)));
        if (!index) throw ParseError("bad line number", span);
        if (*index != proof.lines.size() + 1)
            throw ParseError("expected line number " + std::to_string(proof.lines.size() + 1), span);

        ProofLine pl;
        pl.index = *index;
        pl.formula = formula_at(raw.substr(dot + 1, semi - dot - 1), start + dot + 1);

        const auto w = words(raw.substr(semi + 1));
        const SourceSpan jspan{start + semi + 1, start + raw.size()};
        auto bad = [&](const std::string& why) { return ParseError(why, jspan); };
        if (w.empty()) throw bad("missing justification");
        auto& j = pl.justification;
        if (w[0] == "ax") {
            if (w.size() != 2) throw bad("expected 'ax <scheme>'");
            const auto s = parse_scheme(w[1]);
            if (!s) throw bad("unknown scheme '" + w[1] + "'");
            j.kind = Justification::Kind::Axiom;
            j.scheme = *s;
        } else if (w[0] == "mp" || w[0] == "mono" || w[0] == "nec") {
            if (w.size() != 3) throw bad("expected '" + w[0] + " <i> <" + (w[0] == "mp" ? "j" : "n") + ">'");
            const auto a = number(w[1]), b = number(w[2]);
            if (!a || !b) throw bad("expected numbers");
            j.premise = *a;
            if (w[0] == "mp") {
                j.kind = Justification::Kind::ModusPonens;
                j.major = *b;
            } else {
                j.kind = w[0] == "mono" ? Justification::Kind::DiaMono : Justification::Kind::Necessitation;
                j.modality = static_cast<unsigned>(*b);
            }
        } else {
            throw bad("unknown justification '" + w[0] + "'");
        }
        proof.lines.push_back(std::move(pl));
    }
    if (!have_system) throw ParseError("missing 'system' line", {0, 0});
    if (!have_goal) throw ParseError("missing 'goal' line", {0, 0});
    return proof;
}

std::string render_proof(const ProofObject& proof) {
    // parse_system accepts the starred spellings, so this round-trips.
    std::string out = "system " + to_string(proof.system) + "\n";
    out += "goal " + render_formula(proof.goal) + "\n";
    for (const auto& l : proof.lines) {
        out += std::to_string(l.index) + ". " + render_formula(l.formula) + " ; ";
        const auto& j = l.justification;
        switch (j.kind) {
        case Justification::Kind::Axiom: out += "ax " + to_string(j.scheme); break;
        case Justification::Kind::ModusPonens:
            out += "mp " + std::to_string(j.premise) + " " + std::to_string(j.major);
            break;
        case Justification::Kind::DiaMono:
            out += "mono " + std::to_string(j.premise) + " " + std::to_string(j.modality);
            break;
        case Justification::Kind::Necessitation:
            out += "nec " + std::to_string(j.premise) + " " + std::to_string(j.modality);
            break;
        }
        out += "\n";
    }
    return out;
}

ProofCheck check_proof(const ProofObject& proof, const MatchOptions& options) {
    auto reject = [](std::size_t line, std::string why) { return ProofCheck{false, line, std::move(why)}; };
    if (proof.lines.empty()) return reject(0, "empty proof");

    for (std::size_t k = 0; k < proof.lines.size(); ++k) {
        const ProofLine& l = proof.lines[k];
        const std::size_t here = k + 1;
        if (l.index != here) return reject(here, "line numbered " + std::to_string(l.index));
        try {
            check_well_sorted(l.formula);
        } catch (const SortConflict& e) {
            return reject(here, e.what());
        }
        const auto& j = l.justification;
        auto cited = [&](std::size_t i) -> const Formula* {
            return i >= 1 && i < here ? &proof.lines[i - 1].formula : nullptr;
        };

        switch (j.kind) {
        case Justification::Kind::Axiom: {
            if (!scheme_available(j.scheme, proof.system))
                return reject(here, SchemeUnavailable(j.scheme, proof.system).what());
            if (j.scheme == SchemeId::Taut && !tautology(l.formula))
                return reject(here, "more than 16 atoms for a truth table");
            if (!match_scheme(l.formula, j.scheme, options))
                return reject(here, "not an instance of " + to_string(j.scheme));
            break;
        }
        case Justification::Kind::ModusPonens: {
            const Formula* minor = cited(j.premise);
            const Formula* major = cited(j.major);
            if (!minor || !major) return reject(here, "cited line out of range");
            if (*major != Formula::implies(*minor, l.formula))
                return reject(here, "line " + std::to_string(j.major) + " should be (" + render_formula(*minor) +
                                        ") -> (" + render_formula(l.formula) + ")");
            break;
        }
        case Justification::Kind::DiaMono: {
            if (proof.system == SystemId::GLPSstar) return reject(here, "GLPS* admits modus ponens only");
            const Formula* p = cited(j.premise);
            if (!p) return reject(here, "cited line out of range");
            const auto imp = as_implication(*p);
            if (!imp) return reject(here, "line " + std::to_string(j.premise) + " is not an implication");
            const Formula want =
                Formula::implies(Formula::dia(j.modality, imp->first), Formula::dia(j.modality, imp->second));
            if (l.formula != want) return reject(here, "expected " + render_formula(want));
            break;
        }
        case Justification::Kind::Necessitation: {
            if (proof.system == SystemId::GLPSstar) return reject(here, "GLPS* admits modus ponens only");
            const Formula* p = cited(j.premise);
            if (!p) return reject(here, "cited line out of range");
            const Formula want = Formula::box(j.modality, *p);
            if (l.formula != want) return reject(here, "expected " + render_formula(want));
            break;
        }
        }
    }
    if (proof.lines.back().formula != proof.goal)
        return reject(proof.lines.size(), "last line differs from the goal " + render_formula(proof.goal));
    return {true, 0, ""};
}

}  // namespace glpstar
