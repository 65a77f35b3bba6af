#include "glpstar/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

namespace glpstar {

namespace {

enum class Tok { LParen, RParen, Not, Dia, Box, And, Or, Imp, Top, Bot, Ident, Colon, Number, Omega, End };

struct Token {
    Tok kind;
    SourceSpan span;
    std::string text;
    unsigned number = 0;
};

struct Alias {
    std::string_view utf8;
    Tok kind;
};

constexpr Alias kAliases[] = {
    {"◊", Tok::Dia}, {"□", Tok::Box}, {"¬", Tok::Not}, {"∧", Tok::And}, {"∨", Tok::Or},
    {"→", Tok::Imp}, {"⊤", Tok::Top}, {"⊥", Tok::Bot}, {"ω", Tok::Omega},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, {pos_, pos_}, {}});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    unsigned read_number(std::size_t start) {
        if (pos_ >= text_.size() || !digit(text_[pos_])) throw ParseError("expected modality index", {start, pos_});
        unsigned long v = 0;
        while (pos_ < text_.size() && digit(text_[pos_])) {
            v = v * 10 + static_cast<unsigned>(text_[pos_++] - '0');
            if (v > 1000000) throw ParseError("index too large", {start, pos_});
        }
        return static_cast<unsigned>(v);
    }

    Token bracketed(Tok kind, char close) {
        const std::size_t start = pos_++;
        skip_space();
        const unsigned n = read_number(start);
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != close)
            throw ParseError(std::string("expected '") + close + "'", {start, std::min(pos_ + 1, text_.size())});
        ++pos_;
        return {kind, {start, pos_}, {}, n};
    }

    Token next() {
        const std::size_t start = pos_;
        const char c = text_[pos_];
        switch (c) {
        case '(': ++pos_; return {Tok::LParen, {start, pos_}, {}};
        case ')': ++pos_; return {Tok::RParen, {start, pos_}, {}};
        case '~': ++pos_; return {Tok::Not, {start, pos_}, {}};
        case '&': ++pos_; return {Tok::And, {start, pos_}, {}};
        case '|': ++pos_; return {Tok::Or, {start, pos_}, {}};
        case ':': ++pos_; return {Tok::Colon, {start, pos_}, {}};
        case '<': return bracketed(Tok::Dia, '>');
        case '[': return bracketed(Tok::Box, ']');
        case '-':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                pos_ += 2;
                return {Tok::Imp, {start, pos_}, {}};
            }
            break;
        default: break;
        }
        if (digit(c)) {
            const unsigned n = read_number(start);
            return {Tok::Number, {start, pos_}, {}, n};
        }
        if (ident_start(c)) {
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            std::string word(text_.substr(start, pos_ - start));
            if (word == "T") return {Tok::Top, {start, pos_}, {}};
            if (word == "F") return {Tok::Bot, {start, pos_}, {}};
            return {Tok::Ident, {start, pos_}, std::move(word)};
        }
        for (const auto& a : kAliases) {
            if (text_.substr(pos_, a.utf8.size()) == a.utf8) {
                pos_ += a.utf8.size();
                if (a.kind == Tok::Dia || a.kind == Tok::Box) {
                    skip_space();
                    if (pos_ < text_.size() && text_[pos_] == '_') ++pos_;
                    const unsigned n = read_number(start);
                    return {a.kind, {start, pos_}, {}, n};
                }
                return {a.kind, {start, pos_}, {}};
            }
        }
        // Span covers one UTF-8 code point.
        std::size_t end = pos_ + 1;
        while (end < text_.size() && (static_cast<unsigned char>(text_[end]) & 0xC0) == 0x80) ++end;
        throw ParseError("unexpected character '" + std::string(text_.substr(pos_, end - pos_)) + "'", {pos_, end});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : tokens_(Lexer(text).run()) {}

    RawFormula parse() {
        RawFormula f = implication();
        if (peek().kind != Tok::End) throw ParseError("unexpected token after formula", peek().span);
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    static RawFormula binary(RawFormula::Kind k, RawFormula a, RawFormula b) {
        RawFormula r;
        r.kind = k;
        r.kids.push_back(std::move(a));
        r.kids.push_back(std::move(b));
        return r;
    }

    RawFormula implication() {
        RawFormula lhs = disjunction();
        if (peek().kind == Tok::Imp) {
            take();
            return binary(RawFormula::Kind::Imp, std::move(lhs), implication());
        }
        return lhs;
    }

    RawFormula disjunction() {
        RawFormula acc = conjunction();
        while (peek().kind == Tok::Or) {
            take();
            acc = binary(RawFormula::Kind::Or, std::move(acc), conjunction());
        }
        return acc;
    }

    RawFormula conjunction() {
        RawFormula acc = unary();
        while (peek().kind == Tok::And) {
            take();
            acc = binary(RawFormula::Kind::And, std::move(acc), unary());
        }
        return acc;
    }

    RawFormula unary() {
        const Token& t = peek();
        RawFormula r;
        switch (t.kind) {
        case Tok::Not:
            take();
            r.kind = RawFormula::Kind::Neg;
            r.kids.push_back(unary());
            return r;
        case Tok::Dia:
        case Tok::Box:
            take();
            r.kind = t.kind == Tok::Dia ? RawFormula::Kind::Dia : RawFormula::Kind::Box;
            r.modality = t.number;
            r.kids.push_back(unary());
            return r;
        default: return atom();
        }
    }

    RawFormula atom() {
        const Token& t = take();
        RawFormula r;
        switch (t.kind) {
        case Tok::Top: r.kind = RawFormula::Kind::Top; return r;
        case Tok::Bot: r.kind = RawFormula::Kind::Bot; return r;
        case Tok::LParen: {
            r = implication();
            if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().span);
            take();
            return r;
        }
        case Tok::Ident: {
            r.kind = RawFormula::Kind::Var;
            r.name = t.text;
            r.sort = Sort::omega();
            SourceSpan span = t.span;
            if (peek().kind == Tok::Colon) {
                take();
                const Token& s = take();
                if (s.kind == Tok::Number) r.sort = Sort(s.number);
                else if (s.kind == Tok::Omega || (s.kind == Tok::Ident && s.text == "w")) r.sort = Sort::omega();
                else throw ParseError("expected sort (natural number or 'w')", s.span);
                span.end = s.span.end;
            }
            auto [it, fresh] = sorts_.emplace(r.name, r.sort);
            if (!fresh && it->second != r.sort)
                throw ParseError("sort conflict: variable '" + r.name + "' used with sorts " +
                                     it->second.to_string() + " and " + r.sort.to_string(),
                                 span);
            return r;
        }
        case Tok::End: throw ParseError("unexpected end of input", t.span);
        default: throw ParseError("unexpected token", t.span);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, Sort> sorts_;
};

// Precedence levels used by the renderer.
constexpr int kOr = 1, kAnd = 2, kUnary = 3;

void render(const Formula& f, int ctx, std::string& out) {
    auto wrap = [&](int own, auto body) {
        const bool paren = own < ctx;
        if (paren) out += '(';
        body();
        if (paren) out += ')';
    };
    switch (f.kind()) {
    case Kind::Top: out += 'T'; return;
    case Kind::Bot: out += 'F'; return;
    case Kind::Var:
        out += f.name();
        out += ':';
        out += f.var_sort().to_string();
        return;
    case Kind::Neg:
        out += '~';
        render(f.child(), kUnary, out);
        return;
    case Kind::Dia:
        out += '<' + std::to_string(f.modality()) + '>';
        render(f.child(), kUnary, out);
        return;
    case Kind::And:
        wrap(kAnd, [&] {
            render(f.left(), kAnd, out);
            out += " & ";
            render(f.right(), kAnd + 1, out);
        });
        return;
    case Kind::Or:
        wrap(kOr, [&] {
            render(f.left(), kOr, out);
            out += " | ";
            render(f.right(), kOr + 1, out);
        });
        return;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Line {
    std::string_view text;  // comment stripped, trimmed
    std::size_t offset;     // of text within the input
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string_view t = trim(raw);
        if (!t.empty()) out.push_back({t, start + static_cast<std::size_t>(t.data() - raw.data())});
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

std::vector<std::pair<std::string, SourceSpan>> words(std::string_view s, std::size_t offset) {
    std::vector<std::pair<std::string, SourceSpan>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
        const std::size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
        if (i > b) out.push_back({std::string(s.substr(b, i - b)), {offset + b, offset + i}});
    }
    return out;
}

bool valid_world_name(const std::string& w) {
    if (w.empty()) return false;
    for (char c : w)
        if (!(ident_char(c) || c == '-' || c == '.')) return false;
    return true;
}

}  // namespace

RawFormula parse_raw_formula(std::string_view text) { return FormulaParser(text).parse(); }

Formula parse_formula(std::string_view text) { return desugar(parse_raw_formula(text)); }

std::vector<Formula> parse_formula_list(std::string_view text) {
    std::vector<Formula> out;
    for (const auto& line : split_lines(text)) {
        try {
            out.push_back(parse_formula(line.text));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), {line.offset + e.span().start, line.offset + e.span().end});
        }
    }
    return out;
}

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, 0, out);
    return out;
}

KripkeModel parse_model(std::string_view text) {
    struct PendingEdge {
        unsigned n;
        std::string x, y;
        SourceSpan sx, sy;
    };
    struct PendingVal {
        std::string name;
        Sort sort;
        std::vector<std::pair<std::string, SourceSpan>> worlds;
    };
    std::vector<std::string> world_names;
    std::map<std::string, SourceSpan> declared;
    std::vector<PendingEdge> edges;
    std::vector<PendingVal> vals;
    std::optional<std::pair<std::string, SourceSpan>> root;

    const auto line_span = [](const Line& l) { return SourceSpan{l.offset, l.offset + l.text.size()}; };

    for (const auto& line : split_lines(text)) {
        const std::string_view t = line.text;
        const std::size_t kw_end = std::min(t.find_first_of(" \t"), t.size());
        const std::string_view kw = t.substr(0, kw_end);
        const std::string_view rest = t.substr(kw_end);
        const std::size_t rest_off = line.offset + kw_end;

        if (kw == "worlds") {
            for (auto& [w, span] : words(rest, rest_off)) {
                if (!valid_world_name(w)) throw ParseError("invalid world name '" + w + "'", span);
                if (declared.count(w)) throw ParseError("duplicate world '" + w + "'", span);
                declared.emplace(w, span);
                world_names.push_back(w);
            }
        } else if (kw == "rel") {
            const std::size_t colon = rest.find(':');
            if (colon == std::string_view::npos) throw ParseError("expected 'rel <n>: <x> <y>'", line_span(line));
            const std::string_view idx = trim(rest.substr(0, colon));
            if (idx.empty() || !std::all_of(idx.begin(), idx.end(), digit))
                throw ParseError("expected modality index", line_span(line));
            const auto ws = words(rest.substr(colon + 1), rest_off + colon + 1);
            if (ws.size() != 2) throw ParseError("expected exactly two worlds in relation line", line_span(line));
            edges.push_back({static_cast<unsigned>(std::stoul(std::string(idx))), ws[0].first, ws[1].first,
                             ws[0].second, ws[1].second});
        } else if (kw == "val") {
            const std::size_t eq = rest.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected 'val <name>:<sort> = {...}'", line_span(line));
            const std::string_view lhs = trim(rest.substr(0, eq));
            PendingVal v;
            const std::size_t colon = lhs.find(':');
            v.name = std::string(trim(lhs.substr(0, colon)));
            v.sort = Sort::omega();
            if (v.name.empty() || !ident_start(v.name[0]) ||
                !std::all_of(v.name.begin(), v.name.end(), ident_char) || v.name == "T" || v.name == "F")
                throw ParseError("invalid variable name", line_span(line));
            if (colon != std::string_view::npos) {
                const std::string_view s = trim(lhs.substr(colon + 1));
                if (s == "w" || s == "ω") v.sort = Sort::omega();
                else if (!s.empty() && std::all_of(s.begin(), s.end(), digit)) v.sort = Sort(std::stoul(std::string(s)));
                else throw ParseError("invalid sort", line_span(line));
            }
            std::string_view set = trim(rest.substr(eq + 1));
            const std::size_t set_off = rest_off + eq + 1 + static_cast<std::size_t>(set.data() - rest.substr(eq + 1).data());
            if (set.size() < 2 || set.front() != '{' || set.back() != '}')
                throw ParseError("expected world set in braces", line_span(line));
            v.worlds = words(set.substr(1, set.size() - 2), set_off + 1);
            vals.push_back(std::move(v));
        } else if (kw == "root") {
            const auto ws = words(rest, rest_off);
            if (ws.size() != 1) throw ParseError("expected 'root <world>'", line_span(line));
            if (root) throw ParseError("duplicate root declaration", line_span(line));
            root = ws[0];
        } else {
            throw ParseError("unknown model statement '" + std::string(kw) + "'",
                             {line.offset, line.offset + kw.size()});
        }
    }

    KripkeModel model;
    model.frame = KripkeFrame(world_names);
    const auto lookup = [&](const std::string& w, SourceSpan span) {
        auto id = model.frame.find(w);
        if (!id) throw ParseError("undeclared world '" + w + "'", span);
        return *id;
    };
    for (const auto& e : edges) model.frame.add_edge(e.n, lookup(e.x, e.sx), lookup(e.y, e.sy));
    for (const auto& v : vals) {
        if (auto it = model.valuation.find(v.name); it != model.valuation.end() && it->second.sort != v.sort)
            throw ParseError("sort conflict: variable '" + v.name + "' declared with sorts " +
                                 it->second.sort.to_string() + " and " + v.sort.to_string(),
                             v.worlds.empty() ? SourceSpan{} : v.worlds.front().second);
        if (!model.valuation.count(v.name)) model.declare(v.name, v.sort);
        for (const auto& [w, span] : v.worlds) model.set_true(v.name, lookup(w, span));
    }
    if (root) model.root = lookup(root->first, root->second);
    return model;
}

std::string render_model(const KripkeModel& model) {
    std::ostringstream os;
    os << "worlds";
    for (const auto& w : model.frame.names()) os << ' ' << w;
    os << '\n';
    for (unsigned n : model.frame.modalities())
        for (World x = 0; x < model.size(); ++x) {
            const auto sx = model.frame.successors(n, x);
            for (World y = sx.find_first(); y != WorldSet::npos; y = sx.find_next(y))
                os << "rel " << n << ": " << model.frame.name(x) << ' ' << model.frame.name(y) << '\n';
        }
    for (const auto& [name, v] : model.valuation) {
        os << "val " << name << ':' << v.sort.to_string() << " = {";
        bool first = true;
        for (World w = 0; w < model.size(); ++w)
            if (w < v.truth.size() && v.truth.test(w)) {
                os << (first ? "" : ", ") << model.frame.name(w);
                first = false;
            }
        os << "}\n";
    }
    if (model.root) os << "root " << model.frame.name(*model.root) << '\n';
    return os.str();
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string export_dot(const KripkeModel& model, std::optional<World> highlight) {
    std::ostringstream os;
    os << "digraph kripke {\n";
    os << "  node [shape=circle];\n";
    for (World w = 0; w < model.size(); ++w) {
        std::string label = model.frame.name(w);
        std::string vars;
        for (const auto& [name, v] : model.valuation)
            if (w < v.truth.size() && v.truth.test(w)) vars += (vars.empty() ? "" : ",") + name;
        if (!vars.empty()) label += "\\n" + vars;
        os << "  " << dot_quote(model.frame.name(w)) << " [label=\"" << label << "\"";
        if (highlight && *highlight == w) os << ", shape=doublecircle, style=bold, color=red";
        os << "];\n";
    }
    for (unsigned n : model.frame.modalities())
        for (World x = 0; x < model.size(); ++x) {
            const auto sx = model.frame.successors(n, x);
            for (World y = sx.find_first(); y != WorldSet::npos; y = sx.find_next(y))
                os << "  " << dot_quote(model.frame.name(x)) << " -> " << dot_quote(model.frame.name(y))
                   << " [label=\"" << n << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace glpstar
