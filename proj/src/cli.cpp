#include "glpstar/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "glpstar/decide.hpp"
#include "glpstar/oracle.hpp"
#include "glpstar/parser.hpp"
#include "glpstar/proofs.hpp"
#include "glpstar/reductions.hpp"

namespace glpstar::cli {

namespace {

using json = nlohmann::ordered_json;

// Thrown for bad input after argument parsing; maps to exit status 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::string caret(std::string_view text, SourceSpan span) {
    const std::size_t line_start = text.rfind('\n', span.start == 0 ? 0 : span.start - 1);
    const std::size_t from = line_start == std::string_view::npos || span.start == 0 ? 0 : line_start + 1;
    std::size_t to = text.find('\n', span.start);
    if (to == std::string_view::npos) to = text.size();
    std::string out(text.substr(from, to - from));
    out += "\n" + std::string(span.start - from, ' ') + std::string(std::max<std::size_t>(1, span.end - span.start), '^');
    return out;
}

// Rethrows parse errors with the offending text underlined.
template <class F>
auto parsing(std::string_view text, F&& f) {
    try {
        return f(text);
    } catch (const ParseError& e) {
        throw InputError(std::string("parse error: ") + e.what() + " at " + std::to_string(e.span().start) + "\n" +
                         caret(text, e.span()));
    }
}

// A formula given inline, or a file of formulas when prefixed with '@'.
std::vector<Formula> formulas_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        const std::string text = read_file(arg.substr(1));
        auto list = parsing(text, [](std::string_view t) { return parse_formula_list(t); });
        if (list.empty()) throw InputError("no formulas in '" + arg.substr(1) + "'");
        return list;
    }
    return {parsing(arg, [](std::string_view t) { return parse_formula(t); })};
}

Formula formula_arg(const std::string& arg) {
    auto list = formulas_arg(arg);
    if (list.size() != 1) throw InputError("expected a single formula");
    return list.front();
}

KripkeModel model_arg(const std::string& path) {
    const std::string text = read_file(path);
    return parsing(text, [](std::string_view t) { return parse_model(t); });
}

json stats_json(const DecideStats& s) {
    json rounds = json::array();
    for (const auto& r : s.rounds)
        rounds.push_back({{"round", r.round}, {"candidates", r.candidates}, {"survivors", r.survivors},
                          {"bdd_nodes", r.bdd_nodes}});
    return {{"delta_size", s.delta_size}, {"atoms", s.atoms}, {"extracted_worlds", s.extracted_worlds},
            {"seconds", s.seconds}, {"rounds", rounds}};
}

std::string round_line(const EliminationRound& r) {
    std::ostringstream s;
    s << "round " << r.round << ": candidates " << std::setprecision(15) << r.candidates << ", survivors "
      << r.survivors;
    if (r.bdd_nodes) s << ", bdd nodes " << r.bdd_nodes;
    return s.str();
}

struct Context {
    std::string format = "text";
    bool verbose = false;
    std::size_t node_cap = DecideOptions{}.node_cap;
    std::uint64_t max_models = SearchBudget{}.max_models;
    std::ostringstream out, err;
    bool json() const { return format == "json"; }
    void emit(const nlohmann::ordered_json& j) { out << j.dump(2) << "\n"; }
};

int cmd_decide(Context& ctx, const std::string& system_name, const std::string& via, const std::string& variant,
               const std::string& pairing, const std::string& cm_path, const std::string& dot_path,
               const std::string& input) {
    const auto system = parse_system(system_name);
    if (!system) throw InputError("unknown system '" + system_name + "'");
    DecideOptions opt;
    opt.route = via == "nplus" ? GlpStarRoute::NPlus : GlpStarRoute::MPlus;
    opt.nplus_variant = variant == "literal" ? NPlusVariant::Literal : NPlusVariant::Default;
    opt.n_pairing = pairing == "crossed" ? NPairing::Crossed : NPairing::SameBody;
    opt.node_cap = ctx.node_cap;
    if (ctx.verbose) opt.on_round = [&](const EliminationRound& r) { ctx.err << round_line(r) << "\n"; };

    const auto formulas = formulas_arg(input);
    json results = json::array();
    bool all = true;
    const Countermodel* first = nullptr;
    std::vector<Verdict> verdicts;
    verdicts.reserve(formulas.size());
    for (const auto& f : formulas) {
        try {
            verdicts.push_back(decide(*system, f, opt));
        } catch (const SortConflict& e) {
            throw InputError(e.what());
        }
        const Verdict& v = verdicts.back();
        if (ctx.verbose)
            ctx.err << "|delta| = " << v.stats.delta_size << ", atoms " << v.stats.atoms << ", " << v.stats.seconds
                    << " s\n";
        all = all && v.theorem;
        if (!first && v.countermodel) first = &*v.countermodel;
    }

    if (first && !cm_path.empty()) write_file(cm_path, render_model(first->model));
    if (first && !dot_path.empty()) write_file(dot_path, export_dot(first->model, first->model.root));

    for (std::size_t i = 0; i < formulas.size(); ++i) {
        const Verdict& v = verdicts[i];
        const char* word = v.theorem ? "theorem" : "non-theorem";
        if (ctx.json()) {
            json r{{"formula", render_formula(formulas[i])}, {"verdict", word}, {"target", render_formula(v.target)}};
            if (v.countermodel) r["countermodel"] = render_model(v.countermodel->model);
            r["stats"] = stats_json(v.stats);
            results.push_back(r);
        } else if (formulas.size() == 1) {
            ctx.out << word << "\n";
            if (v.countermodel) {
                ctx.out << "falsified: " << render_formula(v.countermodel->falsified) << "\n";
                ctx.out << render_model(v.countermodel->model);
            }
        } else {
            ctx.out << word << "\t" << render_formula(formulas[i]) << "\n";
        }
    }
    if (ctx.json()) {
        json j{{"command", "decide"}, {"system", to_string(*system)}};
        if (formulas.size() == 1) j["verdict"] = results[0]["verdict"];
        j["results"] = results;
        ctx.emit(j);
    }
    return all ? kAffirmative : kNegative;
}

std::set<unsigned> theta_arg(const std::string& text, const Formula& f) {
    if (text.empty()) return modalities_in(f);
    std::set<unsigned> out;
    std::stringstream s(text);
    for (std::string item; std::getline(s, item, ',');) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw InputError("bad modality '" + item + "' in --theta");
        out.insert(static_cast<unsigned>(std::stoul(item)));
    }
    return out;
}

int cmd_reduce(Context& ctx, const std::string& kind, const std::string& theta, const std::string& input) {
    const Formula f = formula_arg(input);
    Formula r;
    if (kind == "m") r = m_formula(f);
    else if (kind == "mplus") r = m_plus(f);
    else if (kind == "n") r = n_formula(f);
    else if (kind == "n-crossed") r = n_formula(f, NPairing::Crossed);
    else if (kind == "nplus") r = n_plus(f, NPlusVariant::Default);
    else if (kind == "nplus-literal") r = n_plus(f, NPlusVariant::Literal);
    else if (kind == "h") r = h_formula(f);
    else if (kind == "rtheta") r = r_theta(f, theta_arg(theta, f));
    else if (kind == "rthetaplus") r = r_theta_plus(f, theta_arg(theta, f));
    else throw InputError("unknown reduction '" + kind + "'");
    if (ctx.json())
        ctx.emit({{"command", "reduce"}, {"kind", kind}, {"formula", render_formula(f)}, {"result", render_formula(r)}});
    else
        ctx.out << render_formula(r) << "\n";
    return kAffirmative;
}

int cmd_modelcheck(Context& ctx, const std::string& model_path, const std::string& world, const std::string& input) {
    const KripkeModel m = model_arg(model_path);
    const Formula f = formula_arg(input);
    Warnings warnings;
    const WorldSet ext = extension(m, f, &warnings);
    for (const auto& w : warnings) ctx.err << "warning: " << w << "\n";

    if (!world.empty()) {
        World w;
        try {
            w = m.world(world);
        } catch (const UnknownWorld& e) {
            throw InputError(e.what());
        }
        const bool holds = ext[w];
        if (ctx.json())
            ctx.emit({{"command", "modelcheck"}, {"world", world}, {"holds", holds}, {"warnings", warnings}});
        else
            ctx.out << (holds ? "true" : "false") << "\n";
        return holds ? kAffirmative : kNegative;
    }
    std::vector<std::string> failing;
    for (World w = 0; w < m.size(); ++w)
        if (!ext[w]) failing.push_back(m.frame.name(w));
    if (ctx.json()) {
        ctx.emit({{"command", "modelcheck"}, {"valid", failing.empty()}, {"failing", failing}, {"warnings", warnings}});
    } else {
        ctx.out << (failing.empty() ? "valid" : "invalid") << "\n";
        if (!failing.empty()) {
            ctx.out << "fails at:";
            for (const auto& w : failing) ctx.out << " " << w;
            ctx.out << "\n";
        }
    }
    return failing.empty() ? kAffirmative : kNegative;
}

int cmd_validate(Context& ctx, const std::string& model_path) {
    const KripkeModel m = model_arg(model_path);
    const ViolationReport frame = check_jstar_frame(m.frame);
    const ViolationReport persistence = check_strong_persistence(m);
    if (ctx.json()) {
        auto list = [](const ViolationReport& r) {
            json a = json::array();
            for (const auto& v : r.violations) a.push_back(v.describe());
            return a;
        };
        ctx.emit({{"command", "validate"}, {"frame_ok", frame.empty()}, {"persistence_ok", persistence.empty()},
                  {"frame", list(frame)}, {"persistence", list(persistence)}});
    } else {
        ctx.out << "frame: " << (frame.empty() ? "ok" : "violated") << "\n";
        for (const auto& v : frame.violations) ctx.out << "  " << v.describe() << "\n";
        ctx.out << "persistence: " << (persistence.empty() ? "ok" : "violated") << "\n";
        for (const auto& v : persistence.violations) ctx.out << "  " << v.describe() << "\n";
    }
    return frame.empty() && persistence.empty() ? kAffirmative : kNegative;
}

int cmd_closure(Context& ctx, const std::string& input) {
    FormulaSet gamma;
    for (const auto& f : formulas_arg(input)) gamma.insert(f);
    const FormulaSet delta = adequate_closure(gamma);
    std::vector<std::string> members;
    for (const auto& f : delta.sorted()) members.push_back(render_formula(f));
    const auto levels = modal_levels(delta);
    if (ctx.json()) {
        ctx.emit({{"command", "closure"}, {"size", delta.size()}, {"members", members},
                  {"levels", std::vector<unsigned>(levels.begin(), levels.end())}});
    } else {
        for (const auto& s : members) ctx.out << s << "\n";
        ctx.out << "levels:";
        for (unsigned n : levels) ctx.out << " " << n;
        ctx.out << "\n";
    }
    return kAffirmative;
}

int cmd_sort(Context& ctx, const std::string& input) {
    const Formula f = formula_arg(input);
    const std::string s = sort_of(f).to_string();
    if (ctx.json())
        ctx.emit({{"command", "sort"}, {"formula", render_formula(f)}, {"sort", s}});
    else
        ctx.out << s << "\n";
    return kAffirmative;
}

int cmd_checkproof(Context& ctx, const std::string& path, bool loeb_literal) {
    const std::string text = read_file(path);
    const ProofObject proof = parsing(text, [](std::string_view t) { return parse_proof(t); });
    MatchOptions opt;
    opt.loeb_literal = loeb_literal;
    const ProofCheck result = check_proof(proof, opt);
    if (ctx.json()) {
        json j{{"command", "checkproof"}, {"system", to_string(proof.system)}, {"goal", render_formula(proof.goal)},
               {"accepted", result.accepted}};
        if (!result.accepted) {
            j["line"] = result.line;
            j["reason"] = result.reason;
        }
        ctx.emit(j);
    } else if (result.accepted) {
        ctx.out << "accepted\n";
    } else {
        ctx.out << "rejected at line " << result.line << ": " << result.reason << "\n";
    }
    return result.accepted ? kAffirmative : kNegative;
}

int cmd_oracle(Context& ctx, std::size_t max_worlds, const std::string& cm_path, const std::string& dot_path,
               const std::string& input) {
    const Formula f = formula_arg(input);
    SearchBudget budget;
    budget.max_worlds = max_worlds;
    budget.max_models = ctx.max_models;
    if (max_worlds == 0 || max_worlds > kMaxOracleWorlds)
        throw InputError("--max-worlds must be between 1 and " + std::to_string(kMaxOracleWorlds));
    OracleResult r;
    try {
        r = brute_force_countermodel(f, budget);
    } catch (const SortConflict& e) {
        throw InputError(e.what());
    }
    if (r.found()) {
        if (!cm_path.empty()) write_file(cm_path, render_model(*r.model));
        if (!dot_path.empty()) write_file(dot_path, export_dot(*r.model, r.world));
    }
    const std::string status = r.found() ? "countermodel" : r.truncated ? "truncated" : "none";
    if (ctx.json()) {
        json j{{"command", "oracle"}, {"result", status}, {"examined", r.examined}, {"truncated", r.truncated}};
        if (r.found()) {
            j["world"] = r.model->frame.name(*r.world);
            j["countermodel"] = render_model(*r.model);
        }
        ctx.emit(j);
    } else {
        ctx.out << status << "\n";
        if (r.found()) ctx.out << "fails at " << r.model->frame.name(*r.world) << "\n" << render_model(*r.model);
        else ctx.out << "examined " << r.examined << " models\n";
    }
    if (r.found()) return kNegative;
    return r.truncated ? kResourceLimit : kAffirmative;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
    Context ctx;
    CLI::App app{"Decision procedures for many-sorted provability logics", "glpw"};
    app.require_subcommand(1);
    app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("-v,--verbose", ctx.verbose, "Elimination statistics on stderr");

    std::string input, system = "glpstar", via = "mplus", variant = "default", pairing = "same-body", cm_path, dot_path, kind, theta,
                        model_path, world;
    std::size_t max_worlds = 4;
    bool loeb_literal = false;

    auto* decide_cmd = app.add_subcommand("decide", "Decide theoremhood");
    decide_cmd->add_option("--system", system)->check(CLI::IsMember({"jstar", "glpstar", "glp", "glpsstar"}));
    decide_cmd->add_option("--via", via)->check(CLI::IsMember({"mplus", "nplus"}));
    decide_cmd->add_option("--nplus-variant", variant)->check(CLI::IsMember({"default", "literal"}));
    decide_cmd->add_option("--n-pairing", pairing)->check(CLI::IsMember({"same-body", "crossed"}));
    decide_cmd->add_option("--countermodel", cm_path, "Write the countermodel here");
    decide_cmd->add_option("--dot", dot_path, "Write the countermodel as DOT");
    decide_cmd->add_option("--node-cap", ctx.node_cap, "BDD node limit")->check(CLI::PositiveNumber);
    decide_cmd->add_option("formula", input, "Formula, or @file")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "Print a reduction formula");
    reduce_cmd->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"m", "mplus", "n", "n-crossed", "nplus", "nplus-literal", "h", "rtheta", "rthetaplus"}));
    reduce_cmd->add_option("--theta", theta, "Comma-separated modalities (default: those of the formula)");
    reduce_cmd->add_option("formula", input)->required();

    auto* mc_cmd = app.add_subcommand("modelcheck", "Evaluate a formula in a model");
    mc_cmd->add_option("--model", model_path)->required();
    mc_cmd->add_option("--world", world);
    mc_cmd->add_option("formula", input)->required();

    auto* validate_cmd = app.add_subcommand("validate", "Check frame conditions and persistence");
    validate_cmd->add_option("--model", model_path)->required();

    auto* closure_cmd = app.add_subcommand("closure", "Print the adequate closure");
    closure_cmd->add_option("formula", input)->required();

    auto* sort_cmd = app.add_subcommand("sort", "Print the sort of a formula");
    sort_cmd->add_option("formula", input)->required();

    auto* proof_cmd = app.add_subcommand("checkproof", "Check a proof file");
    proof_cmd->add_flag("--loeb-literal", loeb_literal, "Match the alternative Loeb form");
    proof_cmd->add_option("file", input)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "Search small models for a countermodel");
    oracle_cmd->add_option("--max-worlds", max_worlds);
    oracle_cmd->add_option("--max-models", ctx.max_models)->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--countermodel", cm_path);
    oracle_cmd->add_option("--dot", dot_path);
    oracle_cmd->add_option("formula", input)->required();

    Result res;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        res.status = app.exit(e, ctx.out, ctx.err) == 0 ? kAffirmative : kInputError;
        res.out = ctx.out.str();
        res.err = ctx.err.str();
        return res;
    }

    try {
        if (*decide_cmd) res.status = cmd_decide(ctx, system, via, variant, pairing, cm_path, dot_path, input);
        else if (*reduce_cmd) res.status = cmd_reduce(ctx, kind, theta, input);
        else if (*mc_cmd) res.status = cmd_modelcheck(ctx, model_path, world, input);
        else if (*validate_cmd) res.status = cmd_validate(ctx, model_path);
        else if (*closure_cmd) res.status = cmd_closure(ctx, input);
        else if (*sort_cmd) res.status = cmd_sort(ctx, input);
        else if (*proof_cmd) res.status = cmd_checkproof(ctx, input, loeb_literal);
        else if (*oracle_cmd) res.status = cmd_oracle(ctx, max_worlds, cm_path, dot_path, input);
    } catch (const InputError& e) {
        ctx.err << "error: " << e.what() << "\n";
        res.status = kInputError;
    } catch (const SortConflict& e) {
        ctx.err << "error: " << e.what() << "\n";
        res.status = kInputError;
    } catch (const ResourceLimitExceeded& e) {
        ctx.err << "resource limit: " << e.what() << "\n";
        res.status = kResourceLimit;
    }
    res.out = ctx.out.str();
    res.err = ctx.err.str();
    return res;
}

}  // namespace glpstar::cli
