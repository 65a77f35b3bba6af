#include <doctest.h>

#include "glpstar/decide.hpp"
#include "glpstar/kripke.hpp"
#include "glpstar/parser.hpp"
#include "support.hpp"

using namespace glpstar;

namespace {

Formula P(const char* s) { return parse_formula(s); }

FormulaSet members(const FormulaSet& delta, const HintikkaWorld& x) {
    FormulaSet out;
    for (std::size_t i = 0; i < delta.size(); ++i)
        if (x[i]) out.insert(delta[i]);
    return out;
}

HintikkaWorld world_of(const FormulaSet& delta, std::initializer_list<Formula> fs) {
    HintikkaWorld x(delta.size());
    for (const auto& f : fs) x.set(delta.index_of(f));
    return x;
}

// Countermodel contract: rooted, both validators pass, root falsifies.
void check_countermodel(const Verdict& v) {
    REQUIRE(v.countermodel.has_value());
    const KripkeModel& m = v.countermodel->model;
    REQUIRE(m.root.has_value());
    CHECK(check_jstar_frame(m.frame).empty());
    CHECK(check_strong_persistence(m).empty());
    CHECK_FALSE(model_check(m, *m.root, v.countermodel->falsified));
    CHECK_FALSE(testsupport::ref_holds(m, *m.root, v.countermodel->falsified));
    CHECK(testsupport::ref_is_jstar_frame(m.frame));
    CHECK(testsupport::ref_is_persistent(m));
}

}  // namespace

TEST_CASE("system names") {
    CHECK(parse_system("glpstar") == SystemId::GLPstar);
    CHECK(parse_system("GLP*") == SystemId::GLPstar);
    CHECK(parse_system("JStar") == SystemId::Jstar);
    CHECK(parse_system("glp") == SystemId::GLP);
    CHECK(parse_system("glpsstar") == SystemId::GLPSstar);
    CHECK_FALSE(parse_system("k4").has_value());
    for (auto s : {SystemId::Jstar, SystemId::GLPstar, SystemId::GLP, SystemId::GLPSstar})
        CHECK(parse_system(to_string(s)) == s);
}

TEST_CASE("hintikka candidates") {
    const Formula p = P("p:0");
    const FormulaSet delta = adequate_closure({P("<1>p:0")});
    const auto cands = hintikka_candidates(delta);
    std::vector<FormulaSet> got;
    for (const auto& x : cands) got.push_back(members(delta, x));
    const Formula t = Formula::top(), d = P("<1>p:0"), nd = P("~<1>p:0"), dn = P("<1>~p:0"), ndn = P("~<1>~p:0");
    const std::vector<FormulaSet> want{{t, p, d, ndn}, {t, p, nd, ndn}, {t, Formula::neg(p), nd, dn},
                                       {t, Formula::neg(p), nd, ndn}};
    CHECK(got.size() == 4);
    for (const auto& w : want) CHECK(std::find(got.begin(), got.end(), w) != got.end());

    const FormulaSet top{Formula::top(), Formula::neg(Formula::top())};
    const auto one = hintikka_candidates(top);
    REQUIRE(one.size() == 1);
    CHECK(members(top, one[0]) == FormulaSet{Formula::top()});

    CHECK(hintikka_candidates(adequate_closure({P("p")})).size() == 2);
}

TEST_CASE("candidate invariants on random closures") {
    testsupport::Rng rng(41);
    testsupport::FormulaShape shape;
    shape.depth = 2;
    for (int i = 0; i < 40; ++i) {
        const FormulaSet delta = adequate_closure({testsupport::random_formula(rng, shape)});
        if (delta.size() > 16) continue;
        for (const auto& x : hintikka_candidates(delta)) {
            const FormulaSet s = members(delta, x);
            CHECK(s.contains(Formula::top()));
            for (const auto& f : delta) {
                CHECK(s.contains(f) != s.contains(modified_negation(f)));
                if (f.is(Kind::And) && delta.contains(f.left()) && delta.contains(f.right()))
                    CHECK(s.contains(f) == (s.contains(f.left()) && s.contains(f.right())));
                if (f.is(Kind::Or) && delta.contains(f.left()) && delta.contains(f.right()))
                    CHECK(s.contains(f) == (s.contains(f.left()) || s.contains(f.right())));
                if (f.is(Kind::Dia) && s.contains(f) && sort_of(f.child()).at_most(f.modality()))
                    CHECK(s.contains(f.child()));
                if (f.is(Kind::Dia) && f.child().is(Kind::Dia) && f.modality() < f.child().modality() && s.contains(f))
                    CHECK(s.contains(Formula::dia(f.modality(), f.child().child())));
            }
        }
    }
}

TEST_CASE("canonical relation") {
    const FormulaSet delta = adequate_closure({P("<1>p:0")});
    const Formula t = Formula::top();
    const auto x = world_of(delta, {t, P("p:0"), P("<1>p:0"), P("~<1>~p:0")});
    const auto y = world_of(delta, {t, P("p:0"), P("~<1>p:0"), P("~<1>~p:0")});
    CHECK(canonical_relation(delta, x, y, 1));
    CHECK(canonical_relation(delta, x, y, 1, RelationConditions::Basic));
    CHECK_FALSE(canonical_relation(delta, y, x, 1));
    CHECK_FALSE(canonical_relation(delta, x, x, 1));
    CHECK_FALSE(canonical_relation(delta, x, y, 0));
    CHECK_FALSE(canonical_relation(delta, x, y, 2));
    for (const auto& c : hintikka_candidates(delta)) CHECK_FALSE(canonical_relation(delta, c, c, 1));
}

TEST_CASE("build canonical") {
    const FormulaSet delta = adequate_closure({P("<1>p:0")});
    const CanonicalModel cm = build_canonical(delta);
    CHECK(cm.worlds.size() == 4);
    CHECK(cm.candidates == 4);
    CHECK(truth_lemma_holds(delta, cm));
    CHECK(check_jstar_frame(cm.model.frame).empty());
    CHECK(check_strong_persistence(cm.model).empty());
    const std::size_t d = delta.index_of(P("<1>p:0"));
    const std::size_t p = delta.index_of(P("p:0"));
    for (World x = 0; x < cm.worlds.size(); ++x) {
        if (!cm.worlds[x][d]) continue;
        bool witnessed = false;
        for (World y = 0; y < cm.worlds.size(); ++y)
            if (cm.model.frame.has_edge(1, x, y) && cm.worlds[y][p] && !cm.worlds[y][d]) witnessed = true;
        CHECK(witnessed);
    }

    const FormulaSet top{Formula::top(), Formula::neg(Formula::top())};
    const CanonicalModel one = build_canonical(top);
    CHECK(one.worlds.size() == 1);
    CHECK(one.model.frame.edge_count() == 0);

    const FormulaSet bot = adequate_closure({P("<0>F")});
    const CanonicalModel b = build_canonical(bot);
    CHECK(b.candidates == 1);  // sigma closure already rules out <0>F
    const std::size_t db = bot.index_of(P("<0>F"));
    CHECK(b.worlds.size() == 1);
    for (const auto& w : b.worlds) CHECK_FALSE(w[db]);
    CHECK(truth_lemma_holds(bot, b));
}

TEST_CASE("elimination rounds are reported") {
    const FormulaSet delta = adequate_closure({P("<0>F | <1><0>p")});
    std::vector<EliminationRound> seen;
    CanonicalOptions opt;
    opt.on_round = [&](const EliminationRound& r) { seen.push_back(r); };
    const CanonicalModel cm = build_canonical(delta, opt);
    REQUIRE_FALSE(seen.empty());
    CHECK(seen.size() == cm.rounds.size());
    CHECK(seen.front().candidates == doctest::Approx(double(cm.candidates)));
    CHECK(seen.back().survivors == doctest::Approx(double(cm.worlds.size())));
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i].candidates == seen[i - 1].survivors);
}

TEST_CASE("canonical models on random closures") {
    testsupport::Rng rng(42);
    testsupport::FormulaShape shape;
    shape.depth = 3;
    int basic_broken = 0;
    for (int i = 0; i < 120; ++i) {
        const FormulaSet delta = adequate_closure({testsupport::random_formula(rng, shape)});
        if (delta.size() > 20) continue;
        const CanonicalModel cm = build_canonical(delta);
        CHECK(truth_lemma_holds(delta, cm));
        CHECK(check_jstar_frame(cm.model.frame).empty());
        CHECK(check_strong_persistence(cm.model).empty());

        CanonicalOptions basic;
        basic.conditions = RelationConditions::Basic;
        if (!check_jstar_frame(build_canonical(delta, basic).model.frame).empty()) ++basic_broken;
    }
    // the four bare conditions do not always give a J*-frame
    CHECK(basic_broken > 0);
}

TEST_CASE("decide examples") {
    CHECK(decide(SystemId::GLPstar, P("<1>p:1 -> p:1")).theorem);

    const Verdict mono = decide(SystemId::Jstar, P("<1>p:w -> <0>p:w"));
    CHECK_FALSE(mono.theorem);
    check_countermodel(mono);
    const KripkeModel& m = mono.countermodel->model;
    CHECK(m.size() == 2);
    CHECK(m.frame.edge_count() == 1);
    const World root = *m.root;
    const World other = 1 - root;
    CHECK(m.frame.has_edge(1, root, other));
    CHECK(m.holds_var("p", other));
    CHECK_FALSE(m.holds_var("p", root));

    CHECK(decide(SystemId::GLPstar, P("<1>p:w -> <0>p:w")).theorem);

    const Verdict s = decide(SystemId::GLPstar, P("<0>p:2 -> p:2"));
    CHECK_FALSE(s.theorem);
    check_countermodel(s);

    CHECK(decide(SystemId::GLPstar, P("<0><1>p:w -> <0>p:w")).theorem);
    CHECK(decide(SystemId::Jstar, P("<0><1>p:w -> <0>p:w")).theorem);
    CHECK(decide(SystemId::GLPSstar, P("<0>T")).theorem);

    const Verdict c = decide(SystemId::GLPstar, P("<0>T"));
    CHECK_FALSE(c.theorem);
    check_countermodel(c);
    CHECK(c.countermodel->model.size() == 1);
    CHECK(c.countermodel->model.frame.edge_count() == 0);

    CHECK(decide(SystemId::GLPstar, P("<0>p:w -> [1]<0>p:w")).theorem);
    CHECK(decide(SystemId::Jstar, P("<0>p:w -> [1]<0>p:w")).theorem);
    CHECK(decide(SystemId::GLP, P("<0>p:w -> [1]<0>p:w")).theorem);
    CHECK_FALSE(decide(SystemId::GLPstar, P("F")).theorem);
    CHECK(decide(SystemId::Jstar, P("[0]T")).theorem);
    // Loeb
    CHECK(decide(SystemId::Jstar, P("[1]([1]p -> p) -> [1]p")).theorem);
    CHECK_FALSE(decide(SystemId::Jstar, P("[1]p -> p")).theorem);
    // GLP forgets sorts
    CHECK_FALSE(decide(SystemId::GLP, P("<1>p:1 -> p:1")).theorem);
}

TEST_CASE("verdict targets follow the reductions") {
    const Formula f = P("<1>p:0 -> <0>p:0");
    CHECK(jstar_target(SystemId::Jstar, f) == f);
    CHECK(jstar_target(SystemId::GLPstar, f) == Formula::implies(m_plus(f), f));
    DecideOptions nopt;
    nopt.route = GlpStarRoute::NPlus;
    CHECK(jstar_target(SystemId::GLPstar, f, nopt) == Formula::implies(n_plus(f), f));
    CHECK(decide(SystemId::GLPstar, f).target == jstar_target(SystemId::GLPstar, f));
    const Formula w = to_omega_sorted(f);
    CHECK(jstar_target(SystemId::GLP, f) == Formula::implies(m_plus(w), w));
}

TEST_CASE("ill-sorted input is rejected") {
    CHECK_THROWS_AS(decide(SystemId::Jstar, Formula::conj(Formula::var("p", Sort(1)), Formula::var("p", Sort(2)))),
                    SortConflict);
}

TEST_CASE("resource limits are distinct from verdicts") {
    const Formula f = P("<0>(p:0 & <1>q:1) | <2>(r:w & <0>~p:0) | [1](q:1 -> <2>r:w)");
    DecideOptions explicit_small;
    explicit_small.engine = Engine::Explicit;
    explicit_small.candidate_cap = 4;
    CHECK_THROWS_AS(decide(SystemId::Jstar, f, explicit_small), ResourceLimitExceeded);
    DecideOptions symbolic_small;
    symbolic_small.node_cap = 8;
    CHECK_THROWS_AS(decide(SystemId::Jstar, f, symbolic_small), ResourceLimitExceeded);
    CHECK_THROWS_AS(hintikka_candidates(adequate_closure({f}), 3), ResourceLimitExceeded);
}

TEST_CASE("engines agree") {
    testsupport::Rng rng(43);
    testsupport::FormulaShape shape;
    shape.depth = 3;
    DecideOptions ex;
    ex.engine = Engine::Explicit;
    ex.candidate_cap = 1 << 12;
    for (int i = 0; i < 150; ++i) {
        const Formula f = testsupport::random_formula(rng, shape);
        for (auto sys : {SystemId::Jstar, SystemId::GLPstar}) {
            Verdict a, b;
            try {
                b = decide(sys, f, ex);
            } catch (const ResourceLimitExceeded&) {
                continue;
            }
            a = decide(sys, f);
            CHECK_MESSAGE(a.theorem == b.theorem, render_formula(f));
            if (!a.theorem) check_countermodel(a);
            if (!b.theorem) check_countermodel(b);
        }
    }
}

TEST_CASE("countermodels on random formulas") {
    testsupport::Rng rng(44);
    testsupport::FormulaShape shape;
    shape.variables = {{"p", Sort(0)}, {"q", Sort(2)}, {"r", Sort::omega()}};
    shape.depth = 4;
    int refuted = 0;
    for (int i = 0; i < 200; ++i) {
        const Formula f = testsupport::random_formula(rng, shape);
        for (auto sys : {SystemId::Jstar, SystemId::GLPstar, SystemId::GLP, SystemId::GLPSstar}) {
            const Verdict v = decide(sys, f);
            if (v.theorem) continue;
            ++refuted;
            check_countermodel(v);
            CHECK(v.countermodel->falsified == v.target);
        }
    }
    CHECK(refuted > 100);
}

TEST_CASE("GLPS* extends GLP*, GLP* extends J*") {
    testsupport::Rng rng(45);
    testsupport::FormulaShape shape;
    shape.depth = 3;
    for (int i = 0; i < 200; ++i) {
        const Formula f = testsupport::random_formula(rng, shape);
        if (decide(SystemId::Jstar, f).theorem) CHECK(decide(SystemId::GLPstar, f).theorem);
        if (decide(SystemId::GLPstar, f).theorem) CHECK(decide(SystemId::GLPSstar, f).theorem);
    }
}

TEST_CASE("M and N routes agree") {
    testsupport::Rng rng(46);
    testsupport::FormulaShape shape;
    DecideOptions n;
    n.route = GlpStarRoute::NPlus;
    for (int i = 0; i < 100; ++i) {
        const Formula f = testsupport::random_formula(rng, shape);
        CHECK(decide(SystemId::GLPstar, f).theorem == decide(SystemId::GLPstar, f, n).theorem);
    }
}

TEST_CASE("unminimized countermodels are valid too") {
    testsupport::Rng rng(47);
    testsupport::FormulaShape shape;
    DecideOptions raw;
    raw.minimize = false;
    for (int i = 0; i < 60; ++i) {
        const Formula f = testsupport::random_formula(rng, shape);
        const Verdict a = decide(SystemId::Jstar, f, raw);
        if (a.theorem) continue;
        check_countermodel(a);
        const Verdict b = decide(SystemId::Jstar, f);
        CHECK(b.countermodel->model.size() <= a.countermodel->model.size());
    }
}
