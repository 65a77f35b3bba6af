#include <doctest.h>

#include "glpstar/kripke.hpp"
#include "glpstar/parser.hpp"
#include "support.hpp"

using namespace glpstar;

namespace {

Formula P(const char* s) { return parse_formula(s); }
KripkeModel M(const char* s) { return parse_model(s); }

}  // namespace

TEST_CASE("frame conditions") {
    const KripkeModel refl = M("worlds a\nrel 0: a a\n");
    const auto r1 = check_jstar_frame(refl.frame);
    CHECK(r1.has(Condition::Irreflexivity));
    CHECK(r1.violations.front().worlds == std::vector<std::string>{"a"});

    const KripkeModel mixed = M("worlds a b c\nrel 1: a b\nrel 0: a c\n");
    const auto r2 = check_jstar_frame(mixed.frame);
    CHECK(r2.has(Condition::ConditionII));
    CHECK_FALSE(r2.has(Condition::Irreflexivity));

    CHECK(check_jstar_frame(M("worlds a b\n").frame).empty());

    const KripkeModel nontrans = M("worlds a b c\nrel 0: a b\nrel 0: b c\n");
    CHECK(check_jstar_frame(nontrans.frame).has(Condition::Transitivity));

    // a R0 b R1 c without a R0 c; b and c share R0 successors (none)
    const KripkeModel iii = M("worlds a b c\nrel 0: a b\nrel 1: b c\n");
    const auto r3 = check_jstar_frame(iii.frame);
    CHECK(r3.has(Condition::ConditionIII));
    CHECK_FALSE(r3.has(Condition::ConditionII));
}

TEST_CASE("all violations are reported") {
    const KripkeModel m = M("worlds a b\nrel 0: a a\nrel 0: b b\n");
    CHECK(check_jstar_frame(m.frame).size() == 2);
}

TEST_CASE("strong persistence") {
    const auto r1 = check_strong_persistence(M("worlds a b\nrel 1: a b\nval p:1 = {b}\n"));
    CHECK(r1.has(Condition::PersistenceI));
    CHECK(r1.violations.front().variable == "p");

    const auto r2 = check_strong_persistence(M("worlds a b\nrel 1: a b\nval p:0 = {a}\n"));
    CHECK(r2.has(Condition::PersistenceII));
    CHECK_FALSE(r2.has(Condition::PersistenceI));

    CHECK(check_strong_persistence(M("worlds a b\nrel 1: a b\nval p:w = {b}\n")).empty());
    CHECK(check_strong_persistence(M("worlds a b\nrel 1: a b\nval p:w = {a}\n")).empty());
}

TEST_CASE("model checking") {
    const KripkeModel m = M("worlds a b\nrel 1: a b\nval p:w = {b}\n");
    CHECK(model_check(m, "a", P("<1>p")));
    CHECK_FALSE(model_check(m, "b", P("<1>p")));
    CHECK(model_check(m, "a", P("[1]p")));
    CHECK(model_check(m, "b", P("[1]F")));
    CHECK_FALSE(model_check(m, "a", P("<0>T")));
    CHECK_THROWS_AS(model_check(m, "zz", P("p")), UnknownWorld);

    CHECK(valid_in_model(m, P("T")));
    CHECK_FALSE(valid_in_model(M("worlds a b\nval p:w = {a}\n"), P("p")));
}

TEST_CASE("missing variables read as false with a warning") {
    const KripkeModel m = M("worlds a\n");
    Warnings w;
    CHECK_FALSE(model_check(m, World{0}, P("q:0"), &w));
    CHECK_FALSE(w.empty());
    const KripkeModel wrong_sort = M("worlds a\nval q:1 = {a}\n");
    Warnings w2;
    CHECK_FALSE(model_check(wrong_sort, World{0}, P("q:0"), &w2));
    CHECK_FALSE(w2.empty());
}

TEST_CASE("model checking agrees with a direct evaluator") {
    testsupport::Rng rng(21);
    testsupport::ModelShape ms;
    testsupport::FormulaShape fs;
    fs.variables = ms.variables;
    fs.depth = 4;
    for (int i = 0; i < 200; ++i) {
        const KripkeModel m = testsupport::random_persistent_model(rng, ms);
        const Formula f = testsupport::random_formula(rng, fs);
        const WorldSet ext = extension(m, f);
        const WorldSet neg = extension(m, modified_negation(f));
        for (World x = 0; x < m.size(); ++x) {
            CHECK(ext[x] == testsupport::ref_holds(m, x, f));
            CHECK(neg[x] == !ext[x]);
        }
    }
}

TEST_CASE("validators agree with direct checks") {
    testsupport::Rng rng(22);
    testsupport::ModelShape ms;
    for (int i = 0; i < 300; ++i) {
        KripkeModel m = testsupport::random_persistent_model(rng, ms);
        CHECK(testsupport::ref_is_jstar_frame(m.frame));
        CHECK(check_jstar_frame(m.frame).empty());
        CHECK(testsupport::ref_is_persistent(m));
        CHECK(check_strong_persistence(m).empty());
        const KripkeModel bad = testsupport::perturb(rng, m);
        CHECK(check_strong_persistence(bad).empty() == testsupport::ref_is_persistent(bad));

        // random extra edge
        if (m.size() >= 2) {
            KripkeModel g = m;
            const World x = std::uniform_int_distribution<World>(0, m.size() - 1)(rng);
            const World y = std::uniform_int_distribution<World>(0, m.size() - 1)(rng);
            g.frame.add_edge(std::uniform_int_distribution<unsigned>(0, 2)(rng), x, y);
            CHECK(check_jstar_frame(g.frame).empty() == testsupport::ref_is_jstar_frame(g.frame));
        }
    }
}

TEST_CASE("sigma completeness is valid exactly in persistent models") {
    // <n>phi -> phi for sort(phi) <= n, over all generated phi and n
    testsupport::Rng rng(23);
    testsupport::ModelShape ms;
    ms.max_worlds = 4;
    testsupport::FormulaShape fs;
    fs.variables = ms.variables;
    fs.depth = 2;
    std::vector<Formula> pool;
    for (const auto& [name, sort] : ms.variables) {
        pool.push_back(Formula::var(name, sort));
        pool.push_back(Formula::neg(Formula::var(name, sort)));
    }
    for (int i = 0; i < 40; ++i) pool.push_back(testsupport::random_formula(rng, fs));

    int persistent = 0, broken = 0;
    for (int i = 0; i < 200; ++i) {
        KripkeModel m = testsupport::random_persistent_model(rng, ms);
        if (i % 2) m = testsupport::perturb(rng, m);
        bool all_valid = true;
        for (const auto& phi : pool)
            for (unsigned n : {0u, 1u, 2u})
                if (sort_of(phi).at_most(n) &&
                    !valid_in_model(m, Formula::implies(Formula::dia(n, phi), phi)))
                    all_valid = false;
        const bool ok = check_strong_persistence(m).empty();
        CHECK(all_valid == ok);
        (ok ? persistent : broken)++;
    }
    CHECK(persistent > 0);
    CHECK(broken > 0);
}

TEST_CASE("roots") {
    CHECK(find_roots(M("worlds a\n")).count() == 1);
    const KripkeModel ab = M("worlds a b\nrel 0: a b\n");
    const WorldSet r = find_roots(ab);
    CHECK(r[ab.world("a")]);
    CHECK_FALSE(r[ab.world("b")]);
    CHECK(find_roots(M("worlds a b\n")).none());

    // a R1 b R0 c: c is two steps away from a along different relations
    const KripkeModel chain = M("worlds a b c\nrel 1: a b\nrel 0: b c\n");
    CHECK(find_roots(chain).none());
    CHECK(find_roots(chain, true)[chain.world("a")]);
}

TEST_CASE("adjoin root") {
    KripkeModel m = M("worlds 1\nval p:w = {1}\nroot 1\n");
    const KripkeModel a = adjoin_root(m);
    CHECK(a.size() == 2);
    const World zero = a.world("0");
    CHECK(a.root == zero);
    CHECK(a.frame.has_edge(0, zero, a.world("1")));
    CHECK(a.holds_var("p", zero));
    CHECK(a.holds_var("p", a.world("1")));

    const KripkeModel two = adjoin_root(M("worlds 1 2\nrel 1: 1 2\nroot 1\n"));
    CHECK(two.frame.has_edge(0, two.world("0"), two.world("1")));
    CHECK(two.frame.has_edge(0, two.world("0"), two.world("2")));
    CHECK(two.frame.has_edge(1, two.world("1"), two.world("2")));

    CHECK_THROWS_AS(adjoin_root(M("worlds a\n")), std::invalid_argument);
    // the name 0 is taken
    CHECK(adjoin_root(M("worlds 0\nroot 0\n")).frame.find("0").has_value());
    CHECK(adjoin_root(M("worlds 0\nroot 0\n")).size() == 2);
}

TEST_CASE("adjoin root preserves validity and old truth") {
    testsupport::Rng rng(24);
    testsupport::ModelShape ms;
    testsupport::FormulaShape fs;
    fs.variables = ms.variables;
    int tried = 0;
    for (int i = 0; i < 400 && tried < 100; ++i) {
        KripkeModel m = testsupport::random_persistent_model(rng, ms);
        const WorldSet roots = find_roots(m);
        if (roots.none()) continue;
        ++tried;
        m.root = roots.find_first();
        const KripkeModel a = adjoin_root(m);
        CHECK(check_jstar_frame(a.frame).empty());
        CHECK(check_strong_persistence(a).empty());
        for (int k = 0; k < 5; ++k) {
            const Formula f = testsupport::random_formula(rng, fs);
            for (World x = 0; x < m.size(); ++x)
                CHECK(model_check(m, x, f) == model_check(a, a.world(m.frame.name(x)), f));
        }
    }
    CHECK(tried > 20);
}
