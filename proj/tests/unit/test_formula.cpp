#include <doctest.h>

#include "glpstar/formula.hpp"
#include "glpstar/parser.hpp"
#include "support.hpp"

using namespace glpstar;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Formula var(const char* n, unsigned s) { return Formula::var(n, Sort(s)); }
Formula wvar(const char* n) { return Formula::var(n, Sort::omega()); }

// Adequacy written out rule by rule.
bool ref_adequate(const FormulaSet& d) {
    if (!d.contains(Formula::top())) return false;
    std::set<unsigned> levels;
    for (const auto& f : d)
        if (f.is(Kind::Dia)) levels.insert(f.modality());
    for (const auto& f : d) {
        for (std::size_t i = 0; i < f.arity(); ++i)
            if (!d.contains(i == 0 ? f.left() : f.right())) return false;
        if (!d.contains(f.is(Kind::Neg) ? f.child() : Formula::neg(f))) return false;
        if (f.is(Kind::Dia))
            for (const auto& g : d)
                if (g.is(Kind::Dia) && !d.contains(Formula::dia(g.modality(), f.child()))) return false;
        if (f.is(Kind::Var) && f.var_sort().is_finite())
            for (unsigned n : levels)
                if (n >= f.var_sort().value() && !d.contains(Formula::dia(n, f))) return false;
        if (f.is(Kind::Neg) && f.child().is(Kind::Var) && f.child().var_sort().is_finite())
            for (unsigned n : levels)
                if (n > f.child().var_sort().value() && !d.contains(Formula::dia(n, f))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sort successor saturates at omega") {
    CHECK(Sort(3).succ() == Sort(4));
    CHECK(Sort::omega().succ() == Sort::omega());
    CHECK(Sort(1000) < Sort::omega());
    CHECK(Sort(0) < Sort(1));
    CHECK(Sort::omega().to_string() == "w");
    CHECK(Sort(0).at_most(0));
    CHECK_FALSE(Sort(0).below(0));
    CHECK_FALSE(Sort::omega().at_most(1000));
}

TEST_CASE("desugar") {
    CHECK(P("[0]p:0") == Formula::neg(Formula::dia(0, Formula::neg(var("p", 0)))));
    CHECK(P("p:0") == var("p", 0));
    CHECK(P("p:0 -> q:1") == Formula::disj(Formula::neg(var("p", 0)), var("q", 1)));

    RawFormula raw = parse_raw_formula("[1](p -> <0>q)");
    const Formula once = desugar(raw);
    CHECK(desugar(RawFormula::lift(once)) == once);
}

TEST_CASE("sort_of") {
    CHECK(sort_of(P("<3>p:5")) == Sort(3));
    CHECK(sort_of(P("~p:2")) == Sort(3));
    CHECK(sort_of(P("p:w & q:1")) == Sort::omega());
    CHECK(sort_of(P("~p:w")) == Sort::omega());
    CHECK(sort_of(P("T")) == Sort(0));
    CHECK(sort_of(P("F | ~T")) == Sort(1));
    CHECK(sort_of(P("<0>~<0>p:7")) == Sort(0));
}

TEST_CASE("modified negation") {
    CHECK(modified_negation(P("~p:0")) == var("p", 0));
    CHECK(modified_negation(P("p:0")) == P("~p:0"));
    CHECK(modified_negation(P("<1>p:0")) == P("~<1>p:0"));
    CHECK(modified_negation(P("~~p:0")) == P("~p:0"));

    testsupport::Rng rng(11);
    testsupport::FormulaShape shape;
    for (int i = 0; i < 300; ++i) {
        const Formula f = testsupport::random_formula(rng, shape);
        const bool double_neg = f.is(Kind::Neg) && f.child().is(Kind::Neg);
        if (!double_neg) CHECK(modified_negation(modified_negation(f)) == f);
    }
}

TEST_CASE("subformulas") {
    CHECK(subformulas(P("<1>p:0")) == FormulaSet{P("<1>p:0"), var("p", 0)});
    CHECK(subformulas(P("p:0 & ~p:0")) == FormulaSet{P("p:0 & ~p:0"), P("~p:0"), var("p", 0)});
    CHECK(subformulas(P("T")) == FormulaSet{Formula::top()});
    CHECK(subformulas(P("(p & p) | (p & p)")).size() == 3);
}

TEST_CASE("diamond subformulas") {
    const auto occ = diamond_subformulas(P("<2>p:0 & <0>q:0"));
    REQUIRE(occ.size() == 2);
    CHECK(occ[0] == DiamondEntry{2, var("p", 0)});
    CHECK(occ[1] == DiamondEntry{0, var("q", 0)});
    const auto lvl = diamond_subformulas_by_level(P("<2>p:0 & <0>q:0"));
    CHECK(lvl[0] == DiamondEntry{0, var("q", 0)});
    CHECK(lvl[1] == DiamondEntry{2, var("p", 0)});

    CHECK(diamond_subformulas(P("p:0")).empty());
    const auto nested = diamond_subformulas(P("<1><0>p:0"));
    REQUIRE(nested.size() == 2);
    CHECK(nested[0] == DiamondEntry{1, P("<0>p:0")});
    CHECK(nested[1] == DiamondEntry{0, var("p", 0)});

    // repeated occurrences are listed once
    CHECK(diamond_subformulas(P("<0>p & ~<0>p")).size() == 1);
}

TEST_CASE("modal levels are read off top-level members") {
    CHECK(modal_levels(FormulaSet{P("<0>p"), P("<2>q"), P("r")}) == std::set<unsigned>{0, 2});
    CHECK(modal_levels(FormulaSet{}).empty());
    CHECK(modal_levels(FormulaSet{P("~<1>p")}).empty());
}

TEST_CASE("adequate closure examples") {
    const auto p = var("p", 0);
    const FormulaSet a = adequate_closure({P("<1>p:0")});
    const FormulaSet want{Formula::top(), Formula::neg(Formula::top()), p, Formula::neg(p), Formula::dia(1, p),
                          Formula::neg(Formula::dia(1, p)), Formula::dia(1, Formula::neg(p)),
                          Formula::neg(Formula::dia(1, Formula::neg(p)))};
    CHECK(a == want);
    CHECK(modal_levels(a) == std::set<unsigned>{1});

    CHECK(adequate_closure({p}) == FormulaSet{Formula::top(), Formula::neg(Formula::top()), p, Formula::neg(p)});
    CHECK(adequate_closure({Formula::top()}) == FormulaSet{Formula::top(), Formula::neg(Formula::top())});
}

TEST_CASE("adequate closure properties on random sets") {
    testsupport::Rng rng(7);
    testsupport::FormulaShape shape;
    shape.depth = 2;
    shape.variables = {{"p", Sort(0)}, {"q", Sort(1)}, {"r", Sort::omega()}};
    for (int i = 0; i < 150; ++i) {
        FormulaSet gamma;
        const int count = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int k = 0; k < count; ++k) gamma.insert(testsupport::random_formula(rng, shape));
        const FormulaSet d = adequate_closure(gamma);
        CHECK(d.includes(gamma));
        CHECK(ref_adequate(d));
        CHECK(is_adequate(d));
        CHECK(adequate_closure(d) == d);

        // levels of the closure are the modalities occurring in the input
        std::set<unsigned> occurring;
        for (const auto& g : gamma)
            for (unsigned n : modalities_in(g)) occurring.insert(n);
        CHECK(modal_levels(d) == occurring);

        // monotone
        FormulaSet bigger = gamma;
        bigger.insert(testsupport::random_formula(rng, shape));
        CHECK(adequate_closure(bigger).includes(d));
    }
}

TEST_CASE("is_adequate rejects incomplete sets") {
    CHECK_FALSE(is_adequate(FormulaSet{P("<1>p:0")}));
    FormulaSet d = adequate_closure({P("<1>p:0")});
    CHECK(is_adequate(d));
}

TEST_CASE("to_omega_sorted") {
    CHECK(to_omega_sorted(P("<0>p:2")) == P("<0>p:w"));
    CHECK(to_omega_sorted(P("T")) == P("T"));
    CHECK(to_omega_sorted(P("p:w")) == wvar("p"));
}

TEST_CASE("variables and sort conflicts") {
    const auto vars = variables_of(P("<1>q:1 & p:0 | q:1"));
    REQUIRE(vars.size() == 2);
    CHECK(vars[0] == Variable{"q", Sort(1)});
    CHECK(vars[1] == Variable{"p", Sort(0)});
    CHECK_THROWS_AS(check_well_sorted(Formula::conj(var("p", 1), var("p", 2))), SortConflict);
    CHECK_NOTHROW(check_well_sorted(P("p:1 & <0>p:1")));
}

TEST_CASE("structural identity and ordering") {
    const Formula a = P("<0>(p & q)"), b = P("<0>(p & q)");
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    CHECK(compare(a, b) == 0);
    CHECK(P("p:0") != P("p:1"));
    CHECK(P("<0>p") != P("<1>p"));
    CHECK((compare(P("p"), P("q")) < 0) != (compare(P("q"), P("p")) < 0));
    CHECK(Formula::conj_all({}) == Formula::top());
    CHECK(Formula::conj_all({P("p"), P("q"), P("r")}) == P("(p & q) & r"));
}
