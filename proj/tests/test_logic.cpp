#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rwb/logic.hpp"

using namespace rwb;

namespace {

Formula random_formula(std::mt19937_64& rng, std::vector<std::string> scope,
                       int depth = 3) {
    auto ref = [&]() -> TermRef {
        if (!scope.empty() && rng() % 2)
            return TermRef::var(scope[rng() % scope.size()]);
        return TermRef::cst("c" + std::to_string(rng() % 3));
    };
    std::uniform_int_distribution<int> d(0, depth > 0 ? 9 : 2);
    switch (d(rng)) {
        case 0: return f_in(ref(), ref());
        case 1: return f_eq(ref(), ref());
        case 2: return f_false();
        case 3:
            return f_and(random_formula(rng, scope, depth - 1),
                         random_formula(rng, scope, depth - 1));
        case 4:
            return f_or(random_formula(rng, scope, depth - 1),
                        random_formula(rng, scope, depth - 1));
        case 5:
            return f_imp(random_formula(rng, scope, depth - 1),
                         random_formula(rng, scope, depth - 1));
        case 6: return f_not(random_formula(rng, scope, depth - 1));
        case 7: {
            std::string v = "v" + std::to_string(rng() % 3);
            scope.push_back(v);
            return f_exists(v, random_formula(rng, scope, depth - 1));
        }
        case 8: {
            std::string v = "v" + std::to_string(rng() % 3);
            auto b = ref();
            scope.push_back(v);
            return f_bforall(v, b, random_formula(rng, scope, depth - 1));
        }
        default: {
            std::string v = "v" + std::to_string(rng() % 3);
            auto b = ref();
            scope.push_back(v);
            return f_bexists(v, b, random_formula(rng, scope, depth - 1));
        }
    }
}

}  // namespace

TEST_CASE("parsing basics") {
    Formula f = parse_formula("(forall x (in x a))");
    CHECK(f->tag == FormulaTag::Forall);
    CHECK(f->var == "x");
    CHECK(f->left->tag == FormulaTag::Membership);
    CHECK(f->left->lhs == TermRef::var("x"));
    CHECK(f->left->rhs == TermRef::var("a"));

    Formula g = parse_formula("(bforall x a (bexists y b (eq x y)))");
    CHECK(g->tag == FormulaTag::BoundedForall);
    CHECK(g->bound == TermRef::var("a"));
    CHECK(g->left->tag == FormulaTag::BoundedExists);

    Formula c = parse_formula("(in #empty #sempty)");
    CHECK(c->lhs == TermRef::cst("empty"));

    CHECK_THROWS_AS(parse_formula("(in y x"), ParseError);
    CHECK_THROWS_AS(parse_formula("(foo x)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(exists #c (in x y))"), ParseError);
}

TEST_CASE("is_bounded") {
    CHECK(is_bounded(parse_formula("(in x a)")));
    CHECK_FALSE(is_bounded(parse_formula("(forall x (in x a))")));
    CHECK(is_bounded(parse_formula("(bforall x a (bexists y b (eq x y)))")));
    CHECK_FALSE(
        is_bounded(parse_formula("(bforall x a (exists y (eq x y)))")));
    CHECK(is_bounded(parse_formula("false")));
}

TEST_CASE("substitute") {
    auto r = substitute(parse_formula("(in x c)"), "x", "empty");
    CHECK(r.applied);
    CHECK(print_formula(r.formula) == "(in #empty c)");

    r = substitute(parse_formula("(exists x (eq x y))"), "y", "w");
    CHECK(r.applied);
    CHECK(print_formula(r.formula) == "(exists x (eq x #w))");

    // bound occurrence: unchanged + flagged
    Formula f = parse_formula("(exists x (eq x x))");
    r = substitute(f, "x", "w");
    CHECK_FALSE(r.applied);
    CHECK(r.formula == f);
}

TEST_CASE("scoping") {
    Formula f = parse_formula("(forall x (in x a))");
    auto fv = free_formula_vars(f);
    REQUIRE(fv.size() == 1);
    CHECK(fv[0] == "a");
    CHECK_NOTHROW(require_scoped(f, {"a"}));
    CHECK_THROWS_AS(require_scoped(f, {}), ParseError);
    CHECK(formula_closed(parse_formula("(eq #a #b)")));
}

TEST_CASE("round trip and desugaring properties") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; i++) {
        Formula f = random_formula(rng, {});
        // print ∘ parse = identity on the canonical rendering
        std::string s = print_formula(f);
        CHECK(print_formula(parse_formula(s)) == s);
        // desugaring preserves free variables
        CHECK(free_formula_vars(desugar_bounded(f)) == free_formula_vars(f));
        // bounded status is invariant under desugaring of the subformulas
        // that contain no unbounded quantifier
        if (is_bounded(f)) {
            // desugared form is classified by the sugared AST's status:
            // structurally the desugared form has plain quantifiers, so
            // only the sugared classification is meaningful
            CHECK(is_bounded(parse_formula(s)));
        }
    }
}
