#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rwb/sexpr.hpp"

namespace rwb {

// First-order language of set theory: membership, equality, the
// intuitionistic connectives, quantifiers, and bounded-quantifier sugar.

// A term position is either a variable or a constant naming a universe
// element (written #name in the concrete syntax).
struct TermRef {
    bool is_const = false;
    std::string name;

    static TermRef var(std::string n) { return {false, std::move(n)}; }
    static TermRef cst(std::string n) { return {true, std::move(n)}; }
    bool operator==(const TermRef&) const = default;
};

enum class FormulaTag {
    Membership, Equality, Falsum,
    And, Or, Implies, Not,
    Exists, Forall, BoundedExists, BoundedForall,
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FormulaTag tag;
    TermRef lhs, rhs;          // Membership / Equality
    Formula left, right;       // connectives (Not uses left)
    std::string var;           // quantifiers
    TermRef bound;             // bounded quantifiers
};

Formula f_in(TermRef l, TermRef r);
Formula f_eq(TermRef l, TermRef r);
Formula f_false();
Formula f_and(Formula l, Formula r);
Formula f_or(Formula l, Formula r);
Formula f_imp(Formula l, Formula r);
Formula f_not(Formula b);
Formula f_exists(std::string v, Formula b);
Formula f_forall(std::string v, Formula b);
Formula f_bexists(std::string v, TermRef bound, Formula b);
Formula f_bforall(std::string v, TermRef bound, Formula b);

// Grammar: (in t u), (eq t u), false, (and f g), (or f g), (imp f g),
// (not f), (exists x f), (forall x f), (bexists x a f),
// (bforall x a f); constants as #name.
Formula parse_formula(const std::string& text);
Formula formula_of_sexpr(const Sexpr& e);
std::string print_formula(const Formula& f);

std::vector<std::string> free_formula_vars(const Formula& f);
bool formula_closed(const Formula& f);

// Throws ParseError naming the unbound variable when the formula has a
// free variable outside `allowed`.
void require_scoped(const Formula& f, const std::vector<std::string>& allowed);

// True iff every quantifier in the formula is a bounded one.
bool is_bounded(const Formula& f);

// Rewrites bounded quantifiers into their Exists/Forall definitions.
Formula desugar_bounded(const Formula& f);

struct SubstResult {
    Formula formula;
    bool applied;  // false when the variable was not free (flagged)
};

// Substitutes a constant for every free occurrence of var.  Constants
// cannot be captured, so the substitution is trivially capture-avoiding.
SubstResult substitute(const Formula& f, const std::string& var,
                       const std::string& const_name);

}  // namespace rwb
