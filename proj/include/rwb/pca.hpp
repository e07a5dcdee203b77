#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rwb/sexpr.hpp"

namespace rwb {

// The computation substrate: a term partial combinatory algebra over
// S, K, pairing, projections, numerals, successor and a zero test.
// Pairs are genuine values, distinct from numerals.

enum class TermTag {
    K, S, P, P0, P1, Succ, Ifz,
    Fix,   // recursion: (fix f) is a value that unfolds when observed
    Num,   // numeral literal
    App,
    Var,   // only inside abstraction bodies, never in closed values
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    TermTag tag;
    std::uint64_t num = 0;   // Num
    std::string var;         // Var
    Term fn, arg;            // App
};

Term mk_k();
Term mk_s();
Term mk_p();
Term mk_p0();
Term mk_p1();
Term mk_succ();
Term mk_ifz();
Term mk_num(std::uint64_t k);
Term mk_app(Term f, Term x);
Term mk_var(const std::string& name);

// (P a b), a pair value when a and b are values.
Term pair_val(Term a, Term b);

// S K K, the identity.
Term i_combinator();

bool term_eq(const Term& a, const Term& b);
std::size_t term_size(const Term& t);       // node count
bool is_closed(const Term& t);
bool is_value(const Term& t);

// Capture-free substitution of a closed term for a variable.
Term subst(const Term& body, const std::string& v, const Term& w);

void free_vars(const Term& t, std::vector<std::string>& out);

enum class OutcomeKind { Value, Undefined, Timeout };

struct ReductionOutcome {
    OutcomeKind kind;
    Term value;              // set when kind == Value
    std::uint64_t steps = 0; // applications performed

    bool ok() const { return kind == OutcomeKind::Value; }
};

constexpr std::uint64_t kDefaultBudget = 100000;

// Deterministic leftmost call-by-value reduction. One step is one
// application of a value to a value.
ReductionOutcome reduce(const Term& t, std::uint64_t budget = kDefaultBudget);

ReductionOutcome apply(const Term& f, const Term& x,
                       std::uint64_t budget = kDefaultBudget);
ReductionOutcome apply2(const Term& f, const Term& x, const Term& y,
                        std::uint64_t budget = kDefaultBudget);

ReductionOutcome proj0(const Term& t, std::uint64_t budget = kDefaultBudget);
ReductionOutcome proj1(const Term& t, std::uint64_t budget = kDefaultBudget);

// Bracket abstraction over S and K. Rejects bodies whose free variables
// are not contained in {v}.
Term abstract(const std::string& v, const Term& body);

// Bracket abstraction permitting other free variables in the body, for
// building nested abstractions.  abstract() is the closed-result form.
Term lam(const std::string& v, const Term& body);

// Call-by-value fixed point: fix(f) is a value; applying it to x
// contracts to (f (fix f)) x, and projecting or otherwise destructing
// it contracts the scrutinee to f (fix f).  Strict S/K terms cannot
// delay a self-application inside a value, hence the primitive.
Term fix(const Term& f);

// S-expression syntax: (app f x), K, S, (num 5), (pair a b), p0, p1,
// succ, ifz, (fix f), (lam x body).  lam and fix are desugared, so
// printing round-trips byte-exactly on normal forms only.
Term parse_term(const std::string& text);
Term term_of_sexpr(const Sexpr& e);
std::string print_term(const Term& t);

}  // namespace rwb
