#include "rwb/pca.hpp"

#include <algorithm>
#include <stdexcept>

namespace rwb {
namespace {

Term leaf(TermTag tag) {
    auto n = std::make_shared<TermNode>();
    n->tag = tag;
    return n;
}

const Term kK = leaf(TermTag::K);
const Term kS = leaf(TermTag::S);
const Term kP = leaf(TermTag::P);
const Term kP0 = leaf(TermTag::P0);
const Term kP1 = leaf(TermTag::P1);
const Term kSucc = leaf(TermTag::Succ);
const Term kIfz = leaf(TermTag::Ifz);
const Term kFix = leaf(TermTag::Fix);

int arity(TermTag t) {
    switch (t) {
        case TermTag::K: return 2;
        case TermTag::S: return 3;
        case TermTag::P: return 2;
        case TermTag::P0: return 1;
        case TermTag::P1: return 1;
        case TermTag::Succ: return 1;
        case TermTag::Ifz: return 3;
        default: return 0;
    }
}

// Decomposes an application spine: head constant plus argument list.
void spine(const Term& t, Term& head, std::vector<Term>& args) {
    args.clear();
    Term cur = t;
    while (cur->tag == TermTag::App) {
        args.push_back(cur->arg);
        cur = cur->fn;
    }
    std::reverse(args.begin(), args.end());
    head = cur;
}

bool contains_var(const Term& t, const std::string& v) {
    switch (t->tag) {
        case TermTag::Var: return t->var == v;
        case TermTag::App:
            return contains_var(t->fn, v) || contains_var(t->arg, v);
        default: return false;
    }
}

}  // namespace

Term mk_k() { return kK; }
Term mk_s() { return kS; }
Term mk_p() { return kP; }
Term mk_p0() { return kP0; }
Term mk_p1() { return kP1; }
Term mk_succ() { return kSucc; }
Term mk_ifz() { return kIfz; }

Term mk_num(std::uint64_t k) {
    auto n = std::make_shared<TermNode>();
    n->tag = TermTag::Num;
    n->num = k;
    return n;
}

Term mk_app(Term f, Term x) {
    auto n = std::make_shared<TermNode>();
    n->tag = TermTag::App;
    n->fn = std::move(f);
    n->arg = std::move(x);
    return n;
}

Term mk_var(const std::string& name) {
    auto n = std::make_shared<TermNode>();
    n->tag = TermTag::Var;
    n->var = name;
    return n;
}

Term pair_val(Term a, Term b) {
    return mk_app(mk_app(kP, std::move(a)), std::move(b));
}

Term i_combinator() { return mk_app(mk_app(kS, kK), kK); }

bool term_eq(const Term& a, const Term& b) {
    if (a == b) return true;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
        case TermTag::Num: return a->num == b->num;
        case TermTag::Var: return a->var == b->var;
        case TermTag::App:
            return term_eq(a->fn, b->fn) && term_eq(a->arg, b->arg);
        default: return true;
    }
}

std::size_t term_size(const Term& t) {
    if (t->tag == TermTag::App)
        return 1 + term_size(t->fn) + term_size(t->arg);
    return 1;
}

bool is_closed(const Term& t) {
    switch (t->tag) {
        case TermTag::Var: return false;
        case TermTag::App: return is_closed(t->fn) && is_closed(t->arg);
        default: return true;
    }
}

bool is_value(const Term& t) {
    if (t->tag == TermTag::Var) return false;
    if (t->tag != TermTag::App) return true;
    Term head;
    std::vector<Term> args;
    spine(t, head, args);
    if (head->tag == TermTag::App || head->tag == TermTag::Num ||
        head->tag == TermTag::Var)
        return false;
    for (const auto& a : args)
        if (!is_value(a)) return false;
    int ar = arity(head->tag);
    if (head->tag == TermTag::P) return args.size() <= 2;
    if (head->tag == TermTag::Fix) return args.size() <= 1;
    return (int)args.size() < ar;
}

Term subst(const Term& body, const std::string& v, const Term& w) {
    switch (body->tag) {
        case TermTag::Var: return body->var == v ? w : body;
        case TermTag::App:
            return mk_app(subst(body->fn, v, w), subst(body->arg, v, w));
        default: return body;
    }
}

void free_vars(const Term& t, std::vector<std::string>& out) {
    switch (t->tag) {
        case TermTag::Var:
            if (std::find(out.begin(), out.end(), t->var) == out.end())
                out.push_back(t->var);
            break;
        case TermTag::App:
            free_vars(t->fn, out);
            free_vars(t->arg, out);
            break;
        default: break;
    }
}

namespace {

// One continuation frame: either an argument still to evaluate, or an
// already-evaluated function waiting for its argument.
struct Frame {
    bool is_pending_arg;
    Term t;
};

struct ApplyResult {
    enum { Val, Redex, Stuck } kind;
    Term t;
};

// (fix g) thunks unfold to g (fix g) when a destructor looks at them.
bool is_fix_thunk(const Term& t, Term& g) {
    if (t->tag == TermTag::App && t->fn->tag == TermTag::Fix) {
        g = t->arg;
        return true;
    }
    return false;
}

// Combines two values. Counts as one step at the call site.
ApplyResult apply_values(const Term& f, const Term& x) {
    Term head;
    std::vector<Term> args;
    spine(f, head, args);
    switch (head->tag) {
        case TermTag::Num:
        case TermTag::Var:
            return {ApplyResult::Stuck, nullptr};
        case TermTag::K:
            if (args.empty()) return {ApplyResult::Val, mk_app(f, x)};
            return {ApplyResult::Val, args[0]};
        case TermTag::S:
            if (args.size() < 2) return {ApplyResult::Val, mk_app(f, x)};
            return {ApplyResult::Redex,
                    mk_app(mk_app(args[0], x), mk_app(args[1], x))};
        case TermTag::P:
            if (args.size() < 2) return {ApplyResult::Val, mk_app(f, x)};
            return {ApplyResult::Stuck, nullptr};  // pair values are inert
        case TermTag::Fix:
            if (args.empty()) return {ApplyResult::Val, mk_app(f, x)};
            // (fix g) x  ->  (g (fix g)) x
            return {ApplyResult::Redex, mk_app(mk_app(args[0], f), x)};
        case TermTag::P0:
        case TermTag::P1: {
            Term g;
            if (is_fix_thunk(x, g))
                return {ApplyResult::Redex, mk_app(head, mk_app(g, x))};
            Term xh;
            std::vector<Term> xargs;
            spine(x, xh, xargs);
            if (xh->tag == TermTag::P && xargs.size() == 2)
                return {ApplyResult::Val,
                        xargs[head->tag == TermTag::P0 ? 0 : 1]};
            return {ApplyResult::Stuck, nullptr};
        }
        case TermTag::Succ: {
            Term g;
            if (is_fix_thunk(x, g))
                return {ApplyResult::Redex, mk_app(head, mk_app(g, x))};
            if (x->tag == TermTag::Num)
                return {ApplyResult::Val, mk_num(x->num + 1)};
            return {ApplyResult::Stuck, nullptr};
        }
        case TermTag::Ifz: {
            if (args.size() < 2) return {ApplyResult::Val, mk_app(f, x)};
            Term g;
            if (is_fix_thunk(args[0], g))
                return {ApplyResult::Redex,
                        mk_app(mk_app(mk_app(head, mk_app(g, args[0])),
                                      args[1]),
                               x)};
            if (args[0]->tag != TermTag::Num)
                return {ApplyResult::Stuck, nullptr};
            return {ApplyResult::Val, args[0]->num == 0 ? args[1] : x};
        }
        default:
            return {ApplyResult::Stuck, nullptr};
    }
}

}  // namespace

ReductionOutcome reduce(const Term& t, std::uint64_t budget) {
    if (!is_closed(t))
        throw std::invalid_argument("reduce: term is not closed");
    std::uint64_t steps = 0;
    std::vector<Frame> ks;
    Term cur = t;    // expression under evaluation, or null
    Term val;        // delivered value when cur is null

    while (true) {
        if (cur) {
            if (cur->tag == TermTag::App) {
                ks.push_back({true, cur->arg});
                cur = cur->fn;
                continue;
            }
            val = cur;
            cur = nullptr;
        }
        // val is a value; feed the continuation
        if (ks.empty()) return {OutcomeKind::Value, val, steps};
        Frame top = ks.back();
        ks.pop_back();
        if (top.is_pending_arg) {
            ks.push_back({false, val});
            cur = top.t;
            continue;
        }
        if (++steps > budget) return {OutcomeKind::Timeout, nullptr, steps};
        ApplyResult r = apply_values(top.t, val);
        switch (r.kind) {
            case ApplyResult::Val: val = r.t; break;
            case ApplyResult::Redex: cur = r.t; break;
            case ApplyResult::Stuck:
                return {OutcomeKind::Undefined, nullptr, steps};
        }
    }
}

ReductionOutcome apply(const Term& f, const Term& x, std::uint64_t budget) {
    return reduce(mk_app(f, x), budget);
}

ReductionOutcome apply2(const Term& f, const Term& x, const Term& y,
                        std::uint64_t budget) {
    return reduce(mk_app(mk_app(f, x), y), budget);
}

ReductionOutcome proj0(const Term& t, std::uint64_t budget) {
    return apply(kP0, t, budget);
}

ReductionOutcome proj1(const Term& t, std::uint64_t budget) {
    return apply(kP1, t, budget);
}

Term lam(const std::string& v, const Term& body) {
    if (body->tag == TermTag::Var && body->var == v) return i_combinator();
    if (!contains_var(body, v)) return mk_app(kK, body);
    // body is an application (the only compound form)
    const Term& f = body->fn;
    const Term& x = body->arg;
    // eta: λv. f v = f when f is a v-free value
    if (x->tag == TermTag::Var && x->var == v && !contains_var(f, v) &&
        is_value(f))
        return f;
    return mk_app(mk_app(kS, lam(v, f)), lam(v, x));
}

Term abstract(const std::string& v, const Term& body) {
    std::vector<std::string> fv;
    free_vars(body, fv);
    for (const auto& name : fv)
        if (name != v)
            throw std::invalid_argument("abstract: free variable '" + name +
                                        "' other than '" + v + "'");
    return lam(v, body);
}

Term fix(const Term& f) { return mk_app(kFix, f); }

Term term_of_sexpr(const Sexpr& e) {
    if (e.is_atom) {
        const std::string& a = e.atom;
        if (a == "K") return kK;
        if (a == "S") return kS;
        if (a == "p") return kP;
        if (a == "p0") return kP0;
        if (a == "p1") return kP1;
        if (a == "succ") return kSucc;
        if (a == "ifz") return kIfz;
        if (a == "fix") return kFix;
        return mk_var(a);
    }
    if (e.items.empty())
        throw ParseError("empty term", e.line, e.col);
    const Sexpr& h = e.items[0];
    if (!h.is_atom)
        throw ParseError("expected term head symbol", h.line, h.col);
    auto want = [&](size_t n, const char* form) {
        if (e.items.size() != n + 1)
            throw ParseError(std::string(form) + " takes " +
                             std::to_string(n) + " arguments", e.line, e.col);
    };
    if (h.atom == "num") {
        want(1, "num");
        const Sexpr& k = e.items[1];
        if (!k.is_atom || k.atom.empty() ||
            k.atom.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("num expects a natural number", k.line, k.col);
        return mk_num(std::stoull(k.atom));
    }
    if (h.atom == "app") {
        want(2, "app");
        return mk_app(term_of_sexpr(e.items[1]), term_of_sexpr(e.items[2]));
    }
    if (h.atom == "pair") {
        want(2, "pair");
        return pair_val(term_of_sexpr(e.items[1]), term_of_sexpr(e.items[2]));
    }
    if (h.atom == "fix") {
        want(1, "fix");
        return fix(term_of_sexpr(e.items[1]));
    }
    if (h.atom == "lam") {
        want(2, "lam");
        const Sexpr& v = e.items[1];
        if (!v.is_atom)
            throw ParseError("lam expects a variable name", v.line, v.col);
        return lam(v.atom, term_of_sexpr(e.items[2]));
    }
    throw ParseError("unknown term form '" + h.atom + "'", h.line, h.col);
}

Term parse_term(const std::string& text) {
    return term_of_sexpr(parse_sexpr(text));
}

std::string print_term(const Term& t) {
    switch (t->tag) {
        case TermTag::K: return "K";
        case TermTag::S: return "S";
        case TermTag::P: return "p";
        case TermTag::P0: return "p0";
        case TermTag::P1: return "p1";
        case TermTag::Succ: return "succ";
        case TermTag::Ifz: return "ifz";
        case TermTag::Fix: return "fix";
        case TermTag::Num: return "(num " + std::to_string(t->num) + ")";
        case TermTag::Var: return t->var;
        case TermTag::App:
            if (t->fn->tag == TermTag::Fix)
                return "(fix " + print_term(t->arg) + ")";
            if (t->fn->tag == TermTag::App &&
                t->fn->fn->tag == TermTag::P)
                return "(pair " + print_term(t->fn->arg) + " " +
                       print_term(t->arg) + ")";
            return "(app " + print_term(t->fn) + " " + print_term(t->arg) +
                   ")";
    }
    return "?";
}

}  // namespace rwb
