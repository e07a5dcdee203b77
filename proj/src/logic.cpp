#include "rwb/logic.hpp"

#include <algorithm>

namespace rwb {
namespace {

Formula node(FormulaNode n) {
    return std::make_shared<const FormulaNode>(std::move(n));
}

TermRef ref_of_atom(const Sexpr& e) {
    if (!e.is_atom || e.atom.empty())
        throw ParseError("expected a variable or #constant", e.line, e.col);
    if (e.atom[0] == '#') {
        if (e.atom.size() == 1)
            throw ParseError("empty constant name", e.line, e.col);
        return TermRef::cst(e.atom.substr(1));
    }
    return TermRef::var(e.atom);
}

std::string ref_str(const TermRef& r) {
    return r.is_const ? "#" + r.name : r.name;
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
    auto add = [&](const TermRef& r) {
        if (r.is_const) return;
        if (std::find(bound.begin(), bound.end(), r.name) != bound.end())
            return;
        if (std::find(out.begin(), out.end(), r.name) == out.end())
            out.push_back(r.name);
    };
    switch (f->tag) {
        case FormulaTag::Membership:
        case FormulaTag::Equality:
            add(f->lhs);
            add(f->rhs);
            break;
        case FormulaTag::Falsum:
            break;
        case FormulaTag::And:
        case FormulaTag::Or:
        case FormulaTag::Implies:
            collect_free(f->left, bound, out);
            collect_free(f->right, bound, out);
            break;
        case FormulaTag::Not:
            collect_free(f->left, bound, out);
            break;
        case FormulaTag::BoundedExists:
        case FormulaTag::BoundedForall:
            add(f->bound);
            [[fallthrough]];
        case FormulaTag::Exists:
        case FormulaTag::Forall:
            bound.push_back(f->var);
            collect_free(f->left, bound, out);
            bound.pop_back();
            break;
    }
}

}  // namespace

Formula f_in(TermRef l, TermRef r) {
    return node({FormulaTag::Membership, std::move(l), std::move(r)});
}
Formula f_eq(TermRef l, TermRef r) {
    return node({FormulaTag::Equality, std::move(l), std::move(r)});
}
Formula f_false() { return node({FormulaTag::Falsum}); }
Formula f_and(Formula l, Formula r) {
    FormulaNode n{FormulaTag::And};
    n.left = std::move(l);
    n.right = std::move(r);
    return node(std::move(n));
}
Formula f_or(Formula l, Formula r) {
    FormulaNode n{FormulaTag::Or};
    n.left = std::move(l);
    n.right = std::move(r);
    return node(std::move(n));
}
Formula f_imp(Formula l, Formula r) {
    FormulaNode n{FormulaTag::Implies};
    n.left = std::move(l);
    n.right = std::move(r);
    return node(std::move(n));
}
Formula f_not(Formula b) {
    FormulaNode n{FormulaTag::Not};
    n.left = std::move(b);
    return node(std::move(n));
}
Formula f_exists(std::string v, Formula b) {
    FormulaNode n{FormulaTag::Exists};
    n.var = std::move(v);
    n.left = std::move(b);
    return node(std::move(n));
}
Formula f_forall(std::string v, Formula b) {
    FormulaNode n{FormulaTag::Forall};
    n.var = std::move(v);
    n.left = std::move(b);
    return node(std::move(n));
}
Formula f_bexists(std::string v, TermRef bound, Formula b) {
    FormulaNode n{FormulaTag::BoundedExists};
    n.var = std::move(v);
    n.bound = std::move(bound);
    n.left = std::move(b);
    return node(std::move(n));
}
Formula f_bforall(std::string v, TermRef bound, Formula b) {
    FormulaNode n{FormulaTag::BoundedForall};
    n.var = std::move(v);
    n.bound = std::move(bound);
    n.left = std::move(b);
    return node(std::move(n));
}

Formula formula_of_sexpr(const Sexpr& e) {
    if (e.is_atom) {
        if (e.atom == "false") return f_false();
        throw ParseError("unknown formula atom '" + e.atom + "'", e.line,
                         e.col);
    }
    if (e.items.empty() || !e.items[0].is_atom)
        throw ParseError("expected formula head symbol", e.line, e.col);
    const std::string& h = e.items[0].atom;
    auto want = [&](size_t n) {
        if (e.items.size() != n + 1)
            throw ParseError("'" + h + "' takes " + std::to_string(n) +
                             " arguments", e.line, e.col);
    };
    if (h == "in" || h == "eq") {
        want(2);
        TermRef l = ref_of_atom(e.items[1]);
        TermRef r = ref_of_atom(e.items[2]);
        return h == "in" ? f_in(l, r) : f_eq(l, r);
    }
    if (h == "and" || h == "or" || h == "imp") {
        want(2);
        Formula l = formula_of_sexpr(e.items[1]);
        Formula r = formula_of_sexpr(e.items[2]);
        if (h == "and") return f_and(l, r);
        if (h == "or") return f_or(l, r);
        return f_imp(l, r);
    }
    if (h == "not") {
        want(1);
        return f_not(formula_of_sexpr(e.items[1]));
    }
    if (h == "exists" || h == "forall") {
        want(2);
        const Sexpr& v = e.items[1];
        if (!v.is_atom || v.atom[0] == '#')
            throw ParseError("quantifier expects a variable name", v.line,
                             v.col);
        Formula b = formula_of_sexpr(e.items[2]);
        return h == "exists" ? f_exists(v.atom, b) : f_forall(v.atom, b);
    }
    if (h == "bexists" || h == "bforall") {
        want(3);
        const Sexpr& v = e.items[1];
        if (!v.is_atom || v.atom[0] == '#')
            throw ParseError("quantifier expects a variable name", v.line,
                             v.col);
        TermRef bound = ref_of_atom(e.items[2]);
        Formula b = formula_of_sexpr(e.items[3]);
        return h == "bexists" ? f_bexists(v.atom, bound, b)
                              : f_bforall(v.atom, bound, b);
    }
    throw ParseError("unknown formula form '" + h + "'", e.line, e.col);
}

Formula parse_formula(const std::string& text) {
    return formula_of_sexpr(parse_sexpr(text));
}

std::string print_formula(const Formula& f) {
    switch (f->tag) {
        case FormulaTag::Membership:
            return "(in " + ref_str(f->lhs) + " " + ref_str(f->rhs) + ")";
        case FormulaTag::Equality:
            return "(eq " + ref_str(f->lhs) + " " + ref_str(f->rhs) + ")";
        case FormulaTag::Falsum: return "false";
        case FormulaTag::And:
            return "(and " + print_formula(f->left) + " " +
                   print_formula(f->right) + ")";
        case FormulaTag::Or:
            return "(or " + print_formula(f->left) + " " +
                   print_formula(f->right) + ")";
        case FormulaTag::Implies:
            return "(imp " + print_formula(f->left) + " " +
                   print_formula(f->right) + ")";
        case FormulaTag::Not:
            return "(not " + print_formula(f->left) + ")";
        case FormulaTag::Exists:
            return "(exists " + f->var + " " + print_formula(f->left) + ")";
        case FormulaTag::Forall:
            return "(forall " + f->var + " " + print_formula(f->left) + ")";
        case FormulaTag::BoundedExists:
            return "(bexists " + f->var + " " + ref_str(f->bound) + " " +
                   print_formula(f->left) + ")";
        case FormulaTag::BoundedForall:
            return "(bforall " + f->var + " " + ref_str(f->bound) + " " +
                   print_formula(f->left) + ")";
    }
    return "?";
}

std::vector<std::string> free_formula_vars(const Formula& f) {
    std::vector<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

bool formula_closed(const Formula& f) { return free_formula_vars(f).empty(); }

void require_scoped(const Formula& f,
                    const std::vector<std::string>& allowed) {
    for (const auto& v : free_formula_vars(f))
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
            throw ParseError("unbound variable '" + v + "'", 0, 0);
}

bool is_bounded(const Formula& f) {
    switch (f->tag) {
        case FormulaTag::Membership:
        case FormulaTag::Equality:
        case FormulaTag::Falsum:
            return true;
        case FormulaTag::And:
        case FormulaTag::Or:
        case FormulaTag::Implies:
            return is_bounded(f->left) && is_bounded(f->right);
        case FormulaTag::Not:
            return is_bounded(f->left);
        case FormulaTag::Exists:
        case FormulaTag::Forall:
            return false;
        case FormulaTag::BoundedExists:
        case FormulaTag::BoundedForall:
            return is_bounded(f->left);
    }
    return false;
}

Formula desugar_bounded(const Formula& f) {
    switch (f->tag) {
        case FormulaTag::Membership:
        case FormulaTag::Equality:
        case FormulaTag::Falsum:
            return f;
        case FormulaTag::And:
            return f_and(desugar_bounded(f->left), desugar_bounded(f->right));
        case FormulaTag::Or:
            return f_or(desugar_bounded(f->left), desugar_bounded(f->right));
        case FormulaTag::Implies:
            return f_imp(desugar_bounded(f->left), desugar_bounded(f->right));
        case FormulaTag::Not:
            return f_not(desugar_bounded(f->left));
        case FormulaTag::Exists:
            return f_exists(f->var, desugar_bounded(f->left));
        case FormulaTag::Forall:
            return f_forall(f->var, desugar_bounded(f->left));
        case FormulaTag::BoundedExists:
            return f_exists(f->var,
                            f_and(f_in(TermRef::var(f->var), f->bound),
                                  desugar_bounded(f->left)));
        case FormulaTag::BoundedForall:
            return f_forall(f->var,
                            f_imp(f_in(TermRef::var(f->var), f->bound),
                                  desugar_bounded(f->left)));
    }
    return f;
}

SubstResult substitute(const Formula& f, const std::string& var,
                       const std::string& const_name) {
    TermRef c = TermRef::cst(const_name);
    auto rep = [&](const TermRef& r) {
        return (!r.is_const && r.name == var) ? c : r;
    };
    bool applied = false;
    // recursion stops under a binder that shadows var
    std::function<Formula(const Formula&)> go =
        [&](const Formula& g) -> Formula {
        switch (g->tag) {
            case FormulaTag::Membership:
            case FormulaTag::Equality: {
                TermRef l = rep(g->lhs), r = rep(g->rhs);
                if (!(l == g->lhs) || !(r == g->rhs)) {
                    applied = true;
                    return g->tag == FormulaTag::Membership ? f_in(l, r)
                                                            : f_eq(l, r);
                }
                return g;
            }
            case FormulaTag::Falsum:
                return g;
            case FormulaTag::And:
                return f_and(go(g->left), go(g->right));
            case FormulaTag::Or:
                return f_or(go(g->left), go(g->right));
            case FormulaTag::Implies:
                return f_imp(go(g->left), go(g->right));
            case FormulaTag::Not:
                return f_not(go(g->left));
            case FormulaTag::Exists:
            case FormulaTag::Forall:
                if (g->var == var) return g;
                return g->tag == FormulaTag::Exists
                           ? f_exists(g->var, go(g->left))
                           : f_forall(g->var, go(g->left));
            case FormulaTag::BoundedExists:
            case FormulaTag::BoundedForall: {
                TermRef b = rep(g->bound);
                if (!(b == g->bound)) applied = true;
                Formula body = g->var == var ? g->left : go(g->left);
                return g->tag == FormulaTag::BoundedExists
                           ? f_bexists(g->var, b, body)
                           : f_bforall(g->var, b, body);
            }
        }
        return g;
    };
    Formula out = go(f);
    return {applied ? out : f, applied};
}

}  // namespace rwb
