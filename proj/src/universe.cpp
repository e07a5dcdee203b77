#include "rwb/universe.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rwb {
namespace {

std::string edges_repr(const std::vector<TreeEdge>& edges) {
    std::string s = "(t";
    for (const auto& e : edges) {
        s += " (" + std::to_string(e.label) + " " + e.child->repr + ")";
    }
    s += ")";
    return s;
}

const char* kind_tag(ModelKind k) {
    return k == ModelKind::V ? "vtree" : "utree";
}

}  // namespace

TreePtr mk_tree(std::vector<TreeEdge> edges) {
    std::sort(edges.begin(), edges.end(),
              [](const TreeEdge& a, const TreeEdge& b) {
                  if (a.label != b.label) return a.label < b.label;
                  return a.child->repr < b.child->repr;
              });
    auto t = std::make_shared<Tree>();
    t->edges = std::move(edges);
    t->repr = edges_repr(t->edges);
    return t;
}

TreePtr empty_tree() {
    static const TreePtr e = mk_tree({});
    return e;
}

bool tree_eq(const TreePtr& a, const TreePtr& b) {
    return a == b || a->repr == b->repr;
}

std::uint64_t tree_depth(const TreePtr& t) {
    std::uint64_t d = 0;
    for (const auto& e : t->edges)
        d = std::max(d, 1 + tree_depth(e.child));
    return d;
}

bool distinct_labels(const TreePtr& t) {
    for (std::size_t i = 1; i < t->edges.size(); i++)
        if (t->edges[i].label == t->edges[i - 1].label) return false;
    for (const auto& e : t->edges)
        if (!distinct_labels(e.child)) return false;
    return true;
}

TreePtr tree_of_sexpr(const Sexpr& e, ModelKind kind) {
    if (e.is_atom || e.items.empty() || !e.items[0].is_atom ||
        e.items[0].atom != kind_tag(kind))
        throw ParseError(std::string("expected (") + kind_tag(kind) + " ...)",
                         e.line, e.col);
    std::vector<TreeEdge> edges;
    for (std::size_t i = 1; i < e.items.size(); i++) {
        const Sexpr& ed = e.items[i];
        if (ed.is_atom || ed.items.size() != 2 || !ed.items[0].is_atom)
            throw ParseError("expected (label subtree) edge", ed.line, ed.col);
        const std::string& l = ed.items[0].atom;
        if (l.empty() || l.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("edge label must be a natural number",
                             ed.items[0].line, ed.items[0].col);
        edges.push_back({std::stoull(l), tree_of_sexpr(ed.items[1], kind)});
    }
    TreePtr t = mk_tree(std::move(edges));
    if (kind == ModelKind::U) {
        for (std::size_t i = 1; i < t->edges.size(); i++)
            if (t->edges[i].label == t->edges[i - 1].label)
                throw ParseError("duplicate edge label " +
                                 std::to_string(t->edges[i].label) +
                                 " in utree", e.line, e.col);
    }
    return t;
}

TreePtr parse_tree(const std::string& text, ModelKind kind) {
    return tree_of_sexpr(parse_sexpr(text), kind);
}

std::string print_tree(const TreePtr& t, ModelKind kind) {
    std::string s = "(";
    s += kind_tag(kind);
    for (const auto& e : t->edges)
        s += " (" + std::to_string(e.label) + " " +
             print_tree(e.child, kind) + ")";
    s += ")";
    return s;
}

TreePtr vn_encode(std::uint64_t k) {
    if (k > kEncodeBound)
        throw std::invalid_argument("vn_encode: bound " +
                                    std::to_string(kEncodeBound) +
                                    " exceeded");
    std::vector<TreeEdge> edges;
    for (std::uint64_t j = 0; j < k; j++)
        edges.push_back({j, vn_encode(j)});
    return mk_tree(std::move(edges));
}

std::size_t Fragment::add(const TreePtr& t, const std::string& name) {
    for (const auto& e : t->edges) add(e.child);
    std::size_t idx = elements.size();
    bool found = false;
    for (std::size_t i = 0; i < elements.size(); i++) {
        if (tree_eq(elements[i], t)) {
            idx = i;
            found = true;
            break;
        }
    }
    if (!found) {
        elements.push_back(t);
        names["e" + std::to_string(idx)] = idx;
    }
    if (!name.empty()) names[name] = idx;
    return idx;
}

const TreePtr& Fragment::resolve(const std::string& constant) const {
    auto it = names.find(constant);
    if (it == names.end()) throw UnknownConstant(constant);
    return elements[it->second];
}

std::string Fragment::canonical_name(std::size_t i) const {
    return "e" + std::to_string(i);
}

Fragment generate_fragment(ModelKind kind, std::uint64_t depth,
                           std::uint64_t width) {
    if (depth > kMaxFragmentDepth || width > kMaxFragmentWidth)
        throw std::invalid_argument(
            "fragment size guard: depth <= " +
            std::to_string(kMaxFragmentDepth) + ", width <= " +
            std::to_string(kMaxFragmentWidth));
    Fragment frag;
    frag.kind = kind;
    std::vector<TreePtr> level = {empty_tree()};  // cumulative
    frag.add(empty_tree());
    for (std::uint64_t d = 1; d <= depth; d++) {
        // candidate labelled edges over everything built so far
        std::vector<TreeEdge> pool;
        for (std::uint64_t l = 0; l < width; l++)
            for (const auto& t : level) pool.push_back({l, t});
        std::vector<TreePtr> next = level;
        if (kind == ModelKind::V) {
            // multisets of size ≤ width over the edge pool
            std::vector<std::size_t> pick;
            std::function<void(std::size_t)> rec = [&](std::size_t start) {
                if (!pick.empty()) {
                    std::vector<TreeEdge> es;
                    for (auto i : pick) es.push_back(pool[i]);
                    next.push_back(mk_tree(std::move(es)));
                }
                if (pick.size() == width) return;
                for (std::size_t i = start; i < pool.size(); i++) {
                    pick.push_back(i);
                    rec(i);  // repetition allowed
                    pick.pop_back();
                }
            };
            rec(0);
        } else {
            // partial functions: per label, absent or one child
            std::vector<TreeEdge> es;
            std::function<void(std::uint64_t)> rec = [&](std::uint64_t l) {
                if (l == width) {
                    if (!es.empty() && es.size() <= width)
                        next.push_back(mk_tree(es));
                    return;
                }
                rec(l + 1);
                for (const auto& t : level) {
                    es.push_back({l, t});
                    rec(l + 1);
                    es.pop_back();
                }
            };
            rec(0);
        }
        // dedup via fragment add
        for (const auto& t : next) frag.add(t);
        level.clear();
        level = frag.elements;
    }
    return frag;
}

Fragment fragment_of_sexpr(const Sexpr& e) {
    if (!tagged(e, "fragment") || e.items.size() < 2 || !e.items[1].is_atom)
        throw ParseError("expected (fragment v|u (tree name <tree>) ...)",
                         e.line, e.col);
    Fragment frag;
    if (e.items[1].atom == "v") frag.kind = ModelKind::V;
    else if (e.items[1].atom == "u") frag.kind = ModelKind::U;
    else
        throw ParseError("fragment kind must be v or u", e.items[1].line,
                         e.items[1].col);
    for (std::size_t i = 2; i < e.items.size(); i++) {
        const Sexpr& entry = e.items[i];
        if (!tagged(entry, "tree") || entry.items.size() != 3 ||
            !entry.items[1].is_atom)
            throw ParseError("expected (tree name <tree>)", entry.line,
                             entry.col);
        frag.add(tree_of_sexpr(entry.items[2], frag.kind),
                 entry.items[1].atom);
    }
    return frag;
}

Fragment parse_fragment(const std::string& text) {
    return fragment_of_sexpr(parse_sexpr(text));
}

std::string print_fragment(const Fragment& frag) {
    std::string s = "(fragment ";
    s += frag.kind == ModelKind::V ? "v" : "u";
    // canonical entries first, then user aliases (map order is stable)
    for (std::size_t i = 0; i < frag.elements.size(); i++)
        s += "\n  (tree e" + std::to_string(i) + " " +
             print_tree(frag.elements[i], frag.kind) + ")";
    for (const auto& [name, idx] : frag.names)
        if (name != "e" + std::to_string(idx))
            s += "\n  (tree " + name + " " +
                 print_tree(frag.elements[idx], frag.kind) + ")";
    s += ")\n";
    return s;
}

// ---------------------------------------------------------------------
// Tree realizers

ForceResult is_tree_realizer(const Term& n, const TreePtr& w,
                             TreeRealizerMode mode, std::uint64_t budget) {
    if (mode == TreeRealizerMode::Plain) {
        for (const auto& e : w->edges) {
            auto r = apply(n, mk_num(e.label), budget);
            if (r.kind == OutcomeKind::Timeout)
                return {Force::Timeout, "timeout at edge " +
                                            std::to_string(e.label)};
            if (r.kind == OutcomeKind::Undefined)
                return {Force::Refuted, "n(" + std::to_string(e.label) +
                                            ") undefined"};
            auto sub = is_tree_realizer(r.value, e.child, mode, budget);
            if (!sub.realized()) {
                sub.reason = "edge " + std::to_string(e.label) + ": " +
                             sub.reason;
                return sub;
            }
        }
        return {Force::Realized, ""};
    }
    // Decorated: n = ⟨n₀, n₁⟩ with n₀ the node realizer (0, since the
    // representation has uniform codomain) and n₁ tracking the children.
    auto p0 = proj0(n, budget);
    if (p0.kind == OutcomeKind::Timeout)
        return {Force::Timeout, "timeout in first projection"};
    if (!p0.ok() || p0.value->tag != TermTag::Num || p0.value->num != 0)
        return {Force::Refuted, "first projection is not 0"};
    auto p1 = proj1(n, budget);
    if (p1.kind == OutcomeKind::Timeout)
        return {Force::Timeout, "timeout in second projection"};
    if (!p1.ok())
        return {Force::Refuted, "second projection undefined"};
    for (const auto& e : w->edges) {
        auto r = apply(p1.value, mk_num(e.label), budget);
        if (r.kind == OutcomeKind::Timeout)
            return {Force::Timeout,
                    "timeout at edge " + std::to_string(e.label)};
        if (r.kind == OutcomeKind::Undefined)
            return {Force::Refuted,
                    "n1(" + std::to_string(e.label) + ") undefined"};
        auto sub = is_tree_realizer(r.value, e.child, mode, budget);
        if (!sub.realized()) {
            sub.reason =
                "edge " + std::to_string(e.label) + ": " + sub.reason;
            return sub;
        }
    }
    return {Force::Realized, ""};
}

// ---------------------------------------------------------------------
// Forcing clauses

namespace {

struct Forcer {
    ForceCtx& ctx;

    const TreePtr& resolve(const TermRef& r) {
        if (!r.is_const)
            throw std::logic_error("formula not closed: free variable '" +
                                   r.name + "'");
        return ctx.frag->resolve(r.name);
    }

    // n ⊩ wl ε wr: some edge (m, v) of wr has n₀ = m and n₁ ⊩ wl = v.
    // The same clause serves V and U: with distinct labels the edge with
    // label n₀ is unique.
    ForceResult mem(const Term& n, const TreePtr& wl, const TreePtr& wr) {
        if (wr->edges.empty())
            return {Force::Refuted, "eps: no edges in the right tree"};
        auto p0 = proj0(n, ctx.budget);
        if (p0.kind == OutcomeKind::Timeout)
            return {Force::Timeout, "eps: timeout in n0"};
        if (!p0.ok() || p0.value->tag != TermTag::Num)
            return {Force::Refuted, "eps: n0 is not a numeral"};
        std::uint64_t label = p0.value->num;
        bool any_edge = false, saw_timeout = false;
        std::string why;
        for (const auto& e : wr->edges) {
            if (e.label != label) continue;
            any_edge = true;
            auto p1 = proj1(n, ctx.budget);
            if (p1.kind == OutcomeKind::Timeout)
                return {Force::Timeout, "eps: timeout in n1"};
            if (!p1.ok())
                return {Force::Refuted, "eps: n1 undefined"};
            auto sub = eq(p1.value, wl, e.child);
            if (sub.realized()) return sub;
            if (sub.verdict == Force::Timeout) saw_timeout = true;
            why = sub.reason;
        }
        if (!any_edge)
            return {Force::Refuted,
                    "eps: no edge labelled " + std::to_string(label)};
        if (saw_timeout) return {Force::Timeout, "eps: timeout"};
        return {Force::Refuted, "eps: " + why};
    }

    // n ⊩ wl = wr: n₀ maps each edge of wl into ε of wr, and n₁ the
    // mirror image.
    ForceResult eq(const Term& n, const TreePtr& wl, const TreePtr& wr) {
        for (int side = 0; side < 2; side++) {
            const TreePtr& src = side == 0 ? wl : wr;
            const TreePtr& dst = side == 0 ? wr : wl;
            if (src->edges.empty()) continue;
            auto pr = side == 0 ? proj0(n, ctx.budget) : proj1(n, ctx.budget);
            if (pr.kind == OutcomeKind::Timeout)
                return {Force::Timeout, "eq: projection timeout"};
            if (!pr.ok())
                return {Force::Refuted, "eq: projection undefined"};
            for (const auto& e : src->edges) {
                auto r = apply(pr.value, mk_num(e.label), ctx.budget);
                if (r.kind == OutcomeKind::Timeout)
                    return {Force::Timeout, "eq: application timeout"};
                if (r.kind == OutcomeKind::Undefined)
                    return {Force::Refuted,
                            "eq: n" + std::to_string(side) + "(" +
                                std::to_string(e.label) + ") undefined"};
                auto sub = mem(r.value, e.child, dst);
                if (!sub.realized()) {
                    sub.reason = "eq: edge " + std::to_string(e.label) +
                                 ": " + sub.reason;
                    return sub;
                }
            }
        }
        return {Force::Realized, ""};
    }

    const ForceCtx::PremiseInfo& premise_realizers(const Formula& phi) {
        std::string key = print_formula(phi);
        auto it = ctx.premise_cache.find(key);
        if (it != ctx.premise_cache.end()) return it->second;
        ForceCtx::PremiseInfo info;
        const auto& pool = *ctx.pool;
        for (std::size_t i = 0; i < pool.size(); i++) {
            auto r = go(pool[i], phi);
            if (r.realized()) info.realizer_indices.push_back(i);
            else if (r.verdict == Force::Timeout) info.had_timeout = true;
        }
        return ctx.premise_cache.emplace(std::move(key), std::move(info))
            .first->second;
    }

    ForceResult go(const Term& n, const Formula& phi) {
        switch (phi->tag) {
            case FormulaTag::Membership:
                return mem(n, resolve(phi->lhs), resolve(phi->rhs));
            case FormulaTag::Equality:
                return eq(n, resolve(phi->lhs), resolve(phi->rhs));
            case FormulaTag::Falsum:
                return {Force::Refuted, "falsum"};
            case FormulaTag::And: {
                auto p0 = proj0(n, ctx.budget);
                if (p0.kind == OutcomeKind::Timeout)
                    return {Force::Timeout, "and: timeout in n0"};
                if (!p0.ok())
                    return {Force::Refuted, "and: n0 undefined"};
                auto l = go(p0.value, phi->left);
                if (!l.realized()) {
                    l.reason = "and/left: " + l.reason;
                    return l;
                }
                auto p1 = proj1(n, ctx.budget);
                if (p1.kind == OutcomeKind::Timeout)
                    return {Force::Timeout, "and: timeout in n1"};
                if (!p1.ok())
                    return {Force::Refuted, "and: n1 undefined"};
                auto r = go(p1.value, phi->right);
                if (!r.realized()) r.reason = "and/right: " + r.reason;
                return r;
            }
            case FormulaTag::Or: {
                auto p0 = proj0(n, ctx.budget);
                if (p0.kind == OutcomeKind::Timeout)
                    return {Force::Timeout, "or: timeout in tag"};
                if (!p0.ok() || p0.value->tag != TermTag::Num ||
                    p0.value->num > 1)
                    return {Force::Refuted, "or: tag is not 0 or 1"};
                auto p1 = proj1(n, ctx.budget);
                if (p1.kind == OutcomeKind::Timeout)
                    return {Force::Timeout, "or: timeout in payload"};
                if (!p1.ok())
                    return {Force::Refuted, "or: payload undefined"};
                auto sub = go(p1.value,
                              p0.value->num == 0 ? phi->left : phi->right);
                if (!sub.realized())
                    sub.reason = (p0.value->num == 0 ? "or/left: "
                                                     : "or/right: ") +
                                 sub.reason;
                return sub;
            }
            case FormulaTag::Implies: {
                const auto& info = premise_realizers(phi->left);
                const auto& pool = *ctx.pool;
                for (auto i : info.realizer_indices) {
                    auto r = apply(n, pool[i], ctx.budget);
                    if (r.kind == OutcomeKind::Timeout)
                        return {Force::Timeout, "imp: application timeout"};
                    if (r.kind == OutcomeKind::Undefined)
                        return {Force::Refuted,
                                "imp: n(m) undefined for pool member " +
                                    std::to_string(i)};
                    auto sub = go(r.value, phi->right);
                    if (!sub.realized()) {
                        if (sub.verdict == Force::Refuted)
                            sub.reason = "imp: conclusion at pool member " +
                                         std::to_string(i) + ": " +
                                         sub.reason;
                        return sub;
                    }
                }
                if (info.had_timeout)
                    return {Force::Timeout, "imp: premise scan timed out"};
                return {Force::Realized, ""};
            }
            case FormulaTag::Not: {
                const auto& info = premise_realizers(phi->left);
                if (!info.realizer_indices.empty())
                    return {Force::Refuted,
                            "not: pool member " +
                                std::to_string(info.realizer_indices[0]) +
                                " realizes the body"};
                if (info.had_timeout)
                    return {Force::Timeout, "not: premise scan timed out"};
                return {Force::Realized, ""};  // pool-relative
            }
            case FormulaTag::Exists: {
                bool saw_timeout = false;
                std::string why = "exists: no fragment witness";
                for (std::size_t i = 0; i < ctx.frag->elements.size(); i++) {
                    auto inst = substitute(phi->left, phi->var,
                                           ctx.frag->canonical_name(i));
                    auto sub = go(n, inst.formula);
                    if (sub.realized()) return sub;
                    if (sub.verdict == Force::Timeout) saw_timeout = true;
                }
                if (saw_timeout) return {Force::Timeout, "exists: timeout"};
                return {Force::Refuted, why};
            }
            case FormulaTag::Forall: {
                for (std::size_t i = 0; i < ctx.frag->elements.size(); i++) {
                    auto inst = substitute(phi->left, phi->var,
                                           ctx.frag->canonical_name(i));
                    auto sub = go(n, inst.formula);
                    if (!sub.realized()) {
                        sub.reason = "forall at " +
                                     ctx.frag->canonical_name(i) + ": " +
                                     sub.reason;
                        return sub;
                    }
                }
                return {Force::Realized, ""};
            }
            case FormulaTag::BoundedExists:
            case FormulaTag::BoundedForall:
                return go(n, desugar_bounded(phi));
        }
        return {Force::Refuted, "unreachable"};
    }
};

}  // namespace

ForceResult check_force(const Term& n, const Formula& phi, ForceCtx& ctx) {
    if (!ctx.frag) throw std::logic_error("check_force: no fragment");
    static const std::vector<Term> kEmptyPool;
    if (!ctx.pool) ctx.pool = &kEmptyPool;
    Forcer f{ctx};
    return f.go(n, phi);
}

// ---------------------------------------------------------------------
// Named realizers

Term mk_refl_realizer() {
    // fix(λr. ⟨λm. ⟨m, r⟩, λm. ⟨m, r⟩⟩)
    Term h = lam("m", pair_val(mk_var("m"), mk_var("r")));
    return fix(lam("r", pair_val(h, h)));
}

Term mk_sym_realizer() {
    Term n = mk_var("n");
    return lam("n", pair_val(mk_app(mk_p1(), n), mk_app(mk_p0(), n)));
}

Term mk_trans_realizer() {
    // t ⟨n, m⟩ composes: n ⊩ w = w', m ⊩ w' = w'' gives t⟨n,m⟩ ⊩ w = w''.
    Term p = mk_var("p");
    Term t = mk_var("t");
    auto pr0 = [](Term x) { return mk_app(mk_p0(), std::move(x)); };
    auto pr1 = [](Term x) { return mk_app(mk_p1(), std::move(x)); };

    // forward: for (a,v) ∈ E(w): x = n₀(a) = ⟨b, v=u⟩; y = m₀(b) = ⟨c, u=z⟩
    Term a = mk_var("a");
    Term x_fwd = mk_app(pr0(pr0(p)), a);
    Term y_fwd = mk_app(pr0(pr1(p)), pr0(x_fwd));
    Term h1 = lam("a", pair_val(pr0(y_fwd),
                                mk_app(t, pair_val(pr1(x_fwd), pr1(y_fwd)))));

    // backward: for (c,z) ∈ E(w''): y = m₁(c) = ⟨b, z=u⟩; x = n₁(b) = ⟨a, u=v⟩
    Term c = mk_var("c");
    Term y_bwd = mk_app(pr1(pr1(p)), c);
    Term x_bwd = mk_app(pr1(pr0(p)), pr0(y_bwd));
    Term h2 = lam("c", pair_val(pr0(x_bwd),
                                mk_app(t, pair_val(pr1(y_bwd), pr1(x_bwd)))));

    return fix(lam("t", lam("p", pair_val(h1, h2))));
}

Term uniform_tree_realizer() {
    return fix(lam("r", lam("m", mk_var("r"))));
}

Term uniform_decoration_realizer() {
    return fix(lam("r", pair_val(mk_num(0), lam("n", mk_var("r")))));
}

}  // namespace rwb
