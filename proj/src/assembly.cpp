#include "rwb/assembly.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace rwb {
namespace {

Membership membership_of(const ReductionOutcome& r, const RealizerSet& s,
                         std::uint64_t budget) {
    if (r.kind == OutcomeKind::Timeout) return Membership::Timeout;
    if (!r.ok()) return Membership::No;
    return s.contains(r.value, budget);
}

}  // namespace

const RealizerSet& Assembly::real(const std::string& id) const {
    auto it = realizers.find(id);
    if (it == realizers.end())
        throw std::invalid_argument("no realizer set for element '" + id +
                                    "'");
    return it->second;
}

bool Assembly::has(const std::string& id) const {
    return std::find(carrier.begin(), carrier.end(), id) != carrier.end();
}

Assembly mk_assembly(std::vector<std::string> carrier,
                     std::map<std::string, RealizerSet> realizers) {
    std::set<std::string> seen;
    for (const auto& id : carrier) {
        if (!seen.insert(id).second)
            throw std::invalid_argument("duplicate carrier id '" + id + "'");
        auto it = realizers.find(id);
        if (it == realizers.end() || it->second.empty())
            throw EmptyRealizerSet(id);
    }
    Assembly a;
    a.carrier = std::move(carrier);
    a.realizers = std::move(realizers);
    return a;
}

Assembly terminal_assembly() {
    return mk_assembly({"*"}, {{"*", RealizerSet::full()}});
}

bool is_partitioned(const Assembly& a) {
    for (const auto& id : a.carrier) {
        const RealizerSet& s = a.real(id);
        if (s.kind() != RealizerSet::Kind::Finite ||
            s.elements().size() != 1)
            return false;
    }
    return true;
}

AsmMorphism mk_morphism(Assembly src, Assembly dst, CarrierMap map,
                        Term tracker, std::uint64_t budget) {
    for (const auto& id : src.carrier) {
        auto it = map.find(id);
        if (it == map.end())
            throw std::invalid_argument("carrier map undefined at '" + id +
                                        "'");
        if (!dst.has(it->second))
            throw std::invalid_argument("carrier map sends '" + id +
                                        "' outside the target");
    }
    return {std::move(src), std::move(dst), std::move(map),
            std::move(tracker), budget};
}

AsmMorphism identity_morphism(const Assembly& a) {
    CarrierMap m;
    for (const auto& id : a.carrier) m[id] = id;
    return mk_morphism(a, a, std::move(m), i_combinator());
}

AsmMorphism compose(const AsmMorphism& g, const AsmMorphism& f) {
    CarrierMap m;
    for (const auto& id : f.src.carrier) m[id] = g.map.at(f.map.at(id));
    Term n = mk_var("n");
    Term tracker =
        abstract("n", mk_app(g.tracker, mk_app(f.tracker, n)));
    return mk_morphism(f.src, g.dst, std::move(m), std::move(tracker),
                       std::min(f.budget, g.budget));
}

CheckReport is_tracker(const Term& r, const CarrierMap& f,
                       const Assembly& src, const Assembly& dst,
                       std::uint64_t budget) {
    CheckReport rep{Verdict::Verified, "", 0, budget};
    bool timeout = false;
    for (const auto& b : src.carrier) {
        const RealizerSet& dset = dst.real(f.at(b));
        for (const auto& n : src.real(b).sample()) {
            rep.sample_size++;
            Membership m = membership_of(apply(r, n, budget), dset, budget);
            if (m == Membership::No)
                return {Verdict::CounterExample,
                        "element '" + b + "', realizer " + print_term(n),
                        rep.sample_size, budget};
            if (m == Membership::Timeout) timeout = true;
        }
    }
    if (timeout) rep.verdict = Verdict::Inconclusive;
    return rep;
}

CheckReport verify_cover(const AsmMorphism& f, const Term& s,
                         std::uint64_t budget) {
    CheckReport rep{Verdict::Verified, "", 0, budget};
    bool timeout = false;
    for (const auto& a : f.dst.carrier) {
        std::vector<std::string> fibre;
        for (const auto& [b, fb] : f.map)
            if (fb == a) fibre.push_back(b);
        if (fibre.empty())
            return {Verdict::CounterExample, "empty fibre over '" + a + "'",
                    rep.sample_size, budget};
        for (const auto& n : f.dst.real(a).sample()) {
            rep.sample_size++;
            auto v = apply(s, n, budget);
            if (v.kind == OutcomeKind::Timeout) {
                timeout = true;
                continue;
            }
            if (!v.ok())
                return {Verdict::CounterExample,
                        "s undefined on realizer " + print_term(n) +
                            " of '" + a + "'",
                        rep.sample_size, budget};
            bool hit = false, hit_timeout = false;
            for (const auto& b : fibre) {
                Membership m = f.src.real(b).contains(v.value, budget);
                if (m == Membership::Yes) {
                    hit = true;
                    break;
                }
                if (m == Membership::Timeout) hit_timeout = true;
            }
            if (hit) continue;
            if (hit_timeout) {
                timeout = true;
                continue;
            }
            return {Verdict::CounterExample,
                    "s(" + print_term(n) + ") realizes nothing in the fibre "
                    "over '" + a + "'",
                    rep.sample_size, budget};
        }
    }
    if (timeout) rep.verdict = Verdict::Inconclusive;
    return rep;
}

// ---------------------------------------------------------------
// Finite limits and images

std::string pair_id(const std::string& b, const std::string& c) {
    return b + "*" + c;
}

PullbackResult pullback(const AsmMorphism& f, const AsmMorphism& g) {
    if (f.dst.carrier != g.dst.carrier)
        throw std::invalid_argument("pullback: morphisms must share target");
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    CarrierMap to_b, to_c;
    for (const auto& b : f.src.carrier)
        for (const auto& c : g.src.carrier) {
            if (f.map.at(b) != g.map.at(c)) continue;
            std::string id = pair_id(b, c);
            carrier.push_back(id);
            real.emplace(id, pair_set(f.src.real(b), g.src.real(c),
                                      "pi(" + b + "," + c + ")"));
            to_b[id] = b;
            to_c[id] = c;
        }
    Assembly apex = mk_assembly(std::move(carrier), std::move(real));
    return {apex,
            mk_morphism(apex, f.src, std::move(to_b), mk_p0()),
            mk_morphism(apex, g.src, std::move(to_c), mk_p1())};
}

ImageResult image(const AsmMorphism& f) {
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    for (const auto& a : f.dst.carrier) {
        std::vector<RealizerSet> fibre_sets;
        for (const auto& b : f.src.carrier)
            if (f.map.at(b) == a) fibre_sets.push_back(f.src.real(b));
        if (fibre_sets.empty()) continue;
        carrier.push_back(a);
        real.emplace(a, union_sets(fibre_sets));
    }
    Assembly img = mk_assembly(std::move(carrier), std::move(real));
    CarrierMap inc;
    for (const auto& a : img.carrier) inc[a] = a;
    // n ∈ β(b) already lies in ι(f b), so the cover is identity-tracked;
    // the inclusion is tracked by f's own tracker.
    AsmMorphism cover =
        mk_morphism(f.src, img, f.map, i_combinator(), f.budget);
    AsmMorphism mono =
        mk_morphism(img, f.dst, std::move(inc), f.tracker, f.budget);
    return {std::move(img), std::move(cover), std::move(mono)};
}

SumResult sum(const Assembly& a, const Assembly& b) {
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    CarrierMap la, lb;
    for (const auto& id : a.carrier) {
        carrier.push_back("l." + id);
        real.emplace("l." + id, a.real(id));
        la[id] = "l." + id;
    }
    for (const auto& id : b.carrier) {
        carrier.push_back("r." + id);
        real.emplace("r." + id, b.real(id));
        lb[id] = "r." + id;
    }
    Assembly s = mk_assembly(std::move(carrier), std::move(real));
    return {s, mk_morphism(a, s, std::move(la), i_combinator()),
            mk_morphism(b, s, std::move(lb), i_combinator())};
}

// ---------------------------------------------------------------
// ∀_f

ForallResult forall_f(const Assembly& S, const AsmMorphism& f,
                      const std::vector<Term>& pool, std::uint64_t budget) {
    ForallResult out;
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    for (const auto& a : f.dst.carrier) {
        std::vector<std::string> fibre;
        for (const auto& b : f.src.carrier)
            if (f.map.at(b) == a) fibre.push_back(b);
        bool classical = true;
        for (const auto& b : fibre)
            if (!S.has(b)) classical = false;
        if (!classical) continue;

        const RealizerSet alpha = f.dst.real(a);
        // value-captured copies: the Derived set must not dangle
        std::vector<std::pair<std::vector<Term>, RealizerSet>> legs;
        for (const auto& b : fibre)
            legs.push_back({f.src.real(b).sample(), S.real(b)});
        auto check = [alpha, legs](const Term& n, std::uint64_t bud) {
            auto p0 = proj0(n, bud);
            Membership m0 = membership_of(p0, alpha, bud);
            if (m0 == Membership::No) return Membership::No;
            auto p1 = proj1(n, bud);
            if (p1.kind == OutcomeKind::Timeout) return Membership::Timeout;
            if (!p1.ok()) return Membership::No;
            bool timeout = m0 == Membership::Timeout;
            for (const auto& [samples, sigma] : legs)
                for (const auto& m : samples) {
                    Membership mm = membership_of(
                        apply(p1.value, m, bud), sigma, bud);
                    if (mm == Membership::No) return Membership::No;
                    if (mm == Membership::Timeout) timeout = true;
                }
            return timeout ? Membership::Timeout : Membership::Yes;
        };

        // canonical candidate first: ⟨α-witness, identity⟩ realizes ρ(a)
        // whenever σ = β on the fibre
        std::vector<Term> cands;
        cands.push_back(pair_val(alpha.witness(), i_combinator()));
        for (const auto& p : pool) {
            cands.push_back(p);
            cands.push_back(pair_val(alpha.witness(), p));
        }
        Term found;
        for (const auto& c : cands)
            if (check(c, budget) == Membership::Yes) {
                found = c;
                break;
            }
        if (!found) {
            out.truncated = true;
            continue;
        }
        carrier.push_back(a);
        real.emplace(a,
                     RealizerSet::derived("rho(" + a + ")", check, found));
        out.inhabitant[a] = found;
    }
    out.sub = mk_assembly(std::move(carrier), std::move(real));
    return out;
}

// ---------------------------------------------------------------
// Displays

std::map<std::string, RealizerSet> bracket(
    const std::map<std::string, RealizerSet>& beta, const CarrierMap& f,
    const Assembly& a) {
    std::map<std::string, RealizerSet> out;
    for (const auto& [b, set] : beta)
        out.emplace(b, pair_set(set, a.real(f.at(b)),
                                "bracket(" + b + ")"));
    return out;
}

std::vector<std::string> DisplayMapData::fibre(const std::string& a) const {
    std::vector<std::string> out;
    for (const auto& b : morphism.src.carrier)
        if (morphism.map.at(b) == a) out.push_back(b);
    return out;
}

DisplayMapData mk_display(const std::vector<std::string>& b_carrier,
                          const std::map<std::string, RealizerSet>& beta,
                          const CarrierMap& f, const Assembly& a) {
    for (const auto& b : b_carrier) {
        auto it = beta.find(b);
        if (it == beta.end() ||
            it->second.kind() != RealizerSet::Kind::Finite)
            throw std::invalid_argument(
                "display data requires a finite realizer set at '" + b +
                "'");
        if (it->second.empty()) throw EmptyRealizerSet(b);
    }
    Assembly src = mk_assembly(b_carrier, bracket(beta, f, a));
    // ⟨m, k⟩ ∈ β[f](b) projects to k ∈ α(f b): tracked by p1
    return {mk_morphism(std::move(src), a, f, mk_p1()), beta};
}

DisplayMapData pullback_display(const DisplayMapData& d,
                                const AsmMorphism& h) {
    if (h.dst.carrier != d.morphism.dst.carrier)
        throw std::invalid_argument(
            "display pullback: target mismatch");
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> beta;
    CarrierMap f;
    for (const auto& x : h.src.carrier)
        for (const auto& b : d.morphism.src.carrier) {
            if (h.map.at(x) != d.morphism.map.at(b)) continue;
            std::string id = pair_id(x, b);
            carrier.push_back(id);
            beta.emplace(id, d.beta.at(b));
            f[id] = x;
        }
    return mk_display(carrier, beta, f, h.src);
}

// ---------------------------------------------------------------
// Exponentials

namespace {

std::string phi_id(const std::string& a, const CarrierMap& phi) {
    std::string id = a + "|";
    for (const auto& [b, c] : phi) {
        if (id.back() != '|') id += ",";
        id += b + ">" + c;
    }
    return id;
}

// all functions from `dom` into `cod`
void enumerate_maps(const std::vector<std::string>& dom,
                    const std::vector<std::string>& cod, std::size_t i,
                    CarrierMap& acc,
                    const std::function<void(const CarrierMap&)>& emit) {
    if (i == dom.size()) {
        emit(acc);
        return;
    }
    for (const auto& c : cod) {
        acc[dom[i]] = c;
        enumerate_maps(dom, cod, i + 1, acc, emit);
    }
    acc.erase(dom[i]);
}

}  // namespace

ExponentialResult exponential(const DisplayMapData& f, const AsmMorphism& g,
                              const std::vector<Term>& pool,
                              std::uint64_t budget) {
    if (g.dst.carrier != f.morphism.dst.carrier)
        throw std::invalid_argument("exponential: base mismatch");
    const Assembly& A = f.morphism.dst;
    ExponentialResult out;
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    CarrierMap to_base;
    for (const auto& a : A.carrier) {
        std::vector<std::string> ba = f.fibre(a), ca;
        for (const auto& c : g.src.carrier)
            if (g.map.at(c) == a) ca.push_back(c);
        if (!ba.empty() && ca.empty()) continue;
        const RealizerSet alpha = A.real(a);

        CarrierMap acc;
        enumerate_maps(ba, ca, 0, acc, [&](const CarrierMap& phi) {
            std::vector<std::pair<std::vector<Term>, RealizerSet>> legs;
            for (const auto& b : ba)
                legs.push_back(
                    {f.beta.at(b).elements(), g.src.real(phi.at(b))});
            auto check = [alpha, legs](const Term& n, std::uint64_t bud) {
                auto p0 = proj0(n, bud);
                Membership m0 = membership_of(p0, alpha, bud);
                if (m0 == Membership::No) return Membership::No;
                auto p1 = proj1(n, bud);
                if (p1.kind == OutcomeKind::Timeout)
                    return Membership::Timeout;
                if (!p1.ok()) return Membership::No;
                bool timeout = m0 == Membership::Timeout;
                for (const auto& [ms, gamma] : legs)
                    for (const auto& m : ms) {
                        Membership mm = membership_of(
                            apply(p1.value, m, bud), gamma, bud);
                        if (mm == Membership::No) return Membership::No;
                        if (mm == Membership::Timeout) timeout = true;
                    }
                return timeout ? Membership::Timeout : Membership::Yes;
            };

            std::vector<Term> cands;
            if (ba.empty())
                cands.push_back(
                    pair_val(alpha.witness(), mk_app(mk_k(), mk_num(0))));
            for (const auto& b : ba)
                cands.push_back(pair_val(
                    alpha.witness(),
                    mk_app(mk_k(), g.src.real(phi.at(b)).witness())));
            for (const auto& p : pool) {
                cands.push_back(p);
                cands.push_back(pair_val(alpha.witness(), p));
            }
            Term found;
            for (const auto& c : cands)
                if (check(c, budget) == Membership::Yes) {
                    found = c;
                    break;
                }
            if (!found) {
                out.truncated = true;
                return;
            }
            std::string id = phi_id(a, phi);
            carrier.push_back(id);
            real.emplace(id,
                         RealizerSet::derived("eta(" + id + ")", check,
                                              found));
            to_base[id] = a;
            out.assignment[id] = phi;
            out.found_tracker[id] = found;
        });
    }
    out.total = mk_assembly(std::move(carrier), std::move(real));
    out.to_base = mk_morphism(out.total, A, std::move(to_base), mk_p0());
    return out;
}

// ---------------------------------------------------------------
// W-types

WTreePtr mk_wtree(std::string root,
                  std::vector<std::pair<std::string, WTreePtr>> children) {
    std::sort(children.begin(), children.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    auto w = std::make_shared<WTree>();
    w->root = std::move(root);
    w->children = std::move(children);
    w->repr = "(sup " + w->root;
    for (const auto& [b, c] : w->children)
        w->repr += " (" + b + " " + c->repr + ")";
    w->repr += ")";
    return w;
}

WTypeResult wtype(const DisplayMapData& f, std::uint64_t depth_bound) {
    WTypeResult out;
    std::set<std::string> seen;
    std::vector<WTreePtr> level;  // cumulative
    auto emit = [&](const WTreePtr& w) {
        if (seen.insert(w->repr).second) out.trees.push_back(w);
    };
    for (std::uint64_t d = 0; d <= depth_bound; d++) {
        // children come from the snapshot of strictly earlier rounds so
        // every tree emitted this round has depth <= d
        const std::vector<WTreePtr> prev = out.trees;
        for (const auto& a : f.morphism.dst.carrier) {
            std::vector<std::string> fibre = f.fibre(a);
            if (fibre.empty()) {
                emit(mk_wtree(a, {}));
                continue;
            }
            if (d == 0 || prev.empty()) continue;
            // assign every fibre element a previously built subtree
            std::vector<std::size_t> pick(fibre.size(), 0);
            while (true) {
                std::vector<std::pair<std::string, WTreePtr>> ch;
                for (std::size_t i = 0; i < fibre.size(); i++)
                    ch.push_back({fibre[i], prev[pick[i]]});
                emit(mk_wtree(a, std::move(ch)));
                if (out.trees.size() >= kMaxWTrees) {
                    out.truncated = true;
                    return out;
                }
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == prev.size())
                    pick[i++] = 0;
                if (i == pick.size()) break;
            }
        }
    }
    return out;
}

namespace {

// The decoration clause by direct structural recursion, shared by the
// Derived set and the fallback pool search of build_decoration.  Data
// needed from the display is copied so stored closures cannot dangle.
struct DeltaClause {
    RealizerSet alpha;
    std::vector<std::pair<std::vector<Term>, std::shared_ptr<DeltaClause>>>
        legs;  // (β(b) elements, clause of the subtree)

    Membership check(const Term& n, std::uint64_t bud) const {
        auto p0 = proj0(n, bud);
        Membership m0 = membership_of(p0, alpha, bud);
        if (m0 == Membership::No) return Membership::No;
        bool timeout = m0 == Membership::Timeout;
        if (!legs.empty()) {
            auto p1 = proj1(n, bud);
            if (p1.kind == OutcomeKind::Timeout) return Membership::Timeout;
            if (!p1.ok()) return Membership::No;
            for (const auto& [ms, sub] : legs)
                for (const auto& m : ms) {
                    auto r = apply(p1.value, m, bud);
                    if (r.kind == OutcomeKind::Timeout)
                        return Membership::Timeout;
                    if (!r.ok()) return Membership::No;
                    Membership mm = sub->check(r.value, bud);
                    if (mm == Membership::No) return Membership::No;
                    if (mm == Membership::Timeout) timeout = true;
                }
        }
        return timeout ? Membership::Timeout : Membership::Yes;
    }
};

std::shared_ptr<DeltaClause> delta_clause(const DisplayMapData& f,
                                          const WTreePtr& w) {
    auto c = std::make_shared<DeltaClause>();
    c->alpha = f.morphism.dst.real(w->root);
    for (const auto& [b, sub] : w->children)
        c->legs.push_back({f.beta.at(b).elements(), delta_clause(f, sub)});
    return c;
}

}  // namespace

RealizerSet decoration(const DisplayMapData& f, const WTreePtr& w) {
    auto clause = delta_clause(f, w);
    auto built = build_decoration(f, w, {});
    if (!built.found)
        throw std::runtime_error(
            "no decoration witness constructible for " + w->repr);
    return RealizerSet::derived(
        "delta(" + w->repr + ")",
        [clause](const Term& n, std::uint64_t bud) {
            return clause->check(n, bud);
        },
        built.term);
}

DecorationWitness build_decoration(const DisplayMapData& f, const WTreePtr& w,
                                   const std::vector<Term>& pool,
                                   std::uint64_t budget) {
    Term wa = f.morphism.dst.real(w->root).witness();
    if (w->children.empty()) return {true, pair_val(wa, mk_num(0))};

    // recursively built child witnesses
    std::vector<Term> sub;
    for (const auto& [b, c] : w->children) {
        auto r = build_decoration(f, c, pool, budget);
        if (!r.found) return {false, {}};
        sub.push_back(r.term);
    }

    // all children share a witness: a constant second component works
    bool uniform = true;
    for (const auto& s : sub)
        if (!term_eq(s, sub[0])) uniform = false;
    if (uniform) return {true, pair_val(wa, mk_app(mk_k(), sub[0]))};

    // dispatch on β-labels when they split as zero vs nonzero numerals
    Term for_zero, for_pos;
    bool splits = true;
    for (std::size_t i = 0; i < w->children.size() && splits; i++) {
        for (const auto& m : f.beta.at(w->children[i].first).elements()) {
            if (m->tag != TermTag::Num) {
                splits = false;
                break;
            }
            Term& slot = m->num == 0 ? for_zero : for_pos;
            if (!slot)
                slot = sub[i];
            else if (!term_eq(slot, sub[i]))
                splits = false;
        }
    }
    if (splits && for_zero && for_pos) {
        Term m = mk_var("m");
        return {true,
                pair_val(wa, abstract("m", mk_app(mk_app(mk_app(mk_ifz(), m),
                                                         for_zero),
                                                  for_pos)))};
    }

    // fall back to the supplied candidate pool
    auto clause = delta_clause(f, w);
    for (const auto& c : pool)
        if (clause->check(c, budget) == Membership::Yes) return {true, c};
    return {false, {}};
}

// ---------------------------------------------------------------
// Weak power object

WeakPowerResult weak_power(const Assembly& x,
                           const std::vector<std::uint64_t>& value_pool,
                           const std::vector<Term>& search_pool,
                           std::uint64_t budget) {
    if (x.carrier.size() * value_pool.size() > kWeakPowerGuard)
        throw std::invalid_argument("weak_power: size guard exceeded");
    WeakPowerResult out;
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    std::vector<std::string> rel_carrier;
    std::map<std::string, RealizerSet> rel_real;

    std::size_t nx = x.carrier.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << nx); mask++) {
        std::vector<std::string> alpha;
        for (std::size_t i = 0; i < nx; i++)
            if (mask & (std::size_t{1} << i)) alpha.push_back(x.carrier[i]);

        // φ assigns each x ∈ α a nonempty subset of the value pool
        std::map<std::string, std::vector<std::uint64_t>> phi;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == alpha.size()) {
                std::string id = "{";
                for (const auto& e : alpha) {
                    if (id.back() != '{') id += ";";
                    id += e + ":";
                    for (auto v : phi.at(e)) id += std::to_string(v) + "+";
                    id.pop_back();
                }
                id += "}";

                auto phi_copy = phi;
                std::vector<std::pair<std::vector<std::uint64_t>, RealizerSet>>
                    legs;
                for (const auto& [e, vals] : phi_copy)
                    legs.push_back({vals, x.real(e)});
                auto check = [legs](const Term& n, std::uint64_t bud) {
                    bool timeout = false;
                    for (const auto& [vals, chi] : legs)
                        for (auto v : vals) {
                            Membership mm = membership_of(
                                apply(n, mk_num(v), bud), chi, bud);
                            if (mm == Membership::No) return Membership::No;
                            if (mm == Membership::Timeout) timeout = true;
                        }
                    return timeout ? Membership::Timeout : Membership::Yes;
                };

                RealizerSet pi;
                Term found;
                if (alpha.empty()) {
                    pi = RealizerSet::full();  // vacuous condition
                    found = mk_num(0);
                } else {
                    for (const auto& c : search_pool)
                        if (check(c, budget) == Membership::Yes) {
                            found = c;
                            break;
                        }
                    if (!found) {
                        out.truncated = true;
                        return;
                    }
                    pi = RealizerSet::derived("pi(" + id + ")", check,
                                              found);
                }
                carrier.push_back(id);
                real.emplace(id, pi);
                out.found_tracker[id] = found;

                for (const auto& e : alpha) {
                    std::string rid = e + "@" + id;
                    rel_carrier.push_back(rid);
                    rel_real.emplace(
                        rid, pair_set(RealizerSet::finite_nats(phi_copy.at(e)),
                                      pi, "eta(" + rid + ")"));
                }
                return;
            }
            std::size_t np = value_pool.size();
            for (std::size_t vm = 1; vm < (std::size_t{1} << np); vm++) {
                std::vector<std::uint64_t> vals;
                for (std::size_t j = 0; j < np; j++)
                    if (vm & (std::size_t{1} << j))
                        vals.push_back(value_pool[j]);
                phi[alpha[i]] = vals;
                rec(i + 1);
            }
            phi.erase(alpha[i]);
        };
        rec(0);
    }
    out.power = mk_assembly(std::move(carrier), std::move(real));
    out.member_rel = mk_assembly(std::move(rel_carrier), std::move(rel_real));
    return out;
}

// ---------------------------------------------------------------
// Covering squares and partitioned covers

CheckReport is_covering_square(const AsmMorphism& top, const AsmMorphism& left,
                               const AsmMorphism& right,
                               const AsmMorphism& bottom, const Term& s_canon,
                               const Term& s_bottom, std::uint64_t budget) {
    for (const auto& d : top.src.carrier)
        if (bottom.map.at(left.map.at(d)) != right.map.at(top.map.at(d)))
            throw NonCommuting(d);
    PullbackResult pb = pullback(bottom, right);
    CarrierMap cmap;
    for (const auto& d : top.src.carrier)
        cmap[d] = pair_id(left.map.at(d), top.map.at(d));
    Term n = mk_var("n");
    Term canon_tr = abstract(
        "n", pair_val(mk_app(left.tracker, n), mk_app(top.tracker, n)));
    AsmMorphism canon =
        mk_morphism(top.src, pb.apex, std::move(cmap), canon_tr, budget);

    CheckReport cb = verify_cover(bottom, s_bottom, budget);
    if (cb.verdict == Verdict::CounterExample) {
        cb.detail = "bottom: " + cb.detail;
        return cb;
    }
    CheckReport cc = verify_cover(canon, s_canon, budget);
    if (cc.verdict == Verdict::CounterExample) {
        cc.detail = "canonical map: " + cc.detail;
        return cc;
    }
    CheckReport rep{Verdict::Verified, "",
                    cb.sample_size + cc.sample_size, budget};
    if (cb.verdict == Verdict::Inconclusive ||
        cc.verdict == Verdict::Inconclusive)
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

PartitionedCoverResult partitioned_cover(const Assembly& a) {
    std::vector<std::string> carrier;
    std::map<std::string, RealizerSet> real;
    CarrierMap proj;
    for (const auto& id : a.carrier) {
        const RealizerSet& s = a.real(id);
        if (s.kind() != RealizerSet::Kind::Finite)
            throw std::invalid_argument(
                "partitioned_cover: realizer set of '" + id +
                "' is not finitely enumerated");
        for (std::size_t i = 0; i < s.elements().size(); i++) {
            std::string pid = "r" + std::to_string(i) + "@" + id;
            carrier.push_back(pid);
            real.emplace(pid, RealizerSet::finite({s.elements()[i]}));
            proj[pid] = id;
        }
    }
    Assembly part = mk_assembly(std::move(carrier), std::move(real));
    AsmMorphism p =
        mk_morphism(part, a, std::move(proj), i_combinator());
    return {std::move(part), std::move(p)};
}

// ---------------------------------------------------------------
// File formats

namespace {

RealizerSet set_of_items(const Sexpr& entry) {
    if (entry.items.size() == 2 && entry.items[1].is_atom &&
        entry.items[1].atom == "full")
        return RealizerSet::full();
    std::vector<Term> elems;
    for (std::size_t i = 1; i < entry.items.size(); i++) {
        const Sexpr& it = entry.items[i];
        if (it.is_atom) {
            if (it.atom.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("expected a natural number, full or "
                                 "(term ...)", it.line, it.col);
            elems.push_back(mk_num(std::stoull(it.atom)));
        } else if (tagged(it, "term") && it.items.size() == 2) {
            elems.push_back(term_of_sexpr(it.items[1]));
        } else {
            throw ParseError("expected a natural number or (term <t>)",
                             it.line, it.col);
        }
    }
    return RealizerSet::finite(std::move(elems));
}

}  // namespace

Assembly assembly_of_sexpr(const Sexpr& e) {
    if (!tagged(e, "assembly") || e.items.size() != 3 ||
        !tagged(e.items[1], "elems") || !tagged(e.items[2], "real"))
        throw ParseError(
            "expected (assembly (elems ...) (real (id ...) ...))", e.line,
            e.col);
    std::vector<std::string> carrier;
    for (std::size_t i = 1; i < e.items[1].items.size(); i++) {
        const Sexpr& a = e.items[1].items[i];
        if (!a.is_atom)
            throw ParseError("element ids must be atoms", a.line, a.col);
        carrier.push_back(a.atom);
    }
    std::map<std::string, RealizerSet> real;
    for (std::size_t i = 1; i < e.items[2].items.size(); i++) {
        const Sexpr& entry = e.items[2].items[i];
        if (entry.is_atom || entry.items.empty() || !entry.items[0].is_atom)
            throw ParseError("expected (id realizers...)", entry.line,
                             entry.col);
        real.emplace(entry.items[0].atom, set_of_items(entry));
    }
    return mk_assembly(std::move(carrier), std::move(real));
}

Assembly parse_assembly(const std::string& text) {
    return assembly_of_sexpr(parse_sexpr(text));
}

std::string print_assembly(const Assembly& a) {
    std::string out = "(assembly (elems";
    for (const auto& id : a.carrier) out += " " + id;
    out += ") (real";
    for (const auto& id : a.carrier) {
        const RealizerSet& s = a.real(id);
        out += " (" + id;
        if (s.kind() == RealizerSet::Kind::Full) {
            out += " full";
        } else if (s.kind() == RealizerSet::Kind::Derived) {
            out += " (term " + print_term(s.witness()) + ")";
        } else {
            for (const auto& t : s.elements()) {
                if (t->tag == TermTag::Num)
                    out += " " + std::to_string(t->num);
                else
                    out += " (term " + print_term(t) + ")";
            }
        }
        out += ")";
    }
    return out + "))";
}

AsmMorphism morphism_of_sexpr(const Sexpr& e) {
    if (!tagged(e, "morphism") || e.items.size() != 5 ||
        !tagged(e.items[3], "map") || !tagged(e.items[4], "tracker") ||
        e.items[4].items.size() != 2)
        throw ParseError("expected (morphism <asm> <asm> (map (b a) ...) "
                         "(tracker <term>))", e.line, e.col);
    Assembly src = assembly_of_sexpr(e.items[1]);
    Assembly dst = assembly_of_sexpr(e.items[2]);
    CarrierMap map;
    for (std::size_t i = 1; i < e.items[3].items.size(); i++) {
        const Sexpr& p = e.items[3].items[i];
        if (p.is_atom || p.items.size() != 2 || !p.items[0].is_atom ||
            !p.items[1].is_atom)
            throw ParseError("expected (src-elem dst-elem)", p.line, p.col);
        map[p.items[0].atom] = p.items[1].atom;
    }
    Term tracker = term_of_sexpr(e.items[4].items[1]);
    return mk_morphism(std::move(src), std::move(dst), std::move(map),
                       std::move(tracker));
}

AsmMorphism parse_morphism(const std::string& text) {
    return morphism_of_sexpr(parse_sexpr(text));
}

std::string print_morphism(const AsmMorphism& m) {
    std::string out = "(morphism " + print_assembly(m.src) + " " +
                      print_assembly(m.dst) + " (map";
    for (const auto& [b, a] : m.map) out += " (" + b + " " + a + ")";
    return out + ") (tracker " + print_term(m.tracker) + "))";
}

}  // namespace rwb
