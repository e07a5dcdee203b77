#include "rwb/realizer_set.hpp"

#include <stdexcept>

namespace rwb {

RealizerSet RealizerSet::finite(std::vector<Term> elems) {
    RealizerSet s;
    s.kind_ = Kind::Finite;
    for (auto& e : elems) {
        bool dup = false;
        for (const auto& f : s.elems_)
            if (term_eq(e, f)) dup = true;
        if (!dup) s.elems_.push_back(std::move(e));
    }
    return s;
}

RealizerSet RealizerSet::finite_nats(const std::vector<std::uint64_t>& ns) {
    std::vector<Term> elems;
    elems.reserve(ns.size());
    for (auto n : ns) elems.push_back(mk_num(n));
    return finite(std::move(elems));
}

RealizerSet RealizerSet::full() {
    RealizerSet s;
    s.kind_ = Kind::Full;
    return s;
}

RealizerSet RealizerSet::derived(std::string descriptor, CheckFn check,
                                 Term witness) {
    RealizerSet s;
    s.kind_ = Kind::Derived;
    s.descriptor_ = std::move(descriptor);
    s.check_ = std::move(check);
    s.witness_ = std::move(witness);
    return s;
}

bool RealizerSet::empty() const {
    return kind_ == Kind::Finite && elems_.empty();
}

Membership RealizerSet::contains(const Term& n, std::uint64_t budget) const {
    switch (kind_) {
        case Kind::Finite:
            for (const auto& e : elems_)
                if (term_eq(e, n)) return Membership::Yes;
            return Membership::No;
        case Kind::Full:
            return n->tag == TermTag::Num ? Membership::Yes : Membership::No;
        case Kind::Derived:
            return check_(n, budget);
    }
    return Membership::No;
}

Term RealizerSet::witness() const {
    switch (kind_) {
        case Kind::Finite:
            if (elems_.empty())
                throw std::logic_error("witness of an empty realizer set");
            return elems_[0];
        case Kind::Full:
            return mk_num(0);
        case Kind::Derived:
            return witness_;
    }
    throw std::logic_error("unreachable");
}

std::vector<Term> RealizerSet::sample(std::size_t full_prefix) const {
    switch (kind_) {
        case Kind::Finite:
            return elems_;
        case Kind::Full: {
            std::vector<Term> out;
            for (std::size_t i = 0; i < full_prefix; i++)
                out.push_back(mk_num(i));
            return out;
        }
        case Kind::Derived:
            return {witness_};
    }
    return {};
}

RealizerSet union_sets(const std::vector<RealizerSet>& sets) {
    bool all_finite = true;
    for (const auto& s : sets)
        if (s.kind() != RealizerSet::Kind::Finite) all_finite = false;
    if (all_finite) {
        std::vector<Term> elems;
        for (const auto& s : sets)
            for (const auto& e : s.elements()) elems.push_back(e);
        return RealizerSet::finite(std::move(elems));
    }
    Term w;
    std::string desc = "union(";
    for (const auto& s : sets) {
        if (!w && !s.empty()) w = s.witness();
        if (desc.back() != '(') desc += ", ";
        desc += s.kind() == RealizerSet::Kind::Finite ? "finite"
                : s.kind() == RealizerSet::Kind::Full ? "full"
                                                      : s.descriptor();
    }
    desc += ")";
    if (!w) throw std::logic_error("union of empty realizer sets");
    auto copies = sets;  // captured by value: sets are immutable data
    return RealizerSet::derived(
        desc,
        [copies](const Term& n, std::uint64_t budget) {
            bool timeout = false;
            for (const auto& s : copies) {
                Membership m = s.contains(n, budget);
                if (m == Membership::Yes) return Membership::Yes;
                if (m == Membership::Timeout) timeout = true;
            }
            return timeout ? Membership::Timeout : Membership::No;
        },
        w);
}

RealizerSet pair_set(const RealizerSet& a, const RealizerSet& b,
                     std::string descriptor) {
    // two finite operands admit an explicit enumeration, keeping the
    // standard constructions inside finitely-presented realizer sets
    if (a.kind() == RealizerSet::Kind::Finite &&
        b.kind() == RealizerSet::Kind::Finite) {
        std::vector<Term> elems;
        for (const auto& x : a.elements())
            for (const auto& y : b.elements())
                elems.push_back(pair_val(x, y));
        return RealizerSet::finite(std::move(elems));
    }
    Term w = pair_val(a.witness(), b.witness());
    return RealizerSet::derived(
        std::move(descriptor),
        [a, b](const Term& n, std::uint64_t budget) {
            auto p0 = proj0(n, budget);
            if (p0.kind == OutcomeKind::Timeout) return Membership::Timeout;
            if (!p0.ok()) return Membership::No;
            Membership m0 = a.contains(p0.value, budget);
            if (m0 == Membership::No) return Membership::No;
            auto p1 = proj1(n, budget);
            if (p1.kind == OutcomeKind::Timeout) return Membership::Timeout;
            if (!p1.ok()) return Membership::No;
            Membership m1 = b.contains(p1.value, budget);
            if (m0 == Membership::Timeout || m1 == Membership::Timeout)
                return m1 == Membership::No ? Membership::No
                                            : Membership::Timeout;
            return m1;
        },
        w);
}

RealizerSet realizer_set_of_sexpr(const Sexpr& e) {
    if (!tagged(e, "rs"))
        throw ParseError("expected (rs ...)", e.line, e.col);
    if (e.items.size() == 2 && e.items[1].is_atom && e.items[1].atom == "full")
        return RealizerSet::full();
    std::vector<Term> elems;
    for (std::size_t i = 1; i < e.items.size(); i++) {
        const Sexpr& it = e.items[i];
        if (it.is_atom) {
            if (it.atom.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("expected a natural number or (term ...)",
                                 it.line, it.col);
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

std::string print_realizer_set(const RealizerSet& s) {
    switch (s.kind()) {
        case RealizerSet::Kind::Full:
            return "(rs full)";
        case RealizerSet::Kind::Derived:
            return "(rs derived \"" + s.descriptor() + "\" witness " +
                   print_term(s.witness()) + ")";
        case RealizerSet::Kind::Finite: {
            std::string out = "(rs";
            for (const auto& e : s.elements()) {
                if (e->tag == TermTag::Num)
                    out += " " + std::to_string(e->num);
                else
                    out += " (term " + print_term(e) + ")";
            }
            return out + ")";
        }
    }
    return "(rs)";
}

}  // namespace rwb
