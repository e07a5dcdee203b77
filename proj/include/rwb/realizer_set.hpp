#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rwb/pca.hpp"

namespace rwb {

// A (possibly infinite) set of realizers, given intensionally.  The
// elements are closed PCA values; naturals embed as numerals.  Sets
// produced by the categorical constructions are Derived: a membership
// semi-decider compiled from the construction plus a canonical witness.
// Set equality is never decided, only membership and inhabitation.

enum class Membership { Yes, No, Timeout };

class RealizerSet {
   public:
    enum class Kind { Finite, Full, Derived };
    using CheckFn = std::function<Membership(const Term&, std::uint64_t)>;

    static RealizerSet finite(std::vector<Term> elems);
    static RealizerSet finite_nats(const std::vector<std::uint64_t>& ns);
    static RealizerSet full();
    static RealizerSet derived(std::string descriptor, CheckFn check,
                               Term witness);

    Kind kind() const { return kind_; }
    bool empty() const;  // no witness available

    Membership contains(const Term& n,
                        std::uint64_t budget = kDefaultBudget) const;

    // Canonical member; throws std::logic_error on an empty finite set.
    Term witness() const;

    // The verification sample: all members of a finite set, the witness
    // of a derived set, the first `full_prefix` numerals of the full set.
    std::vector<Term> sample(std::size_t full_prefix = 16) const;

    // Finite elements (empty unless kind == Finite).
    const std::vector<Term>& elements() const { return elems_; }

    const std::string& descriptor() const { return descriptor_; }

   private:
    Kind kind_ = Kind::Finite;
    std::vector<Term> elems_;
    CheckFn check_;
    Term witness_;
    std::string descriptor_;
};

// Union preserving finiteness when every operand is finite; otherwise a
// Derived set whose membership is the disjunction of the operands'.
RealizerSet union_sets(const std::vector<RealizerSet>& sets);

// The set of pair values ⟨m, k⟩ with m ∈ a and k ∈ b.
RealizerSet pair_set(const RealizerSet& a, const RealizerSet& b,
                     std::string descriptor);

// (rs 0 1 2), (rs full), or (rs (term <t>) ...) — terms beyond numerals.
RealizerSet realizer_set_of_sexpr(const Sexpr& e);
std::string print_realizer_set(const RealizerSet& s);

}  // namespace rwb
