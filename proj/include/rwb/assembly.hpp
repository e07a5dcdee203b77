#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rwb/realizer_set.hpp"

namespace rwb {

// The category of assemblies over finite carriers: a carrier set with a
// surjective realizer relation, morphisms tracked by PCA terms, and the
// standard constructions (limits, images, covers, ∀_f, sums, displays,
// exponentials, W-types, weak power objects) as executable operations
// producing explicit realizer sets.

struct EmptyRealizerSet : std::runtime_error {
    explicit EmptyRealizerSet(const std::string& elem)
        : std::runtime_error("element '" + elem +
                             "' has an empty realizer set") {}
};

struct Assembly {
    std::vector<std::string> carrier;             // ordered, unique ids
    std::map<std::string, RealizerSet> realizers;

    const RealizerSet& real(const std::string& id) const;
    bool has(const std::string& id) const;
};

// Validates surjectivity (every element has a witness) and id uniqueness.
Assembly mk_assembly(std::vector<std::string> carrier,
                     std::map<std::string, RealizerSet> realizers);

Assembly terminal_assembly();  // ({*}, Full)

// |α(a)| = 1 everywhere: α is a function A → values.
bool is_partitioned(const Assembly& a);

using CarrierMap = std::map<std::string, std::string>;

struct AsmMorphism {
    Assembly src, dst;
    CarrierMap map;
    Term tracker;
    std::uint64_t budget = kDefaultBudget;
};

// Validates totality of the map and carrier membership of its values.
AsmMorphism mk_morphism(Assembly src, Assembly dst, CarrierMap map,
                        Term tracker, std::uint64_t budget = kDefaultBudget);

AsmMorphism identity_morphism(const Assembly& a);

// g ∘ f with tracker λn. g.tracker (f.tracker n).
AsmMorphism compose(const AsmMorphism& g, const AsmMorphism& f);

enum class Verdict { Verified, CounterExample, Inconclusive };

struct CheckReport {
    Verdict verdict;
    std::string detail;       // counterexample location when refuted
    std::size_t sample_size = 0;
    std::uint64_t budget = 0;

    bool verified() const { return verdict == Verdict::Verified; }
};

// Tracking condition over the verification sample: for each b and each
// sampled n ∈ src(b), r(n) is defined and lands in dst(f b).
CheckReport is_tracker(const Term& r, const CarrierMap& f,
                       const Assembly& src, const Assembly& dst,
                       std::uint64_t budget = kDefaultBudget);

// Cover condition: for each a in the target and sampled n ∈ α(a), s(n)
// is defined and realizes some element of the fibre over a.
CheckReport verify_cover(const AsmMorphism& f, const Term& s,
                         std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------
// Finite limits and images

std::string pair_id(const std::string& b, const std::string& c);

struct PullbackResult {
    Assembly apex;       // carrier B ×_A C, ids pair_id(b, c)
    AsmMorphism to_src_of_f;  // tracked by the first projection
    AsmMorphism to_src_of_g;  // tracked by the second projection
};

// π(b,c) = { n : n₀ ∈ β(b) and n₁ ∈ γ(c) }.
PullbackResult pullback(const AsmMorphism& f, const AsmMorphism& g);

struct ImageResult {
    Assembly img;        // ι(a) = union of the fibre's realizer sets
    AsmMorphism cover;   // src ↠ img, same tracker as the identity
    AsmMorphism mono;    // img ↪ dst
};

ImageResult image(const AsmMorphism& f);

struct SumResult {
    Assembly sum;        // ids prefixed l. and r.
    AsmMorphism inl, inr;  // tracked by the identity term
};

SumResult sum(const Assembly& a, const Assembly& b);

// ---------------------------------------------------------------
// Right adjoint to pullback along f (the ∀_f of the Heyting structure)

struct ForallResult {
    Assembly sub;        // sub-assembly of f's target with ρ realizers
    std::map<std::string, Term> inhabitant;  // found ρ(a) witnesses
    bool truncated = false;  // candidate pool exhausted somewhere
};

// S must be a sub-assembly of f's source (carrier subset).  An element
// a enters the result when its whole fibre lies in S and a candidate
// n with n₀ ∈ α(a), and n₁ sending each sampled m ∈ β(b) into σ(b)
// for every fibre element b, is found in the pool.
ForallResult forall_f(const Assembly& S, const AsmMorphism& f,
                      const std::vector<Term>& pool,
                      std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------
// Displays, exponentials, W-types

// β[f](b) = { n : n₀ ∈ β(b) and n₁ ∈ α(f b) }.
std::map<std::string, RealizerSet> bracket(
    const std::map<std::string, RealizerSet>& beta, const CarrierMap& f,
    const Assembly& a);

struct DisplayMapData {
    AsmMorphism morphism;  // (B, β[f]) → (A, α), tracked by p1
    std::map<std::string, RealizerSet> beta;  // finite per-element sets

    std::vector<std::string> fibre(const std::string& a) const;
};

// Builds the standard display map over A from carrier data: elements of
// B, their finite β-sets and the fibre assignment.
DisplayMapData mk_display(const std::vector<std::string>& b_carrier,
                          const std::map<std::string, RealizerSet>& beta,
                          const CarrierMap& f, const Assembly& a);

// Pulling a standard display back along any morphism yields a standard
// display over the morphism's source (stability).
DisplayMapData pullback_display(const DisplayMapData& d,
                                const AsmMorphism& h);

struct ExponentialResult {
    Assembly total;       // pairs (a, φ) with η(a,φ) realizers
    AsmMorphism to_base;  // projection to A
    std::map<std::string, CarrierMap> assignment;  // id → φ
    std::map<std::string, Term> found_tracker;     // id → n
    bool truncated = false;
};

// Fibrewise exponential Π_f g: carrier pairs (a, φ: B_a → C_a) for
// which a tracker n with n₀ ∈ α(a) and n₁ mapping each m ∈ β(b) into
// γ(φ b) is found in the pool.
ExponentialResult exponential(const DisplayMapData& f, const AsmMorphism& g,
                              const std::vector<Term>& pool,
                              std::uint64_t budget = kDefaultBudget);

// Well-founded trees sup_a(t) over a display map.
struct WTree;
using WTreePtr = std::shared_ptr<const WTree>;

struct WTree {
    std::string root;  // a ∈ A
    std::vector<std::pair<std::string, WTreePtr>> children;  // b ↦ subtree
    std::string repr;
};

WTreePtr mk_wtree(std::string root,
                  std::vector<std::pair<std::string, WTreePtr>> children);

struct WTypeResult {
    std::vector<WTreePtr> trees;  // all trees of depth ≤ the bound
    bool truncated = false;       // tree count cap was hit
};

constexpr std::size_t kMaxWTrees = 4096;

WTypeResult wtype(const DisplayMapData& f, std::uint64_t depth_bound);

// δ(sup_a t) = { n : n₀ ∈ α(a) and for each b in the fibre and each
// m ∈ β(b), n₁(m) is defined and in δ(t b) } — computed by structural
// recursion on the tree.
RealizerSet decoration(const DisplayMapData& f, const WTreePtr& w);

// A decoration realizer for w built by structural recursion (pairing,
// constant functions and a zero-test dispatch on β-labels); falls back
// to the supplied pool when the shape is out of reach.
struct DecorationWitness {
    bool found = false;
    Term term;
};
DecorationWitness build_decoration(const DisplayMapData& f, const WTreePtr& w,
                                   const std::vector<Term>& pool,
                                   std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------
// Weak power object

struct WeakPowerResult {
    Assembly power;       // pairs (α, φ) with π realizers
    Assembly member_rel;  // pairs (x, (α, φ)) with η realizers
    std::map<std::string, Term> found_tracker;
    bool truncated = false;
};

constexpr std::size_t kWeakPowerGuard = 64;

// π(α,φ) = { n : for all x ∈ α and m ∈ φ(x), n(m) ∈ χ(x) }; carriers
// restricted to pairs admitting a pool tracker.  Refuses when
// |carrier| · |pool| exceeds the guard.
WeakPowerResult weak_power(const Assembly& x,
                           const std::vector<std::uint64_t>& value_pool,
                           const std::vector<Term>& search_pool,
                           std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------
// Covers and covering squares

struct NonCommuting : std::runtime_error {
    explicit NonCommuting(const std::string& at)
        : std::runtime_error("square does not commute at '" + at + "'") {}
};

// Square with top: D→C, left: D→B, right: C→A, bottom: B→A.  Verified
// when the bottom is a cover (witness s_bottom) and the canonical map
// D → B ×_A C is a cover (witness s_canon).
CheckReport is_covering_square(const AsmMorphism& top, const AsmMorphism& left,
                               const AsmMorphism& right,
                               const AsmMorphism& bottom, const Term& s_canon,
                               const Term& s_bottom,
                               std::uint64_t budget = kDefaultBudget);

struct PartitionedCoverResult {
    Assembly part;       // carrier {(n, a) : n ∈ α(a)}, singleton sets
    AsmMorphism proj;    // cover onto the original, identity-tracked
};

// Requires finitely enumerated realizer sets; throws std::invalid_argument
// on Full or Derived ones.
PartitionedCoverResult partitioned_cover(const Assembly& a);

// ---------------------------------------------------------------
// File formats

// (assembly (elems a b) (real (a 0 1) (b full)))
Assembly assembly_of_sexpr(const Sexpr& e);
Assembly parse_assembly(const std::string& text);
std::string print_assembly(const Assembly& a);

// (morphism <assembly> <assembly> (map (a x) (b y)) (tracker <term>))
AsmMorphism morphism_of_sexpr(const Sexpr& e);
AsmMorphism parse_morphism(const std::string& text);
std::string print_morphism(const AsmMorphism& m);

}  // namespace rwb
