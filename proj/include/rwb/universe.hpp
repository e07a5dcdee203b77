#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwb/logic.hpp"
#include "rwb/pca.hpp"

namespace rwb {

// Well-founded ℕ-edge-labelled trees: the elements of the set-theoretic
// realizability universes.  The V model reads a node as a finite
// multiset of labelled edges (duplicates meaningful); the U model as a
// finite partial function from labels to trees (distinct labels).

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

struct TreeEdge {
    std::uint64_t label;
    TreePtr child;
};

struct Tree {
    std::vector<TreeEdge> edges;  // canonically sorted
    std::string repr;             // canonical serialization, kind-neutral
};

// Canonicalizes: edges sorted by (label, child serialization).
TreePtr mk_tree(std::vector<TreeEdge> edges);
TreePtr empty_tree();

// Structural equality of canonical forms. This is meta-level identity,
// never the object-level equality (which is bisimulation via realizers).
bool tree_eq(const TreePtr& a, const TreePtr& b);

std::uint64_t tree_depth(const TreePtr& t);

enum class ModelKind { V, U };

// (vtree (0 (vtree)) ...) / (utree ...); utree rejects duplicate labels.
TreePtr tree_of_sexpr(const Sexpr& e, ModelKind kind);
TreePtr parse_tree(const std::string& text, ModelKind kind);
std::string print_tree(const TreePtr& t, ModelKind kind);

// Whether all nodes have pairwise distinct edge labels (U wellformedness).
bool distinct_labels(const TreePtr& t);

constexpr std::uint64_t kEncodeBound = 32;

// von Neumann numeral: edges {(j, encode(j)) : j < k}. The same tree
// serves as vn_encode and u_encode (labels are distinct by construction).
TreePtr vn_encode(std::uint64_t k);

// Finite, subtree-closed quantifier domain approximating the universe.
struct Fragment {
    ModelKind kind = ModelKind::V;
    std::vector<TreePtr> elements;            // deduped, subtree-closed
    std::map<std::string, std::size_t> names; // user names + e<k> aliases

    // Adds a tree (and its subtrees), returns its index.
    std::size_t add(const TreePtr& t, const std::string& name = "");
    const TreePtr& resolve(const std::string& constant) const;  // throws
    std::string canonical_name(std::size_t i) const;
};

constexpr std::uint64_t kMaxFragmentDepth = 4;
constexpr std::uint64_t kMaxFragmentWidth = 3;

// All trees of depth ≤ depth with ≤ width edges per node and labels
// < width, deduplicated structurally.
Fragment generate_fragment(ModelKind kind, std::uint64_t depth,
                           std::uint64_t width);

Fragment fragment_of_sexpr(const Sexpr& e);
Fragment parse_fragment(const std::string& text);
std::string print_fragment(const Fragment& frag);

enum class Force { Realized, Refuted, Timeout };

struct ForceResult {
    Force verdict;
    std::string reason;  // failing clause + path when Refuted

    bool realized() const { return verdict == Force::Realized; }
};

// Tree-realizer clause selector (the two readings of a decoration):
// Plain: n(m) defined and realizing v, for every edge (m, v).
// Decorated: n is a pair, n₀ = 0 (the uniform node realizer) and n₁
// maps every edge label into a decoration of the child.
enum class TreeRealizerMode { Plain, Decorated };

ForceResult is_tree_realizer(const Term& n, const TreePtr& w,
                             TreeRealizerMode mode = TreeRealizerMode::Plain,
                             std::uint64_t budget = kDefaultBudget);

struct ForceCtx {
    const Fragment* frag = nullptr;
    const std::vector<Term>* pool = nullptr;  // for → and ¬ clauses
    std::uint64_t budget = kDefaultBudget;

    // memo: which pool members realize a given (closed) premise
    struct PremiseInfo {
        std::vector<std::size_t> realizer_indices;
        bool had_timeout = false;
    };
    std::unordered_map<std::string, PremiseInfo> premise_cache;
};

struct UnknownConstant : std::runtime_error {
    explicit UnknownConstant(const std::string& name)
        : std::runtime_error("unknown constant '#" + name + "'") {}
};

// The recursive forcing clauses of the two universes, evaluated at desk
// scale: ∃/∀ quantify over the fragment; → and ¬ quantify over the
// candidate pool. Verdicts for → and ¬ are therefore pool-relative.
ForceResult check_force(const Term& n, const Formula& phi, ForceCtx& ctx);

// Named realizers.
Term mk_refl_realizer();
Term mk_sym_realizer();
Term mk_trans_realizer();
Term uniform_tree_realizer();        // fix(λr. λm. r)
Term uniform_decoration_realizer();  // fix(λr. ⟨0, λn. r⟩)

}  // namespace rwb
