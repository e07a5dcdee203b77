#pragma once

#include <cstdint>
#include <vector>

#include "rwb/universe.hpp"

namespace rwb {

// Bounded realizer search over a deterministic candidate pool.  The
// pool is staged: named realizers first, then guarded/paired composites,
// then raw term enumeration, with hard caps so verdicts stay
// pool-relative but reproducible.

struct PoolConfig {
    std::size_t max_term_size = 9;  // raw-enumeration size bound
    std::size_t pair_cap = 3000;    // composite pair stage cap
    std::size_t wrap_cap = 400;     // K-wrapped pair stage cap
    std::size_t raw_cap = 600;      // raw enumeration stage cap
};

// The named stage: numerals, the standard combinators, the universe
// realizers (r_refl, sym, trans, the uniform fixed points) and the
// ε-clause members ⟨j, r_refl⟩.
std::vector<Term> named_library();

// Full staged pool; deterministic order, deduplicated.
std::vector<Term> candidate_pool(const PoolConfig& cfg = {});

// All closed application terms over the basic constants with node count
// ≤ max_size, in size-then-lexicographic order, capped.
std::vector<Term> enumerate_raw_terms(std::size_t max_size, std::size_t cap);

struct SearchResult {
    bool found = false;
    Term term;                  // when found
    std::size_t index = 0;      // position in the pool
    bool had_timeout = false;   // some earlier candidate timed out
    std::size_t pool_size = 0;
};

// First pool member (in order) whose check_force verdict is Realized.
// NotFound is pool-relative, never a refutation.  The same pool feeds
// the → and ¬ clauses of the forcing checker.
SearchResult search_realizer(const Formula& phi, const Fragment& frag,
                             const std::vector<Term>& pool,
                             std::uint64_t budget = kDefaultBudget);

// The two sweep kernels behind search_realizer: a serial reference and
// an OpenMP block-parallel version.  Both report the first success in
// pool order; had_timeout covers candidates before the found index.
SearchResult sweep_serial(const Formula& phi, const Fragment& frag,
                          const std::vector<Term>& pool,
                          std::uint64_t budget);
SearchResult sweep_parallel(const Formula& phi, const Fragment& frag,
                            const std::vector<Term>& pool,
                            std::uint64_t budget);

}  // namespace rwb
