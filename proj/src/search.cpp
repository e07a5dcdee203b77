#include "rwb/search.hpp"

#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rwb {

std::vector<Term> named_library() {
    Term r = mk_refl_realizer();
    std::vector<Term> lib;
    for (std::uint64_t i = 0; i < 5; i++) lib.push_back(mk_num(i));
    lib.push_back(r);
    for (std::uint64_t j = 0; j < 4; j++)
        lib.push_back(pair_val(mk_num(j), r));
    lib.push_back(i_combinator());
    lib.push_back(mk_k());
    lib.push_back(mk_s());
    lib.push_back(uniform_tree_realizer());
    lib.push_back(uniform_decoration_realizer());
    lib.push_back(mk_sym_realizer());
    lib.push_back(mk_trans_realizer());
    lib.push_back(mk_p());
    lib.push_back(mk_p0());
    lib.push_back(mk_p1());
    lib.push_back(mk_succ());
    lib.push_back(mk_ifz());
    lib.push_back(mk_app(mk_k(), mk_num(0)));
    // named composites: the label-0 bisimulation realizer (both = clause
    // directions answer with first-edge membership), the ∃-through-edge-0
    // witness and their constant-function wrappings for → clauses
    Term mem0 = pair_val(mk_num(0), r);
    Term mem1 = pair_val(mk_num(1), r);
    Term bisim0 = pair_val(mk_app(mk_k(), mem0), mk_app(mk_k(), mem0));
    for (Term t : {bisim0, pair_val(mem0, r), pair_val(mem0, mem0),
                   pair_val(mem0, mem1)}) {
        lib.push_back(t);
        lib.push_back(mk_app(mk_k(), t));
    }
    return lib;
}

std::vector<Term> enumerate_raw_terms(std::size_t max_size, std::size_t cap) {
    std::vector<Term> leaves = {mk_k(),    mk_s(),    mk_p(),
                                mk_p0(),   mk_p1(),   mk_succ(),
                                mk_ifz(),  mk_num(0), mk_num(1),
                                mk_num(2)};
    // by_size[s] = all application trees with s nodes; generation stops
    // once the cap is reachable so large size bounds stay affordable
    std::vector<std::vector<Term>> by_size(max_size + 1);
    if (max_size >= 1) by_size[1] = leaves;
    std::vector<Term> out;
    for (std::size_t s = 1; s <= max_size; s++) {
        if (out.size() >= cap) break;
        for (std::size_t l = 1; s >= 3 && l + 2 <= s; l++)
            for (const auto& f : by_size[l]) {
                if (out.size() + by_size[s].size() >= cap) break;
                for (const auto& x : by_size[s - 1 - l]) {
                    if (out.size() + by_size[s].size() >= cap) break;
                    by_size[s].push_back(mk_app(f, x));
                }
            }
        for (const auto& t : by_size[s]) {
            if (out.size() >= cap) break;
            out.push_back(t);
        }
    }
    return out;
}

std::vector<Term> candidate_pool(const PoolConfig& cfg) {
    std::vector<Term> pool;
    std::set<std::string> seen;
    auto add = [&](const Term& t) {
        std::string key = print_term(t);
        if (seen.insert(key).second) pool.push_back(t);
    };

    std::vector<Term> lib = named_library();
    for (const auto& t : lib) add(t);

    // guarded stage: K x (constant functions) and P x (pending pairs)
    std::vector<Term> q = lib;
    for (const auto& t : lib) {
        Term kx = mk_app(mk_k(), t);
        Term px = mk_app(mk_p(), t);
        add(kx);
        add(px);
        q.push_back(kx);
        q.push_back(px);
    }

    // pair stage: ⟨q_i, q_j⟩ ordered by i + j so small indices pair
    // first; capped
    std::vector<Term> pairs;
    for (std::size_t s = 0; s + 2 <= 2 * q.size() && pairs.size() < cfg.pair_cap;
         s++) {
        for (std::size_t i = 0; i <= s && pairs.size() < cfg.pair_cap; i++) {
            std::size_t j = s - i;
            if (i >= q.size() || j >= q.size()) continue;
            Term p = pair_val(q[i], q[j]);
            pairs.push_back(p);
            add(p);
        }
    }

    // K-wrapped pairs: constant functions returning a pair, for
    // implication realizers ignoring the premise
    for (std::size_t i = 0; i < pairs.size() && i < cfg.wrap_cap; i++)
        add(mk_app(mk_k(), pairs[i]));

    for (const auto& t : enumerate_raw_terms(cfg.max_term_size, cfg.raw_cap))
        add(t);

    return pool;
}

SearchResult sweep_serial(const Formula& phi, const Fragment& frag,
                          const std::vector<Term>& pool,
                          std::uint64_t budget) {
    SearchResult out;
    out.pool_size = pool.size();
    ForceCtx ctx{&frag, &pool, budget, {}};
    for (std::size_t i = 0; i < pool.size(); i++) {
        ForceResult r = check_force(pool[i], phi, ctx);
        if (r.realized()) {
            out.found = true;
            out.term = pool[i];
            out.index = i;
            return out;
        }
        if (r.verdict == Force::Timeout) out.had_timeout = true;
    }
    return out;
}

SearchResult sweep_parallel(const Formula& phi, const Fragment& frag,
                            const std::vector<Term>& pool,
                            std::uint64_t budget) {
    SearchResult out;
    out.pool_size = pool.size();
    constexpr std::size_t kBlock = 64;
    // premise memo shared across blocks: the head of each block runs
    // serially to warm it, the rest of the block works on copies (the
    // cached values are deterministic, so merge order cannot matter)
    ForceCtx master{&frag, &pool, budget, {}};
    for (std::size_t start = 0; start < pool.size(); start += kBlock) {
        std::size_t end = std::min(start + kBlock, pool.size());
        std::vector<Force> verdicts(end - start, Force::Refuted);
        verdicts[0] = check_force(pool[start], phi, master).verdict;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
        for (long long k = 1; k < (long long)(end - start); k++) {
            ForceCtx ctx{&frag, &pool, budget, master.premise_cache};
            verdicts[k] =
                check_force(pool[start + k], phi, ctx).verdict;
        }
        for (std::size_t k = 0; k < verdicts.size(); k++) {
            if (verdicts[k] == Force::Realized) {
                out.found = true;
                out.term = pool[start + k];
                out.index = start + k;
                return out;
            }
            if (verdicts[k] == Force::Timeout) out.had_timeout = true;
        }
    }
    return out;
}

SearchResult search_realizer(const Formula& phi, const Fragment& frag,
                             const std::vector<Term>& pool,
                             std::uint64_t budget) {
    return sweep_serial(phi, frag, pool, budget);
}

}  // namespace rwb
