// Benchmark: serial reference sweep vs the OpenMP block-parallel sweep
// over the same candidate pool.  Verdicts must agree; only wall time
// differs.  Usage: bench_sweep [pool-cap] [budget]

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rwb/suites.hpp"

using namespace rwb;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(SearchResult (*sweep)(const Formula&, const Fragment&,
                                    const std::vector<Term>&, std::uint64_t),
              const Formula& phi, const Fragment& frag,
              const std::vector<Term>& pool, std::uint64_t budget,
              SearchResult& out) {
    auto t0 = Clock::now();
    out = sweep(phi, frag, pool, budget);
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t cap = argc > 1 ? std::stoul(argv[1]) : 1500;
    std::uint64_t budget = argc > 2 ? std::stoull(argv[2]) : kDefaultBudget;

    Fragment frag = std_fragment(ModelKind::V);
    auto full = candidate_pool();
    std::vector<Term> pool(full.begin(),
                           full.begin() + std::min(cap, full.size()));

#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: not enabled (parallel sweep runs serially)\n";
#endif
    std::cout << "pool " << pool.size() << ", budget " << budget << "\n\n";

    const char* formulas[] = {
        // unrealized formulas force a full-pool scan (worst case)
        "(in #sempty #empty)",
        "(forall x (in x #omega))",
        "(bforall y #omega (in y #sempty))",
        // realized late enough to exercise both kernels
        "(imp (in #empty #sempty) (bexists z #aset (in #empty z)))",
        "(bexists y #pair (eq y #sempty))",
    };

    std::cout << "  serial-ms  parallel-ms  speedup  verdict  formula\n";
    double total_s = 0, total_p = 0;
    for (const char* text : formulas) {
        Formula phi = parse_formula(text);
        SearchResult rs, rp;
        double ms_s = run_ms(sweep_serial, phi, frag, pool, budget, rs);
        double ms_p = run_ms(sweep_parallel, phi, frag, pool, budget, rp);
        total_s += ms_s;
        total_p += ms_p;
        if (rs.found != rp.found ||
            (rs.found && !term_eq(rs.term, rp.term))) {
            std::cerr << "MISMATCH on " << text << "\n";
            return 1;
        }
        std::string verdict =
            rs.found ? "realized" : rs.had_timeout ? "not-found" : "refuted";
        std::printf("  %9.1f  %11.1f  %6.2fx  %-8s %s\n", ms_s, ms_p,
                    ms_p > 0 ? ms_s / ms_p : 0.0, verdict.c_str(), text);
    }
    std::printf("\n  total %.1f ms serial, %.1f ms parallel (%.2fx)\n",
                total_s, total_p, total_p > 0 ? total_s / total_p : 0.0);
    return 0;
}
