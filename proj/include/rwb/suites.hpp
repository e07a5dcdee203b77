#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwb/search.hpp"

namespace rwb {

// Canned experiment suites: set-theoretic axiom instances and
// constructivist principles checked against a universe fragment.
// Schemas are tested as finitely many closed instances over fragment
// constants, never as schemas; verdicts are pool- and fragment-relative.

struct SuiteCase {
    std::string name;
    std::string expected;  // realized | not-found | refuted | report-only
                           // | out-of-scope
    Formula formula;       // null for builtin / out-of-scope cases
    std::string builtin;   // named non-formula check when non-empty
};

struct CaseRecord {
    std::string name;
    std::string formula;   // printed, or builtin description
    std::string verdict;   // realized | refuted | not-found | timeout |
                           // out-of-scope
    std::string witness;   // printed term when realized
    std::string expected;
    bool matched = false;
    bool reverified = false;  // witness re-checked at double budget
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseRecord> cases;
    std::size_t passed = 0, failed = 0, out_of_scope = 0;
    std::size_t pool_size = 0;
    std::uint64_t budget = 0;

    bool ok() const { return failed == 0; }
};

struct SuiteManifest {
    std::string name;
    ModelKind kind = ModelKind::V;
    std::string fragment_spec;  // "std" | "gen D W" | "" (caller supplies)
    std::vector<SuiteCase> cases;
};

// (suite <name> (fragment std v) (case <name> <expected> <formula>)
//  (case <name> <expected> (builtin <check>)) ...)
SuiteManifest suite_of_sexpr(const Sexpr& e);
SuiteManifest parse_suite(const std::string& text);

// The standard fragment: ∅, {∅}, the doubled {∅,∅} (V only), the pair
// {∅, {∅}}, the set {{∅}} and the numerals vn(0..3), all named.
Fragment std_fragment(ModelKind kind);

SuiteReport run_suite(const SuiteManifest& m, const Fragment& frag,
                      const std::vector<Term>& pool,
                      std::uint64_t budget = kDefaultBudget);

// Bundled suites built in code: the axiom instances (empty set,
// pairing, union, extensionality) and the principle checks (UP
// instance, the uniformity fixed point, the fix-based Markov searcher;
// CT/IP/IP_ω/PA/RDC/CC listed out of scope).
SuiteManifest axiom_manifest(ModelKind kind);
SuiteManifest principles_manifest(ModelKind kind);

SuiteReport run_axiom_instances(const Fragment& frag,
                                const std::vector<Term>& pool,
                                std::uint64_t budget = kDefaultBudget);
SuiteReport run_principles(const Fragment& frag,
                           const std::vector<Term>& pool,
                           std::uint64_t budget = kDefaultBudget);

// The unbounded-search realizer behind the Markov cases: applied to
// ⟨start, bitstream⟩ it walks the stream until a zero bit and returns
// that index.  Streams are built with fix; see mk_eventually_zero.
Term mk_mp_searcher();

// An infinite bit stream ⟨b₀, ⟨b₁, ...⟩⟩ that is 1 on every index not
// in `zeros` below the repetition point and cycles with period bits.
Term mk_bit_stream(const std::vector<std::uint64_t>& prefix_bits);

std::string render_report(const SuiteReport& r, bool records);

}  // namespace rwb
