// rwb: command-line front door for the realizability workbench.
//
// Subcommands: reduce, check track|cover|square|force,
// asm pullback|image|forall|exp|wtype|power|partition, frag gen,
// search, suite.  Every report states its pool and fragment bounds so
// an approximate verdict never reads as a theorem.  Exit codes:
//   0  Value / Verified / Realized / suite fully matched
//   1  parse error or malformed input
//   2  Undefined / CounterExample / Refuted / suite mismatch
//   3  Timeout / Inconclusive / NotFound / truncated construction

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rwb/assembly.hpp"
#include "rwb/suites.hpp"

using namespace rwb;

namespace {

struct Config {
    std::uint64_t budget = kDefaultBudget;
    std::size_t pool_size = 9;
    std::uint64_t frag_depth = 3;
    std::uint64_t frag_width = 2;
    std::uint64_t seed = 0;  // sample-selection order only, never verdicts
    std::string format = "text";
    std::string model = "v";

    bool records() const { return format == "records"; }
    ModelKind kind() const {
        return model == "u" ? ModelKind::U : ModelKind::V;
    }
    std::vector<Term> pool() const {
        PoolConfig pc;
        pc.max_term_size = pool_size;
        return candidate_pool(pc);
    }
};

int g_exit = 0;

// Inputs are a file path when one exists, inline text otherwise.
std::string read_input(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

std::uint64_t fragment_depth(const Fragment& frag) {
    std::uint64_t d = 0;
    for (const auto& t : frag.elements) d = std::max(d, tree_depth(t));
    return d;
}

std::string relativity(const Config& cfg, const Fragment* frag) {
    std::string s = "pool=size<=" + std::to_string(cfg.pool_size);
    if (frag)
        s += " frag=depth" + std::to_string(fragment_depth(*frag));
    return s;
}

Fragment load_fragment(const std::string& spec, const Config& cfg) {
    if (spec == "std") return std_fragment(cfg.kind());
    return parse_fragment(read_input(spec));
}

int force_exit(Force v) {
    switch (v) {
        case Force::Realized: return 0;
        case Force::Refuted: return 2;
        default: return 3;
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Verified: return 0;
        case Verdict::CounterExample: return 2;
        default: return 3;
    }
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::CounterExample: return "counterexample";
        default: return "inconclusive";
    }
}

void emit_check(const std::string& cmd, const CheckReport& rep,
                const Config& cfg) {
    if (cfg.records()) {
        std::cout << "record cmd=" << cmd
                  << " verdict=" << verdict_name(rep.verdict)
                  << " sample=" << rep.sample_size
                  << " budget=" << rep.budget << " "
                  << relativity(cfg, nullptr);
        if (!rep.detail.empty()) std::cout << " detail=\"" << rep.detail
                                           << "\"";
        std::cout << "\n";
    } else {
        std::cout << cmd << ": " << verdict_name(rep.verdict);
        if (!rep.detail.empty()) std::cout << " (" << rep.detail << ")";
        std::cout << "; sample " << rep.sample_size << ", budget "
                  << rep.budget << ", " << relativity(cfg, nullptr) << "\n";
    }
    g_exit = verdict_exit(rep.verdict);
}

void emit_assembly(const std::string& label, const Assembly& a,
                   const Config& cfg) {
    if (cfg.records()) {
        std::cout << "record cmd=" << label << " carrier=" << a.carrier.size();
        for (const auto& id : a.carrier)
            std::cout << " elem=" << id
                      << " real=" << print_realizer_set(a.real(id));
        std::cout << "\n";
    } else {
        std::cout << label << ":\n" << print_assembly(a);
    }
}

// (display <assembly> (elems b ...) (beta (b <realizer-set>) ...)
//  (map (b a) ...)) — the standard display map file format
DisplayMapData display_of_file(const std::string& arg) {
    Sexpr e = parse_sexpr(read_input(arg));
    if (!tagged(e, "display") || e.items.size() != 5)
        throw rwb::ParseError(
            "expected (display <assembly> (elems ...) (beta ...) (map ...))",
            e.line, e.col);
    Assembly a = assembly_of_sexpr(e.items[1]);
    const Sexpr& elems = e.items[2];
    if (!tagged(elems, "elems"))
        throw rwb::ParseError("expected (elems ...)", elems.line, elems.col);
    std::vector<std::string> b_carrier;
    for (std::size_t i = 1; i < elems.items.size(); i++)
        b_carrier.push_back(elems.items[i].atom);
    const Sexpr& betas = e.items[3];
    if (!tagged(betas, "beta"))
        throw rwb::ParseError("expected (beta ...)", betas.line, betas.col);
    std::map<std::string, RealizerSet> beta;
    for (std::size_t i = 1; i < betas.items.size(); i++) {
        const Sexpr& entry = betas.items[i];
        if (entry.is_atom || entry.items.size() != 2)
            throw rwb::ParseError("expected (b <realizer-set>)", entry.line,
                                  entry.col);
        beta.emplace(entry.items[0].atom,
                     realizer_set_of_sexpr(entry.items[1]));
    }
    const Sexpr& maps = e.items[4];
    if (!tagged(maps, "map"))
        throw rwb::ParseError("expected (map ...)", maps.line, maps.col);
    CarrierMap f;
    for (std::size_t i = 1; i < maps.items.size(); i++) {
        const Sexpr& entry = maps.items[i];
        if (entry.is_atom || entry.items.size() != 2)
            throw rwb::ParseError("expected (b a)", entry.line, entry.col);
        f[entry.items[0].atom] = entry.items[1].atom;
    }
    return mk_display(b_carrier, beta, f, a);
}

SuiteManifest load_manifest(const std::string& arg) {
    if (arg == "axioms-v") return axiom_manifest(ModelKind::V);
    if (arg == "axioms-u") return axiom_manifest(ModelKind::U);
    if (arg == "principles-v") return principles_manifest(ModelKind::V);
    if (arg == "principles-u") return principles_manifest(ModelKind::U);
    return parse_suite(read_input(arg));
}

Fragment manifest_fragment(const SuiteManifest& m, const Config& cfg) {
    std::istringstream ss(m.fragment_spec.empty() ? "std"
                                                  : m.fragment_spec);
    std::string head;
    ss >> head;
    if (head == "std") {
        return std_fragment(m.kind);
    }
    if (head == "gen") {
        std::uint64_t d = cfg.frag_depth, w = cfg.frag_width;
        ss >> d >> w;
        return generate_fragment(m.kind, d, w);
    }
    return parse_fragment(read_input(head));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"realizability workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    if (const char* env = std::getenv("RWB_BUDGET"))
        cfg.budget = std::strtoull(env, nullptr, 10);
    app.add_option("--budget", cfg.budget, "reduction step budget");
    app.add_option("--pool-size", cfg.pool_size,
                   "candidate pool raw-term size bound");
    app.add_option("--frag-depth", cfg.frag_depth, "generated fragment depth");
    app.add_option("--frag-width", cfg.frag_width, "generated fragment width");
    app.add_option("--seed", cfg.seed,
                   "sampling order seed (never affects exhaustive verdicts)");
    app.add_option("--format", cfg.format, "text | records")
        ->check(CLI::IsMember({"text", "records"}));
    app.add_option("--model", cfg.model, "universe model: v | u")
        ->check(CLI::IsMember({"v", "u"}));

    // ------------------------------------------------------------ reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a closed term")->fallthrough();
    std::string reduce_term;
    reduce_cmd->add_option("term", reduce_term, "term (inline or file)")
        ->required();
    reduce_cmd->callback([&] {
        Term t = parse_term(read_input(reduce_term));
        ReductionOutcome out = reduce(t, cfg.budget);
        std::string kind = out.kind == OutcomeKind::Value ? "value"
                           : out.kind == OutcomeKind::Undefined ? "undefined"
                                                                : "timeout";
        if (cfg.records()) {
            std::cout << "record cmd=reduce outcome=" << kind;
            if (out.ok()) std::cout << " value=" << print_term(out.value);
            std::cout << " steps=" << out.steps << " budget=" << cfg.budget
                      << "\n";
        } else {
            if (out.ok())
                std::cout << "value " << print_term(out.value) << ", steps="
                          << out.steps << "\n";
            else
                std::cout << kind << ", steps=" << out.steps << "\n";
        }
        g_exit = out.kind == OutcomeKind::Value      ? 0
                 : out.kind == OutcomeKind::Undefined ? 2
                                                      : 3;
    });

    // ------------------------------------------------------------- check
    auto* check_cmd = app.add_subcommand("check", "verification checks")->fallthrough();
    check_cmd->require_subcommand(1);

    std::string track_morphism;
    auto* track_cmd =
        check_cmd->add_subcommand("track", "tracking condition of a morphism")->fallthrough();
    track_cmd->add_option("morphism", track_morphism, "morphism file")
        ->required();
    track_cmd->callback([&] {
        AsmMorphism m = parse_morphism(read_input(track_morphism));
        emit_check("check-track",
                   is_tracker(m.tracker, m.map, m.src, m.dst, cfg.budget),
                   cfg);
    });

    std::string cover_morphism, cover_section;
    auto* cover_cmd =
        check_cmd->add_subcommand("cover", "cover condition with a section")->fallthrough();
    cover_cmd->add_option("morphism", cover_morphism, "morphism file")
        ->required();
    cover_cmd->add_option("--section", cover_section,
                          "section term (default: identity)");
    cover_cmd->callback([&] {
        AsmMorphism m = parse_morphism(read_input(cover_morphism));
        Term s = cover_section.empty() ? i_combinator()
                                       : parse_term(read_input(cover_section));
        emit_check("check-cover", verify_cover(m, s, cfg.budget), cfg);
    });

    std::string sq_top, sq_left, sq_right, sq_bottom, sq_canon, sq_section;
    auto* square_cmd =
        check_cmd->add_subcommand("square", "covering-square condition")->fallthrough();
    square_cmd->add_option("--top", sq_top, "top morphism D→C")->required();
    square_cmd->add_option("--left", sq_left, "left morphism D→B")->required();
    square_cmd->add_option("--right", sq_right, "right morphism C→A")
        ->required();
    square_cmd->add_option("--bottom", sq_bottom, "bottom morphism B→A")
        ->required();
    square_cmd->add_option("--canon", sq_canon,
                           "section of the canonical map D → B ×_A C")
        ->required();
    square_cmd->add_option("--section", sq_section, "section of the bottom")
        ->required();
    square_cmd->callback([&] {
        emit_check("check-square",
                   is_covering_square(parse_morphism(read_input(sq_top)),
                                      parse_morphism(read_input(sq_left)),
                                      parse_morphism(read_input(sq_right)),
                                      parse_morphism(read_input(sq_bottom)),
                                      parse_term(read_input(sq_canon)),
                                      parse_term(read_input(sq_section)),
                                      cfg.budget),
                   cfg);
    });

    std::string force_frag = "std", force_term, force_formula;
    auto* force_cmd =
        check_cmd->add_subcommand("force", "forcing clauses of V / U")->fallthrough();
    force_cmd->add_option("--frag", force_frag, "fragment file or 'std'");
    force_cmd->add_option("--term", force_term, "candidate realizer")
        ->required();
    force_cmd->add_option("--formula", force_formula, "closed formula")
        ->required();
    force_cmd->callback([&] {
        Fragment frag = load_fragment(force_frag, cfg);
        Term n = parse_term(read_input(force_term));
        Formula phi = parse_formula(read_input(force_formula));
        auto pool = cfg.pool();
        ForceCtx ctx{&frag, &pool, cfg.budget, {}};
        ForceResult r = check_force(n, phi, ctx);
        std::string verdict = r.verdict == Force::Realized ? "realized"
                              : r.verdict == Force::Refuted ? "refuted"
                                                            : "timeout";
        if (cfg.records()) {
            std::cout << "record cmd=check-force verdict=" << verdict << " "
                      << relativity(cfg, &frag) << " budget=" << cfg.budget
                      << " formula=" << print_formula(phi);
            if (!r.reason.empty()) std::cout << " reason=\"" << r.reason
                                             << "\"";
            std::cout << "\n";
        } else {
            std::cout << "verdict=" << verdict << " " << relativity(cfg, &frag);
            if (!r.reason.empty()) std::cout << "  (" << r.reason << ")";
            std::cout << "\n";
        }
        g_exit = force_exit(r.verdict);
    });

    // --------------------------------------------------------------- asm
    auto* asm_cmd = app.add_subcommand("asm", "categorical constructions")->fallthrough();
    asm_cmd->require_subcommand(1);

    std::string pb_f, pb_g;
    auto* pb_cmd = asm_cmd->add_subcommand("pullback", "B ×_A C")->fallthrough();
    pb_cmd->add_option("--f", pb_f, "morphism B→A file")->required();
    pb_cmd->add_option("--g", pb_g, "morphism C→A file")->required();
    pb_cmd->callback([&] {
        PullbackResult r = pullback(parse_morphism(read_input(pb_f)),
                                    parse_morphism(read_input(pb_g)));
        emit_assembly("pullback", r.apex, cfg);
    });

    std::string img_f;
    auto* img_cmd = asm_cmd->add_subcommand("image", "image factorization")->fallthrough();
    img_cmd->add_option("--f", img_f, "morphism file")->required();
    img_cmd->callback([&] {
        ImageResult r = image(parse_morphism(read_input(img_f)));
        emit_assembly("image", r.img, cfg);
    });

    std::string fa_sub, fa_f;
    auto* fa_cmd = asm_cmd->add_subcommand("forall", "∀_f of a sub-assembly")->fallthrough();
    fa_cmd->add_option("--sub", fa_sub, "sub-assembly file")->required();
    fa_cmd->add_option("--f", fa_f, "morphism file")->required();
    fa_cmd->callback([&] {
        auto pool = cfg.pool();
        ForallResult r = forall_f(parse_assembly(read_input(fa_sub)),
                                  parse_morphism(read_input(fa_f)), pool,
                                  cfg.budget);
        emit_assembly("forall", r.sub, cfg);
        for (const auto& [id, t] : r.inhabitant)
            std::cout << (cfg.records() ? "record cmd=forall elem=" : "  ")
                      << id << (cfg.records() ? " witness=" : " via ")
                      << print_term(t) << "\n";
        if (r.truncated) {
            std::cout << (cfg.records() ? "record cmd=forall truncated=yes\n"
                                        : "truncated: pool exhausted\n");
            g_exit = 3;
        }
    });

    std::string exp_display, exp_g;
    auto* exp_cmd = asm_cmd->add_subcommand("exp", "fibrewise exponential")->fallthrough();
    exp_cmd->add_option("--display", exp_display, "display map file")
        ->required();
    exp_cmd->add_option("--g", exp_g, "morphism C→A file")->required();
    exp_cmd->callback([&] {
        auto pool = cfg.pool();
        ExponentialResult r =
            exponential(display_of_file(exp_display),
                        parse_morphism(read_input(exp_g)), pool, cfg.budget);
        emit_assembly("exp", r.total, cfg);
        if (r.truncated) g_exit = 3;
    });

    std::string wt_display;
    std::uint64_t wt_depth = 3;
    auto* wt_cmd = asm_cmd->add_subcommand("wtype", "W-type tree family")->fallthrough();
    wt_cmd->add_option("--display", wt_display, "display map file")
        ->required();
    wt_cmd->add_option("--depth", wt_depth, "tree depth bound");
    wt_cmd->callback([&] {
        WTypeResult r = wtype(display_of_file(wt_display), wt_depth);
        if (cfg.records()) {
            std::cout << "record cmd=wtype trees=" << r.trees.size()
                      << " truncated=" << (r.truncated ? "yes" : "no")
                      << "\n";
            for (const auto& t : r.trees)
                std::cout << "record cmd=wtype tree=" << t->repr << "\n";
        } else {
            std::cout << "wtype: " << r.trees.size() << " trees"
                      << (r.truncated ? " (truncated)" : "") << "\n";
            for (const auto& t : r.trees) std::cout << "  " << t->repr << "\n";
        }
        if (r.truncated) g_exit = 3;
    });

    std::string pw_x, pw_values = "0,1";
    auto* pw_cmd = asm_cmd->add_subcommand("power", "weak power object")->fallthrough();
    pw_cmd->add_option("--x", pw_x, "assembly file")->required();
    pw_cmd->add_option("--values", pw_values, "comma-separated value pool");
    pw_cmd->callback([&] {
        std::vector<std::uint64_t> values;
        std::istringstream ss(pw_values);
        std::string item;
        while (std::getline(ss, item, ','))
            values.push_back(std::stoull(item));
        auto pool = cfg.pool();
        if (pool.size() > 200) pool.resize(200);
        WeakPowerResult r = weak_power(parse_assembly(read_input(pw_x)),
                                       values, pool, cfg.budget);
        emit_assembly("power", r.power, cfg);
        if (r.truncated) g_exit = 3;
    });

    std::string part_x;
    auto* part_cmd =
        asm_cmd->add_subcommand("partition", "partitioned cover of X")->fallthrough();
    part_cmd->add_option("--x", part_x, "assembly file")->required();
    part_cmd->callback([&] {
        PartitionedCoverResult r =
            partitioned_cover(parse_assembly(read_input(part_x)));
        emit_assembly("partition", r.part, cfg);
    });

    // -------------------------------------------------------------- frag
    auto* frag_cmd = app.add_subcommand("frag", "fragment utilities")->fallthrough();
    frag_cmd->require_subcommand(1);
    auto* gen_cmd =
        frag_cmd->add_subcommand("gen", "generate a bounded fragment")->fallthrough();
    gen_cmd->callback([&] {
        std::cout << print_fragment(
            generate_fragment(cfg.kind(), cfg.frag_depth, cfg.frag_width));
    });

    // ------------------------------------------------------------ search
    std::string search_frag = "std", search_formula;
    auto* search_cmd =
        app.add_subcommand("search", "realizer search over the pool")->fallthrough();
    search_cmd->add_option("--frag", search_frag, "fragment file or 'std'");
    search_cmd->add_option("--formula", search_formula, "closed formula")
        ->required();
    search_cmd->callback([&] {
        Fragment frag = load_fragment(search_frag, cfg);
        Formula phi = parse_formula(read_input(search_formula));
        auto pool = cfg.pool();
        SearchResult r = search_realizer(phi, frag, pool, cfg.budget);
        std::string verdict =
            r.found ? "realized" : r.had_timeout ? "not-found" : "refuted";
        std::string prefix = cfg.records() ? "record cmd=search " : "";
        std::cout << prefix << "verdict=" << verdict << " "
                  << relativity(cfg, &frag);
        if (r.found)
            std::cout << " index=" << r.index
                      << " witness=" << print_term(r.term);
        std::cout << "\n";
        g_exit = r.found ? 0 : r.had_timeout ? 3 : 2;
    });

    // ------------------------------------------------------------- suite
    std::string suite_arg;
    auto* suite_cmd = app.add_subcommand("suite", "run a canned suite")->fallthrough();
    suite_cmd
        ->add_option("manifest", suite_arg,
                     "suite file, or axioms-v|axioms-u|principles-v|"
                     "principles-u")
        ->required();
    suite_cmd->callback([&] {
        SuiteManifest m = load_manifest(suite_arg);
        Fragment frag = manifest_fragment(m, cfg);
        SuiteReport rep = run_suite(m, frag, cfg.pool(), cfg.budget);
        std::cout << render_report(rep, cfg.records());
        g_exit = rep.ok() ? 0 : 2;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const NonCommuting& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rwb::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return g_exit;
}
