#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "morphoseq/core.hpp"
#include "morphoseq/error.hpp"
#include "morphoseq/kernel.hpp"
#include "morphoseq/mixdfao.hpp"
#include "morphoseq/rewrite.hpp"
#include "morphoseq/spec_io.hpp"
#include "morphoseq/treefn.hpp"
#include "morphoseq/turtle.hpp"
#include "morphoseq/verify.hpp"

namespace {

using namespace morphoseq;

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        fail(Errc::parse_error, what + " must be a non-negative integer, got \"" + text + "\"");
    return v;
}

// "OFF,STEP" or "BASE" / "BASE,HORIZON"
std::pair<std::size_t, std::optional<std::size_t>> parse_size_pair(const std::string& text,
                                                                   const std::string& what) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        return {parse_size(text, what), std::nullopt};
    return {parse_size(text.substr(0, comma), what),
            parse_size(text.substr(comma + 1), what)};
}

std::size_t env_budget() {
    const char* env = std::getenv("MORPHOSEQ_BUDGET");
    if (!env)
        return default_budget;
    return parse_size(env, "MORPHOSEQ_BUDGET");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string counts_line(const LabeledTreeView::Counts& c) {
    std::string out;
    for (std::size_t i = 0; i < c.per_depth.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(c.per_depth[i]);
    }
    return out;
}

int run_generate(const std::string& spec_path, std::optional<std::size_t> n,
                 std::optional<std::size_t> iter, std::size_t budget) {
    if (n.has_value() == iter.has_value())
        fail(Errc::parse_error, "generate needs exactly one of -n and --iterate");
    MorphicSpec spec = parse_spec_file(spec_path);
    if (n)
        std::cout << prefix(spec, *n, budget) << '\n';
    else
        std::cout << iterate_string(spec, *iter, budget) << '\n';
    return 0;
}

int run_tree(const std::string& spec_path, std::size_t n, std::size_t budget) {
    MorphicSpec spec = parse_spec_file(spec_path);
    SpecTree tree(spec);
    tree.ensure(n + 1, budget);
    for (std::size_t k = 1; k <= n; ++k)
        std::cout << k << ' ' << tree.parent(k) << ' ' << tree.rank(k) << ' '
                  << tree.depth(k, budget) << '\n';
    return 0;
}

int run_automaton(const std::string& spec_path, bool as_json, bool minimized,
                  const std::string& out_path) {
    MorphicSpec spec = parse_spec_file(spec_path);
    MixDfao m = from_spec(spec);
    if (minimized)
        m = minimize(m).dfao;
    if (as_json)
        emit(out_path, spec_to_json(to_raw(to_spec(m))));
    else
        emit(out_path, to_dot(m));
    return 0;
}

int run_phi(const std::string& spec_path, std::size_t n, std::size_t budget) {
    MorphicSpec spec = parse_spec_file(spec_path);
    PhiTable table(from_spec(spec));
    for (std::size_t i = 0; i < n; ++i) {
        std::string word = table.phi_string(i, budget);
        if (word.empty())
            word = "eps";
        std::cout << i << ' ' << word << ' ' << table.sigma_m_name(i, budget) << '\n';
    }
    return 0;
}

int run_kernel(const std::string& spec_path, std::size_t witness_len, std::size_t budget) {
    MorphicSpec spec = parse_spec_file(spec_path);
    KernelReport rep = kernel_classes(spec, witness_len, budget);
    for (const KernelClass& cls : rep.classes)
        std::cout << "rep=" << cls.representative << " witness="
                  << word_to_string(rep.sigma, cls.witness) << " exact=" << yes_no(rep.exact)
                  << '\n';
    std::cout << "classes: lower=" << rep.lower << " upper=" << rep.upper << '\n';
    return 0;
}

int run_staircase(const std::string& params_path, std::size_t budget) {
    StaircaseParams params = parse_staircase_file(params_path);
    StaircaseReport rep = staircase_kernel(params.gaps, params.limit, params.witness_len,
                                           params.max_depth, budget);
    Alphabet binary = Alphabet::from_names({"0", "1"});
    std::cout << "prefix classes: " << rep.prefix_classes << '\n';
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i)
        std::cout << "witness " << i << ": " << word_to_string(binary, rep.witnesses[i])
                  << '\n';
    std::cout << "labeled counts: " << counts_line(rep.labeled) << '\n';
    std::cout << "shape counts: " << counts_line(rep.shape) << '\n';
    std::cout << "labeled strictly increasing d=2.." << params.max_depth << ": "
              << yes_no(rep.labeled_strictly_increasing) << '\n';
    return 0;
}

int run_rewrite(const std::string& spec_path, std::optional<std::size_t> steps,
                std::optional<std::size_t> want_prefix, bool quiet, std::size_t budget) {
    if (steps.has_value() == want_prefix.has_value())
        fail(Errc::parse_error, "rewrite needs exactly one of --steps and --prefix");
    MorphicSpec spec = parse_spec_file(spec_path);
    if (want_prefix) {
        ConvergeResult res = converge_prefix(spec, *want_prefix, budget);
        std::cout << word_to_string(spec.sigma, res.prefix) << '\n';
        return 0;
    }
    RewriteSystem sys{spec, true};
    RewriteTerm t = start_term(spec);
    for (std::size_t i = 1; i <= *steps; ++i) {
        StepResult res = step(sys, t, budget);
        if (!quiet)
            std::cout << i << ' ' << rule_name(res.rule) << ' ' << term_to_string(sys, t)
                      << '\n';
    }
    if (quiet) {
        std::vector<Sym> stable;
        stable.reserve(t.s_pos);
        for (std::size_t i = 0; i < t.s_pos; ++i)
            stable.push_back(t.symbols[i].sym);
        std::cout << word_to_string(spec.sigma, stable) << '\n';
    }
    return 0;
}

int run_turtle(const std::string& spec_path, const std::string& angles,
               std::optional<std::size_t> steps, const std::string& out_path,
               const std::string& closure, std::size_t budget) {
    MorphicSpec spec = parse_spec_file(spec_path);
    TurtleConfig cfg = parse_turtle_config(spec.sigma, angles);
    if (!steps && closure.empty())
        fail(Errc::parse_error, "turtle needs --steps or --check-closure");
    if (steps) {
        SequenceView view(spec);
        TraceResult res = trace(view.prefix_syms(*steps, budget), cfg, *steps);
        if (out_path.empty()) {
            std::cout << emit_svg(res.segments, cfg);
        } else {
            write_file(out_path, emit_svg(res.segments, cfg));
            std::cout << "segments: " << res.segments.size() << '\n';
        }
    }
    if (!closure.empty()) {
        auto [base, horizon] = parse_size_pair(closure, "--check-closure");
        ClosureReport rep = closure_check(spec, cfg, base, horizon.value_or(10 * base), budget);
        if (rep.closed)
            std::cout << "CLOSED\n";
        else
            std::cout << "NOT CLOSED at step " << rep.first_new << '\n';
        std::cout << "distinct segments: " << rep.distinct_segments << '\n';
    }
    return 0;
}

int run_verify_cmd(const std::string& path_a, const std::string& path_b, std::size_t n,
                   const std::string& arith_a, const std::string& arith_b,
                   std::size_t witness_len, std::size_t budget) {
    MorphicSpec a = parse_spec_file(path_a);
    MorphicSpec b = parse_spec_file(path_b);
    VerifyOptions opts;
    opts.n = n;
    opts.witness_len = witness_len;
    opts.budget = budget;
    auto parse_arith = [](const std::string& text, const char* what) {
        auto [off, step] = parse_size_pair(text, what);
        if (!step)
            fail(Errc::parse_error, std::string(what) + " needs OFFSET,STEP");
        return std::pair<std::size_t, std::size_t>{off, *step};
    };
    if (!arith_a.empty())
        opts.arith_a = parse_arith(arith_a, "--arith-a");
    if (!arith_b.empty())
        opts.arith_b = parse_arith(arith_b, "--arith-b");
    VerifyReport rep = run_verify(a, b, opts);
    std::cout << render_report(rep);
    return rep.prefixes_equal ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphic sequence toolkit"};
    app.require_subcommand(1);

    std::string spec_path, spec_path_b, out_path, angles, closure, arith_a, arith_b;
    std::string staircase_path;
    std::optional<std::size_t> opt_n, opt_iterate, opt_steps, opt_prefix;
    std::size_t num = 0;
    std::size_t witness_len = 32;
    bool as_json = false, minimized = false, quiet = false;

    CLI::App* gen = app.add_subcommand("generate", "print a sequence prefix or a pure iterate");
    gen->add_option("spec", spec_path, "spec file")->required();
    gen->add_option("-n,--length", opt_n, "prefix length");
    gen->add_option("--iterate", opt_iterate, "print f^k(a) instead");

    CLI::App* tre = app.add_subcommand("tree", "print n P(n) R(n) depth(n) per node");
    tre->add_option("spec", spec_path, "spec file")->required();
    tre->add_option("-n,--length", num, "node count")->required();

    CLI::App* aut = app.add_subcommand("automaton", "emit the mix-DFAO of a spec");
    aut->add_option("spec", spec_path, "spec file")->required();
    aut->add_flag("--json", as_json, "emit spec JSON via the automaton-to-spec direction");
    aut->add_flag("--minimize", minimized, "minimize before emitting");
    aut->add_option("-o,--out", out_path, "output file (default stdout)");

    CLI::App* phi = app.add_subcommand("phi", "print i, phi(i), sigma_M(i) per index");
    phi->add_option("spec", spec_path, "spec file")->required();
    phi->add_option("-n,--length", num, "index count")->required();

    CLI::App* ker = app.add_subcommand("kernel", "kernel classes of a spec, or a staircase report");
    ker->add_option("spec", spec_path, "spec file");
    ker->add_option("--staircase", staircase_path, "staircase parameter file");
    ker->add_option("--witness-len", witness_len, "witness prefix length");

    CLI::App* rew = app.add_subcommand("rewrite", "reduce the rewrite presentation");
    rew->add_option("spec", spec_path, "spec file")->required();
    rew->add_option("--steps", opt_steps, "apply this many steps, printing each");
    rew->add_option("--prefix", opt_prefix, "reduce until the stable prefix has this length");
    rew->add_flag("--quiet", quiet, "print only the final stable prefix");

    CLI::App* tur = app.add_subcommand("turtle", "trace turtle figures and check closure");
    tur->add_option("spec", spec_path, "spec file")->required();
    tur->add_option("--angles", angles, "angle per output symbol, e.g. \"0=140,1=-80\"")
        ->required();
    tur->add_option("--steps", opt_steps, "trace this many steps and emit SVG");
    tur->add_option("--out", out_path, "SVG output file (default stdout)");
    tur->add_option("--check-closure", closure, "BASE[,HORIZON], horizon defaults to 10*BASE");

    CLI::App* ver = app.add_subcommand("verify", "cross-check two specs");
    ver->add_option("spec_a", spec_path, "first spec file")->required();
    ver->add_option("spec_b", spec_path_b, "second spec file")->required();
    ver->add_option("-n,--length", num, "comparison length")->default_val(std::size_t{10000});
    ver->add_option("--arith-a", arith_a, "OFFSET,STEP subsequence applied to A");
    ver->add_option("--arith-b", arith_b, "OFFSET,STEP subsequence applied to B");
    ver->add_option("--witness-len", witness_len, "kernel witness length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::size_t budget = env_budget();
        if (gen->parsed())
            return run_generate(spec_path, opt_n, opt_iterate, budget);
        if (tre->parsed())
            return run_tree(spec_path, num, budget);
        if (aut->parsed())
            return run_automaton(spec_path, as_json, minimized, out_path);
        if (phi->parsed())
            return run_phi(spec_path, num, budget);
        if (ker->parsed()) {
            if (spec_path.empty() == staircase_path.empty())
                fail(Errc::parse_error, "kernel needs exactly one of a spec file and --staircase");
            if (!staircase_path.empty())
                return run_staircase(staircase_path, budget);
            return run_kernel(spec_path, witness_len, budget);
        }
        if (rew->parsed())
            return run_rewrite(spec_path, opt_steps, opt_prefix, quiet, budget);
        if (tur->parsed())
            return run_turtle(spec_path, angles, opt_steps, out_path, closure, budget);
        if (ver->parsed())
            return run_verify_cmd(spec_path, spec_path_b, num, arith_a, arith_b, witness_len,
                                  budget);
    } catch (const MsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::budget_exceeded ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
