// Acceptance gate: one line per criterion with the measured time against its
// stated limit; exits nonzero when any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "morphoseq/core.hpp"
#include "morphoseq/kernel.hpp"
#include "morphoseq/mixdfao.hpp"
#include "morphoseq/rewrite.hpp"
#include "morphoseq/spec_io.hpp"
#include "morphoseq/treefn.hpp"
#include "morphoseq/turtle.hpp"
#include "morphoseq/verify.hpp"

using namespace morphoseq;

namespace {

int failures = 0;

std::string specs_dir() { return MORPHOSEQ_SPECS_DIR; }

MorphicSpec load(const std::string& name) {
    return parse_spec_file(specs_dir() + "/" + name);
}

const char* const bundled[] = {"fib.json",          "spir.json",
                               "period-doubling.json", "tail-fib.json",
                               "tail-fib-recoded.json",  "fib-recoded.json",
                               "don-even-fib.json",  "conjectured-even-fib.json"};

// limit_ms <= 0 means the criterion has no individual limit
void criterion(int num, double limit_ms, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string what;
    try {
        ok = body();
    } catch (const std::exception& e) {
        what = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    bool in_time = limit_ms <= 0 || ms <= limit_ms;
    bool pass = ok && in_time;
    if (!pass)
        ++failures;
    if (limit_ms > 0)
        std::printf("%s criterion %2d (%.2f ms, limit %.0f ms)", pass ? "PASS" : "FAIL", num, ms,
                    limit_ms);
    else
        std::printf("%s criterion %2d (%.2f ms)", pass ? "PASS" : "FAIL", num, ms);
    if (!what.empty())
        std::printf(" [threw: %s]", what.c_str());
    else if (!ok)
        std::printf(" [value check failed]");
    else if (!in_time)
        std::printf(" [over time limit]");
    std::printf("\n");
    std::fflush(stdout);
}

std::string to_binary(std::size_t n) {
    if (n == 0)
        return "";
    std::string s;
    while (n) {
        s += char('0' + (n & 1));
        n >>= 1;
    }
    return {s.rbegin(), s.rend()};
}

bool parent_rank_invariants(const MorphicSpec& spec, std::size_t limit) {
    SpecTree tree(spec);
    tree.ensure(limit + 1);
    SequenceView& pure = tree.pure_view();
    pure.ensure(limit + 1);
    std::size_t u = spec.rules[spec.start].size() - 1;
    std::size_t block_start = 1;
    for (std::size_t n = 1; n <= limit; ++n) {
        auto [p, r] = tree.parent_rank(n);
        if (p >= n)
            return false;
        if (n > 1) {
            auto [pp, rp] = tree.parent_rank(n - 1);
            if (p != pp && p != pp + 1)
                return false;
            if (p != pp)
                block_start = n;
        }
        Sym b = pure.pure_at(p);
        if (pure.pure_at(n) != spec.rules[b][r])
            return false;
        if (n > u && r != n - block_start)
            return false;
    }
    return true;
}

bool criterion12() {
    // phi bijectivity
    for (const char* name : {"fib.json", "spir.json", "don-even-fib.json"}) {
        PhiTable table(from_spec(load(name)));
        for (std::size_t n = 0; n < 10000; ++n)
            if (table.phi_inverse(table.phi(n)) != n)
                return false;
    }

    // ans rep/val inversion on three languages
    std::vector<Dfa> langs;
    {
        Dfa ab;
        ab.letters = Alphabet::from_names({"a", "b"});
        ab.next = {{0, 1}, {2, 1}, {2, 2}};
        ab.start = 0;
        ab.accept = {true, true, false};
        langs.push_back(ab);
        Dfa bin;
        bin.letters = Alphabet::from_names({"0", "1"});
        bin.next = {{2, 1}, {1, 1}, {2, 2}};
        bin.start = 0;
        bin.accept = {true, true, false};
        langs.push_back(bin);
        langs.push_back(phi_language_acceptor(from_spec(load("fib.json"))));
    }
    for (Dfa& lang : langs) {
        Ans ans(lang);
        for (std::size_t n = 0; n < 10000; ++n)
            if (ans.val(ans.rep(n)) != n)
                return false;
    }

    // minimization soundness and idempotence
    for (const char* name : bundled) {
        MixDfao m = from_spec(load(name));
        Minimized min = minimize(m);
        if (min.dfao.states() > m.states())
            return false;
        PhiTable a(m), b(min.dfao);
        for (std::size_t n = 0; n < 5000; ++n)
            if (a.sigma_m(n) != b.sigma_m(n))
                return false;
        if (minimize(min.dfao).dfao.states() != min.dfao.states())
            return false;
    }

    // exact points vs float positions along random walks
    TurtleConfig cfg = parse_turtle_config(load("period-doubling.json").sigma, "0=140,1=-80");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, 1);
    std::vector<Sym> word;
    for (int i = 0; i < 1000; ++i)
        word.push_back(Sym(pick(rng)));
    TraceResult r = trace(word, cfg, word.size());
    std::vector<CycPoint> pts;
    for (const Segment& s : r.segments) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [xi, yi] = to_xy(pts[i], cfg);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto [xj, yj] = to_xy(pts[j], cfg);
            if (std::hypot(xi - xj, yi - yj) < 1e-9)
                return false;
        }
    }
    return true;
}

} // namespace

int main() {
    MorphicSpec fib = load("fib.json");
    MorphicSpec spir = load("spir.json");
    MorphicSpec pd = load("period-doubling.json");

    criterion(1, 1, [&] {
        return prefix(fib, 8) == "01001010" && iterate_string(fib, 3) == "01001";
    });

    criterion(2, 1, [&] { return prefix(spir, 16) == "1101001000100001"; });

    criterion(3, 1000, [&] {
        SpecTree tree(fib);
        if (tree.parent_rank(12) != std::pair<std::size_t, std::size_t>(7, 1))
            return false;
        return parent_rank_invariants(fib, 100000) && parent_rank_invariants(spir, 100000) &&
               parent_rank_invariants(pd, 100000);
    });

    criterion(4, 2000, [&] {
        for (const char* name : bundled) {
            MorphicSpec s = load(name);
            PhiTable table(from_spec(s));
            for (std::size_t i = 0; i < 10000; ++i)
                if (table.sigma_m(i) != element_at(s, i))
                    return false;
        }
        PhiTable table(from_spec(pd));
        for (std::size_t n = 0; n < 10000; ++n)
            if (table.phi_string(n) != to_binary(n))
                return false;
        return true;
    });

    criterion(5, 100, [&] {
        KernelReport r = kernel_classes(fib, 32);
        if (!r.exact || r.upper != 3 || r.classes.size() != 3)
            return false;
        std::string w = prefix(fib, 34);
        for (std::size_t k = 0; k < 3; ++k) {
            std::string witness;
            for (Sym x : r.classes[k].witness)
                witness += r.sigma.names[x];
            if (witness != w.substr(k, 32))
                return false;
        }
        return true;
    });

    criterion(6, 1000, [&] {
        StaircaseReport r = staircase_kernel(Gaps::arithmetic(1, 1), 10000, 64, 8);
        if (r.prefix_classes != 2 || !r.labeled_strictly_increasing)
            return false;
        for (std::size_t d = 2; d < r.labeled.per_depth.size(); ++d)
            if (r.labeled.per_depth[d] <= r.labeled.per_depth[d - 1])
                return false;
        return true;
    });

    criterion(7, 1000, [&] {
        LabeledTreeView view = labeled_view(fib, 10000);
        RationalityReport r = rationality_report(view, 8);
        return r.verdict == RatVerdict::rational_within_budget && r.stabilized_count == 3;
    });

    criterion(8, 1000, [&] {
        for (const MorphicSpec* s : {&fib, &spir, &pd}) {
            ConvergeResult r = converge_prefix(*s, 1000);
            std::vector<Sym> head(r.prefix.begin(), r.prefix.begin() + 1000);
            if (word_to_string(s->sigma, head) != prefix(*s, 1000))
                return false;
            // redex uniqueness is asserted inside the reduction; a violation throws
            RewriteSystem strict{*s, true};
            RewriteTerm t = start_term(*s);
            for (int k = 0; k < 400; ++k)
                step(strict, t);
        }
        return true;
    });

    criterion(9, 1000, [&] {
        std::string w = prefix(fib, 10001);
        std::string tail = w.substr(1);
        return prefix(tail_representation(fib), 10000) == tail &&
               prefix(load("tail-fib-recoded.json"), 10000) == tail &&
               prefix(load("fib-recoded.json"), 10000) == w.substr(0, 10000);
    });

    criterion(10, 1000, [&] {
        std::string even = arithmetic_subsequence_string(fib, 0, 2, 10000);
        if (even != prefix(load("don-even-fib.json"), 10000))
            return false;
        if (even != prefix(load("conjectured-even-fib.json"), 10000))
            return false;
        VerifyOptions opt;
        opt.n = 1000;
        opt.arith_a = std::pair<std::size_t, std::size_t>(0, 2);
        VerifyReport rep = run_verify(fib, load("conjectured-even-fib.json"), opt);
        std::string text = render_report(rep);
        return rep.prefixes_equal &&
               text.find("bounded evidence for an open conjecture") != std::string::npos;
    });

    criterion(11, 10000, [&] {
        TurtleConfig cfg = parse_turtle_config(pd.sigma, "0=140,1=-80");
        ClosureReport open = closure_check(pd, cfg, 6000, 60000);
        ClosureReport closed = closure_check(pd, cfg, 9216, 92160);
        return !open.closed && open.first_new == 6001 && closed.closed;
    });

    criterion(12, 0, criterion12);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
