#include "morphoseq/verify.hpp"

#include "morphoseq/treefn.hpp"

namespace morphoseq {

namespace {

std::vector<Sym> side_prefix(const MorphicSpec& spec,
                             const std::optional<std::pair<std::size_t, std::size_t>>& arith,
                             std::size_t n, std::size_t budget) {
    SequenceView view(spec);
    if (arith)
        return arithmetic_subsequence(view, arith->first, arith->second, n, budget);
    return view.prefix_syms(n, budget);
}

std::string kernel_line(const KernelReport& rep) {
    if (rep.exact)
        return std::to_string(rep.upper) + " classes (exact)";
    return "between " + std::to_string(rep.lower) + " and " + std::to_string(rep.upper) +
           " classes (scan bounds only)";
}

} // namespace

VerifyReport run_verify(const MorphicSpec& a, const MorphicSpec& b, const VerifyOptions& opts) {
    VerifyReport rep;
    rep.n = opts.n;

    std::vector<Sym> wa = side_prefix(a, opts.arith_a, opts.n, opts.budget);
    std::vector<Sym> wb = side_prefix(b, opts.arith_b, opts.n, opts.budget);
    rep.prefixes_equal = true;
    for (std::size_t i = 0; i < opts.n; ++i) {
        if (a.sigma.names[wa[i]] != b.sigma.names[wb[i]]) {
            rep.prefixes_equal = false;
            rep.mismatch_index = i;
            rep.mismatch_a = a.sigma.names[wa[i]];
            rep.mismatch_b = b.sigma.names[wb[i]];
            break;
        }
    }

    SpecTree ta(a);
    SpecTree tb(b);
    rep.shapes_equal = true;
    for (std::size_t k = 1; k <= opts.n; ++k) {
        if (ta.parent_rank(k, opts.budget) != tb.parent_rank(k, opts.budget)) {
            rep.shapes_equal = false;
            rep.shape_mismatch_at = k;
            break;
        }
    }

    rep.kernel_a = kernel_classes(a, opts.witness_len, opts.budget);
    rep.kernel_b = kernel_classes(b, opts.witness_len, opts.budget);
    return rep;
}

std::string render_report(const VerifyReport& rep) {
    std::string out;
    if (rep.prefixes_equal) {
        out += "prefix: EQUAL up to n=" + std::to_string(rep.n) + "\n";
        out += "  note: bounded evidence for an open conjecture unless equality is otherwise "
               "proven\n";
    } else {
        out += "prefix: MISMATCH at index " + std::to_string(rep.mismatch_index) + " (A=" +
               rep.mismatch_a + ", B=" + rep.mismatch_b + ")\n";
    }
    if (rep.shapes_equal)
        out += "tree shape: IDENTICAL (P,R) for n=1.." + std::to_string(rep.n) + "\n";
    else
        out += "tree shape: DIFFERS first at n=" + std::to_string(rep.shape_mismatch_at) + "\n";
    out += "kernel A: " + kernel_line(rep.kernel_a) + "\n";
    out += "kernel B: " + kernel_line(rep.kernel_b) + "\n";
    return out;
}

} // namespace morphoseq
