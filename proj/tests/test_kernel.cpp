#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "morphoseq/error.hpp"
#include "morphoseq/kernel.hpp"
#include "morphoseq/mixdfao.hpp"

using namespace morphoseq;
using namespace morphoseq::test;

namespace {

// definitional oracle: collect S_P(n) by ancestor chains, read sigma there
std::vector<Sym> subtree_oracle(const MorphicSpec& spec, std::size_t n, std::size_t len) {
    SpecTree tree(spec);
    std::vector<Sym> out;
    for (std::size_t k = n; out.size() < len; ++k) {
        std::size_t a = k;
        while (a > n)
            a = tree.parent_rank(a).first;
        if (a == n)
            out.push_back(element_at(spec, k));
    }
    return out;
}

std::string syms_to_digits(const std::vector<Sym>& w, const Alphabet& sigma) {
    std::string s;
    for (Sym x : w)
        s += sigma.names[x];
    return s;
}

} // namespace

TEST_CASE("subsequence matches the ancestor-chain oracle") {
    for (const MorphicSpec& s : {fib(), spir()})
        for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(2), std::size_t(3),
                              std::size_t(7)})
            CHECK(subsequence(s, n, 200) == subtree_oracle(s, n, 200));
}

TEST_CASE("fib subtrees are the suffix family") {
    std::string w = prefix(fib(), 66);
    CHECK(subsequence_string(fib(), 0, 64) == w.substr(0, 64));
    CHECK(subsequence_string(fib(), 1, 64) == w.substr(1, 64));
    CHECK(subsequence_string(fib(), 2, 64) == w.substr(2, 64));
}

TEST_CASE("kernel of fib") {
    KernelReport r = kernel_classes(fib(), 32);
    CHECK(r.lower == 3);
    CHECK(r.upper == 3);
    CHECK(r.exact);
    REQUIRE(r.classes.size() == 3);
    CHECK(r.classes[0].representative == 0);
    CHECK(r.classes[0].is_root);
    CHECK(r.classes[1].representative == 1);
    CHECK(r.classes[2].representative == 2);
    std::string w = prefix(fib(), 34);
    CHECK(syms_to_digits(r.classes[0].witness, r.sigma) == w.substr(0, 32));
    CHECK(syms_to_digits(r.classes[1].witness, r.sigma) == w.substr(1, 32));
    CHECK(syms_to_digits(r.classes[2].witness, r.sigma) == w.substr(2, 32));
}

TEST_CASE("kernel sizes of the bundled specs") {
    struct Row {
        const char* file;
        std::size_t classes;
    };
    for (Row row : {Row{"fib.json", 3}, Row{"spir.json", 3}, Row{"period-doubling.json", 3},
                    Row{"don-even-fib.json", 4}, Row{"conjectured-even-fib.json", 6}}) {
        MorphicSpec s = load(row.file);
        KernelReport r = kernel_classes(s, 32);
        CHECK(r.exact);
        CHECK(r.upper == row.classes);
        CHECK(r.lower == row.classes);
        CHECK(r.upper <= minimize(from_spec(s)).dfao.states() + 1);
    }
}

TEST_CASE("every node's subsequence starts with its class witness") {
    for (const MorphicSpec& s : {fib(), spir()}) {
        KernelReport r = kernel_classes(s, 32);
        PhiTable table(minimize(from_spec(s)).dfao);
        for (std::size_t n = 1; n <= 100; ++n) {
            std::size_t state = table.state_of(n);
            auto it = std::find_if(r.classes.begin(), r.classes.end(), [&](const KernelClass& c) {
                return !c.is_root && c.state == state;
            });
            REQUIRE(it != r.classes.end());
            CHECK(subsequence(s, n, 32) == it->witness);
        }
    }
}

TEST_CASE("a constant sequence has a one-element kernel") {
    MorphicSpec s =
        make_spec("01", "0", {{"0", "01"}, {"1", "1"}}, "x", {{"0", "x"}, {"1", "x"}});
    KernelReport r = kernel_classes(s, 32);
    CHECK(r.lower == 1);
    CHECK(r.upper == 1);
    CHECK(r.exact);
    REQUIRE(r.classes.size() == 1);
    for (Sym x : r.classes[0].witness)
        CHECK(x == 0);
}

TEST_CASE("signature counts of the fib tree") {
    LabeledTreeView labeled = labeled_view(fib(), 10000);
    auto lc = labeled.distinct_signature_counts(8);
    CHECK(lc.per_depth == std::vector<std::size_t>{3, 3, 3, 3, 3, 3, 3, 3, 3});
    CHECK(lc.population > 0);

    LabeledTreeView shape = shape_view(fib(), 10000);
    auto sc = shape.distinct_signature_counts(8);
    CHECK(sc.per_depth == std::vector<std::size_t>{2, 3, 3, 3, 3, 3, 3, 3, 3});
}

TEST_CASE("eligibility follows the complete levels") {
    LabeledTreeView view = shape_view(fib(), 10000);
    std::size_t F = view.depth_of(view.limit() - 1);
    CHECK(view.eligible(0, F - 2));
    CHECK_FALSE(view.eligible(0, F - 1));
    CHECK_FALSE(view.eligible(view.limit() - 1, 1));
}

TEST_CASE("partition refinement stabilizes") {
    LabeledTreeView labeled = labeled_view(fib(), 10000);
    labeled.distinct_signature_counts(8);
    CHECK(labeled.partitions_equal(0, 1, 8));
    CHECK(labeled.partitions_equal(0, 8, 8));

    LabeledTreeView shape = shape_view(fib(), 10000);
    shape.distinct_signature_counts(8);
    CHECK_FALSE(shape.partitions_equal(0, 1, 8));
    CHECK(shape.partitions_equal(1, 2, 8));
}

TEST_CASE("rationality report for fib") {
    LabeledTreeView labeled = labeled_view(fib(), 10000);
    RationalityReport lr = rationality_report(labeled, 8);
    CHECK(lr.verdict == RatVerdict::rational_within_budget);
    CHECK(lr.stabilized_count == 3);
    CHECK(lr.stabilized_depth == 0);

    LabeledTreeView shape = shape_view(fib(), 10000);
    RationalityReport sr = rationality_report(shape, 8);
    CHECK(sr.verdict == RatVerdict::rational_within_budget);
    CHECK(sr.stabilized_count == 3);
    CHECK(sr.stabilized_depth == 1);
}

TEST_CASE("tree witnesses read labels in index order") {
    LabeledTreeView view = labeled_view(fib(), 4000);
    auto w = view.witness(0, 32);
    REQUIRE(w.has_value());
    std::vector<Sym> first;
    for (std::size_t i = 0; i < 32; ++i)
        first.push_back(element_at(fib(), i));
    CHECK(*w == first);
    CHECK_FALSE(view.witness(0, 4001).has_value());
    auto w1 = view.witness(1, 32);
    REQUIRE(w1.has_value());
    CHECK(*w1 == subsequence(fib(), 1, 32));
}

TEST_CASE("staircase with increasing gaps") {
    StaircaseReport r = staircase_kernel(Gaps::arithmetic(1, 1), 10000, 64, 8);
    CHECK(r.prefix_classes == 2);
    REQUIRE(r.witnesses.size() == 2);
    Alphabet bits = Alphabet::from_names({"0", "1"});
    CHECK(syms_to_digits(r.witnesses[0], bits) ==
          "1101001000010000000100000000000100000000000000001000000000000000");
    CHECK(syms_to_digits(r.witnesses[1], bits) == std::string(64, '0'));
    CHECK(r.labeled.per_depth == std::vector<std::size_t>{3, 5, 8, 10, 13, 16, 19, 23, 27});
    CHECK(r.shape.per_depth == std::vector<std::size_t>{2, 4, 8, 10, 13, 16, 19, 23, 27});
    CHECK(r.labeled_strictly_increasing);
    CHECK(r.scanned > 0);
}

TEST_CASE("staircase with constant gaps stabilizes") {
    StaircaseReport r = staircase_kernel(Gaps::constant(1), 10000, 64, 8);
    CHECK(r.prefix_classes == 2);
    CHECK_FALSE(r.labeled_strictly_increasing);
    std::size_t last = r.labeled.per_depth.back();
    CHECK(r.labeled.per_depth[r.labeled.per_depth.size() - 2] == last);
}

TEST_CASE("collapsing the fib tree recovers its automaton") {
    LabeledTreeView view = labeled_view(fib(), 10000);
    MixDfao m = collapse_to_dfao(view, 8, 64);
    CHECK_NOTHROW(m.check());
    CHECK(m.states() == 3);
    PhiTable table(m);
    for (std::size_t n = 0; n < 1000; ++n)
        CHECK(table.sigma_m(n) == element_at(fib(), n));
}

TEST_CASE("collapsing a constant labeling keeps the root apart") {
    auto tree = std::make_shared<SpecTree>(fib());
    LabeledTreeView view(tree, 10000, [](std::size_t) { return Sym(0); },
                         Alphabet::from_names({"0", "1"}));
    MixDfao m = collapse_to_dfao(view, 8, 64);
    // root arity differs from the interior nodes, so it keeps its own state
    CHECK(m.states() == 3);
    PhiTable table(m);
    for (std::size_t n = 0; n < 500; ++n)
        CHECK(table.sigma_m(n) == 0);
}

TEST_CASE("collapse refuses a drifting staircase") {
    auto tree = std::make_shared<ExplicitTree>(staircase_tree(Gaps::arithmetic(1, 1), 10000));
    LabeledTreeView view(tree, 10000, [tree](std::size_t n) { return tree->label(n); },
                         Alphabet::from_names({"0", "1"}));
    try {
        collapse_to_dfao(view, 8, 64);
        CHECK(false);
    } catch (const MsError& e) {
        CHECK(e.code() == Errc::not_stabilized);
    }
}
