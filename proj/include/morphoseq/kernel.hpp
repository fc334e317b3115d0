#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morphoseq/mixdfao.hpp"
#include "morphoseq/treefn.hpp"

namespace morphoseq {

// First len symbols of sigma^{S_P(n)}: sigma restricted to the subtree of n,
// indices in increasing order.
std::vector<Sym> subsequence(const MorphicSpec& spec, std::size_t n, std::size_t len,
                             std::size_t budget = default_budget);
std::string subsequence_string(const MorphicSpec& spec, std::size_t n, std::size_t len,
                               std::size_t budget = default_budget);

// One class of the partition of { sigma^{S_P(n)} }. Keys are the minimized
// automaton state for n >= 1; n = 0 is kept apart (the root's subtree is the
// whole sequence, not the state-q0 unfolding).
struct KernelClass {
    std::size_t representative = 0;    // smallest index with this key
    std::size_t state = 0;             // minimized automaton state delta(q0, phi(n))
    bool is_root = false;
    std::vector<Sym> witness;          // first witness_len symbols of the subsequence
    std::size_t member_count_hint = 0; // occurrences within the scanned range
};

struct KernelReport {
    std::vector<KernelClass> classes; // upper-bound partition, representative order
    std::size_t lower = 0;            // pairwise-distinct witness prefixes
    std::size_t upper = 0;            // classes.size()
    bool exact = false;
    Alphabet sigma; // for rendering witnesses
};

// Prefix equality is only semi-decidable, so the count is an interval
// [lower, upper]; exact when the bounds meet, or when every reachable state
// outputs the same symbol (then the sequence is constant and the kernel is a
// single sequence).
KernelReport kernel_classes(const MorphicSpec& spec, std::size_t witness_len,
                            std::size_t budget = default_budget);

// Breadth-first tree with optional labels, over a materialized prefix of
// `limit` nodes. The symbol of a node in the term reading is its child count
// (plus the label when labeled), so the depth-d signature covers arities of
// the whole cone. With F = depth(limit-1) fully materialized levels, child
// lists are complete for levels <= F-2, hence node n carries a depth-d
// signature iff depth(n) + d <= F - 2.
class LabeledTreeView {
  public:
    LabeledTreeView(std::shared_ptr<TreeFunction> tree, std::size_t limit,
                    std::function<Sym(std::size_t)> labels, Alphabet sigma,
                    std::size_t budget = default_budget);
    // shape-only view
    LabeledTreeView(std::shared_ptr<TreeFunction> tree, std::size_t limit,
                    std::size_t budget = default_budget);

    TreeFunction& tree() const { return *tree_; }
    std::size_t limit() const { return limit_; }
    bool labeled() const { return static_cast<bool>(labels_); }
    const Alphabet& sigma() const { return sigma_; }

    Sym label(std::size_t n) const { return labelcache_[n]; } // pre: labeled, n < limit
    std::size_t depth_of(std::size_t n) const { return dep_[n]; }
    const std::vector<std::size_t>& children(std::size_t n) const { return children_[n]; }
    std::size_t complete_levels() const { return complete_levels_; }

    bool eligible(std::size_t n, std::size_t d) const;
    // canonical id; equal ids at one depth iff the depth-truncated subtrees
    // are isomorphic (including bottom-layer arities, and labels when on)
    std::size_t signature_id(std::size_t n, std::size_t d);
    std::string signature_text(std::size_t n, std::size_t d);

    struct Counts {
        std::vector<std::size_t> per_depth; // distinct ids, d = 0..max_depth
        std::size_t population = 0;         // nodes eligible at max_depth
    };
    // counts over the fixed population eligible at max_depth, so the series
    // is non-decreasing by refinement
    Counts distinct_signature_counts(std::size_t max_depth);

    // equal-as-partitions test for the depth-d1 and depth-d2 signatures over
    // the population eligible at pop_depth (pre: d1, d2 <= pop_depth)
    bool partitions_equal(std::size_t d1, std::size_t d2, std::size_t pop_depth);

    // first len labels of the subtree of n inside the materialized range;
    // nullopt when fewer than len members are materialized
    std::optional<std::vector<Sym>> witness(std::size_t n, std::size_t len) const;

  private:
    void compute_to(std::size_t d);

    std::shared_ptr<TreeFunction> tree_;
    std::function<Sym(std::size_t)> labels_;
    Alphabet sigma_;
    std::size_t limit_;
    std::vector<std::uint32_t> dep_;
    std::vector<std::vector<std::size_t>> children_;
    std::size_t complete_levels_ = 0;
    std::vector<std::vector<std::int64_t>> sig_; // sig_[d][n], -1 = ineligible
    std::vector<Sym> labelcache_;
};

// t_{P,sigma} of a spec: shape from the P/R induction, labels sigma(n).
LabeledTreeView labeled_view(const MorphicSpec& spec, std::size_t limit,
                             std::size_t budget = default_budget);
// t_P alone
LabeledTreeView shape_view(const MorphicSpec& spec, std::size_t limit,
                           std::size_t budget = default_budget);

enum class RatVerdict { rational_within_budget, inconclusive };

struct RationalityReport {
    std::vector<std::size_t> counts; // distinct signatures per depth 0..max_depth
    std::size_t population = 0;
    RatVerdict verdict = RatVerdict::inconclusive;
    std::size_t stabilized_count = 0; // valid when rational
    std::size_t stabilized_depth = 0; // first depth of the 3-equal run
};

// RATIONAL-WITHIN-BUDGET iff the signature partitions at three consecutive
// depths are equal as partitions; equality at consecutive depths makes the
// partition a congruence for the child map, i.e. the successor structure of
// every class is closed over the probed region.
RationalityReport rationality_report(LabeledTreeView& view, std::size_t max_depth);

struct StaircaseReport {
    std::size_t prefix_classes = 0;
    std::vector<std::vector<Sym>> witnesses; // distinct prefixes, first-seen order
    LabeledTreeView::Counts labeled;
    LabeledTreeView::Counts shape;
    bool labeled_strictly_increasing = false; // over d = 2..max_depth
    std::size_t scanned = 0;                  // nodes probed for witnesses
};

StaircaseReport staircase_kernel(const Gaps& gaps, std::size_t limit,
                                 std::size_t witness_len = 64, std::size_t max_depth = 8,
                                 std::size_t budget = default_budget);

// States = classes of the probe relation (depth-d signature refined by the
// witness prefix) plus a fresh root state with delta(q0,0) = q0 and
// delta(q0,i) = class of the root's (i-1)-th child; class transitions follow
// the representative's children; unreachable classes are trimmed away.
// NotStabilized when the signature partition still changes between depth and
// depth+1, when a witness splits a signature class, or when a needed child
// class is unseen in the probed population.
MixDfao collapse_to_dfao(LabeledTreeView& view, std::size_t depth, std::size_t witness_len);

} // namespace morphoseq
