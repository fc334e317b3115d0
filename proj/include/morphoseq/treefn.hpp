#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "morphoseq/core.hpp"

namespace morphoseq {

// Parent/rank view of an infinite tree whose nodes are 0,1,2,... in
// breadth-first order. parent() is weakly monotone with parent(n) < n;
// rank(n) is the 0-based child index of n (for spec-backed trees this is the
// R of the P/R induction, with the root block ranked from 1).
class TreeFunction {
  public:
    virtual ~TreeFunction() = default;

    // Extends internal tables so indices < n are answerable.
    virtual void ensure(std::size_t n, std::size_t budget = default_budget) = 0;
    virtual std::size_t materialized() const = 0;

    virtual std::size_t parent(std::size_t n) const = 0; // pre: 1 <= n < materialized
    virtual std::size_t rank(std::size_t n) const = 0;

    std::pair<std::size_t, std::size_t> parent_rank(std::size_t n,
                                                    std::size_t budget = default_budget);
    std::size_t depth(std::size_t n, std::size_t budget = default_budget);

    // First m members of S_P(n) = { k | some parent-iterate of k is n } in
    // increasing order; a single forward scan, membership by one parent
    // lookup per node.
    std::vector<std::size_t> subtree_members(std::size_t n, std::size_t m,
                                             std::size_t budget = default_budget);
};

// Tree of a morphic spec via the forward P/R induction, memoized flat.
class SpecTree : public TreeFunction {
  public:
    explicit SpecTree(const MorphicSpec& spec);

    void ensure(std::size_t n, std::size_t budget = default_budget) override;
    std::size_t materialized() const override { return p_.size(); }
    std::size_t parent(std::size_t n) const override { return p_[n]; }
    std::size_t rank(std::size_t n) const override { return r_[n]; }

    SequenceView& pure_view() { return view_; }
    const MorphicSpec& spec() const { return view_.spec(); }

  private:
    SequenceView view_; // pure symbols drive the image lengths
    std::vector<std::uint32_t> p_;
    std::vector<std::uint32_t> r_;
};

// Finitely materialized tree given by an explicit parent array, optionally
// extended on demand by a generator; without one, access past the stored
// range raises ExplicitRangeExhausted.
class ExplicitTree : public TreeFunction {
  public:
    using Extender = std::function<void(ExplicitTree&, std::size_t need, std::size_t budget)>;

    ExplicitTree() = default;
    explicit ExplicitTree(Extender ext) : extend_(std::move(ext)) {}

    void ensure(std::size_t n, std::size_t budget = default_budget) override;
    std::size_t materialized() const override { return p_.size(); }
    std::size_t parent(std::size_t n) const override { return p_[n]; }
    std::size_t rank(std::size_t n) const override { return r_[n]; }

    Sym label(std::size_t n) const { return labels_[n]; }
    const std::vector<Sym>& labels() const { return labels_; }

    // rank is derived: 0-based child index under the current parent.
    void push_node(std::size_t parent, Sym label);

    // Count of fully materialized levels; child lists are complete only for
    // levels <= complete_levels() - 2.
    std::size_t complete_levels() const;
    std::size_t level_of(std::size_t n) const;
    void mark_frontier_complete(); // call when generation ended exactly at a level boundary

  private:
    std::vector<std::uint32_t> p_;
    std::vector<std::uint32_t> r_;
    std::vector<Sym> labels_;
    std::vector<std::size_t> level_start_; // level_start_[k] = first node of level k
    bool frontier_complete_ = false;
    Extender extend_;
};

// (n div k, n mod k); agrees with parent_rank on k-uniform specs.
std::pair<std::size_t, std::size_t> k_uniform_parent_rank(std::size_t k, std::size_t n);

// Gap rule n_i for the staircase tree, i >= 1.
struct Gaps {
    std::function<std::size_t(std::size_t)> at; // may throw invalid_gaps / range exhausted
    std::string describe;

    static Gaps constant(std::size_t k);
    static Gaps arithmetic(std::size_t first, std::size_t step);
    static Gaps list(std::vector<std::size_t> values);
    static Gaps parse(const std::string& text); // "all:K" | "arith:A,D" | "list:a,b,c"
};

// The spine-plus-T-copies tree: spine nodes labeled 1 (as sigma index 1),
// all T nodes labeled 0. T has gaps.at(i) nodes at depth i; inside T every
// node keeps at least one child and the extra children of each level go to
// the chains that have gone longest without branching.
ExplicitTree staircase_tree(const Gaps& gaps, std::size_t limit,
                            std::size_t budget = default_budget);

} // namespace morphoseq
