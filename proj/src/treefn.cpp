#include "morphoseq/treefn.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <numeric>

namespace morphoseq {

std::pair<std::size_t, std::size_t> TreeFunction::parent_rank(std::size_t n, std::size_t budget) {
    if (n < 1)
        fail(Errc::parse_error, "parent_rank needs n >= 1");
    ensure(n + 1, budget);
    return {parent(n), rank(n)};
}

std::size_t TreeFunction::depth(std::size_t n, std::size_t budget) {
    if (n == 0) return 0;
    ensure(n + 1, budget);
    std::size_t k = 0;
    while (n > 0) {
        n = parent(n);
        ++k;
    }
    return k;
}

std::vector<std::size_t> TreeFunction::subtree_members(std::size_t n, std::size_t m,
                                                       std::size_t budget) {
    std::vector<std::size_t> out;
    if (m == 0) return out;
    out.reserve(m);
    std::vector<bool> member; // member[k - n]
    for (std::size_t k = n;; ++k) {
        if (k >= budget)
            fail(Errc::budget_exceeded, "subtree scan passed " + std::to_string(budget));
        ensure(k + 1, budget);
        bool in = (k == n);
        if (!in && k > 0) {
            std::size_t p = parent(k);
            in = p >= n && member[p - n];
        }
        member.push_back(in);
        if (in) {
            out.push_back(k);
            if (out.size() == m) return out;
        }
    }
}

SpecTree::SpecTree(const MorphicSpec& spec) : view_(spec, false) {
    p_ = {0, 0};
    r_ = {0, 1};
}

void SpecTree::ensure(std::size_t n, std::size_t budget) {
    if (n > budget)
        fail(Errc::budget_exceeded,
             "tree of " + std::to_string(n) + " nodes exceeds budget " + std::to_string(budget));
    const auto& rules = spec().rules;
    while (p_.size() < n) {
        std::size_t m = p_.size() - 1;
        Sym b = view_.pure_at(p_[m], budget);
        if (static_cast<std::size_t>(r_[m]) + 1 < rules[b].size()) {
            p_.push_back(p_[m]);
            r_.push_back(r_[m] + 1);
        } else {
            p_.push_back(p_[m] + 1);
            r_.push_back(0);
        }
    }
}

void ExplicitTree::ensure(std::size_t n, std::size_t budget) {
    if (n <= p_.size()) return;
    if (n > budget)
        fail(Errc::budget_exceeded,
             "tree of " + std::to_string(n) + " nodes exceeds budget " + std::to_string(budget));
    if (!extend_)
        fail(Errc::explicit_range_exhausted,
             "explicit tree holds " + std::to_string(p_.size()) + " nodes, " +
                 std::to_string(n) + " requested and no generator attached");
    extend_(*this, n, budget);
    if (p_.size() < n)
        fail(Errc::explicit_range_exhausted, "generator stopped short of the requested range");
}

void ExplicitTree::push_node(std::size_t parent, Sym label) {
    std::size_t n = p_.size();
    if (n == 0) {
        p_.push_back(0);
        r_.push_back(0);
        labels_.push_back(label);
        level_start_.push_back(0);
        return;
    }
    if (parent >= n)
        fail(Errc::parse_error, "explicit tree parent " + std::to_string(parent) +
                                    " not below node " + std::to_string(n));
    if (n >= 2 && parent < p_[n - 1])
        fail(Errc::parse_error, "explicit tree parents must be weakly monotone");
    p_.push_back(static_cast<std::uint32_t>(parent));
    r_.push_back(n >= 2 && p_[n - 1] == parent ? r_[n - 1] + 1 : 0);
    labels_.push_back(label);
    std::size_t lv = level_of(parent) + 1;
    if (lv == level_start_.size()) level_start_.push_back(n);
}

std::size_t ExplicitTree::level_of(std::size_t n) const {
    auto it = std::upper_bound(level_start_.begin(), level_start_.end(), n);
    return static_cast<std::size_t>(it - level_start_.begin()) - 1;
}

std::size_t ExplicitTree::complete_levels() const {
    if (level_start_.empty()) return 0;
    return frontier_complete_ ? level_start_.size() : level_start_.size() - 1;
}

void ExplicitTree::mark_frontier_complete() { frontier_complete_ = true; }

std::pair<std::size_t, std::size_t> k_uniform_parent_rank(std::size_t k, std::size_t n) {
    if (k < 2)
        fail(Errc::parse_error, "k_uniform_parent_rank needs k >= 2");
    if (n < 1)
        fail(Errc::parse_error, "k_uniform_parent_rank needs n >= 1");
    return {n / k, n % k};
}

Gaps Gaps::constant(std::size_t k) {
    if (k < 1) fail(Errc::invalid_gaps, "gap value must be >= 1");
    return {[k](std::size_t) { return k; }, "all:" + std::to_string(k)};
}

Gaps Gaps::arithmetic(std::size_t first, std::size_t step) {
    if (first < 1) fail(Errc::invalid_gaps, "first gap must be >= 1");
    return {[first, step](std::size_t i) { return first + (i - 1) * step; },
            "arith:" + std::to_string(first) + "," + std::to_string(step)};
}

Gaps Gaps::list(std::vector<std::size_t> values) {
    if (values.empty()) fail(Errc::invalid_gaps, "empty gap list");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1) fail(Errc::invalid_gaps, "gap value must be >= 1");
        if (i && values[i] < values[i - 1])
            fail(Errc::invalid_gaps, "gap list must be non-decreasing");
    }
    std::string desc = "list:";
    for (std::size_t i = 0; i < values.size(); ++i)
        desc += (i ? "," : "") + std::to_string(values[i]);
    auto vals = std::make_shared<std::vector<std::size_t>>(std::move(values));
    return {[vals](std::size_t i) {
                if (i > vals->size())
                    fail(Errc::explicit_range_exhausted,
                         "gap list has " + std::to_string(vals->size()) + " entries, level " +
                             std::to_string(i) + " requested");
                return (*vals)[i - 1];
            },
            desc};
}

Gaps Gaps::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        fail(Errc::parse_error, "gap rule '" + text + "' (want all:K, arith:A,D or list:...)");
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    auto parse_num = [&](const std::string& s) -> std::size_t {
        try {
            std::size_t pos = 0;
            unsigned long long v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            fail(Errc::parse_error, "bad number '" + s + "' in gap rule");
        }
    };
    std::vector<std::size_t> nums;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        nums.push_back(parse_num(rest.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (kind == "all" && nums.size() == 1) return constant(nums[0]);
    if (kind == "arith" && nums.size() == 2) return arithmetic(nums[0], nums[1]);
    if (kind == "list") return list(nums);
    fail(Errc::parse_error, "gap rule '" + text + "' (want all:K, arith:A,D or list:...)");
}

namespace {

// Child counts of the shared T, built level by level. Every node keeps one
// child; the level's extra children go to the chains that have waited longest
// since their last branch (age-descending, leftmost on ties).
struct TWiring {
    const Gaps* gaps;
    std::vector<std::vector<std::uint32_t>> child_counts; // per level, per position
    std::vector<std::vector<std::uint64_t>> child_base;   // prefix sums of the above
    std::vector<std::uint32_t> ages;                      // ages of the deepest built level

    explicit TWiring(const Gaps& g) : gaps(&g), ages{0} {}

    std::size_t level_size(std::size_t lv) const { return lv == 0 ? 1 : gaps->at(lv); }

    void ensure_level(std::size_t lv) {
        while (child_counts.size() <= lv) {
            std::size_t cur = child_counts.size();
            std::size_t s = ages.size();
            std::size_t snext = gaps->at(cur + 1);
            if (snext < s)
                fail(Errc::invalid_gaps, "gaps must be non-decreasing (level " +
                                             std::to_string(cur + 1) + ")");
            std::size_t extra = snext - s;
            std::vector<std::uint32_t> counts(s, 1);
            if (extra > 0) {
                std::vector<std::size_t> order(s);
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return ages[a] > ages[b];
                });
                std::size_t q = extra / s, r = extra % s;
                for (std::size_t k = 0; k < s; ++k)
                    counts[order[k]] += static_cast<std::uint32_t>(q + (k < r ? 1 : 0));
            }
            std::vector<std::uint64_t> base(s, 0);
            for (std::size_t j = 1; j < s; ++j) base[j] = base[j - 1] + counts[j - 1];
            std::vector<std::uint32_t> next_ages;
            next_ages.reserve(snext);
            for (std::size_t j = 0; j < s; ++j) {
                if (counts[j] == 1)
                    next_ages.push_back(ages[j] + 1);
                else
                    next_ages.insert(next_ages.end(), counts[j], 0);
            }
            child_counts.push_back(std::move(counts));
            child_base.push_back(std::move(base));
            ages = std::move(next_ages);
        }
    }
};

} // namespace

ExplicitTree staircase_tree(const Gaps& gaps, std::size_t limit, std::size_t budget) {
    if (limit < 1)
        fail(Errc::parse_error, "staircase_tree needs limit >= 1");
    if (limit > budget)
        fail(Errc::budget_exceeded, "staircase limit " + std::to_string(limit) +
                                        " exceeds budget " + std::to_string(budget));
    if (gaps.at(1) < 1)
        fail(Errc::invalid_gaps, "gap n_1 must be >= 1");

    ExplicitTree tree;
    TWiring wiring(gaps);

    struct Item {
        bool spine;
        std::uint32_t lvl;        // T level, spine ignores it
        std::uint64_t pos;        // position within the T level
        std::size_t parent;
    };
    std::deque<Item> queue;
    queue.push_back({true, 0, 0, 0});
    std::size_t made = 0;
    while (made < limit) {
        Item it = queue.front();
        queue.pop_front();
        std::size_t idx = made++;
        tree.push_node(idx == 0 ? 0 : it.parent, it.spine ? Sym{1} : Sym{0});
        if (it.spine) {
            queue.push_back({true, 0, 0, idx});
            queue.push_back({false, 0, 0, idx});
        } else {
            wiring.ensure_level(it.lvl);
            std::uint32_t nch = wiring.child_counts[it.lvl][it.pos];
            std::uint64_t base = wiring.child_base[it.lvl][it.pos];
            for (std::uint32_t c = 0; c < nch; ++c)
                queue.push_back({false, it.lvl + 1, base + c, idx});
        }
    }
    return tree;
}

} // namespace morphoseq
