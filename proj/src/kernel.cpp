#include "morphoseq/kernel.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace morphoseq {

std::vector<Sym> subsequence(const MorphicSpec& spec, std::size_t n, std::size_t len,
                             std::size_t budget) {
    SpecTree tree(spec);
    auto members = tree.subtree_members(n, len, budget);
    std::vector<Sym> out;
    out.reserve(members.size());
    for (auto k : members) out.push_back(spec.coding[tree.pure_view().pure_at(k, budget)]);
    return out;
}

std::string subsequence_string(const MorphicSpec& spec, std::size_t n, std::size_t len,
                               std::size_t budget) {
    return word_to_string(spec.sigma, subsequence(spec, n, len, budget));
}

KernelReport kernel_classes(const MorphicSpec& spec, std::size_t witness_len,
                            std::size_t budget) {
    if (witness_len < 1) fail(Errc::parse_error, "witness_len must be at least 1");
    MixDfao original = from_spec(spec);
    Minimized min = minimize(original);
    const MixDfao& m = min.dfao;

    // states reached by nonempty enumeration words (first digit 1..ar(q0)-1,
    // then anything)
    std::vector<bool> seen(m.states(), false);
    std::vector<std::uint32_t> reach;
    for (std::uint32_t d = 1; d < m.ar[m.q0]; ++d) {
        auto t = m.delta[m.q0][d];
        if (!seen[t]) {
            seen[t] = true;
            reach.push_back(t);
        }
    }
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (auto t : m.delta[reach[i]])
            if (!seen[t]) {
                seen[t] = true;
                reach.push_back(t);
            }

    KernelReport rep;
    rep.sigma = spec.sigma;

    bool constant = true;
    for (auto q : reach)
        if (m.lambda[q] != m.lambda[m.q0]) {
            constant = false;
            break;
        }
    if (constant) {
        // constant output: every subsequence equals the sequence itself
        KernelClass root;
        root.representative = 0;
        root.state = m.q0;
        root.is_root = true;
        root.witness = subsequence(spec, 0, witness_len, budget);
        root.member_count_hint = 1;
        rep.classes.push_back(std::move(root));
        rep.lower = rep.upper = 1;
        rep.exact = true;
        return rep;
    }

    KernelClass root;
    root.representative = 0;
    root.state = m.q0;
    root.is_root = true;
    root.member_count_hint = 1;
    rep.classes.push_back(std::move(root));

    PhiTable phi(original);
    std::unordered_map<std::uint32_t, std::size_t> cls_of_state;
    std::size_t found = 0;
    for (std::size_t n = 1; found < reach.size() || n < 256; ++n) {
        if (n > budget) fail(Errc::budget_exceeded, "kernel class scan exceeded budget");
        auto q = static_cast<std::uint32_t>(min.state_map[phi.state_of(n, budget)]);
        auto it = cls_of_state.find(q);
        if (it == cls_of_state.end()) {
            KernelClass kc;
            kc.representative = n;
            kc.state = q;
            kc.member_count_hint = 1;
            cls_of_state.emplace(q, rep.classes.size());
            rep.classes.push_back(std::move(kc));
            ++found;
        } else {
            ++rep.classes[it->second].member_count_hint;
        }
    }

    for (auto& kc : rep.classes)
        kc.witness = subsequence(spec, kc.representative, witness_len, budget);
    rep.upper = rep.classes.size();
    std::vector<const std::vector<Sym>*> distinct;
    for (const auto& kc : rep.classes) {
        bool fresh = true;
        for (auto* w : distinct)
            if (*w == kc.witness) {
                fresh = false;
                break;
            }
        if (fresh) distinct.push_back(&kc.witness);
    }
    rep.lower = distinct.size();
    rep.exact = rep.lower == rep.upper;
    return rep;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

LabeledTreeView::LabeledTreeView(std::shared_ptr<TreeFunction> tree, std::size_t limit,
                                 std::function<Sym(std::size_t)> labels, Alphabet sigma,
                                 std::size_t budget)
    : tree_(std::move(tree)), labels_(std::move(labels)), sigma_(std::move(sigma)),
      limit_(limit) {
    if (limit_ == 0) fail(Errc::parse_error, "tree view needs at least one node");
    tree_->ensure(limit_, budget);
    dep_.assign(limit_, 0);
    children_.assign(limit_, {});
    for (std::size_t n = 1; n < limit_; ++n) {
        std::size_t p = tree_->parent(n);
        dep_[n] = dep_[p] + 1;
        children_[p].push_back(n);
    }
    complete_levels_ = dep_[limit_ - 1];
    if (labels_) {
        labelcache_.resize(limit_);
        for (std::size_t n = 0; n < limit_; ++n) labelcache_[n] = labels_(n);
    }
}

LabeledTreeView::LabeledTreeView(std::shared_ptr<TreeFunction> tree, std::size_t limit,
                                 std::size_t budget)
    : LabeledTreeView(std::move(tree), limit, nullptr, Alphabet{}, budget) {}

bool LabeledTreeView::eligible(std::size_t n, std::size_t d) const {
    return n < limit_ && complete_levels_ >= d + 2 && dep_[n] + d <= complete_levels_ - 2;
}

void LabeledTreeView::compute_to(std::size_t depth) {
    while (sig_.size() <= depth) {
        std::size_t d = sig_.size();
        std::vector<std::int64_t> ids(limit_, -1);
        std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> intern;
        for (std::size_t n = 0; n < limit_; ++n) {
            if (!eligible(n, d)) continue;
            std::vector<std::uint32_t> key;
            key.reserve(2 + (d ? children_[n].size() : 0));
            key.push_back(static_cast<std::uint32_t>(children_[n].size()));
            key.push_back(labels_ ? static_cast<std::uint32_t>(labelcache_[n]) + 1 : 0);
            if (d > 0)
                for (auto c : children_[n])
                    key.push_back(static_cast<std::uint32_t>(sig_[d - 1][c]));
            auto it = intern.find(key);
            if (it == intern.end())
                it = intern.emplace(std::move(key), static_cast<std::uint32_t>(intern.size()))
                         .first;
            ids[n] = it->second;
        }
        sig_.push_back(std::move(ids));
    }
}

std::size_t LabeledTreeView::signature_id(std::size_t n, std::size_t d) {
    if (!eligible(n, d))
        fail(Errc::budget_exceeded, "node " + std::to_string(n) + " has no depth-" +
                                        std::to_string(d) +
                                        " signature in the materialized prefix");
    compute_to(d);
    return static_cast<std::size_t>(sig_[d][n]);
}

std::string LabeledTreeView::signature_text(std::size_t n, std::size_t d) {
    if (!eligible(n, d))
        fail(Errc::budget_exceeded, "node " + std::to_string(n) + " has no depth-" +
                                        std::to_string(d) +
                                        " signature in the materialized prefix");
    std::string out;
    std::function<void(std::size_t, std::size_t)> emit = [&](std::size_t v, std::size_t dd) {
        out += "(";
        out += std::to_string(children_[v].size());
        if (labels_) {
            out += ",";
            out += sigma_.names[labelcache_[v]];
        }
        if (dd > 0)
            for (auto c : children_[v]) emit(c, dd - 1);
        out += ")";
    };
    emit(n, d);
    return out;
}

LabeledTreeView::Counts LabeledTreeView::distinct_signature_counts(std::size_t max_depth) {
    compute_to(max_depth);
    std::vector<std::size_t> pop;
    for (std::size_t n = 0; n < limit_; ++n)
        if (eligible(n, max_depth)) pop.push_back(n);
    Counts out;
    out.population = pop.size();
    for (std::size_t d = 0; d <= max_depth; ++d) {
        std::unordered_set<std::int64_t> s;
        for (auto n : pop) s.insert(sig_[d][n]);
        out.per_depth.push_back(s.size());
    }
    return out;
}

bool LabeledTreeView::partitions_equal(std::size_t d1, std::size_t d2, std::size_t pop_depth) {
    compute_to(std::max({d1, d2, pop_depth}));
    std::unordered_map<std::int64_t, std::int64_t> fwd, bwd;
    for (std::size_t n = 0; n < limit_; ++n) {
        if (!eligible(n, pop_depth)) continue;
        std::int64_t a = sig_[d1][n];
        std::int64_t b = sig_[d2][n];
        auto f = fwd.emplace(a, b);
        if (!f.second && f.first->second != b) return false;
        auto g = bwd.emplace(b, a);
        if (!g.second && g.first->second != a) return false;
    }
    return true;
}

std::optional<std::vector<Sym>> LabeledTreeView::witness(std::size_t n, std::size_t len) const {
    if (!labels_) fail(Errc::parse_error, "witness needs a labeled view");
    if (n >= limit_) fail(Errc::parse_error, "witness start outside the view");
    std::vector<Sym> out;
    if (len == 0) return out;
    std::vector<char> mark(limit_ - n, 0);
    mark[0] = 1;
    out.push_back(labelcache_[n]);
    for (std::size_t k = n + 1; k < limit_ && out.size() < len; ++k) {
        std::size_t p = tree_->parent(k);
        if (p >= n && mark[p - n]) {
            mark[k - n] = 1;
            out.push_back(labelcache_[k]);
        }
    }
    if (out.size() < len) return std::nullopt;
    return out;
}

LabeledTreeView labeled_view(const MorphicSpec& spec, std::size_t limit, std::size_t budget) {
    auto tree = std::make_shared<SpecTree>(spec);
    auto labels = [tree, budget](std::size_t n) {
        return tree->spec().coding[tree->pure_view().pure_at(n, budget)];
    };
    return LabeledTreeView(tree, limit, labels, spec.sigma, budget);
}

LabeledTreeView shape_view(const MorphicSpec& spec, std::size_t limit, std::size_t budget) {
    return LabeledTreeView(std::make_shared<SpecTree>(spec), limit, budget);
}

RationalityReport rationality_report(LabeledTreeView& view, std::size_t max_depth) {
    auto c = view.distinct_signature_counts(max_depth);
    RationalityReport rep;
    rep.counts = c.per_depth;
    rep.population = c.population;
    for (std::size_t d = 0; d + 2 <= max_depth; ++d) {
        if (rep.counts[d] != rep.counts[d + 1] || rep.counts[d + 1] != rep.counts[d + 2])
            continue;
        if (!view.partitions_equal(d, d + 1, max_depth) ||
            !view.partitions_equal(d + 1, d + 2, max_depth))
            continue;
        rep.verdict = RatVerdict::rational_within_budget;
        rep.stabilized_depth = d;
        rep.stabilized_count = rep.counts[d];
        break;
    }
    return rep;
}

StaircaseReport staircase_kernel(const Gaps& gaps, std::size_t limit, std::size_t witness_len,
                                 std::size_t max_depth, std::size_t budget) {
    auto tree = std::make_shared<ExplicitTree>(staircase_tree(gaps, limit, budget));
    Alphabet ab = Alphabet::from_names({"0", "1"});
    LabeledTreeView labeled(
        tree, limit, [tree](std::size_t n) { return tree->label(n); }, ab, budget);
    LabeledTreeView shape(tree, limit, budget);

    StaircaseReport rep;
    rep.labeled = labeled.distinct_signature_counts(max_depth);
    rep.shape = shape.distinct_signature_counts(max_depth);
    rep.labeled_strictly_increasing = max_depth >= 3;
    for (std::size_t d = 2; d + 1 <= max_depth; ++d)
        if (rep.labeled.per_depth[d] >= rep.labeled.per_depth[d + 1])
            rep.labeled_strictly_increasing = false;

    rep.scanned = std::min<std::size_t>(512, limit);
    for (std::size_t v = 0; v < rep.scanned; ++v) {
        auto w = labeled.witness(v, witness_len);
        if (!w) continue;
        bool fresh = true;
        for (const auto& seen : rep.witnesses)
            if (seen == *w) {
                fresh = false;
                break;
            }
        if (fresh) rep.witnesses.push_back(std::move(*w));
    }
    rep.prefix_classes = rep.witnesses.size();
    return rep;
}

MixDfao collapse_to_dfao(LabeledTreeView& view, std::size_t depth, std::size_t witness_len) {
    if (!view.labeled()) fail(Errc::parse_error, "collapse needs a labeled view");
    std::vector<std::size_t> pop;
    for (std::size_t n = 0; n < view.limit(); ++n)
        if (view.eligible(n, depth + 1)) pop.push_back(n);
    if (pop.empty())
        fail(Errc::not_stabilized, "no node has a depth-" + std::to_string(depth + 1) +
                                       " signature; materialize more nodes or lower the probe "
                                       "depth");
    if (!view.partitions_equal(depth, depth + 1, depth + 1))
        fail(Errc::not_stabilized, "signature partition still changes between depth " +
                                       std::to_string(depth) + " and " +
                                       std::to_string(depth + 1));

    std::unordered_map<std::size_t, std::vector<Sym>> class_witness;
    std::size_t probed = 0;
    for (std::size_t n : pop) {
        if (probed >= 512) break;
        auto w = view.witness(n, witness_len);
        if (!w) continue;
        ++probed;
        std::size_t id = view.signature_id(n, depth);
        auto it = class_witness.find(id);
        if (it == class_witness.end())
            class_witness.emplace(id, std::move(*w));
        else if (it->second != *w)
            fail(Errc::not_stabilized,
                 "witness prefixes split the signature class of node " + std::to_string(n));
    }

    std::unordered_map<std::size_t, std::size_t> state_of_id; // sig id -> state (1-based)
    std::vector<std::size_t> rep_of_state;
    for (std::size_t n : pop) {
        std::size_t id = view.signature_id(n, depth);
        if (state_of_id.emplace(id, rep_of_state.size() + 1).second) rep_of_state.push_back(n);
    }
    auto class_of = [&](std::size_t node) {
        std::size_t id = view.signature_id(node, depth);
        auto it = state_of_id.find(id);
        if (it == state_of_id.end())
            fail(Errc::not_stabilized,
                 "node " + std::to_string(node) + " falls outside the probed classes");
        return static_cast<std::uint32_t>(it->second);
    };

    MixDfao m;
    m.sigma = view.sigma();
    m.q0 = 0;
    m.names.push_back("q0");
    m.lambda.push_back(view.label(0));
    const auto& root_children = view.children(0);
    m.ar.push_back(static_cast<std::uint32_t>(root_children.size()) + 1);
    std::vector<std::uint32_t> q0row{0};
    for (auto c : root_children) q0row.push_back(class_of(c));
    m.delta.push_back(std::move(q0row));
    for (std::size_t r : rep_of_state) {
        m.names.push_back("n" + std::to_string(r));
        m.lambda.push_back(view.label(r));
        const auto& ch = view.children(r);
        m.ar.push_back(static_cast<std::uint32_t>(ch.size()));
        std::vector<std::uint32_t> row;
        for (auto c : ch) row.push_back(class_of(c));
        m.delta.push_back(std::move(row));
    }
    m.check();
    return trim(m);
}

} // namespace morphoseq
