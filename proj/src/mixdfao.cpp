#include "morphoseq/mixdfao.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace morphoseq {

using bigint = boost::multiprecision::cpp_int;

std::uint32_t MixDfao::max_arity() const {
    std::uint32_t m = 0;
    for (auto a : ar) m = std::max(m, a);
    return m;
}

void MixDfao::check() const {
    if (ar.empty())
        fail(Errc::parse_error, "automaton has no states");
    if (q0 >= states())
        fail(Errc::parse_error, "initial state out of range");
    if (delta.size() != states() || lambda.size() != states() || names.size() != states())
        fail(Errc::parse_error, "automaton field sizes disagree");
    for (std::size_t q = 0; q < states(); ++q) {
        if (ar[q] < 1)
            fail(Errc::parse_error, "state " + names[q] + " has arity 0");
        if (delta[q].size() != ar[q])
            fail(Errc::parse_error, "state " + names[q] + " row size != arity");
        for (auto t : delta[q])
            if (t >= states())
                fail(Errc::parse_error, "transition target out of range");
        if (lambda[q] >= sigma.size())
            fail(Errc::parse_error, "output of state " + names[q] + " out of range");
    }
}

MixDfao from_spec(const MorphicSpec& spec) {
    MixDfao m;
    m.names = spec.gamma.names;
    m.q0 = spec.start;
    m.sigma = spec.sigma;
    m.lambda = spec.coding;
    m.ar.reserve(spec.gamma.size());
    m.delta.reserve(spec.gamma.size());
    for (std::size_t b = 0; b < spec.gamma.size(); ++b) {
        const auto& img = spec.rules[b];
        m.ar.push_back(static_cast<std::uint32_t>(img.size()));
        m.delta.emplace_back(img.begin(), img.end());
    }
    m.check();
    return m;
}

MorphicSpec to_spec(const MixDfao& m) {
    m.check();
    if (m.delta[m.q0][0] != m.q0)
        fail(Errc::not_prolongable, "delta(q0, 0) != q0, the induced morphism has no fixed point");
    if (m.ar[m.q0] < 2)
        fail(Errc::not_prolongable, "ar(q0) = 1 leaves an empty tail after the start symbol");
    RawSpec raw;
    raw.alphabet = m.names;
    raw.start = m.names[m.q0];
    for (std::size_t q = 0; q < m.states(); ++q) {
        std::vector<std::string> img;
        for (auto t : m.delta[q]) img.push_back(m.names[t]);
        raw.rules.emplace_back(m.names[q], std::move(img));
    }
    raw.output_alphabet = m.sigma.names;
    raw.coding.emplace();
    for (std::size_t q = 0; q < m.states(); ++q)
        raw.coding->emplace_back(m.names[q], m.sigma.names[m.lambda[q]]);
    return validate_spec(raw);
}

MixDfao trim(const MixDfao& m, std::vector<std::size_t>* state_map) {
    m.check();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> map(m.states(), none);
    std::vector<std::uint32_t> order;
    map[m.q0] = 0;
    order.push_back(m.q0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto t : m.delta[order[i]])
            if (map[t] == none) {
                map[t] = order.size();
                order.push_back(t);
            }
    MixDfao out;
    out.q0 = 0;
    out.sigma = m.sigma;
    for (auto q : order) {
        out.names.push_back(m.names[q]);
        out.ar.push_back(m.ar[q]);
        std::vector<std::uint32_t> row;
        for (auto t : m.delta[q]) row.push_back(static_cast<std::uint32_t>(map[t]));
        out.delta.push_back(std::move(row));
        out.lambda.push_back(m.lambda[q]);
    }
    if (state_map) *state_map = std::move(map);
    return out;
}

Minimized minimize(const MixDfao& input) {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> reach_map;
    MixDfao m = trim(input, &reach_map);

    // Moore refinement; merging is sound only for states agreeing on output
    // and arity, so that pair seeds the partition.
    std::vector<std::size_t> cls(m.states());
    {
        std::map<std::pair<Sym, std::uint32_t>, std::size_t> first;
        for (std::size_t q = 0; q < m.states(); ++q) {
            auto key = std::make_pair(m.lambda[q], m.ar[q]);
            auto [it, fresh] = first.emplace(key, first.size());
            cls[q] = it->second;
        }
    }
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next_cls(m.states());
        for (std::size_t q = 0; q < m.states(); ++q) {
            std::vector<std::size_t> sig{cls[q]};
            for (auto t : m.delta[q]) sig.push_back(cls[t]);
            auto [it, fresh] = sig_ids.emplace(std::move(sig), sig_ids.size());
            next_cls[q] = it->second;
        }
        bool same = std::equal(cls.begin(), cls.end(), next_cls.begin());
        cls = std::move(next_cls);
        if (same) break;
    }

    std::size_t nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
    Minimized out;
    out.dfao.sigma = m.sigma;
    out.dfao.names.assign(nclasses, "");
    out.dfao.ar.assign(nclasses, 0);
    out.dfao.delta.assign(nclasses, {});
    out.dfao.lambda.assign(nclasses, 0);
    std::vector<bool> done(nclasses, false);
    for (std::size_t q = 0; q < m.states(); ++q) {
        std::size_t c = cls[q];
        if (done[c]) {
            out.dfao.names[c] += "=" + m.names[q];
            continue;
        }
        done[c] = true;
        out.dfao.names[c] = m.names[q];
        out.dfao.ar[c] = m.ar[q];
        std::vector<std::uint32_t> row;
        for (auto t : m.delta[q]) row.push_back(static_cast<std::uint32_t>(cls[t]));
        out.dfao.delta[c] = std::move(row);
        out.dfao.lambda[c] = m.lambda[q];
    }
    out.dfao.q0 = static_cast<std::uint32_t>(cls[m.q0]);
    out.dfao.check();
    out.state_map.assign(input.states(), none);
    for (std::size_t q = 0; q < input.states(); ++q)
        if (reach_map[q] != none) out.state_map[q] = cls[reach_map[q]];
    return out;
}

PhiTable::PhiTable(MixDfao m) : m_(std::move(m)) {
    m_.check();
    parent_ = {0};
    digit_ = {0};
    state_ = {m_.q0};
    first_child_ = {1}; // node 0's children, if any, start at index 1
}

std::size_t PhiTable::children_of(std::size_t n) const {
    return n == 0 ? m_.ar[m_.q0] - 1 : m_.ar[state_[n]];
}

void PhiTable::ensure(std::size_t n, std::size_t budget) {
    if (n > budget)
        fail(Errc::budget_exceeded, "enumerating " + std::to_string(n) +
                                        " words exceeds budget " + std::to_string(budget));
    while (parent_.size() < n) {
        std::size_t want = children_of(cursor_);
        std::size_t have = 0;
        if (cursor_ == 0)
            have = parent_.size() - 1;
        else if (first_child_[cursor_] != 0)
            have = parent_.size() - first_child_[cursor_];
        if (have >= want) {
            ++cursor_;
            if (cursor_ >= parent_.size())
                fail(Errc::language_finite,
                     "enumeration exhausted after " + std::to_string(parent_.size()) +
                         " words (ar(q0) = 1)");
            continue;
        }
        if (have == 0 && cursor_ >= 1) first_child_[cursor_] = parent_.size();
        std::uint32_t q = state_[cursor_];
        std::uint32_t d = static_cast<std::uint32_t>(have) + (cursor_ == 0 ? 1u : 0u);
        parent_.push_back(static_cast<std::uint32_t>(cursor_));
        digit_.push_back(d);
        state_.push_back(m_.delta[q][d]);
        first_child_.push_back(0); // 0 marks children not materialized yet
    }
}

std::vector<std::uint32_t> PhiTable::phi(std::size_t n, std::size_t budget) {
    ensure(n + 1, budget);
    std::vector<std::uint32_t> digits;
    for (std::size_t k = n; k != 0; k = parent_[k]) digits.push_back(digit_[k]);
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::string PhiTable::phi_string(std::size_t n, std::size_t budget) {
    std::string out;
    for (auto d : phi(n, budget)) out += std::to_string(d);
    return out;
}

std::size_t PhiTable::phi_inverse(const std::vector<std::uint32_t>& word, std::size_t budget) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        std::uint32_t d = word[i];
        if (n == 0) {
            if (d == 0)
                fail(Errc::not_in_language, "enumeration words do not start with digit 0");
            if (d >= m_.ar[m_.q0])
                fail(Errc::not_in_language,
                     "digit " + std::to_string(d) + " exceeds the initial arity");
            n = d;
        } else {
            if (d >= m_.ar[state_of(n, budget)])
                fail(Errc::not_in_language, "digit " + std::to_string(d) +
                                                " exceeds the arity of state " +
                                                m_.names[state_of(n, budget)]);
            while (first_child_[n] == 0) ensure(parent_.size() + 1, budget);
            n = first_child_[n] + d;
        }
        ensure(n + 1, budget);
    }
    return n;
}

std::uint32_t PhiTable::state_of(std::size_t n, std::size_t budget) {
    ensure(n + 1, budget);
    return state_[n];
}

Sym PhiTable::sigma_m(std::size_t n, std::size_t budget) { return m_.lambda[state_of(n, budget)]; }

std::string PhiTable::sigma_m_name(std::size_t n, std::size_t budget) {
    return m_.sigma.names[sigma_m(n, budget)];
}

void Dfa::check() const {
    if (next.empty())
        fail(Errc::parse_error, "acceptor has no states");
    if (start >= states() || accept.size() != states())
        fail(Errc::parse_error, "acceptor field sizes disagree");
    for (const auto& row : next) {
        if (row.size() != letters.size())
            fail(Errc::parse_error, "acceptor is not total");
        for (auto t : row)
            if (t >= states())
                fail(Errc::parse_error, "acceptor target out of range");
    }
}

struct Ans::Impl {
    std::vector<std::vector<bigint>> counts; // counts[len][q], accepted words of that length from q

    void grow(const Dfa& dfa, std::size_t len) {
        while (counts.size() <= len) {
            std::size_t l = counts.size();
            std::vector<bigint> row(dfa.states());
            for (std::size_t q = 0; q < dfa.states(); ++q) {
                bigint sum = 0;
                for (auto t : dfa.next[q]) sum += counts[l - 1][t];
                row[q] = sum;
            }
            counts.push_back(std::move(row));
        }
    }
};

Ans::Ans(Dfa dfa) : dfa_(std::move(dfa)), impl_(std::make_shared<Impl>()) {
    dfa_.check();
    std::vector<bigint> base(dfa_.states());
    for (std::size_t q = 0; q < dfa_.states(); ++q) base[q] = dfa_.accept[q] ? 1 : 0;
    impl_->counts.push_back(std::move(base));
}

void Ans::require_infinite() {
    if (checked_infinite_) return;
    std::size_t n = dfa_.states();
    std::vector<bool> reach(n, false);
    std::vector<std::uint32_t> order{dfa_.start};
    reach[dfa_.start] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto t : dfa_.next[order[i]])
            if (!reach[t]) {
                reach[t] = true;
                order.push_back(t);
            }
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::size_t q = 0; q < n; ++q)
        for (auto t : dfa_.next[q]) rev[t].push_back(static_cast<std::uint32_t>(q));
    std::vector<bool> co(n, false);
    std::vector<std::uint32_t> stack;
    for (std::size_t q = 0; q < n; ++q)
        if (dfa_.accept[q]) {
            co[q] = true;
            stack.push_back(static_cast<std::uint32_t>(q));
        }
    while (!stack.empty()) {
        auto q = stack.back();
        stack.pop_back();
        for (auto s : rev[q])
            if (!co[s]) {
                co[s] = true;
                stack.push_back(s);
            }
    }
    // the language is infinite iff the useful subgraph has a cycle; detect by
    // checking whether it can be fully peeled in topological order
    auto useful = [&](std::size_t q) { return reach[q] && co[q]; };
    std::vector<std::size_t> indeg(n, 0);
    std::size_t useful_count = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (!useful(q)) continue;
        ++useful_count;
        for (auto t : dfa_.next[q])
            if (useful(t)) ++indeg[t];
    }
    std::vector<std::uint32_t> ready;
    for (std::size_t q = 0; q < n; ++q)
        if (useful(q) && indeg[q] == 0) ready.push_back(static_cast<std::uint32_t>(q));
    std::size_t removed = 0;
    while (!ready.empty()) {
        auto q = ready.back();
        ready.pop_back();
        ++removed;
        for (auto t : dfa_.next[q])
            if (useful(t) && --indeg[t] == 0) ready.push_back(t);
    }
    if (removed == useful_count)
        fail(Errc::language_finite, "the acceptor recognizes a finite language");
    checked_infinite_ = true;
}

std::vector<Sym> Ans::rep(std::size_t n, std::size_t budget) {
    require_infinite();
    auto& counts = impl_->counts;
    bigint rank = n;
    std::size_t len = 0;
    for (;; ++len) {
        if (len > budget)
            fail(Errc::budget_exceeded, "numeral length exceeded budget");
        impl_->grow(dfa_, len);
        const bigint& here = counts[len][dfa_.start];
        if (rank < here) break;
        rank -= here;
    }
    std::vector<Sym> word;
    std::uint32_t q = dfa_.start;
    for (std::size_t rem = len; rem > 0; --rem) {
        Sym a = 0;
        for (;; ++a) {
            if (a >= dfa_.letters.size())
                fail(Errc::parse_error, "unranking overran the alphabet");
            const bigint& under = counts[rem - 1][dfa_.next[q][a]];
            if (rank < under) break;
            rank -= under;
        }
        word.push_back(a);
        q = dfa_.next[q][a];
    }
    return word;
}

std::string Ans::rep_string(std::size_t n, std::size_t budget) {
    return word_to_string(dfa_.letters, rep(n, budget));
}

std::size_t Ans::val(const std::vector<Sym>& word) {
    require_infinite();
    std::uint32_t q = dfa_.start;
    for (Sym a : word) {
        if (a >= dfa_.letters.size())
            fail(Errc::not_in_language, "letter id outside the acceptor alphabet");
        q = dfa_.next[q][a];
    }
    if (!dfa_.accept[q])
        fail(Errc::not_in_language, "the acceptor rejects this word");
    impl_->grow(dfa_, word.size());
    auto& counts = impl_->counts;
    bigint rank = 0;
    for (std::size_t len = 0; len < word.size(); ++len) rank += counts[len][dfa_.start];
    q = dfa_.start;
    for (std::size_t i = 0; i < word.size(); ++i) {
        std::size_t rem = word.size() - i - 1;
        for (Sym a = 0; a < word[i]; ++a) rank += counts[rem][dfa_.next[q][a]];
        q = dfa_.next[q][word[i]];
    }
    return static_cast<std::size_t>(rank);
}

std::size_t Ans::val_string(const std::string& word) {
    std::vector<Sym> syms;
    for (char c : word) syms.push_back(dfa_.letters.lookup(std::string(1, c)));
    return val(syms);
}

Sym ans_dfao_sequence(const Dfao& dfao, Ans& ans, std::size_t i, std::size_t budget) {
    if (dfao.dfa.letters.names != ans.dfa().letters.names)
        fail(Errc::parse_error, "DFAO and numeration system use different letters");
    auto word = ans.rep(i, budget);
    std::uint32_t q = dfao.dfa.start;
    for (Sym a : word) q = dfao.dfa.next[q][a];
    return dfao.lambda[q];
}

static Alphabet digit_alphabet(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t d = 0; d < k; ++d) names.push_back(std::to_string(d));
    return Alphabet::from_names(names);
}

Dfa phi_language_acceptor(const MixDfao& m) {
    m.check();
    std::size_t k = m.max_arity();
    std::size_t n = m.states();
    // state 0 = fresh initial, 1..n = automaton states shifted up, n+1 = dead
    std::uint32_t dead = static_cast<std::uint32_t>(n + 1);
    Dfa dfa;
    dfa.letters = digit_alphabet(k);
    dfa.start = 0;
    dfa.next.assign(n + 2, std::vector<std::uint32_t>(k, dead));
    dfa.accept.assign(n + 2, true);
    dfa.accept[dead] = false;
    for (std::uint32_t d = 1; d < m.ar[m.q0]; ++d) dfa.next[0][d] = m.delta[m.q0][d] + 1;
    for (std::size_t q = 0; q < n; ++q)
        for (std::uint32_t d = 0; d < m.ar[q]; ++d) dfa.next[q + 1][d] = m.delta[q][d] + 1;
    return dfa;
}

Dfao totalize(const MixDfao& m) {
    m.check();
    std::size_t k = m.max_arity();
    std::size_t n = m.states();
    std::uint32_t dead = static_cast<std::uint32_t>(n);
    Dfao out;
    out.dfa.letters = digit_alphabet(k);
    out.dfa.start = m.q0;
    out.dfa.next.assign(n + 1, std::vector<std::uint32_t>(k, dead));
    out.dfa.accept.assign(n + 1, true);
    out.dfa.accept[dead] = false;
    for (std::size_t q = 0; q < n; ++q)
        for (std::uint32_t d = 0; d < m.ar[q]; ++d) out.dfa.next[q][d] = m.delta[q][d];
    out.out = m.sigma;
    out.lambda = m.lambda;
    out.lambda.push_back(m.lambda[m.q0]); // dead state output, never consulted
    return out;
}

std::string to_dot(const MixDfao& m) {
    std::ostringstream os;
    os << "digraph mixdfao {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  start [shape=point];\n  start -> q" << m.q0 << ";\n";
    for (std::size_t q = 0; q < m.states(); ++q)
        os << "  q" << q << " [label=\"" << m.names[q] << "/" << m.sigma.names[m.lambda[q]] << "/"
           << m.ar[q] << "\"];\n";
    for (std::size_t q = 0; q < m.states(); ++q)
        for (std::uint32_t d = 0; d < m.ar[q]; ++d)
            os << "  q" << q << " -> q" << m.delta[q][d] << " [label=\"" << d << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace morphoseq
