#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "morphoseq/core.hpp"

namespace morphoseq {

// Automaton with one arity per state; delta(q, i) is defined exactly for
// 0 <= i < ar(q). Digits are fed most significant first.
struct MixDfao {
    std::vector<std::string> names;              // per state
    std::vector<std::uint32_t> ar;               // >= 1
    std::vector<std::vector<std::uint32_t>> delta; // delta[q].size() == ar[q]
    std::uint32_t q0 = 0;
    Alphabet sigma;
    std::vector<Sym> lambda; // per state, into sigma

    std::size_t states() const { return ar.size(); }
    std::uint32_t max_arity() const;
    void check() const; // structural invariants
};

// States = gamma, ar(q) = |f(q)|, delta(q,i) = f(q)(i), q0 = start,
// lambda = coding.
MixDfao from_spec(const MorphicSpec& spec);

// Inverse direction; needs delta(q0,0) = q0 and ar(q0) >= 2, else the induced
// morphism is not prolongable.
MorphicSpec to_spec(const MixDfao& m);

// Drops states unreachable from q0; returns the old->new map entry-wise
// (size_t(-1) for dropped states).
MixDfao trim(const MixDfao& m, std::vector<std::size_t>* state_map = nullptr);

struct Minimized {
    MixDfao dfao;
    std::vector<std::size_t> state_map; // argument state -> class, size_t(-1) if unreachable
};
// Moore refinement from the (lambda, ar) partition, applied after trimming.
Minimized minimize(const MixDfao& m);

// Enumeration phi_M: words over digits in breadth-first order, phi(0) = eps,
// phi(1) = "1"; each entry is stored as (parent index, last digit), and the
// parent index coincides with the tree P.
class PhiTable {
  public:
    explicit PhiTable(MixDfao m);

    const MixDfao& automaton() const { return m_; }

    void ensure(std::size_t n, std::size_t budget = default_budget);
    std::size_t materialized() const { return parent_.size(); }

    std::vector<std::uint32_t> phi(std::size_t n, std::size_t budget = default_budget);
    std::string phi_string(std::size_t n, std::size_t budget = default_budget);
    std::size_t phi_inverse(const std::vector<std::uint32_t>& word,
                            std::size_t budget = default_budget);

    std::uint32_t state_of(std::size_t n, std::size_t budget = default_budget);
    Sym sigma_m(std::size_t n, std::size_t budget = default_budget); // lambda(state)
    std::string sigma_m_name(std::size_t n, std::size_t budget = default_budget);

    std::size_t parent_of(std::size_t n) const { return parent_[n]; } // pre: materialized
    std::uint32_t digit_of(std::size_t n) const { return digit_[n]; }

  private:
    std::size_t children_of(std::size_t n) const;

    MixDfao m_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> digit_;
    std::vector<std::uint32_t> state_;
    std::vector<std::size_t> first_child_;
    std::size_t cursor_ = 0; // next parent whose children get appended
};

// Total deterministic acceptor over an ordered alphabet.
struct Dfa {
    Alphabet letters;
    std::vector<std::vector<std::uint32_t>> next; // next[q][a], total
    std::uint32_t start = 0;
    std::vector<bool> accept;

    std::size_t states() const { return next.size(); }
    void check() const;
};

// Total DFA with output, for the abstract-numeration-system pipeline.
struct Dfao {
    Dfa dfa;
    Alphabet out;
    std::vector<Sym> lambda; // per state
};

// Abstract numeration system: genealogical (length-then-lexicographic)
// numbering of an infinite regular language.
class Ans {
  public:
    explicit Ans(Dfa dfa);

    const Dfa& dfa() const { return dfa_; }

    std::vector<Sym> rep(std::size_t n, std::size_t budget = default_budget);
    std::string rep_string(std::size_t n, std::size_t budget = default_budget);
    std::size_t val(const std::vector<Sym>& word);
    std::size_t val_string(const std::string& word); // single-char letter names

  private:
    void require_infinite();

    Dfa dfa_;
    bool checked_infinite_ = false;
    struct Impl; // per-state per-length bignum word counts
    std::shared_ptr<Impl> impl_;
};

// lambda(delta(q0, rep(i))) for a user-supplied total DFAO and ANS over the
// same letters.
Sym ans_dfao_sequence(const Dfao& dfao, Ans& ans, std::size_t i,
                      std::size_t budget = default_budget);

// Acceptor of {eps} + the phi words (nonempty digit words not starting with
// 0 that the mix-DFAO can read); its genealogical order is the phi order.
Dfa phi_language_acceptor(const MixDfao& m);

// Mix-DFAO made total over digits 0..max_arity-1 by a dead state; lambda of
// the dead state reuses q0's output (never consulted for language words).
Dfao totalize(const MixDfao& m);

// DOT rendering, state label "name/output/arity", edge label = digit.
std::string to_dot(const MixDfao& m);

} // namespace morphoseq
