#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "morphoseq/core.hpp"

namespace morphoseq {

// Unary symbols of the word representation: an output block, the marker S,
// a block over gamma with at most one barred symbol, and the end marker E.
struct RewriteSymbol {
    enum class Kind : std::uint8_t { output, gamma, bar, marker, end };
    Kind kind = Kind::end;
    Sym sym = 0; // payload for output / gamma / bar

    bool operator==(const RewriteSymbol&) const = default;
};

// Flat word form of a term; S's index and the barred symbol's index are
// cached so the strategy finds its redex without scanning.
struct RewriteTerm {
    std::vector<RewriteSymbol> symbols; // ends in E
    std::size_t s_pos = 0;              // index of the S marker
    std::ptrdiff_t bar_pos = -1;        // index of the barred symbol, -1 if none

    std::size_t stable_len() const { return s_pos; } // output block is [0, s_pos)
};

struct RewriteSystem {
    MorphicSpec spec;
    bool strict_checks = true; // full shape scan after every step
};

enum class RuleTag { expand_s, commute_bar, unfold_bar };
const char* rule_name(RuleTag tag);

struct StepResult {
    RuleTag rule;
    std::size_t position; // redex index in the flat word
};

// tau(a) S u E for f(a) = a u.
RewriteTerm start_term(const MorphicSpec& spec);

// Contracts the strategy's redex in place: the barred symbol's rule when a
// bar is present (commuting it right, unfolding at E), else the S rule. A
// second bar can never appear this way, which keeps the reachable shape.
StepResult step(const RewriteSystem& sys, RewriteTerm& t, std::size_t budget = default_budget);

// Shape and orthogonality assertion: segment structure, cache agreement,
// exactly one S, at most one bar, E only at the back, and at most one
// left-hand side matching at every position.
void check_term(const RewriteSystem& sys, const RewriteTerm& t);

struct RunResult {
    RewriteTerm term;
    std::vector<Sym> stable_prefix;
    std::size_t steps_done = 0;
};
RunResult run(const RewriteSystem& sys, RewriteTerm t, std::size_t steps,
              std::size_t budget = default_budget);

struct ConvergeResult {
    std::vector<Sym> prefix;
    std::size_t steps = 0;
};
// Reduces until the stable prefix reaches n symbols; the output block is
// skimmed off the term as it grows, so memory stays proportional to the
// working gamma block.
ConvergeResult converge_prefix(const MorphicSpec& spec, std::size_t n,
                               std::size_t budget = default_budget);

// Rendering with bars as "b~", the marker as "S", the end as "E".
std::string term_to_string(const RewriteSystem& sys, const RewriteTerm& t);

} // namespace morphoseq
