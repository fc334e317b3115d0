#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphoseq/error.hpp"

namespace morphoseq {

using Sym = std::uint16_t;

// Default cell budget for every potentially unbounded generation step.
// The CLI can override it via MORPHOSEQ_BUDGET.
inline constexpr std::size_t default_budget = 10'000'000;

// Ordered set of named symbols; the order is the symbol id.
struct Alphabet {
    std::vector<std::string> names;
    std::unordered_map<std::string, Sym> index;

    static Alphabet from_names(const std::vector<std::string>& names);
    Sym lookup(const std::string& name) const; // throws unknown_symbol
    std::size_t size() const { return names.size(); }
    bool all_single_char() const;
};

// Renders a word of symbol ids; names are concatenated when every name in the
// alphabet is a single character, otherwise joined with spaces.
std::string word_to_string(const Alphabet& a, const std::vector<Sym>& word);

// A validated morphic sequence description: non-erasing f, prolongable at the
// start symbol, total coding into the output alphabet.
struct MorphicSpec {
    Alphabet gamma;
    Sym start = 0;
    std::vector<std::vector<Sym>> rules; // rules[b] = f(b), all non-empty
    Alphabet sigma;
    std::vector<Sym> coding; // coding[b] in sigma
    bool identity_coding = false;

    const std::vector<Sym>& image(Sym b) const { return rules[b]; }
};

// Unvalidated input for validate_spec; mirrors the spec file fields.
struct RawSpec {
    std::vector<std::string> alphabet;
    std::string start;
    std::vector<std::pair<std::string, std::vector<std::string>>> rules;
    std::optional<std::vector<std::string>> output_alphabet;
    std::optional<std::vector<std::pair<std::string, std::string>>> coding;
};

MorphicSpec validate_spec(const RawSpec& raw);

// Convenience builder used all over the tests: every symbol name is one
// character, rules given as strings, coding as symbol->symbol pairs.
MorphicSpec make_spec(const std::string& alphabet, const std::string& start,
                      const std::vector<std::pair<std::string, std::string>>& rules,
                      const std::string& output_alphabet = "",
                      const std::vector<std::pair<std::string, std::string>>& coding = {});

// Growable prefix of the pure fixed point f^inf(a). The buffer is seeded with
// f(a) and extended by applying f to the symbol under the read cursor, so the
// cache is always a prefix of the fixed point.
class SequenceView {
  public:
    explicit SequenceView(const MorphicSpec& spec, bool coded = true);

    const MorphicSpec& spec() const { return spec_; }
    bool coded() const { return coded_; }

    void ensure(std::size_t n, std::size_t budget = default_budget);
    Sym pure_at(std::size_t i, std::size_t budget = default_budget);
    Sym at(std::size_t i, std::size_t budget = default_budget); // coded per flag

    std::vector<Sym> prefix_syms(std::size_t n, std::size_t budget = default_budget);
    std::string prefix(std::size_t n, std::size_t budget = default_budget);

    std::size_t cached_size() const { return cache_.size(); }
    const std::vector<Sym>& cache() const { return cache_; }

  private:
    MorphicSpec spec_;
    std::vector<Sym> cache_;
    std::size_t cursor_ = 1; // next cache index whose image gets appended
    bool coded_;
};

// f^n(a) as a word over gamma.
std::vector<Sym> iterate(const MorphicSpec& spec, std::size_t n,
                         std::size_t budget = default_budget);
std::string iterate_string(const MorphicSpec& spec, std::size_t n,
                           std::size_t budget = default_budget);

std::string prefix(const MorphicSpec& spec, std::size_t n, std::size_t budget = default_budget);
Sym element_at(const MorphicSpec& spec, std::size_t i, std::size_t budget = default_budget);

// Same sequence, rules replaced by f^n.
MorphicSpec power_representation(const MorphicSpec& spec, std::size_t n,
                                 std::size_t budget = default_budget);

// Representation of tail(sigma): fresh start symbol c with f(c) = c y f(b)
// where f(a) = a b y, coding tau(c) = tau(b).
MorphicSpec tail_representation(const MorphicSpec& spec);

struct PrefixCompare {
    bool equal;
    std::size_t mismatch_index; // valid when !equal
};
PrefixCompare prefix_equal(const MorphicSpec& a, const MorphicSpec& b, std::size_t n,
                           std::size_t budget = default_budget);

std::vector<Sym> arithmetic_subsequence(SequenceView& view, std::size_t offset, std::size_t step,
                                        std::size_t n, std::size_t budget = default_budget);
std::string arithmetic_subsequence_string(const MorphicSpec& spec, std::size_t offset,
                                          std::size_t step, std::size_t n,
                                          std::size_t budget = default_budget);

} // namespace morphoseq
