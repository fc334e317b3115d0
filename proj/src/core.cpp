#include "morphoseq/core.hpp"

#include <algorithm>

namespace morphoseq {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::empty_image: return "EmptyImage";
    case Errc::not_prolongable: return "NotProlongable";
    case Errc::unknown_symbol: return "UnknownSymbol";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::not_in_language: return "NotInLanguage";
    case Errc::language_finite: return "LanguageFinite";
    case Errc::invalid_gaps: return "InvalidGaps";
    case Errc::explicit_range_exhausted: return "ExplicitRangeExhausted";
    case Errc::not_stabilized: return "NotStabilized";
    case Errc::normal_form: return "NormalForm";
    case Errc::angle_not_integer: return "AngleNotInteger";
    case Errc::io_error: return "IoError";
    case Errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

Alphabet Alphabet::from_names(const std::vector<std::string>& names) {
    Alphabet a;
    a.names = names;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty())
            fail(Errc::parse_error, "alphabet contains an empty symbol name");
        auto [it, fresh] = a.index.emplace(names[i], static_cast<Sym>(i));
        if (!fresh)
            fail(Errc::parse_error, "duplicate symbol name '" + names[i] + "'");
    }
    return a;
}

Sym Alphabet::lookup(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end())
        fail(Errc::unknown_symbol, "symbol '" + name + "' is not in the alphabet");
    return it->second;
}

bool Alphabet::all_single_char() const {
    return std::all_of(names.begin(), names.end(),
                       [](const std::string& s) { return s.size() == 1; });
}

std::string word_to_string(const Alphabet& a, const std::vector<Sym>& word) {
    std::string out;
    bool tight = a.all_single_char();
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!tight && i) out += ' ';
        out += a.names[word[i]];
    }
    return out;
}

MorphicSpec validate_spec(const RawSpec& raw) {
    // lookup with the field the name came from, for precise diagnostics
    auto look = [](const Alphabet& a, const std::string& name, const std::string& field) {
        auto it = a.index.find(name);
        if (it == a.index.end())
            fail(Errc::unknown_symbol,
                 field + ": symbol '" + name + "' is not in the alphabet");
        return it->second;
    };

    MorphicSpec s;
    s.gamma = Alphabet::from_names(raw.alphabet);
    s.start = look(s.gamma, raw.start, "start");

    s.rules.assign(s.gamma.size(), {});
    std::vector<bool> seen(s.gamma.size(), false);
    for (const auto& [lhs, rhs] : raw.rules) {
        Sym b = look(s.gamma, lhs, "rules");
        if (seen[b])
            fail(Errc::parse_error, "two rules for symbol '" + lhs + "'");
        seen[b] = true;
        if (rhs.empty())
            fail(Errc::empty_image, "f(" + lhs + ") is the empty word");
        for (std::size_t i = 0; i < rhs.size(); ++i)
            s.rules[b].push_back(
                look(s.gamma, rhs[i], "rules." + lhs + "[" + std::to_string(i) + "]"));
    }
    for (std::size_t b = 0; b < s.gamma.size(); ++b)
        if (!seen[b])
            fail(Errc::parse_error, "no rule for symbol '" + s.gamma.names[b] + "'");

    const auto& fa = s.rules[s.start];
    if (fa[0] != s.start)
        fail(Errc::not_prolongable, "f(" + raw.start + ") does not start with " + raw.start);
    if (fa.size() < 2)
        fail(Errc::not_prolongable, "f(" + raw.start + ") = " + raw.start + " leaves no tail u");

    if (raw.output_alphabet) {
        s.sigma = Alphabet::from_names(*raw.output_alphabet);
    } else {
        s.sigma = s.gamma;
    }
    if (raw.coding) {
        s.coding.assign(s.gamma.size(), 0);
        std::vector<bool> has(s.gamma.size(), false);
        for (const auto& [from, to] : *raw.coding) {
            Sym b = look(s.gamma, from, "coding");
            s.coding[b] = look(s.sigma, to, "coding." + from);
            has[b] = true;
        }
        for (std::size_t b = 0; b < s.gamma.size(); ++b)
            if (!has[b])
                fail(Errc::parse_error,
                     "coding misses symbol '" + s.gamma.names[b] + "'");
        s.identity_coding = false;
    } else {
        if (raw.output_alphabet)
            fail(Errc::parse_error, "output_alphabet given without a coding");
        s.coding.resize(s.gamma.size());
        for (std::size_t b = 0; b < s.gamma.size(); ++b)
            s.coding[b] = static_cast<Sym>(b);
        s.identity_coding = true;
    }
    return s;
}

MorphicSpec make_spec(const std::string& alphabet, const std::string& start,
                      const std::vector<std::pair<std::string, std::string>>& rules,
                      const std::string& output_alphabet,
                      const std::vector<std::pair<std::string, std::string>>& coding) {
    RawSpec raw;
    for (char c : alphabet) raw.alphabet.emplace_back(1, c);
    raw.start = start;
    for (const auto& [lhs, rhs] : rules) {
        std::vector<std::string> img;
        for (char c : rhs) img.emplace_back(1, c);
        raw.rules.emplace_back(lhs, std::move(img));
    }
    if (!output_alphabet.empty()) {
        raw.output_alphabet.emplace();
        for (char c : output_alphabet) raw.output_alphabet->emplace_back(1, c);
    }
    if (!coding.empty()) raw.coding = coding;
    return validate_spec(raw);
}

SequenceView::SequenceView(const MorphicSpec& spec, bool coded)
    : spec_(spec), coded_(coded) {
    cache_ = spec_.rules[spec_.start]; // f(a) = a u
}

void SequenceView::ensure(std::size_t n, std::size_t budget) {
    if (n > budget)
        fail(Errc::budget_exceeded,
             "sequence prefix of " + std::to_string(n) + " exceeds budget " +
                 std::to_string(budget));
    while (cache_.size() < n) {
        const auto& img = spec_.rules[cache_[cursor_]];
        cache_.insert(cache_.end(), img.begin(), img.end());
        ++cursor_;
    }
}

Sym SequenceView::pure_at(std::size_t i, std::size_t budget) {
    ensure(i + 1, budget);
    return cache_[i];
}

Sym SequenceView::at(std::size_t i, std::size_t budget) {
    Sym p = pure_at(i, budget);
    return coded_ ? spec_.coding[p] : p;
}

std::vector<Sym> SequenceView::prefix_syms(std::size_t n, std::size_t budget) {
    ensure(n, budget);
    std::vector<Sym> out(cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(n));
    if (coded_)
        for (auto& s : out) s = spec_.coding[s];
    return out;
}

std::string SequenceView::prefix(std::size_t n, std::size_t budget) {
    return word_to_string(coded_ ? spec_.sigma : spec_.gamma, prefix_syms(n, budget));
}

std::vector<Sym> iterate(const MorphicSpec& spec, std::size_t n, std::size_t budget) {
    std::vector<Sym> word{spec.start};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Sym> next;
        for (Sym b : word) {
            const auto& img = spec.rules[b];
            if (next.size() + img.size() > budget)
                fail(Errc::budget_exceeded,
                     "f^" + std::to_string(k + 1) + "(a) exceeds budget " +
                         std::to_string(budget));
            next.insert(next.end(), img.begin(), img.end());
        }
        word = std::move(next);
    }
    return word;
}

std::string iterate_string(const MorphicSpec& spec, std::size_t n, std::size_t budget) {
    return word_to_string(spec.gamma, iterate(spec, n, budget));
}

std::string prefix(const MorphicSpec& spec, std::size_t n, std::size_t budget) {
    SequenceView v(spec);
    return v.prefix(n, budget);
}

Sym element_at(const MorphicSpec& spec, std::size_t i, std::size_t budget) {
    SequenceView v(spec);
    return v.at(i, budget);
}

MorphicSpec power_representation(const MorphicSpec& spec, std::size_t n, std::size_t budget) {
    if (n < 1)
        fail(Errc::parse_error, "power_representation needs n >= 1");
    MorphicSpec out = spec;
    for (std::size_t b = 0; b < spec.gamma.size(); ++b) {
        std::vector<Sym> word{static_cast<Sym>(b)};
        for (std::size_t k = 1; k < n; ++k) { // word = f^k(b), stop at f^{n-1}; apply once more below
            std::vector<Sym> next;
            for (Sym c : word) {
                const auto& img = spec.rules[c];
                if (next.size() + img.size() > budget)
                    fail(Errc::budget_exceeded, "power image exceeds budget");
                next.insert(next.end(), img.begin(), img.end());
            }
            word = std::move(next);
        }
        std::vector<Sym> img;
        for (Sym c : word) {
            const auto& step = spec.rules[c];
            img.insert(img.end(), step.begin(), step.end());
        }
        out.rules[b] = std::move(img);
    }
    return out;
}

MorphicSpec tail_representation(const MorphicSpec& spec) {
    const auto& fa = spec.rules[spec.start]; // a b y
    Sym b = fa[1];
    MorphicSpec out;
    std::vector<std::string> names = spec.gamma.names;
    std::string fresh = "c";
    while (spec.gamma.index.count(fresh)) fresh += '\'';
    names.push_back(fresh);
    out.gamma = Alphabet::from_names(names);
    Sym c = static_cast<Sym>(out.gamma.size() - 1);
    out.start = c;
    out.rules = spec.rules;
    std::vector<Sym> fc{c};
    fc.insert(fc.end(), fa.begin() + 2, fa.end()); // y
    const auto& fb = spec.rules[b];
    fc.insert(fc.end(), fb.begin(), fb.end()); // f(b)
    out.rules.push_back(std::move(fc));
    out.sigma = spec.sigma;
    out.coding = spec.coding;
    out.coding.push_back(spec.coding[b]);
    out.identity_coding = false;
    return out;
}

PrefixCompare prefix_equal(const MorphicSpec& a, const MorphicSpec& b, std::size_t n,
                           std::size_t budget) {
    SequenceView va(a), vb(b);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& na = a.sigma.names[va.at(i, budget)];
        const std::string& nb = b.sigma.names[vb.at(i, budget)];
        if (na != nb) return {false, i};
    }
    return {true, n};
}

std::vector<Sym> arithmetic_subsequence(SequenceView& view, std::size_t offset, std::size_t step,
                                        std::size_t n, std::size_t budget) {
    if (step < 1)
        fail(Errc::parse_error, "arithmetic_subsequence needs step >= 1");
    std::vector<Sym> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(view.at(offset + k * step, budget));
    return out;
}

std::string arithmetic_subsequence_string(const MorphicSpec& spec, std::size_t offset,
                                          std::size_t step, std::size_t n, std::size_t budget) {
    SequenceView v(spec);
    return word_to_string(spec.sigma, arithmetic_subsequence(v, offset, step, n, budget));
}

} // namespace morphoseq
