#include "morphoseq/rewrite.hpp"

#include <algorithm>
#include <utility>

#include "morphoseq/error.hpp"

namespace morphoseq {

namespace {

using Kind = RewriteSymbol::Kind;

} // namespace

const char* rule_name(RuleTag tag) {
    switch (tag) {
    case RuleTag::expand_s: return "EXPAND-S";
    case RuleTag::commute_bar: return "COMMUTE-BAR";
    case RuleTag::unfold_bar: return "UNFOLD-BAR";
    }
    return "?";
}

RewriteTerm start_term(const MorphicSpec& spec) {
    const auto& image = spec.rules[spec.start];
    RewriteTerm t;
    t.symbols.reserve(image.size() + 2);
    t.symbols.push_back({Kind::output, spec.coding[spec.start]});
    t.symbols.push_back({Kind::marker, 0});
    for (std::size_t i = 1; i < image.size(); ++i)
        t.symbols.push_back({Kind::gamma, image[i]});
    t.symbols.push_back({Kind::end, 0});
    t.s_pos = 1;
    t.bar_pos = -1;
    return t;
}

void check_term(const RewriteSystem& sys, const RewriteTerm& t) {
    const auto& spec = sys.spec;
    const auto& w = t.symbols;
    if (w.empty() || w.back().kind != Kind::end)
        fail(Errc::parse_error, "term does not end in E");
    if (t.s_pos >= w.size() || w[t.s_pos].kind != Kind::marker)
        fail(Errc::parse_error, "cached S index does not point at S");

    std::size_t markers = 0;
    std::ptrdiff_t bar_at = -1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        switch (w[i].kind) {
        case Kind::output:
            if (i >= t.s_pos)
                fail(Errc::parse_error, "output symbol at index " + std::to_string(i) +
                                            " appears after S");
            if (w[i].sym >= spec.sigma.size())
                fail(Errc::parse_error, "output symbol out of range");
            break;
        case Kind::marker:
            ++markers;
            break;
        case Kind::gamma:
        case Kind::bar:
            if (i <= t.s_pos)
                fail(Errc::parse_error, "gamma symbol at index " + std::to_string(i) +
                                            " appears before S");
            if (w[i].sym >= spec.gamma.size())
                fail(Errc::parse_error, "gamma symbol out of range");
            if (w[i].kind == Kind::bar) {
                if (bar_at >= 0)
                    fail(Errc::parse_error, "term carries two barred symbols");
                bar_at = std::ptrdiff_t(i);
            }
            break;
        case Kind::end:
            if (i + 1 != w.size())
                fail(Errc::parse_error, "E appears before the end of the term");
            break;
        }
    }
    if (markers != 1)
        fail(Errc::parse_error, "term carries " + std::to_string(markers) + " S markers");
    if (bar_at != t.bar_pos)
        fail(Errc::parse_error, "cached bar index disagrees with the term");

    // Orthogonality witness: at every index at most one left-hand side matches.
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        int matches = 0;
        if (w[i].kind == Kind::marker && w[i + 1].kind == Kind::gamma) ++matches;
        if (w[i].kind == Kind::bar && w[i + 1].kind == Kind::gamma) ++matches;
        if (w[i].kind == Kind::bar && w[i + 1].kind == Kind::end) ++matches;
        if (matches > 1)
            fail(Errc::parse_error, "two rules overlap at index " + std::to_string(i));
    }
}

StepResult step(const RewriteSystem& sys, RewriteTerm& t, std::size_t budget) {
    const auto& spec = sys.spec;
    if (t.symbols.size() > budget)
        fail(Errc::budget_exceeded, "term length " + std::to_string(t.symbols.size()) +
                                        " exceeds the cell budget " + std::to_string(budget));
    if (t.s_pos >= t.symbols.size() || t.symbols[t.s_pos].kind != Kind::marker)
        fail(Errc::parse_error, "cached S index does not point at S");

    StepResult res{};
    if (t.bar_pos >= 0) {
        auto b = std::size_t(t.bar_pos);
        if (b + 1 >= t.symbols.size() || t.symbols[b].kind != Kind::bar)
            fail(Errc::parse_error, "cached bar index does not point at a bar");
        Kind after = t.symbols[b + 1].kind;
        if (after == Kind::gamma) {
            std::swap(t.symbols[b], t.symbols[b + 1]);
            t.bar_pos = std::ptrdiff_t(b + 1);
            res = {RuleTag::commute_bar, b};
        } else if (after == Kind::end) {
            const auto& image = spec.rules[t.symbols[b].sym];
            t.symbols[b] = {Kind::gamma, image[0]};
            std::vector<RewriteSymbol> rest;
            rest.reserve(image.size() - 1);
            for (std::size_t i = 1; i < image.size(); ++i)
                rest.push_back({Kind::gamma, image[i]});
            t.symbols.insert(t.symbols.begin() + std::ptrdiff_t(b + 1), rest.begin(),
                             rest.end());
            t.bar_pos = -1;
            res = {RuleTag::unfold_bar, b};
        } else {
            fail(Errc::parse_error, "bar is not followed by a gamma symbol or E");
        }
    } else {
        std::size_t s = t.s_pos;
        Kind after = s + 1 < t.symbols.size() ? t.symbols[s + 1].kind : Kind::end;
        if (after == Kind::gamma) {
            Sym b = t.symbols[s + 1].sym;
            t.symbols[s] = {Kind::output, spec.coding[b]};
            t.symbols[s + 1] = {Kind::marker, 0};
            t.symbols.insert(t.symbols.begin() + std::ptrdiff_t(s + 2),
                             RewriteSymbol{Kind::bar, b});
            t.s_pos = s + 1;
            t.bar_pos = std::ptrdiff_t(s + 2);
            res = {RuleTag::expand_s, s};
        } else if (after == Kind::end) {
            fail(Errc::normal_form, "no redex: S is directly followed by E");
        } else {
            fail(Errc::parse_error, "S is followed by a bar the cache does not know");
        }
    }
    if (sys.strict_checks)
        check_term(sys, t);
    return res;
}

RunResult run(const RewriteSystem& sys, RewriteTerm t, std::size_t steps, std::size_t budget) {
    RunResult out;
    for (std::size_t i = 0; i < steps; ++i)
        step(sys, t, budget);
    out.stable_prefix.reserve(t.s_pos);
    for (std::size_t i = 0; i < t.s_pos; ++i)
        out.stable_prefix.push_back(t.symbols[i].sym);
    out.term = std::move(t);
    out.steps_done = steps;
    return out;
}

ConvergeResult converge_prefix(const MorphicSpec& spec, std::size_t n, std::size_t budget) {
    RewriteSystem sys{spec, false};
    RewriteTerm t = start_term(spec);
    check_term(sys, t);

    ConvergeResult out;
    out.prefix.reserve(n);
    auto skim = [&] {
        if (t.s_pos == 0)
            return;
        for (std::size_t i = 0; i < t.s_pos; ++i)
            out.prefix.push_back(t.symbols[i].sym);
        t.symbols.erase(t.symbols.begin(), t.symbols.begin() + std::ptrdiff_t(t.s_pos));
        if (t.bar_pos >= 0)
            t.bar_pos -= std::ptrdiff_t(t.s_pos);
        t.s_pos = 0;
    };

    while (out.prefix.size() + t.s_pos < n) {
        if (out.steps >= budget)
            fail(Errc::budget_exceeded,
                 "rewriting used " + std::to_string(out.steps) +
                     " steps before the stable prefix reached " + std::to_string(n));
        step(sys, t, budget);
        ++out.steps;
        if (t.s_pos >= 1024)
            skim();
        if ((out.steps & 0xfff) == 0)
            check_term(sys, t);
    }
    skim();
    check_term(sys, t);
    return out;
}

std::string term_to_string(const RewriteSystem& sys, const RewriteTerm& t) {
    const auto& spec = sys.spec;
    std::string out;
    for (std::size_t i = 0; i < t.symbols.size(); ++i) {
        if (i)
            out += ' ';
        const auto& s = t.symbols[i];
        switch (s.kind) {
        case Kind::output: out += spec.sigma.names[s.sym]; break;
        case Kind::gamma: out += spec.gamma.names[s.sym]; break;
        case Kind::bar:
            out += spec.gamma.names[s.sym];
            out += '~';
            break;
        case Kind::marker: out += 'S'; break;
        case Kind::end: out += 'E'; break;
        }
    }
    return out;
}

} // namespace morphoseq
