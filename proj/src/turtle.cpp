#include "morphoseq/turtle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "morphoseq/error.hpp"

namespace morphoseq {

namespace {

// Quotient of num by a monic den with integer coefficients; the remainder
// must vanish.
std::vector<long long> exact_div(std::vector<long long> num,
                                 const std::vector<long long>& den) {
    std::size_t dn = num.size() - 1;
    std::size_t dd = den.size() - 1;
    std::vector<long long> q(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
        long long c = num[i];
        q[i - dd] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= dd; ++j)
            num[i - dd + j] -= c * den[j];
    }
    for (long long c : num)
        if (c != 0)
            fail(Errc::parse_error, "cyclotomic division left a remainder");
    return q;
}

int wrap(int v, int d) { return ((v % d) + d) % d; }

std::string fmt6(double v) {
    v = std::round(v * 1e6) / 1e6;
    if (v == 0)
        v = 0; // avoid "-0.000000"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::vector<long long> cyclotomic(int n) {
    if (n < 1)
        fail(Errc::parse_error, "cyclotomic index must be positive");
    std::vector<std::vector<long long>> memo(std::size_t(n) + 1);
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0)
            continue;
        std::vector<long long> p(std::size_t(m) + 1, 0);
        p[0] = -1;
        p[std::size_t(m)] = 1;
        for (int e = 1; e < m; ++e)
            if (m % e == 0)
                p = exact_div(std::move(p), memo[std::size_t(e)]);
        memo[std::size_t(m)] = std::move(p);
    }
    return memo[std::size_t(n)];
}

TurtleConfig make_turtle_config(const Alphabet& sigma, const std::vector<int>& degrees) {
    if (degrees.size() != sigma.size())
        fail(Errc::parse_error, "need exactly one angle per output symbol");
    int g = 360;
    for (int a : degrees)
        g = std::gcd(g, std::abs(a));
    TurtleConfig cfg;
    cfg.sigma = sigma;
    cfg.angles = degrees;
    cfg.d = 360 / g;
    cfg.modulus = cyclotomic(cfg.d);
    return cfg;
}

TurtleConfig parse_turtle_config(const Alphabet& sigma, const std::string& text) {
    std::vector<int> degrees(sigma.size(), 0);
    std::vector<char> have(sigma.size(), 0);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        std::string item = text.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            fail(Errc::parse_error, "expected name=degrees, got \"" + item + "\"");
        std::string name = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        Sym s = sigma.lookup(name);
        if (have[s])
            fail(Errc::parse_error, "angle for \"" + name + "\" given twice");
        int deg = 0;
        const char* first = val.data();
        const char* last = val.data() + val.size();
        auto [ptr, ec] = std::from_chars(first, last, deg);
        if (ec != std::errc() || ptr != last) {
            if (ptr != last && *ptr == '.')
                fail(Errc::angle_not_integer,
                     "angle \"" + val + "\" is not an integer number of degrees");
            fail(Errc::parse_error, "cannot parse angle \"" + val + "\"");
        }
        degrees[s] = deg;
        have[s] = 1;
        pos = comma + 1;
    }
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (!have[i])
            fail(Errc::parse_error, "no angle for output symbol \"" + sigma.names[i] + "\"");
    return make_turtle_config(sigma, degrees);
}

std::vector<CycPoint> unit_points(const TurtleConfig& cfg) {
    std::size_t m = cfg.modulus.size() - 1;
    std::vector<CycPoint> units;
    units.reserve(std::size_t(cfg.d));
    std::vector<long long> cur(m, 0);
    cur[0] = 1;
    for (int k = 0; k < cfg.d; ++k) {
        units.push_back({cur});
        long long lead = cur[m - 1];
        for (std::size_t j = m - 1; j > 0; --j)
            cur[j] = cur[j - 1] - lead * cfg.modulus[j];
        cur[0] = -lead * cfg.modulus[0];
    }
    return units;
}

std::pair<double, double> to_xy(const CycPoint& p, const TurtleConfig& cfg) {
    double x = 0;
    double y = 0;
    constexpr double tau = 6.283185307179586476925286766559;
    for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
        double ang = tau * double(j) / double(cfg.d);
        x += double(p.coeffs[j]) * std::cos(ang);
        y += double(p.coeffs[j]) * std::sin(ang);
    }
    return {x, y};
}

std::size_t SegmentHash::operator()(const Segment& s) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (long long c : s.a.coeffs)
        mix(std::uint64_t(c));
    mix(0x9e3779b97f4a7c15ull);
    for (long long c : s.b.coeffs)
        mix(std::uint64_t(c));
    return std::size_t(h);
}

TraceResult trace(const std::vector<Sym>& word, const TurtleConfig& cfg, std::size_t steps) {
    if (steps > word.size())
        fail(Errc::parse_error, "steps exceed the given prefix length");
    auto units = unit_points(cfg);
    int g = cfg.unit_degrees();
    TraceResult out;
    out.segments.reserve(steps);
    out.final_state.pos.coeffs.assign(cfg.modulus.size() - 1, 0);
    CycPoint& pos = out.final_state.pos;
    int& dir = out.final_state.dir;
    for (std::size_t i = 0; i < steps; ++i) {
        if (word[i] >= cfg.sigma.size())
            fail(Errc::unknown_symbol, "symbol index " + std::to_string(word[i]) +
                                           " has no angle");
        dir = wrap(dir + cfg.angles[word[i]] / g, cfg.d);
        CycPoint nxt = pos;
        const CycPoint& u = units[std::size_t(dir)];
        for (std::size_t j = 0; j < nxt.coeffs.size(); ++j)
            nxt.coeffs[j] += u.coeffs[j];
        out.segments.emplace_back(pos, nxt);
        pos = std::move(nxt);
    }
    return out;
}

ClosureReport closure_check(const MorphicSpec& spec, const TurtleConfig& cfg, std::size_t base,
                            std::size_t horizon, std::size_t budget) {
    if (base > horizon)
        fail(Errc::parse_error, "closure base exceeds the horizon");
    if (cfg.sigma.names != spec.sigma.names)
        fail(Errc::unknown_symbol, "angle assignment does not match the output alphabet");
    SequenceView view(spec);
    auto units = unit_points(cfg);
    int g = cfg.unit_degrees();
    std::unordered_set<Segment, SegmentHash> seen;
    CycPoint pos{std::vector<long long>(cfg.modulus.size() - 1, 0)};
    int dir = 0;
    ClosureReport rep;
    for (std::size_t i = 0; i < horizon; ++i) {
        Sym s = view.at(i, budget);
        dir = wrap(dir + cfg.angles[s] / g, cfg.d);
        CycPoint nxt = pos;
        const CycPoint& u = units[std::size_t(dir)];
        for (std::size_t j = 0; j < nxt.coeffs.size(); ++j)
            nxt.coeffs[j] += u.coeffs[j];
        Segment seg(pos, nxt);
        if (i < base) {
            seen.insert(std::move(seg));
        } else if (!seen.count(seg)) {
            rep.closed = false;
            rep.first_new = i + 1; // steps are 1-indexed in the report
            break;
        }
        pos = std::move(nxt);
    }
    rep.distinct_segments = seen.size();
    return rep;
}

std::string emit_svg(const std::vector<Segment>& segments, const TurtleConfig& cfg,
                     const SvgStyle& style) {
    std::string view_box = "0 0 1 1";
    std::string path;
    if (!segments.empty()) {
        double minx = 0, maxx = 0, miny = 0, maxy = 0;
        bool first = true;
        auto rounded = [&cfg](const CycPoint& p) {
            auto [x, y] = to_xy(p, cfg);
            // SVG's y axis points down
            x = std::round(x * 1e6) / 1e6;
            y = std::round(-y * 1e6) / 1e6;
            return std::pair<double, double>{x, y};
        };
        for (const Segment& s : segments) {
            auto [x1, y1] = rounded(s.a);
            auto [x2, y2] = rounded(s.b);
            if (first) {
                minx = maxx = x1;
                miny = maxy = y1;
                first = false;
            }
            minx = std::min({minx, x1, x2});
            maxx = std::max({maxx, x1, x2});
            miny = std::min({miny, y1, y2});
            maxy = std::max({maxy, y1, y2});
            if (!path.empty())
                path += ' ';
            path += "M " + fmt6(x1) + ' ' + fmt6(y1) + " L " + fmt6(x2) + ' ' + fmt6(y2);
        }
        double w = maxx - minx;
        double h = maxy - miny;
        double margin = 0.05 * std::max(w, h);
        if (margin == 0)
            margin = 0.5;
        view_box = fmt6(minx - margin) + ' ' + fmt6(miny - margin) + ' ' +
                   fmt6(w + 2 * margin) + ' ' + fmt6(h + 2 * margin);
    }
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + view_box + "\">\n";
    out += "  <path d=\"" + path + "\" fill=\"none\" stroke=\"" + style.stroke +
           "\" stroke-width=\"" + fmt6(style.stroke_width) + "\" stroke-linecap=\"round\"/>\n";
    out += "</svg>\n";
    return out;
}

} // namespace morphoseq
