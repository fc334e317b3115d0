#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "morphoseq/core.hpp"

namespace morphoseq {

// Angle assignment for an output alphabet. d is the order of the rotation
// group, 360 / gcd(360, all angles); positions live in integer polynomials
// modulo the d-th cyclotomic polynomial so revisits are detected exactly.
struct TurtleConfig {
    Alphabet sigma;
    std::vector<int> angles;        // degrees, one per output symbol
    int d = 1;
    std::vector<long long> modulus; // cyclotomic coefficients, constant term first, monic

    int unit_degrees() const { return 360 / d; }
};

TurtleConfig make_turtle_config(const Alphabet& sigma, const std::vector<int>& degrees);

// Parses "0=140,1=-80". Every output symbol needs an angle; fractional
// degrees are rejected with AngleNotInteger.
TurtleConfig parse_turtle_config(const Alphabet& sigma, const std::string& text);

// n-th cyclotomic polynomial, constant term first, by iterated exact
// division of x^n - 1 by the cyclotomic polynomials of proper divisors.
std::vector<long long> cyclotomic(int n);

// Canonical residue modulo the cyclotomic modulus; length phi(d). Vector
// equality is plane-point equality.
struct CycPoint {
    std::vector<long long> coeffs;
    auto operator<=>(const CycPoint&) const = default;
};

// x^k reduced for k = 0..d-1, the unit step vectors.
std::vector<CycPoint> unit_points(const TurtleConfig& cfg);

// Double-precision plane coordinates, for rendering and tolerance tests.
std::pair<double, double> to_xy(const CycPoint& p, const TurtleConfig& cfg);

// Undirected: the lexicographically smaller endpoint is stored first.
struct Segment {
    CycPoint a, b;
    Segment(CycPoint p, CycPoint q) : a(std::move(p)), b(std::move(q)) {
        if (b < a)
            std::swap(a, b);
    }
    bool operator==(const Segment&) const = default;
};

struct SegmentHash {
    std::size_t operator()(const Segment& s) const;
};

struct TurtleState {
    CycPoint pos;
    int dir = 0; // direction index in 0..d-1, 0 = east
};

struct TraceResult {
    std::vector<Segment> segments;
    TurtleState final_state;
};

// Turn-then-draw from the origin heading east: for each symbol the direction
// advances by its angle and one unit segment is drawn.
TraceResult trace(const std::vector<Sym>& word, const TurtleConfig& cfg, std::size_t steps);

struct ClosureReport {
    bool closed = true;
    std::size_t first_new = 0;         // 1-indexed step, set when not closed
    std::size_t distinct_segments = 0; // among the first `base` steps
};

// Collects the segments of the first `base` steps, then scans steps
// base+1..horizon for one that is not in the set.
ClosureReport closure_check(const MorphicSpec& spec, const TurtleConfig& cfg, std::size_t base,
                            std::size_t horizon, std::size_t budget = default_budget);

struct SvgStyle {
    std::string stroke = "black";
    double stroke_width = 0.05;
};

// Coordinates are rounded to 6 decimals; viewBox fits the rounded bounding
// box with a 5% margin; an empty list yields viewBox "0 0 1 1".
std::string emit_svg(const std::vector<Segment>& segments, const TurtleConfig& cfg,
                     const SvgStyle& style = {});

} // namespace morphoseq
