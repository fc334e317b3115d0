#pragma once

#include <string>

#include "morphoseq/core.hpp"
#include "morphoseq/treefn.hpp"

namespace morphoseq {

// JSON spec document: fields alphabet (array of strings), start (string),
// rules (object symbol -> array of symbols), optional output_alphabet,
// optional coding (object symbol -> symbol). Unknown fields are an error.
MorphicSpec parse_spec_text(const std::string& text, const std::string& origin = "<input>");
MorphicSpec parse_spec_file(const std::string& path);

RawSpec to_raw(const MorphicSpec& spec);
std::string spec_to_json(const RawSpec& raw);

// Staircase generator parameters: gaps (descriptor string for Gaps::parse),
// optional limit, witness_len, max_depth.
struct StaircaseParams {
    Gaps gaps;
    std::size_t limit = 10000;
    std::size_t witness_len = 64;
    std::size_t max_depth = 8;
};
StaircaseParams parse_staircase_text(const std::string& text,
                                     const std::string& origin = "<input>");
StaircaseParams parse_staircase_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace morphoseq
