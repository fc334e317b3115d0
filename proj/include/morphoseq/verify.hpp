#pragma once

#include <optional>
#include <string>
#include <utility>

#include "morphoseq/core.hpp"
#include "morphoseq/kernel.hpp"

namespace morphoseq {

struct VerifyOptions {
    std::size_t n = 10000;
    // Optional arithmetic subsequence (offset, step) applied to a side's
    // sequence before the prefix comparison; tree shapes and kernels are
    // still those of the underlying specs.
    std::optional<std::pair<std::size_t, std::size_t>> arith_a;
    std::optional<std::pair<std::size_t, std::size_t>> arith_b;
    std::size_t witness_len = 32;
    std::size_t budget = default_budget;
};

struct VerifyReport {
    std::size_t n = 0;
    bool prefixes_equal = false;
    std::size_t mismatch_index = 0; // valid when !prefixes_equal
    std::string mismatch_a, mismatch_b;
    bool shapes_equal = false;
    std::size_t shape_mismatch_at = 0; // first n with differing (P,R); valid when !shapes_equal
    KernelReport kernel_a;
    KernelReport kernel_b;
};

// Prefix comparison (by output symbol names), (P,R) tree-shape comparison,
// and kernel-class counts for both specs.
VerifyReport run_verify(const MorphicSpec& a, const MorphicSpec& b,
                        const VerifyOptions& opts = {});

// Text form; an agreeing prefix is labeled bounded evidence, never proof.
std::string render_report(const VerifyReport& rep);

} // namespace morphoseq
