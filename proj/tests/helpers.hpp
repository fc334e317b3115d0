#pragma once

#include <string>

#include "morphoseq/core.hpp"
#include "morphoseq/spec_io.hpp"

namespace morphoseq::test {

inline std::string specs_dir() { return MORPHOSEQ_SPECS_DIR; }

inline MorphicSpec load(const std::string& name) {
    return parse_spec_file(specs_dir() + "/" + name);
}

inline MorphicSpec fib() {
    return make_spec("01", "0", {{"0", "01"}, {"1", "0"}});
}

inline MorphicSpec spir() {
    return make_spec("012", "2", {{"0", "0"}, {"1", "01"}, {"2", "21"}}, "01",
                     {{"0", "0"}, {"1", "1"}, {"2", "1"}});
}

inline MorphicSpec period_doubling() {
    return make_spec("01", "0", {{"0", "01"}, {"1", "00"}});
}

} // namespace morphoseq::test
