#pragma once

#include <stdexcept>
#include <string>

namespace morphoseq {

enum class Errc {
    empty_image,
    not_prolongable,
    unknown_symbol,
    budget_exceeded,
    not_in_language,
    language_finite,
    invalid_gaps,
    explicit_range_exhausted,
    not_stabilized,
    normal_form,
    angle_not_integer,
    io_error,
    parse_error,
};

const char* errc_name(Errc c);

// Single exception type carrying a machine-checkable code; the message is for
// humans and includes the offending value where we have one.
class MsError : public std::runtime_error {
  public:
    MsError(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw MsError(code, msg); }

} // namespace morphoseq
