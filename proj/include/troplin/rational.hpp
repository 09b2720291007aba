#pragma once

// Exact scalar type for all max-plus arithmetic, plus string conversion.
//
// Every quantity in this library (matrix entries, coordinates, lengths) is an
// arbitrary-precision rational.  There is no -infinity anywhere: inputs that
// need one are rejected at parse time, so downstream code never branches on it.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace troplin {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Input (file/CLI) could not be parsed.  The CLI maps this to exit code 2.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Valid syntax but the values are outside the algorithm's domain
/// (not normal idempotent, equal columns, infeasible completion, ...).
/// The CLI maps this to exit code 1.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed.  Always indicates a bug (or a corrupted
/// certified value); never a consequence of bad user input alone.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {
inline void require(bool cond, const char* msg) {
    if (!cond) throw internal_error(msg);
}
}  // namespace detail

/// Render exactly: integers as plain digits ("-12"), everything else as
/// "numerator/denominator" ("3/4").  This is the canonical form used in all
/// JSON output.
inline std::string rat_to_string(const Rat& r) {
    return r.str();  // cpp_rational already prints n or n/d
}

/// Parse an exact rational from one of three syntaxes:
///   integer        "-12"
///   fraction       "3/4", "-7/2"
///   finite decimal "2.5", "-0.125", optionally with an exponent "1.5e3"
/// Anything else (inf, nan, hex, empty) throws parse_error.
inline Rat parse_rational(std::string_view s) {
    auto fail = [&]() -> Rat {
        throw parse_error("not an exact rational: '" + std::string(s) + "'");
    };

    std::size_t pos = 0;
    auto peek = [&]() -> int { return pos < s.size() ? static_cast<unsigned char>(s[pos]) : -1; };

    bool neg = false;
    if (peek() == '+' || peek() == '-') {
        neg = (s[pos] == '-');
        ++pos;
    }

    Int num = 0;
    std::size_t digits = 0;
    while (std::isdigit(peek())) {
        num = num * 10 + (s[pos] - '0');
        ++pos;
        ++digits;
    }

    if (peek() == '/') {
        // fraction: digits required on both sides, no decimal point or exponent
        if (digits == 0) return fail();
        ++pos;
        Int den = 0;
        std::size_t den_digits = 0;
        while (std::isdigit(peek())) {
            den = den * 10 + (s[pos] - '0');
            ++pos;
            ++den_digits;
        }
        if (den_digits == 0 || pos != s.size()) return fail();
        if (den == 0) throw parse_error("zero denominator: '" + std::string(s) + "'");
        Rat r(num, den);
        return neg ? Rat(-r) : r;
    }

    Int scale = 1;  // denominator contributed by the fractional part
    if (peek() == '.') {
        ++pos;
        while (std::isdigit(peek())) {
            num = num * 10 + (s[pos] - '0');
            scale *= 10;
            ++pos;
            ++digits;
        }
    }
    if (digits == 0) return fail();

    long exp10 = 0;
    if (peek() == 'e' || peek() == 'E') {
        ++pos;
        bool eneg = false;
        if (peek() == '+' || peek() == '-') {
            eneg = (s[pos] == '-');
            ++pos;
        }
        std::size_t edigits = 0;
        while (std::isdigit(peek())) {
            exp10 = exp10 * 10 + (s[pos] - '0');
            ++pos;
            ++edigits;
            if (exp10 > 100000) return fail();  // absurd exponent, refuse early
        }
        if (edigits == 0) return fail();
        if (eneg) exp10 = -exp10;
    }
    if (pos != s.size()) return fail();

    Rat r(num, scale);
    for (long k = 0; k < exp10; ++k) r *= 10;
    for (long k = 0; k > exp10; --k) r /= 10;
    return neg ? Rat(-r) : r;
}

}  // namespace troplin
