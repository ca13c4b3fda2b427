#ifndef E6_NUMERIC_HPP
#define E6_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace e6 {

using Int = mpz_class;
using Rat = mpq_class;

/// 50 significant decimal digits; used for main terms and exponential sums.
using Real = boost::multiprecision::cpp_bin_float_50;

using i128 = __int128;

/*
 * Checked 128-bit arithmetic for the enumeration kernels.  Every operation
 * either returns the exact result or throws; no kernel ever wraps silently.
 */
struct kernel_overflow : std::overflow_error {
    kernel_overflow() : std::overflow_error("128-bit kernel arithmetic overflow") {}
};

inline i128 cmul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw kernel_overflow();
    return r;
}

inline i128 cadd(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw kernel_overflow();
    return r;
}

inline i128 csub(i128 a, i128 b)
{
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw kernel_overflow();
    return r;
}

/// A violated precondition of a mathematical statement (coprimality,
/// membership), as opposed to a malformed input.
struct hypothesis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Floor division, rounding toward negative infinity.
inline i128 floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline i128 ceil_div(i128 a, i128 b)
{
    return -floor_div(-a, b);
}

inline i128 floor_mod(i128 a, i128 b)
{
    return a - floor_div(a, b) * b;
}

/// floor(sqrt(n)) for n >= 0, exact.
i128 isqrt(i128 n);

/// floor(n^(1/e)) for n >= 0, e >= 1, exact.
i128 iroot(i128 n, int e);

i128 to_i128(Int const & z);
Int to_int(i128 v);

inline i128 gcd128(i128 a, i128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(i128 v);

/// floor of a rational as Int.
Int floor_rat(Rat const & q);
Int ceil_rat(Rat const & q);

/// n / d in lowest terms; mpq_class(n, d) alone does not reduce.
inline Rat make_rat(Int const & n, Int const & d)
{
    Rat q(n, d);
    q.canonicalize();
    return q;
}

/// Parses "12", "-3/4", "0.5", "1e4", "2.5e-1" exactly.
Rat parse_rational(std::string const & s);

/// Exact decimal string for integers, "p/q" otherwise.
std::string rat_string(Rat const & q);

/// Nearest double; adequate for diagnostics, never for counting.
inline double to_double(Rat const & q)
{
    return q.get_d();
}

inline double to_double(Real const & x)
{
    return static_cast<double>(x);
}

Real to_real(Rat const & q);
Real to_real(Int const & z);

/// 17 significant digits, the fixed float format of every report.
std::string fmt17(double x);
std::string fmt_real(Real const & x, int digits = 30);

} // namespace e6

#endif
