#include "e6/numeric.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace e6 {

i128 isqrt(i128 n)
{
    if (n < 0) throw std::domain_error("isqrt of negative value");
    if (n < 2) return n;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

namespace {

// true iff r^e <= n, without overflow
bool pow_leq(i128 r, int e, i128 n)
{
    i128 acc = 1;
    for (int i = 0; i < e; ++i) {
        if (r != 0 && acc > n / r) return false;
        acc *= r;
    }
    return acc <= n;
}

} // namespace

i128 iroot(i128 n, int e)
{
    if (n < 0) throw std::domain_error("iroot of negative value");
    if (e < 1) throw std::domain_error("iroot exponent must be positive");
    if (e == 1 || n < 2) return n;
    if (e == 2) return isqrt(n);
    auto r = static_cast<i128>(std::pow(static_cast<long double>(n), 1.0L / e));
    while (r > 0 && !pow_leq(r, e, n)) --r;
    while (pow_leq(r + 1, e, n)) ++r;
    return r;
}

i128 to_i128(Int const & z)
{
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 125) throw kernel_overflow();
    Int a = abs(z);
    Int lo = a % (Int(1) << 64);
    Int hi = a >> 64;
    auto lo64 = static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
    auto hi64 = static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t()));
    auto v = static_cast<i128>((hi64 << 64) | lo64);
    return sgn(z) < 0 ? -v : v;
}

Int to_int(i128 v)
{
    bool neg = v < 0;
    auto u = static_cast<unsigned __int128>(neg ? -v : v);
    Int hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    Int lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

std::string to_string(i128 v)
{
    return to_int(v).get_str();
}

Int floor_rat(Rat const & q)
{
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int ceil_rat(Rat const & q)
{
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rat parse_rational(std::string const & text)
{
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '_'; }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rat q(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        exp10 = std::stol(s.substr(e + 1));
        s = s.substr(0, e);
    }
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        exp10 -= static_cast<long>(s.size() - dot - 1);
    } else {
        digits = s;
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
        throw std::invalid_argument("not a rational number: " + text);
    Rat q{Int(digits)};
    Int p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        q *= p10;
    else
        q /= p10;
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

std::string rat_string(Rat const & q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Real to_real(Int const & z)
{
    return Real(z.get_str());
}

Real to_real(Rat const & q)
{
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

std::string fmt17(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string fmt_real(Real const & x, int digits)
{
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

} // namespace e6
