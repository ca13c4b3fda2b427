#include "e6/field.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace e6 {

bool is_squarefree(long n)
{
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

Field::Field(long d) : d_(d)
{
    if (d >= 0) throw std::invalid_argument("field parameter d must be negative");
    if (!is_squarefree(d)) throw std::invalid_argument("field parameter d must be squarefree");
    long m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) {
        disc_ = d;
        t_ = 1;
        n_ = (1 - d) / 4;
    } else {
        disc_ = 4 * d;
        t_ = 0;
        n_ = -d;
    }
    w_ = d == -1 ? 4 : d == -3 ? 6 : 2;

    // omega is a primitive 4th (d = -1) or 6th (d = -3) root of unity
    units_.push_back(AlgNum(1));
    if (w_ == 2) {
        units_.push_back(AlgNum(-1));
    } else {
        AlgNum u = omega();
        while (u != AlgNum(1)) {
            units_.push_back(u);
            u = mul(u, omega());
        }
    }
}

AlgNum Field::mul(AlgNum const & x, AlgNum const & y) const
{
    Rat yy = x.b * y.b;
    return {x.a * y.a - n_ * yy, x.a * y.b + x.b * y.a + t_ * yy};
}

AlgNum Field::pow(AlgNum const & x, unsigned e) const
{
    AlgNum r(1);
    AlgNum base = x;
    while (e != 0) {
        if (e & 1U) r = mul(r, base);
        base = mul(base, base);
        e >>= 1U;
    }
    return r;
}

AlgNum Field::div(AlgNum const & x, AlgNum const & y) const
{
    if (y.is_zero()) throw std::domain_error("division by zero in K");
    Rat n = norm(y);
    AlgNum p = mul(x, conj(y));
    return {p.a / n, p.b / n};
}

Rat Field::norm(AlgNum const & z) const
{
    return z.a * z.a + t_ * z.a * z.b + n_ * z.b * z.b;
}

std::complex<double> Field::embed(AlgNum const & z) const
{
    double re = z.a.get_d() + 0.5 * t_ * z.b.get_d();
    double im = 0.5 * std::sqrt(static_cast<double>(-disc_)) * z.b.get_d();
    return {re, im};
}

AlgNum Field::canonical_associate(AlgNum const & z) const
{
    if (z.is_zero()) return z;
    AlgNum best = z;
    auto best_key = embed_order_key(z);
    for (std::size_t i = 1; i < units_.size(); ++i) {
        AlgNum c = mul(units_[i], z);
        auto key = embed_order_key(c);
        if (key > best_key) {
            best = c;
            best_key = key;
        }
    }
    return best;
}

bool Field::is_canonical(AlgNum const & z) const
{
    return canonical_associate(z) == z;
}

std::ostream & operator<<(std::ostream & os, AlgNum const & z)
{
    return os << "(" << z.a << ", " << z.b << ")";
}

AlgNum parse_algnum(std::string const & text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
    if (s.empty()) throw std::invalid_argument("empty number");
    AlgNum z;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        // a term ends at the next sign that does not follow an exponent marker
        while (j < s.size() && !((s[j] == '+' || s[j] == '-') && s[j - 1] != 'e' && s[j - 1] != 'E')) ++j;
        std::string term = s.substr(i, j - i);
        bool has_w = !term.empty() && term.back() == 'w';
        if (has_w) term.pop_back();
        Rat v;
        if (term.empty() || term == "+") v = 1;
        else if (term == "-") v = -1;
        else v = parse_rational(term[0] == '+' ? term.substr(1) : term);
        (has_w ? z.b : z.a) += v;
        i = j;
    }
    return z;
}

std::string alg_string(AlgNum const & z)
{
    if (sgn(z.b) == 0) return rat_string(z.a);
    std::string w;
    if (z.b == 1) w = "w";
    else if (z.b == -1) w = "-w";
    else w = rat_string(z.b) + "w";
    if (sgn(z.a) == 0) return w;
    return rat_string(z.a) + (w[0] == '-' ? "" : "+") + w;
}

} // namespace e6

std::size_t std::hash<e6::AlgNum>::operator()(e6::AlgNum const & z) const noexcept
{
    auto h = [](mpq_class const & q) {
        std::hash<std::string> hs;
        return hs(q.get_str());
    };
    return h(z.a) * 1000003U ^ h(z.b);
}
