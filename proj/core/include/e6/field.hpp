#ifndef E6_FIELD_HPP
#define E6_FIELD_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "e6/numeric.hpp"

namespace e6 {

/*
 * An element a + b*omega of K = Q(sqrt(d)), where {1, omega} is the
 * integral basis of O_K.  Coordinates are exact rationals; integrality
 * means both coordinates are integers.
 */
struct AlgNum {
    Rat a;
    Rat b;

    AlgNum() = default;
    AlgNum(Rat x, Rat y = 0) : a(std::move(x)), b(std::move(y)) {}
    AlgNum(long x) : a(x), b(0) {}

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }

    friend bool operator==(AlgNum const & x, AlgNum const & y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(AlgNum const & x, AlgNum const & y) { return !(x == y); }
    // coordinate order; only for containers
    friend bool operator<(AlgNum const & x, AlgNum const & y)
    {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
};

std::ostream & operator<<(std::ostream & os, AlgNum const & z);

/// Text form over the integral basis: "3", "-1+2w", "1/2-w", "w".
AlgNum parse_algnum(std::string const & s);
std::string alg_string(AlgNum const & z);

/*
 * Arithmetic in K = Q(sqrt(d)), d < 0 squarefree.  omega is (1+sqrt(d))/2
 * for d = 1 mod 4 and sqrt(d) otherwise; it satisfies
 * omega^2 = trace_omega * omega - norm_omega.
 */
class Field {
  public:
    explicit Field(long d);

    long d() const { return d_; }
    long disc() const { return disc_; }
    long abs_disc() const { return -disc_; }
    int trace_omega() const { return t_; }
    long norm_omega() const { return n_; }
    int unit_count() const { return w_; }

    AlgNum omega() const { return AlgNum(0, 1); }

    AlgNum add(AlgNum const & x, AlgNum const & y) const { return {x.a + y.a, x.b + y.b}; }
    AlgNum sub(AlgNum const & x, AlgNum const & y) const { return {x.a - y.a, x.b - y.b}; }
    AlgNum neg(AlgNum const & x) const { return {-x.a, -x.b}; }
    AlgNum mul(AlgNum const & x, AlgNum const & y) const;
    AlgNum scale(AlgNum const & x, Rat const & s) const { return {x.a * s, x.b * s}; }
    AlgNum pow(AlgNum const & x, unsigned e) const;
    AlgNum conj(AlgNum const & x) const { return {x.a + t_ * x.b, -x.b}; }
    /// throws std::domain_error on division by zero
    AlgNum div(AlgNum const & x, AlgNum const & y) const;

    /// z * conj(z)
    Rat norm(AlgNum const & z) const;
    Rat trace(AlgNum const & z) const { return 2 * z.a + t_ * z.b; }

    std::complex<double> embed(AlgNum const & z) const;

    /// the w_K roots of unity, starting with 1
    std::vector<AlgNum> const & units() const { return units_; }

    /// Among the associates of z != 0 the one maximising (Re, Im).
    AlgNum canonical_associate(AlgNum const & z) const;
    bool is_canonical(AlgNum const & z) const;

    /// Re and Im scaled by positive constants, exactly: (2a + t b, b).
    std::pair<Rat, Rat> embed_order_key(AlgNum const & z) const { return {2 * z.a + t_ * z.b, z.b}; }

    friend bool operator==(Field const & x, Field const & y) { return x.d_ == y.d_; }

  private:
    long d_;
    long disc_;
    int t_;
    long n_;
    int w_;
    std::vector<AlgNum> units_;
};

bool is_squarefree(long n);

} // namespace e6

template <> struct std::hash<e6::AlgNum> {
    std::size_t operator()(e6::AlgNum const & z) const noexcept;
};

#endif
