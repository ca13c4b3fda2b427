#ifndef E6_LATTICE_HPP
#define E6_LATTICE_HPP

#include <complex>
#include <utility>
#include <vector>

#include "e6/ideal.hpp"

namespace e6 {

/* --- integer coordinates over {1, omega} ------------------------------- */

struct Vec2 {
    i128 x = 0;
    i128 y = 0;

    friend bool operator==(Vec2 const &, Vec2 const &) = default;
};

inline Vec2 operator+(Vec2 u, Vec2 v) { return {cadd(u.x, v.x), cadd(u.y, v.y)}; }
inline Vec2 operator-(Vec2 u, Vec2 v) { return {csub(u.x, v.x), csub(u.y, v.y)}; }
inline Vec2 operator*(i128 s, Vec2 v) { return {cmul(s, v.x), cmul(s, v.y)}; }

Vec2 to_vec(AlgNum const & z); // z integral
AlgNum to_alg(Vec2 v);

/// Norm form x^2 + t x y + n y^2.
inline i128 qform(Field const & K, Vec2 v)
{
    i128 t = K.trace_omega();
    i128 n = K.norm_omega();
    return cadd(cadd(cmul(v.x, v.x), cmul(t, cmul(v.x, v.y))), cmul(n, cmul(v.y, v.y)));
}

/// Polar form of qform: bilinear(v, v) = 2 qform(v); Tr(u conj(v)).
inline i128 bilinear(Field const & K, Vec2 u, Vec2 v)
{
    i128 t = K.trace_omega();
    i128 n = K.norm_omega();
    i128 r = cmul(2, cmul(u.x, v.x));
    r = cadd(r, cmul(t, cadd(cmul(u.x, v.y), cmul(u.y, v.x))));
    return cadd(r, cmul(2 * n, cmul(u.y, v.y)));
}

/// Product in O_K.
inline Vec2 vmul(Field const & K, Vec2 u, Vec2 v)
{
    i128 t = K.trace_omega();
    i128 n = K.norm_omega();
    i128 yy = cmul(u.y, v.y);
    return {csub(cmul(u.x, v.x), cmul(n, yy)), cadd(cadd(cmul(u.x, v.y), cmul(u.y, v.x)), cmul(t, yy))};
}

inline Vec2 vconj(Field const & K, Vec2 u)
{
    return {cadd(u.x, cmul(K.trace_omega(), u.y)), -u.y};
}

inline std::complex<double> vembed(Field const & K, Vec2 v)
{
    double x = static_cast<double>(v.x);
    double y = static_cast<double>(v.y);
    return {x + 0.5 * K.trace_omega() * y, 0.5 * std::sqrt(static_cast<double>(K.abs_disc())) * y};
}

/// Lagrange-Gauss reduction of a basis with respect to qform.  Afterwards
/// qform(u) <= qform(v) and |bilinear(u, v)| <= qform(u).
void gauss_reduce(Field const & K, Vec2 & u, Vec2 & v);
void gauss_reduce(Field const & K, AlgNum & u, AlgNum & v);

/// Reduced Z-basis of an integral ideal as coordinate vectors.
std::pair<Vec2, Vec2> reduced_int_basis(Field const & K, Ideal const & I);

struct ReducedBasis {
    AlgNum w1;
    AlgNum w2;
};

/// Minkowski-reduced basis of a fractional ideal; norm(w1) is the first
/// successive minimum in norm-form units.
ReducedBasis reduced_basis(Field const & K, FracIdeal const & a);

/// Smallest nonzero norm of an element of I.
Int min_norm(Field const & K, Ideal const & I);

/* --- exact coset point counting ---------------------------------------- */

/*
 * Points c + m v1 + k v2 (m, k integers) whose norm form is at most T.
 * Rows are indexed by k; each row is an interval of m obtained from an
 * integer square root and corrected by exact evaluation, so the result is
 * exact for any T.  The basis should be reduced for a short row range.
 */
class CosetRows {
  public:
    CosetRows(Field const & K, Vec2 c, Vec2 v1, Vec2 v2, i128 T);

    bool empty() const { return empty_; }
    i128 k_min() const { return kmin_; }
    i128 k_max() const { return kmax_; }
    /// Inclusive m range of row k; lo > hi when the row is empty.
    std::pair<i128, i128> row(i128 k) const;

    Vec2 point(i128 m, i128 k) const { return c_ + (m * v1_) + (k * v2_); }

  private:
    i128 f(i128 m, i128 k) const;
    i128 delta(i128 k) const;

    Vec2 c_, v1_, v2_;
    i128 A_, B_, C_, D_, E_, F_, T_;
    bool empty_ = true;
    i128 kmin_ = 0;
    i128 kmax_ = -1;
};

i128 count_coset(Field const & K, Vec2 c, Vec2 v1, Vec2 v2, i128 T);

template <class F> void for_each_coset(Field const & K, Vec2 c, Vec2 v1, Vec2 v2, i128 T, F && f)
{
    CosetRows rows(K, c, v1, v2, T);
    if (rows.empty()) return;
    for (i128 k = rows.k_min(); k <= rows.k_max(); ++k) {
        auto [lo, hi] = rows.row(k);
        for (i128 m = lo; m <= hi; ++m) f(rows.point(m, k));
    }
}

/// Every lattice point m v1 + k v2 within Euclidean distance r of center,
/// plus possibly a few just outside (callers filter exactly).  v1, v2 must
/// be a reduced basis.
template <class F>
void for_each_near(Field const & K, Vec2 v1, Vec2 v2, std::complex<double> center, double r, F && f)
{
    if (!(r >= 0)) return;
    std::complex<double> e1 = vembed(K, v1);
    std::complex<double> e2 = vembed(K, v2);
    double n1 = std::abs(e1);
    double det = e1.real() * e2.imag() - e1.imag() * e2.real();
    double h2 = std::abs(det) / n1; // distance between consecutive rows
    double slack = 1e-9 * (r + std::abs(center)) + 1e-9;
    double rr = r + slack;
    // center = m0 e1 + k0 e2
    double k0 = (e1.real() * center.imag() - e1.imag() * center.real()) / det;
    auto klo = static_cast<i128>(std::floor(k0 - rr / h2));
    auto khi = static_cast<i128>(std::ceil(k0 + rr / h2));
    std::complex<double> u1 = e1 / n1;
    for (i128 k = klo; k <= khi; ++k) {
        std::complex<double> p = center - static_cast<double>(k) * e2;
        double along = p.real() * u1.real() + p.imag() * u1.imag();
        double across = -p.real() * u1.imag() + p.imag() * u1.real();
        double h = rr * rr - across * across;
        if (h < 0) continue;
        double w = std::sqrt(h);
        auto mlo = static_cast<i128>(std::floor((along - w) / n1));
        auto mhi = static_cast<i128>(std::ceil((along + w) / n1));
        for (i128 m = mlo; m <= mhi; ++m) f((m * v1) + (k * v2));
    }
}

/* --- discs ------------------------------------------------------------- */

/// |{z in a : norm(z) <= t}|, zero included.
Int disc_count(Field const & K, FracIdeal const & a, Rat const & t);

/// The same points, rows ordered by the reduced basis, each exactly once.
std::vector<AlgNum> disc_points(Field const & K, FracIdeal const & a, Rat const & t);

/* --- the quadratic-residue circle count -------------------------------- */

struct CircleQuery {
    FracIdeal a;
    Ideal q;
    AlgNum alpha;
    Rat t;
};

/// Throws hypothesis_error unless a is integral, a + q = O_K,
/// alpha O_K + q = O_K and t >= 0.
void validate(Field const & K, CircleQuery const & query);

/// sum over rho mod q reduced of |{z in a : z = alpha rho^2 mod q, norm(z) <= t}|
Int qr_circle_count(Field const & K, CircleQuery const & query);

/// 2 pi phi*(q) t / (sqrt|disc| N a)
Real qr_circle_main_term(Field const & K, CircleQuery const & query);

struct CountReport {
    Int exact;
    Real main_term;
    Real error;
    Real t_part; // (t / N a)^(1/3) N q^(1/3 + eps)
    Real q_part; // 2^omega(q) N q^(1/2)
    Real ratio;  // |error| / (t_part + q_part)
};

CountReport qr_circle_report(Field const & K, CircleQuery const & query, double eps0 = 0.1);

/// An element e of a with e = 1 mod q, for coprime a and q.
AlgNum crt_unit(Field const & K, Ideal const & a, Ideal const & q);

/// Least-squares slope of log max(|error|, 1) against log t over `points`
/// log-spaced values of t in [t_lo, t_hi].
double fit_error_exponent(Field const & K, CircleQuery query, double t_lo, double t_hi, int points);

} // namespace e6

#endif
