#include "e6/lattice.hpp"

#include <array>
#include <cmath>
#include <map>

#include <boost/math/constants/constants.hpp>

namespace e6 {

Vec2 to_vec(AlgNum const & z)
{
    if (!z.is_integral()) throw std::invalid_argument("to_vec of a non-integral element");
    return {to_i128(z.a.get_num()), to_i128(z.b.get_num())};
}

AlgNum to_alg(Vec2 v)
{
    return {Rat(to_int(v.x)), Rat(to_int(v.y))};
}

namespace {

// round(x / y) for y > 0
i128 round_div(i128 x, i128 y)
{
    return floor_div(cadd(cmul(2, x), y), cmul(2, y));
}

} // namespace

void gauss_reduce(Field const & K, Vec2 & u, Vec2 & v)
{
    if (qform(K, u) > qform(K, v)) std::swap(u, v);
    for (;;) {
        i128 qu = qform(K, u);
        i128 m = round_div(bilinear(K, u, v), cmul(2, qu));
        v = v - (m * u);
        if (qform(K, v) >= qu) break;
        std::swap(u, v);
    }
}

void gauss_reduce(Field const & K, AlgNum & u, AlgNum & v)
{
    if (K.norm(u) > K.norm(v)) std::swap(u, v);
    for (;;) {
        Rat nu = K.norm(u);
        Rat re = K.trace(K.mul(u, K.conj(v))) / (2 * nu);
        Int m = floor_rat(re + Rat(1, 2));
        v = K.sub(v, K.scale(u, Rat(m)));
        if (K.norm(v) >= nu) break;
        std::swap(u, v);
    }
}

std::pair<Vec2, Vec2> reduced_int_basis(Field const & K, Ideal const & I)
{
    if (I.is_zero()) throw std::domain_error("basis of the zero ideal");
    Vec2 u{to_i128(I.a()), 0};
    Vec2 v{to_i128(I.b()), to_i128(I.c())};
    gauss_reduce(K, u, v);
    return {u, v};
}

ReducedBasis reduced_basis(Field const & K, FracIdeal const & a)
{
    if (a.num().is_zero()) throw std::domain_error("basis of the zero ideal");
    auto b = a.num().basis();
    AlgNum u = b[0];
    AlgNum v = b[1];
    gauss_reduce(K, u, v);
    Rat s(1, a.den());
    return {K.scale(u, s), K.scale(v, s)};
}

Int min_norm(Field const & K, Ideal const & I)
{
    auto b = I.basis();
    gauss_reduce(K, b[0], b[1]);
    return K.norm(b[0]).get_num();
}

/* --- CosetRows --------------------------------------------------------- */

CosetRows::CosetRows(Field const & K, Vec2 c, Vec2 v1, Vec2 v2, i128 T) : v1_(v1), v2_(v2), T_(T)
{
    // move c next to the origin so that all coefficients stay small
    i128 det = csub(cmul(v1.x, v2.y), cmul(v1.y, v2.x));
    if (det == 0) throw std::invalid_argument("degenerate lattice basis");
    i128 mn = csub(cmul(c.x, v2.y), cmul(c.y, v2.x));
    i128 kn = csub(cmul(v1.x, c.y), cmul(v1.y, c.x));
    if (det < 0) {
        det = -det;
        mn = -mn;
        kn = -kn;
    }
    c_ = c - (round_div(mn, det) * v1) - (round_div(kn, det) * v2);

    A_ = qform(K, v1);
    B_ = bilinear(K, v1, v2);
    C_ = qform(K, v2);
    D_ = bilinear(K, c_, v1);
    E_ = bilinear(K, c_, v2);
    F_ = qform(K, c_);
    if (T < 0) return;

    // delta(k) = P k^2 + Q k + R with P < 0; rows exist where delta >= 0
    i128 Pn = csub(cmul(4, cmul(A_, C_)), cmul(B_, B_));
    i128 Q = csub(cmul(2, cmul(B_, D_)), cmul(4, cmul(A_, E_)));
    i128 R = csub(cmul(D_, D_), cmul(4, cmul(A_, csub(F_, T))));
    i128 disc = cadd(cmul(Q, Q), cmul(4, cmul(Pn, R)));
    if (disc < 0) return;
    i128 s = isqrt(disc);
    kmin_ = ceil_div(csub(Q, s), cmul(2, Pn));
    kmax_ = floor_div(cadd(Q, s), cmul(2, Pn));
    while (delta(kmin_ - 1) >= 0) --kmin_;
    while (delta(kmax_ + 1) >= 0) ++kmax_;
    while (kmin_ <= kmax_ && delta(kmin_) < 0) ++kmin_;
    while (kmax_ >= kmin_ && delta(kmax_) < 0) --kmax_;
    empty_ = kmin_ > kmax_;
}

i128 CosetRows::f(i128 m, i128 k) const
{
    i128 r = cmul(cadd(cmul(A_, m), cadd(cmul(B_, k), D_)), m);
    return cadd(r, cadd(cmul(cadd(cmul(C_, k), E_), k), F_));
}

i128 CosetRows::delta(i128 k) const
{
    i128 L = cadd(cmul(B_, k), D_);
    i128 R = cadd(cmul(cadd(cmul(C_, k), E_), k), F_);
    return csub(cmul(L, L), cmul(4, cmul(A_, csub(R, T_))));
}

std::pair<i128, i128> CosetRows::row(i128 k) const
{
    i128 d = delta(k);
    if (d < 0) return {1, 0};
    i128 L = cadd(cmul(B_, k), D_);
    i128 s = isqrt(d);
    i128 lo = ceil_div(csub(-L, s), cmul(2, A_));
    i128 hi = floor_div(cadd(-L, s), cmul(2, A_));
    while (f(lo - 1, k) <= T_) --lo;
    while (lo <= hi && f(lo, k) > T_) ++lo;
    while (f(hi + 1, k) <= T_) ++hi;
    while (hi >= lo && f(hi, k) > T_) --hi;
    return {lo, hi};
}

i128 count_coset(Field const & K, Vec2 c, Vec2 v1, Vec2 v2, i128 T)
{
    CosetRows rows(K, c, v1, v2, T);
    i128 total = 0;
    if (rows.empty()) return 0;
    for (i128 k = rows.k_min(); k <= rows.k_max(); ++k) {
        auto [lo, hi] = rows.row(k);
        if (hi >= lo) total = cadd(total, hi - lo + 1);
    }
    return total;
}

/* --- discs ------------------------------------------------------------- */

namespace {

i128 scaled_bound(FracIdeal const & a, Rat const & t)
{
    return to_i128(floor_rat(t * a.den() * a.den()));
}

} // namespace

Int disc_count(Field const & K, FracIdeal const & a, Rat const & t)
{
    if (sgn(t) < 0) return 0;
    if (a.num().is_zero()) return 1;
    auto [v1, v2] = reduced_int_basis(K, a.num());
    return to_int(count_coset(K, Vec2{}, v1, v2, scaled_bound(a, t)));
}

std::vector<AlgNum> disc_points(Field const & K, FracIdeal const & a, Rat const & t)
{
    std::vector<AlgNum> out;
    if (sgn(t) < 0) return out;
    if (a.num().is_zero()) return {AlgNum(0)};
    auto [v1, v2] = reduced_int_basis(K, a.num());
    Rat s(1, a.den());
    for_each_coset(K, Vec2{}, v1, v2, scaled_bound(a, t), [&](Vec2 p) { out.push_back(K.scale(to_alg(p), s)); });
    return out;
}

/* --- circle counts ----------------------------------------------------- */

void validate(Field const & K, CircleQuery const & query)
{
    if (!query.a.is_integral() || query.a.num().is_zero())
        throw hypothesis_error("the lattice a must be a nonzero integral ideal");
    if (query.q.is_zero()) throw hypothesis_error("the modulus q must be nonzero");
    if (sgn(query.t) < 0) throw hypothesis_error("t must be nonnegative");
    if (!ideal_coprime(query.a.num(), query.q)) throw hypothesis_error("a + q must be O_K");
    if (!query.alpha.is_integral() || !element_coprime(K, query.alpha, query.q))
        throw hypothesis_error("alpha must be an integer coprime to q");
}

AlgNum crt_unit(Field const & K, Ideal const & a, Ideal const & q)
{
    struct Row {
        Int x, y;
        std::array<Int, 4> coef;
    };
    std::vector<Row> rows{
        {a.a(), 0, {1, 0, 0, 0}},
        {a.b(), a.c(), {0, 1, 0, 0}},
        {q.a(), 0, {0, 0, 1, 0}},
        {q.b(), q.c(), {0, 0, 0, 1}},
    };
    auto sub = [](Row & r, Row const & p, Int const & m) {
        r.x -= m * p.x;
        r.y -= m * p.y;
        for (int i = 0; i < 4; ++i) r.coef[i] -= m * p.coef[i];
    };
    // Euclid on one coordinate across all rows; returns the pivot index
    auto eliminate = [&](auto coord) {
        for (;;) {
            int piv = -1;
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (sgn(coord(rows[i])) == 0) continue;
                if (piv < 0 || abs(coord(rows[i])) < abs(coord(rows[piv]))) piv = i;
            }
            if (piv < 0) return -1;
            bool done = true;
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i == piv || sgn(coord(rows[i])) == 0) continue;
                Int m;
                mpz_fdiv_q(m.get_mpz_t(), coord(rows[i]).get_mpz_t(), coord(rows[piv]).get_mpz_t());
                sub(rows[i], rows[piv], m);
                if (sgn(coord(rows[i])) != 0) done = false;
            }
            if (done) return piv;
        }
    };
    int py = eliminate([](Row & r) -> Int & { return r.y; });
    if (py >= 0) rows.erase(rows.begin() + py);
    int px = eliminate([](Row & r) -> Int & { return r.x; });
    if (px < 0 || abs(rows[px].x) != 1) throw hypothesis_error("a and q are not coprime");
    Row const & g = rows[px];
    int sign = sgn(g.x);
    AlgNum e = K.add(K.scale(AlgNum(Rat(a.a())), Rat(g.coef[0] * sign)),
                     K.scale(AlgNum(Rat(a.b()), Rat(a.c())), Rat(g.coef[1] * sign)));
    return reduce_mod(ideal_mul(K, a, q), e);
}

Int qr_circle_count(Field const & K, CircleQuery const & query)
{
    validate(K, query);
    Ideal const & a = query.a.num();
    Ideal const & q = query.q;

    std::map<AlgNum, long> classes;
    for (auto const & rho : reduced_residues(K, q))
        ++classes[reduce_mod(q, K.mul(query.alpha, K.mul(rho, rho)))];

    Ideal aq = ideal_mul(K, a, q);
    auto [v1, v2] = reduced_int_basis(K, aq);
    AlgNum e = crt_unit(K, a, q);
    i128 T = to_i128(floor_rat(query.t));

    Int total = 0;
    for (auto const & [cls, mult] : classes) {
        Vec2 c = to_vec(reduce_mod(aq, K.mul(cls, e)));
        total += to_int(count_coset(K, c, v1, v2, T)) * mult;
    }
    return total;
}

Real qr_circle_main_term(Field const & K, CircleQuery const & query)
{
    Real pi = boost::math::constants::pi<Real>();
    Rat factor = phi_star(K, query.q) * query.t / query.a.norm();
    return 2 * pi * to_real(factor) / sqrt(Real(K.abs_disc()));
}

CountReport qr_circle_report(Field const & K, CircleQuery const & query, double eps0)
{
    CountReport r;
    r.exact = qr_circle_count(K, query);
    r.main_term = qr_circle_main_term(K, query);
    r.error = to_real(r.exact) - r.main_term;
    Real nq = to_real(query.q.norm());
    Real tna = to_real(Rat(query.t / query.a.norm()));
    r.t_part = cbrt(tna) * pow(nq, Real(1) / 3 + Real(eps0));
    r.q_part = pow(Real(2), prime_omega(K, query.q)) * sqrt(nq);
    r.ratio = abs(r.error) / (r.t_part + r.q_part);
    return r;
}

double fit_error_exponent(Field const & K, CircleQuery query, double t_lo, double t_hi, int points)
{
    if (points < 2 || !(t_lo > 0) || !(t_hi > t_lo)) throw std::invalid_argument("bad fit range");
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (int i = 0; i < points; ++i) {
        double tv = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (points - 1));
        query.t = Rat(floor_rat(Rat(tv)));
        CountReport r = qr_circle_report(K, query);
        double x = std::log(to_double(query.t));
        double y = std::log(std::max(1.0, std::fabs(to_double(r.error))));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = points;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace e6
