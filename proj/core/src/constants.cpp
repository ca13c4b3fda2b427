#include "e6/constants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "e6/philox.hpp"
#include "e6/torsor.hpp"

namespace e6 {

namespace {

using cplx = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

constexpr double pi = std::numbers::pi;

// Stream tags keep the estimators statistically independent under one seed.
enum : std::uint64_t {
    tag_simplex = 1,
    tag_omega_plain = 2,
    tag_omega_slice = 3,
    tag_v0prime = 4,
    tag_v0 = 5,
    tag_v9 = 6,
    tag_v98 = 7,
};

constexpr long chunk_size = 1L << 15;

struct Moments {
    long double sum = 0;
    long double sum2 = 0;
    long n = 0;
};

/*
 * Runs `samples` draws of f(stream) -> weight in chunks of chunk_size; chunk
 * k uses stream (tag, k), and chunks are reduced in index order, so the
 * result does not depend on the thread count.
 */
template <class F> Estimate run_chunks(std::uint64_t seed, std::uint64_t tag, long samples, int threads, F const & f)
{
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    long chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<Moments> part(static_cast<std::size_t>(chunks));
    std::atomic<long> next{0};
    auto work = [&] {
        for (long k; (k = next.fetch_add(1)) < chunks;) {
            RandomStream rs(seed, (tag << 48) | static_cast<std::uint64_t>(k));
            long n = std::min(chunk_size, samples - k * chunk_size);
            Moments m;
            for (long i = 0; i < n; ++i) {
                long double w = f(rs);
                m.sum += w;
                m.sum2 += w * w;
            }
            m.n = n;
            part[static_cast<std::size_t>(k)] = m;
        }
    };
    int nt = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
    std::vector<std::thread> pool;
    for (int i = 1; i < nt; ++i) pool.emplace_back(work);
    work();
    for (auto & t : pool) t.join();

    Moments tot;
    for (auto const & m : part) {
        tot.sum += m.sum;
        tot.sum2 += m.sum2;
        tot.n += m.n;
    }
    long double n = tot.n;
    long double mean = tot.sum / n;
    long double var = std::max<long double>(0, (tot.sum2 - n * mean * mean) / (n - 1));
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / n)), tot.n};
}

/*
 * Radial proposal on [0, M]: density proportional to rho / s^2 below the
 * scale s and to s / rho^2 above it.  Matches the r dr growth of a disc of
 * fixed content and the 1/rho^2 decay of the far tail.
 */
class RadialProposal {
  public:
    RadialProposal(double scale, double max) : s_(scale), M_(max)
    {
        double m = std::min(s_, M_);
        head_ = m * m / (2 * s_ * s_);
        tail_ = M_ > s_ ? 1 - s_ / M_ : 0;
    }

    double sample(RandomStream & rs) const
    {
        double u = rs.uniform() * (head_ + tail_);
        if (u < head_) return s_ * std::sqrt(2 * u);
        return std::min(M_, s_ / (1 - (u - head_)));
    }

    double density(double rho) const
    {
        double f = rho <= s_ ? rho / (s_ * s_) : s_ / (rho * rho);
        return f / (head_ + tail_);
    }

  private:
    double s_, M_;
    double head_, tail_;
};

/*
 * A point z with z^2 near C: uniform on the disc |z| <= zmax, or, when
 * smaller, on the union of the discs of radius r / sqrt|C| about the two
 * square roots of C (which contain every z with |z^2 - C| <= r).  The
 * residual z^2 - C is formed without cancellation.
 */
struct RootDraw {
    cplx z;
    cplx residual;
    double weight; // 1 / proposal density
};

RootDraw draw_root(cplx C, double r, double zmax, RandomStream & rs)
{
    double absC = std::abs(C);
    double single = std::min(zmax * zmax, absC + r);
    if (absC > r) {
        double rb = r / std::sqrt(absC);
        if (2 * rb * rb < single) {
            cplx root = std::sqrt(C);
            if (rs.uniform() < 0.5) root = -root;
            double rad = rb * std::sqrt(rs.uniform());
            double phi = 2 * pi * rs.uniform();
            cplx delta = std::polar(rad, phi);
            int inside = 1 + (std::abs(delta + 2.0 * root) <= rb ? 1 : 0);
            return {root + delta, delta * (delta + 2.0 * root), 2 * pi * rb * rb / inside};
        }
    }
    double ra = std::sqrt(single);
    cplx z = std::polar(ra * std::sqrt(rs.uniform()), 2 * pi * rs.uniform());
    return {z, z * z - C, pi * ra * ra};
}

double norm_pow(double t, int e)
{
    return std::pow(t, e);
}

} // namespace

Estimate combine(Estimate const & a, Estimate const & b)
{
    double wa = 1 / (a.sigma * a.sigma);
    double wb = 1 / (b.sigma * b.sigma);
    return {(wa * a.value + wb * b.value) / (wa + wb), 1 / std::sqrt(wa + wb), a.samples + b.samples};
}

/* --- the polytope constant --------------------------------------------- */

Rat simplex_volume(std::vector<long> const & a)
{
    Int den = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0) throw std::invalid_argument("simplex exponents must be positive");
        den *= static_cast<long>(i + 1);
        den *= a[i];
    }
    return make_rat(1, den);
}

Rat alpha_exact()
{
    Rat alpha = simplex_volume(anticanonical_exponents) / 3;
    if (alpha != Rat(1, 6220800)) throw std::logic_error("alpha differs from 1/6220800");
    return alpha;
}

Estimate simplex_volume_mc(std::vector<long> const & a, std::uint64_t seed, long samples, int threads)
{
    double box = 1;
    for (long x : a) box /= static_cast<double>(x);
    return run_chunks(seed, tag_simplex, samples, threads, [&](RandomStream & rs) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += rs.uniform();
        return s <= 1 ? box : 0.0;
    });
}

/* --- the Euler product ------------------------------------------------- */

Real euler_factor(Int const & norm)
{
    Real x = Real(1) / to_real(norm);
    return pow(1 - x, 7) * (1 + 7 * x + x * x);
}

EulerReport euler_product(Field const & K, long cutoff)
{
    if (cutoff < 2) throw std::invalid_argument("Euler cutoff must be at least 2");
    std::vector<bool> composite(static_cast<std::size_t>(cutoff) + 1, false);
    EulerReport rep;
    rep.cutoff = cutoff;
    rep.value = 1;
    for (long p = 2; p <= cutoff; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (long m = p * p; m <= cutoff; m += p) composite[static_cast<std::size_t>(m)] = true;
        int chi = kronecker(K.disc(), Int(p));
        if (chi == 1) {
            Real f = euler_factor(Int(p));
            rep.value *= f * f;
            rep.primes += 2;
        } else if (chi == 0) {
            rep.value *= euler_factor(Int(p));
            rep.primes += 1;
        } else if (p <= cutoff / p) {
            rep.value *= euler_factor(Int(p) * p);
            rep.primes += 1;
        }
    }
    // Prime ideals of norm > X: at most two of each prime norm p > X, at
    // most one of each norm p^2 with p > floor(sqrt X).
    double X = static_cast<double>(cutoff);
    double m = static_cast<double>(isqrt(cutoff));
    rep.tail = 29 * (2 / X + 1 / (3 * m * m * m));
    rep.lo = rep.value * exp(Real(-rep.tail));
    rep.hi = rep.value * exp(Real(rep.tail));
    return rep;
}

/* --- the archimedean density ------------------------------------------- */

bool omega_region_contains(cplx z0, cplx z1, cplx z2)
{
    return std::norm(z0 * z1 * z1) <= 1 && std::norm(z0 * z0 * z1 + z2 * z2 * z2) <= 1 &&
           std::norm(z1 * z1 * z1) <= 1 && std::norm(z1 * z1 * z2) <= 1;
}

double root_slice_area(double c, double rho, double R)
{
    if (!(rho > 0) || !(R > 0)) return 0;
    c = std::abs(c);
    // circles |w| = r with r <= rho - c lie inside D(c, rho)
    double full = std::clamp(rho - c, 0.0, R);
    double total = 2 * pi * full;
    double lo = std::abs(c - rho);
    double hi = std::min(c + rho, R);
    if (c > 0 && hi > lo) {
        // half the angle subtended by D(c, rho) on |w| = r, from the
        // triangle (r, c, rho) in a cancellation-free form
        auto theta = [&](double r) {
            double d = r - c;
            double s = (rho - d) * (rho + d);
            double t = (r + c - rho) * (r + c + rho);
            return 4 * std::atan2(std::sqrt(std::max(0.0, s)), std::sqrt(std::max(0.0, t)));
        };
        double half = (hi - lo) / 2;
        auto g = [&](double phi) { return theta(lo + half * (1 - std::cos(phi))) * half * std::sin(phi); };
        total += gauss_kronrod<double, 15>::integrate(g, 0.0, pi, 8, 1e-7);
    }
    return total / 2;
}

/*
 * Shared parametrisation: r1 = |z1| uniform on (0, 1], s = |z2| from a
 * radial proposal with scale 1 (where |z2^3 / z1| = 1 / |z1|).  The
 * remaining conditions are |z0| <= r1^-2 and |z0^2 + z2^3 / z1| <= 1 / r1.
 */
Estimate omega_plain(std::uint64_t seed, long samples, int threads)
{
    return run_chunks(seed, tag_omega_plain, samples, threads, [](RandomStream & rs) {
        double r1 = rs.uniform();
        cplx z1 = std::polar(r1, 2 * pi * rs.uniform());
        RadialProposal prop(1.0, 1 / (r1 * r1));
        double s = prop.sample(rs);
        cplx z2 = std::polar(s, 2 * pi * rs.uniform());
        cplx C = -(z2 * z2 * z2) / z1;
        RootDraw d = draw_root(C, 1 / r1, 1 / (r1 * r1), rs);
        // the four conditions, the second through the stable residual
        bool in = std::norm(d.z) * std::pow(r1, 4) <= 1 && std::norm(d.residual) * r1 * r1 <= 1 &&
                  std::pow(r1, 6) <= 1 && std::pow(r1, 4) * s * s <= 1;
        if (!in) return 0.0;
        return 12 / pi * (2 * pi * r1) * (2 * pi * s / prop.density(s)) * d.weight;
    });
}

namespace {

double omega_slice_area(double r1, double s)
{
    return root_slice_area(s * s * s / r1, 1 / r1, std::pow(r1, -4));
}

// Beyond this |z2| the slice is empty: |z2^3/z1| - 1/|z1| > |z1|^-4.
double omega_s_max(double r1)
{
    return std::min(1 / (r1 * r1), std::cbrt(std::pow(r1, -3) + 1));
}

} // namespace

Estimate omega_slice(std::uint64_t seed, long samples, int threads)
{
    return run_chunks(seed, tag_omega_slice, samples, threads, [](RandomStream & rs) {
        double r1 = rs.uniform();
        RadialProposal prop(1.0, omega_s_max(r1));
        double s = prop.sample(rs);
        return 12 / pi * (2 * pi * r1) * (2 * pi * s / prop.density(s)) * omega_slice_area(r1, s);
    });
}

double omega_quadrature(double tol)
{
    auto inner = [tol](double r1) {
        double smax = omega_s_max(r1);
        std::vector<double> br{0.0, smax, 1.0};
        double a = std::pow(r1, -3) - 1;
        if (a > 0) br.push_back(std::cbrt(a));
        std::sort(br.begin(), br.end());
        br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x > smax; }), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        double sum = 0;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            double lo = br[i], hi = br[i + 1];
            if (lo >= 1) {
                // s = 1/v flattens the s^-2 tail
                auto f = [&](double v) {
                    double s = 1 / v;
                    return s * s * s * omega_slice_area(r1, s);
                };
                sum += gauss_kronrod<double, 15>::integrate(f, 1 / hi, 1 / lo, 10, tol);
            } else {
                auto f = [&](double s) { return s * omega_slice_area(r1, s); };
                sum += gauss_kronrod<double, 15>::integrate(f, lo, hi, 10, tol);
            }
        }
        return r1 * sum;
    };
    double I = gauss_kronrod<double, 15>::integrate(inner, 0.0, 1.0, 10, tol);
    return 12 / pi * 4 * pi * pi * I;
}

OmegaReport omega_infinity(std::uint64_t seed, long budget, int threads)
{
    if (budget < 100000) throw std::invalid_argument("omega_infinity needs a budget of at least 1e5 samples");
    OmegaReport rep;
    rep.seed = seed;
    rep.budget = budget;
    rep.plain = omega_plain(seed, budget, threads);
    rep.slice = omega_slice(seed, budget, threads);
    rep.value = combine(rep.plain, rep.slice);
    double s = std::hypot(rep.plain.sigma, rep.slice.sigma);
    rep.z_score = std::abs(rep.plain.value - rep.slice.value) / s;
    return rep;
}

/* --- the leading constant ---------------------------------------------- */

FieldFactor field_factor(FieldContext const & ctx)
{
    Field const & K = ctx.K;
    Int h = ctx.h, w = K.unit_count(), D = K.abs_disc();
    Int h7, w7, D4;
    mpz_pow_ui(h7.get_mpz_t(), h.get_mpz_t(), 7);
    mpz_pow_ui(w7.get_mpz_t(), w.get_mpz_t(), 7);
    mpz_pow_ui(D4.get_mpz_t(), D.get_mpz_t(), 4);
    FieldFactor ff;
    ff.rational = Rat(128 * h7, D4 * w7);
    ff.rational.canonicalize();
    Real pi_r = boost::math::constants::pi<Real>();
    ff.value = to_real(ff.rational) * pow(pi_r, 7) / sqrt(Real(K.abs_disc()));
    ff.symbolic = rat_string(ff.rational) + " * pi^7 / sqrt(" + std::to_string(K.abs_disc()) + ")";
    return ff;
}

ConstantReport c_SH(FieldContext const & ctx, std::uint64_t seed, long budget, long euler_cutoff, int threads)
{
    ConstantReport rep;
    rep.d = ctx.K.d();
    rep.disc = ctx.K.disc();
    rep.h = ctx.h;
    rep.w = ctx.K.unit_count();
    rep.alpha = alpha_exact();
    rep.field = field_factor(ctx);
    rep.euler = euler_product(ctx.K, euler_cutoff);
    rep.omega = omega_infinity(seed, budget, threads);
    Real c = to_real(rep.alpha) * rep.field.value * rep.euler.value * Real(rep.omega.value.value);
    rep.c_SH = to_double(c);
    double rel = std::hypot(rep.omega.value.sigma / rep.omega.value.value, rep.euler.tail);
    rep.sigma = rep.c_SH * rel;
    return rep;
}

/* --- region volumes ---------------------------------------------------- */

bool region_contains_approx(std::array<cplx, 10> const & e, double B)
{
    auto pw = [](cplx z, int k) {
        cplx r = 1;
        for (int i = 0; i < k; ++i) r *= z;
        return r;
    };
    cplx E = pw(e[4], 2) * e[5] * pw(e[7], 3);
    if (E == cplx(0)) throw std::domain_error("eta4 eta5 eta7 = 0");
    cplx h1 = pw(e[1], 2) * pw(e[2], 3) * pw(e[3], 4) * pw(e[4], 4) * pw(e[5], 5) * pw(e[6], 6) * pw(e[7], 3);
    cplx h2 = pw(e[1], 2) * pw(e[2], 2) * pw(e[3], 3) * pw(e[4], 2) * pw(e[5], 3) * pw(e[6], 4) * e[7] * e[8];
    cplx h3 = e[1] * pw(e[2], 2) * pw(e[3], 2) * e[4] * pw(e[5], 2) * pw(e[6], 3) * e[9];
    cplx h4 = (pw(e[1], 2) * e[3] * pw(e[8], 3) + e[2] * pw(e[9], 2)) / E;
    return std::norm(h1) <= B && std::norm(h2) <= B && std::norm(h3) <= B && std::norm(h4) <= B;
}

namespace {

/*
 * V0' and V0 in polar form.  The outer variables eta1, eta3, ..., eta7 are
 * drawn through l_j = log|eta_j| uniform on the simplex sum a_j l_j <= log B
 * (|eta_j| >= 1 and the extra condition); for them dA = (pi/2)|eta| dl after
 * the phase, i.e. pi t_j dl_j per variable with t_j = |eta_j|.  Then |eta2|
 * is uniform on its allowed range, |eta8| comes from a radial proposal with
 * the scale where both terms of the fourth condition balance, and the
 * eta9-slice is integrated exactly.  All phases drop out: every condition
 * depends on moduli only once eta9 is integrated.
 */
Estimate v0_family(double B, std::uint64_t seed, long samples, int threads, bool eta2_ge_1)
{
    if (!(B > 1)) throw std::invalid_argument("V0 needs B > 1");
    static constexpr std::array<int, 6> idx{1, 3, 4, 5, 6, 7};
    std::array<double, 6> a{};
    for (int i = 0; i < 6; ++i) a[static_cast<std::size_t>(i)] = static_cast<double>(anticanonical_exponents[static_cast<std::size_t>(i)]);
    double L = std::log(B);
    double simplex = to_double(simplex_volume(anticanonical_exponents)) * std::pow(L, 6);
    return run_chunks(seed, eta2_ge_1 ? tag_v0 : tag_v0prime, samples, threads, [&](RandomStream & rs) {
        std::array<double, 7> x{};
        double sx = 0;
        for (auto & v : x) sx += (v = rs.exponential());
        std::array<double, 8> t{};
        double jac = 1;
        for (std::size_t i = 0; i < 6; ++i) {
            double l = L * x[i] / sx / a[i];
            t[static_cast<std::size_t>(idx[i])] = std::exp(l);
            jac *= t[static_cast<std::size_t>(idx[i])];
        }
        double Q1 = norm_pow(t[1], 2) * norm_pow(t[3], 4) * norm_pow(t[4], 4) * norm_pow(t[5], 5) *
                    norm_pow(t[6], 6) * norm_pow(t[7], 3);
        double Q2 = norm_pow(t[1], 2) * norm_pow(t[3], 3) * norm_pow(t[4], 2) * norm_pow(t[5], 3) *
                    norm_pow(t[6], 4) * t[7];
        double Q3 = t[1] * norm_pow(t[3], 2) * t[4] * norm_pow(t[5], 2) * norm_pow(t[6], 3);
        double NE = norm_pow(t[4], 2) * t[5] * norm_pow(t[7], 3);
        double G = t[1] * std::sqrt(t[3]); // |eta1^2 eta3| in Euclidean modulus

        double r2max = std::pow(B / Q1, 1.0 / 6);
        double r2min = eta2_ge_1 ? 1.0 : 0.0;
        if (r2max <= r2min) return 0.0;
        double r2 = r2min + (r2max - r2min) * rs.uniform();
        double w2 = 2 * pi * r2 * (r2max - r2min);

        double r8max = std::sqrt(B / Q2) / (r2 * r2);
        RadialProposal prop(std::cbrt(std::sqrt(B * NE) / G), r8max);
        double r8 = prop.sample(rs);
        double w8 = 2 * pi * r8 / prop.density(r8);

        double C = G * r8 * r8 * r8 / r2;
        double rad = std::sqrt(B * NE) / r2;
        double R9 = B / (Q3 * std::pow(r2, 4));
        double A9 = root_slice_area(C, rad, R9);
        return simplex * std::pow(pi, 6) * jac / NE * w2 * w8 * A9;
    });
}

struct SliceData {
    bool ok = false;
    double C = 0, rad = 0, R9 = 0, NE = 0;
};

// eta_j = sqrt(t_j) real; the eta9 conditions as a disc pair
SliceData v9_slice(std::array<double, 9> const & t, double B)
{
    SliceData s;
    double h1 = norm_pow(t[1], 2) * norm_pow(t[2], 3) * norm_pow(t[3], 4) * norm_pow(t[4], 4) *
                norm_pow(t[5], 5) * norm_pow(t[6], 6) * norm_pow(t[7], 3);
    double h2 = norm_pow(t[1], 2) * norm_pow(t[2], 2) * norm_pow(t[3], 3) * norm_pow(t[4], 2) *
                norm_pow(t[5], 3) * norm_pow(t[6], 4) * t[7] * t[8];
    s.NE = norm_pow(t[4], 2) * t[5] * norm_pow(t[7], 3);
    if (h1 > B || h2 > B) return s;
    double Q3 = t[1] * norm_pow(t[2], 2) * norm_pow(t[3], 2) * t[4] * norm_pow(t[5], 2) * norm_pow(t[6], 3);
    s.C = std::sqrt(norm_pow(t[1], 2) * t[3] * norm_pow(t[8], 3) / t[2]);
    s.rad = std::sqrt(B * s.NE / t[2]);
    s.R9 = B / Q3;
    s.ok = true;
    return s;
}

std::array<cplx, 10> real_eta(double const * t, int n)
{
    std::array<cplx, 10> e{};
    for (int j = 1; j <= n; ++j) e[static_cast<std::size_t>(j)] = std::sqrt(t[j]);
    return e;
}

} // namespace

Estimate v0prime(double B, std::uint64_t seed, long samples, int threads)
{
    return v0_family(B, seed, samples, threads, false);
}

Estimate v0(double B, std::uint64_t seed, long samples, int threads)
{
    return v0_family(B, seed, samples, threads, true);
}

double v9(std::array<double, 9> const & t, double B)
{
    SliceData s = v9_slice(t, B);
    if (!s.ok) return 0;
    return root_slice_area(s.C, s.rad, s.R9) / s.NE;
}

Estimate v9_mc(std::array<double, 9> const & t, double B, std::uint64_t seed, long samples)
{
    SliceData s = v9_slice(t, B);
    double R = std::sqrt(s.R9);
    return run_chunks(seed, tag_v9, samples, 1, [&](RandomStream & rs) {
        if (!s.ok) return 0.0;
        auto e = real_eta(t.data(), 8);
        e[9] = std::polar(R * std::sqrt(rs.uniform()), 2 * pi * rs.uniform());
        return region_contains_approx(e, B) ? pi * s.R9 / s.NE : 0.0;
    });
}

namespace {

double t8_max(std::array<double, 8> const & t, double B)
{
    double Q = norm_pow(t[1], 2) * norm_pow(t[2], 2) * norm_pow(t[3], 3) * norm_pow(t[4], 2) * norm_pow(t[5], 3) *
               norm_pow(t[6], 4) * t[7];
    return B / Q;
}

std::array<double, 9> with_t8(std::array<double, 8> const & t, double t8)
{
    std::array<double, 9> u{};
    std::copy(t.begin(), t.end(), u.begin());
    u[8] = t8;
    return u;
}

} // namespace

double v98_quadrature(std::array<double, 8> const & t, double B, double tol)
{
    double hi = t8_max(t, B);
    SliceData s = v9_slice(with_t8(t, 0), B);
    if (!s.ok || !(hi > 0)) return 0;
    // C(t8) = k t8^(3/2); the slice area changes form where C meets
    // rad, R9 - rad, R9 + rad and rad - R9
    double k = std::sqrt(norm_pow(t[1], 2) * t[3] / t[2]);
    std::vector<double> br{0.0, hi};
    for (double v : {s.rad, s.R9 - s.rad, s.R9 + s.rad, s.rad - s.R9})
        if (v > 0) br.push_back(std::pow(v / k, 2.0 / 3));
    std::sort(br.begin(), br.end());
    br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x > hi; }), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double sum = 0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
        sum += gauss_kronrod<double, 31>::integrate([&](double t8) { return v9(with_t8(t, t8), B); }, br[i],
                                                    br[i + 1], 15, tol);
    return pi * sum;
}

Estimate v98_mc(std::array<double, 8> const & t, double B, std::uint64_t seed, long samples, int threads)
{
    double hi = t8_max(t, B);
    double NE = norm_pow(t[4], 2) * t[5] * norm_pow(t[7], 3);
    return run_chunks(seed, tag_v98, samples, threads, [&](RandomStream & rs) {
        double t8 = hi * rs.uniform();
        SliceData s = v9_slice(with_t8(t, t8), B);
        if (!s.ok) return 0.0;
        auto e = real_eta(t.data(), 7);
        e[8] = std::sqrt(t8);
        // eta9^2 near -eta1^2 eta3 eta8^3 / eta2
        RootDraw d = draw_root(cplx(-s.C, 0), s.rad, std::sqrt(s.R9), rs);
        e[9] = d.z;
        if (!region_contains_approx(e, B)) return 0.0;
        return pi / NE * hi * d.weight;
    });
}

Estimate region_volume(VolumeKind kind, std::vector<double> const & t, double B, std::uint64_t seed, long budget,
                       int threads)
{
    auto need = [&](std::size_t n) {
        if (t.size() != n) throw std::invalid_argument("expected " + std::to_string(n) + " t-arguments");
        for (double x : t)
            if (!(x >= 1)) throw std::invalid_argument("t-arguments must be >= 1");
    };
    if (!(B >= 1)) throw std::invalid_argument("B must be >= 1");
    switch (kind) {
    case VolumeKind::V0:
        return v0(B, seed, budget, threads);
    case VolumeKind::V0prime:
        return v0prime(B, seed, budget, threads);
    case VolumeKind::V9: {
        need(8);
        std::array<double, 9> u{};
        std::copy(t.begin(), t.end(), u.begin() + 1);
        return v9_mc(u, B, seed, budget);
    }
    case VolumeKind::V98: {
        need(7);
        std::array<double, 8> u{};
        std::copy(t.begin(), t.end(), u.begin() + 1);
        return v98_mc(u, B, seed, budget, threads);
    }
    }
    throw std::invalid_argument("unknown volume kind");
}

Lemma61Report lemma61_check(double B, std::uint64_t seed, long budget, int threads)
{
    if (!(B >= 10)) throw std::invalid_argument("lemma61_check needs B >= 10");
    return lemma61_check(B, omega_infinity(seed, budget, threads).value, seed, budget, threads);
}

Lemma61Report lemma61_check(double B, Estimate const & omega, std::uint64_t seed, long budget, int threads)
{
    if (!(B >= 10)) throw std::invalid_argument("lemma61_check needs B >= 10");
    Lemma61Report rep;
    rep.B = B;
    rep.alpha = alpha_exact();
    rep.omega = omega;
    rep.v0prime = v0prime(B, seed, budget, threads);
    double L = std::log(B);
    rep.lhs = std::pow(pi, 7) * to_double(rep.alpha) * rep.omega.value * B * std::pow(L, 6);
    rep.rhs = 4 * rep.v0prime.value;
    rep.ratio = rep.rhs / rep.lhs;
    rep.sigma = rep.ratio * std::hypot(rep.omega.sigma / rep.omega.value, rep.v0prime.sigma / rep.v0prime.value);
    rep.pass = std::abs(rep.ratio - 1) < 3 * rep.sigma;
    return rep;
}

std::vector<PredictionRow> prediction_table(FieldContext const & ctx, ConstantReport const & constants,
                                            std::vector<Rat> const & bounds, int threads)
{
    std::vector<PredictionRow> rows;
    for (Rat const & B : bounds) {
        PredictionRow row;
        row.B = B;
        row.count = torsor_count_N(ctx, B, threads);
        double b = to_double(B);
        row.predicted = constants.c_SH * b * std::pow(std::log(b), 6);
        row.ratio = to_double(Rat(row.count)) / row.predicted;
        rows.push_back(row);
    }
    return rows;
}

} // namespace e6
