#include <doctest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <cmath>
#include <random>

#include "e6/constants.hpp"

using namespace e6;

namespace {

// Euler product by walking rational primes and splitting by hand
double euler_by_rational_primes(long d, long X)
{
    Field K(d);
    auto f = [](double N) { return std::pow(1 - 1 / N, 7) * (1 + 7 / N + 1 / (N * N)); };
    std::vector<bool> sieve(X + 1, true);
    double prod = 1;
    for (long p = 2; p <= X; ++p) {
        if (!sieve[p]) continue;
        for (long m = p * p; m <= X; m += p) sieve[m] = false;
        int chi = kronecker(K.disc(), Int(p));
        if (chi == 1) prod *= f(p) * f(p);
        else if (chi == 0) prod *= f(p);
        else if (p * p <= X) prod *= f(double(p) * p);
    }
    return prod;
}

// (1/2) integral over D(c, rho) of dA / |w|, no clipping, by complete elliptic integrals
double slice_closed_form(double c, double rho)
{
    double k = 2 * std::sqrt(rho * c) / (rho + c);
    return (rho + c) * boost::math::ellint_2(k) + (rho - c) * boost::math::ellint_1(k);
}

double slice_mc(double c, double rho, double R, int n)
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-1, 1);
    double s = 0;
    for (int i = 0; i < n; ++i) {
        double x, y;
        do {
            x = u(rng);
            y = u(rng);
        } while (x * x + y * y > 1);
        double wx = c + rho * x, wy = rho * y;
        double r = std::hypot(wx, wy);
        if (r <= R) s += 1 / r;
    }
    return 0.5 * M_PI * rho * rho * s / n;
}

bool within(Estimate const & e, double ref, double k) { return std::abs(e.value - ref) <= k * e.sigma; }

} // namespace

TEST_SUITE("constants") {

TEST_CASE("polytope volume")
{
    CHECK(simplex_volume({1, 1, 1, 1, 1, 1}) == Rat(1, 720));
    CHECK(simplex_volume({2, 3}) == Rat(1, 12));
    CHECK(alpha_exact() == Rat(1, 6220800));
    Estimate mc = simplex_volume_mc({1, 1, 1}, 5, 2000000);
    CHECK(within(mc, 1.0 / 6, 4));
    Estimate a = simplex_volume_mc(anticanonical_exponents, 5, 4000000, 2);
    CHECK(within(a, 3 * to_double(alpha_exact()), 4));
}

TEST_CASE("combining estimates")
{
    Estimate c = combine({1, 1, 10}, {3, 1, 10});
    CHECK(c.value == doctest::Approx(2));
    CHECK(c.sigma == doctest::Approx(std::sqrt(0.5)));
    c = combine({1, 1, 10}, {4, 2, 10});
    CHECK(c.value == doctest::Approx((1 + 4 / 4.0) / (1 + 1 / 4.0)));
}

TEST_CASE("Euler factors and the tail bound")
{
    CHECK(to_double(euler_factor(Int(2))) == doctest::Approx(0.037109375).epsilon(1e-15));
    CHECK(std::abs(to_double(euler_factor(Int(10007))) - 1) < 1e-6);
    for (long N = 2; N < 200000; N = N < 100 ? N + 1 : N * 11 / 10) {
        double x = 1.0 / N;
        double lg = std::abs(std::log(to_double(euler_factor(Int(N)))));
        CHECK(lg <= 29 * x * x);
    }
}

TEST_CASE("Euler product against a walk over rational primes")
{
    for (long d : {-1L, -2L, -3L, -5L}) {
        auto rep = euler_product(Field(d), 20000);
        CHECK(to_double(rep.value) == doctest::Approx(euler_by_rational_primes(d, 20000)).epsilon(1e-11));
        CHECK(rep.lo <= rep.value);
        CHECK(rep.value <= rep.hi);
        // the longer product sits inside the shorter one's interval
        auto longer = euler_product(Field(d), 200000);
        CHECK(rep.lo <= longer.value);
        CHECK(longer.value <= rep.hi);
        CHECK(longer.tail < rep.tail);
    }
}

TEST_CASE("the slice area")
{
    for (auto [c, rho] : {std::pair{0.0, 1.0}, {0.3, 1.0}, {1.0, 0.999}, {2.0, 0.5}, {5.0, 4.9}, {1e-3, 2.0}}) {
        INFO("c = " << c << ", rho = " << rho);
        CHECK(root_slice_area(c, rho, 1e9) == doctest::Approx(slice_closed_form(c, rho)).epsilon(1e-9));
    }
    CHECK(root_slice_area(0, 2, 1e9) == doctest::Approx(2 * M_PI));
    CHECK(root_slice_area(1, 1, 1e9) == doctest::Approx(2));
    CHECK(root_slice_area(0, 2, 1) == doctest::Approx(M_PI));
    CHECK(root_slice_area(5, 1, 3) == 0);
    for (auto [c, rho, R] : {std::tuple{1.0, 1.0, 1.5}, {0.5, 2.0, 1.0}, {2.0, 1.5, 2.2}}) {
        INFO("c = " << c << ", rho = " << rho << ", R = " << R);
        CHECK(root_slice_area(c, rho, R) == doctest::Approx(slice_mc(c, rho, R, 2000000)).epsilon(0.01));
    }
}

TEST_CASE("the archimedean region")
{
    CHECK(omega_region_contains({0.5, 0}, {0.5, 0}, {0.5, 0}));
    CHECK_FALSE(omega_region_contains({0.5, 0}, {2, 0}, {0.5, 0}));
    CHECK_FALSE(omega_region_contains({10, 0}, {0.5, 0}, {0.5, 0}));
}

TEST_CASE("both density estimators agree with quadrature")
{
    double ref = omega_quadrature();
    CHECK(ref == doctest::Approx(omega_quadrature(1e-8)).epsilon(1e-6));
    Estimate p = omega_plain(3, 400000, 4);
    Estimate s = omega_slice(3, 200000, 4);
    CHECK(within(p, ref, 4));
    CHECK(within(s, ref, 4));
    CHECK(p.sigma / p.value < 0.01);
    CHECK_THROWS_AS(omega_infinity(1, 1000), std::invalid_argument);
}

TEST_CASE("Monte Carlo is reproducible across thread counts")
{
    Estimate a = omega_plain(77, 150000, 1);
    Estimate b = omega_plain(77, 150000, 3);
    CHECK(a.value == b.value);
    CHECK(a.sigma == b.sigma);
    Estimate c = omega_plain(78, 150000, 1);
    CHECK(a.value != c.value);
    Estimate v = v0prime(100, 9, 100000, 1);
    Estimate w = v0prime(100, 9, 100000, 4);
    CHECK(v.value == w.value);
}

TEST_CASE("V9 and V98: quadrature against Monte Carlo")
{
    std::array<double, 9> t9;
    t9.fill(1);
    double q = v9(t9, 1);
    CHECK(within(v9_mc(t9, 1, 4, 400000), q, 4));
    t9[2] = 2.5;
    t9[8] = 0.7;
    q = v9(t9, 3);
    CHECK(within(v9_mc(t9, 3, 4, 400000), q, 4));
    std::array<double, 8> t8;
    t8.fill(1);
    for (double B : {1.0, 10.0}) {
        double qq = v98_quadrature(t8, B);
        INFO("B = " << B);
        CHECK(within(v98_mc(t8, B, 6, 400000, 4), qq, 4));
    }
}

TEST_CASE("V0 is close to V0'")
{
    for (double B : {100.0, 10000.0}) {
        Estimate a = v0prime(B, 2, 200000, 4);
        Estimate b = v0(B, 2, 200000, 4);
        double L = std::log(B);
        CHECK(std::abs(a.value - b.value) <= B * std::pow(L, 5) + 4 * (a.sigma + b.sigma));
    }
}

TEST_CASE("field factor and the leading constant")
{
    CHECK(field_factor(make_field(-1)).rational == Rat(1, 32768));
    CHECK(field_factor(make_field(-5)).rational == Rat(1, 1250));
    double ff = to_double(field_factor(make_field(-1)).value);
    CHECK(ff == doctest::Approx(std::pow(M_PI, 7) / 32768 / 2));
    ConstantReport r = c_SH(make_field(-1), 1, 100000, 10000, 4);
    CHECK(r.c_SH > 0);
    double expect = to_double(alpha_exact()) * ff * to_double(r.euler.value) * r.omega.value.value;
    CHECK(r.c_SH == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.sigma > 0);
}

TEST_CASE("the volume identity at small B")
{
    Lemma61Report r = lemma61_check(100, 1, 200000, 4);
    CHECK(r.pass);
    CHECK_THROWS_AS(lemma61_check(5, 1, 200000), std::invalid_argument);
}

}
