#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "e6/lattice.hpp"

using namespace e6;

namespace {

// |{z in I / den : N(z) <= t}| by a plain double loop over the HNF basis
long brute_disc(Field const & K, FracIdeal const & a, Rat const & t)
{
    Ideal const & I = a.num();
    Rat T = t * a.den() * a.den();
    double Td = to_double(T);
    // x a + y (b + c w): |y c| <= sqrt(4T/|D|), then x in a window
    long A = I.a().get_si(), B = I.b().get_si(), C = I.c().get_si();
    long ymax = static_cast<long>(std::sqrt(4 * Td / K.abs_disc()) / C) + 1;
    long count = 0;
    for (long y = -ymax; y <= ymax; ++y) {
        double re = -(B * y + 0.5 * K.trace_omega() * C * y);
        long xlo = static_cast<long>(std::floor((re - std::sqrt(Td) - 1) / A));
        long xhi = static_cast<long>(std::ceil((re + std::sqrt(Td) + 1) / A));
        for (long x = xlo; x <= xhi; ++x)
            if (K.norm(AlgNum(x * A + y * B, y * C)) <= T) ++count;
    }
    return count;
}

long brute_qr(Field const & K, CircleQuery const & Q)
{
    long total = 0;
    for (auto const & rho : reduced_residues(K, Q.q)) {
        AlgNum target = K.mul(Q.alpha, K.mul(rho, rho));
        for (auto const & z : disc_points(K, Q.a, Q.t))
            if (congruent(Q.q, z, target)) ++total;
    }
    return total;
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("disc counts: hand values")
{
    Field K(-1);
    FracIdeal O(Ideal::unit());
    CHECK(disc_count(K, O, Rat(0)) == 1);
    CHECK(disc_count(K, O, Rat(1)) == 5);
    CHECK(disc_count(K, O, Rat(2)) == 9);
    CHECK(disc_count(K, O, Rat(25)) == 81);
    CHECK(disc_count(K, O, Rat(100)) == 317);
    CHECK(disc_count(K, O, Rat(1000000)) == 3141549);
    CHECK(disc_count(K, O, Rat(-1)) == 0);
    Field E(-3);
    CHECK(disc_count(E, FracIdeal(Ideal::unit()), Rat(1)) == 7);
}

TEST_CASE("disc counts against a double loop")
{
    std::mt19937_64 rng(7);
    for (long d : {-1L, -2L, -3L, -5L, -23L, -47L}) {
        Field K(d);
        auto ids = ideals_up_to(K, Int(40));
        for (int n = 0; n < 40; ++n) {
            Ideal const & I = ids[rng() % ids.size()].first;
            Int den = 1 + static_cast<long>(rng() % 3);
            FracIdeal a(I, den);
            Rat t = make_rat(static_cast<long>(rng() % 4000), 1 + static_cast<long>(rng() % 7));
            INFO("d = " << d << ", a = " << a << ", t = " << t);
            CHECK(disc_count(K, a, t) == brute_disc(K, a, t));
            auto pts = disc_points(K, a, t);
            CHECK(Int(static_cast<long>(pts.size())) == disc_count(K, a, t));
            std::set<AlgNum> uniq(pts.begin(), pts.end());
            CHECK(uniq.size() == pts.size());
            for (auto const & z : pts) {
                CHECK(a.contains(z));
                CHECK(K.norm(z) <= t);
            }
        }
    }
}

TEST_CASE("Gauss reduction")
{
    Field K(-23);
    Vec2 u{1000003, 7}, v{999999, 8};
    gauss_reduce(K, u, v);
    CHECK(qform(K, u) <= qform(K, v));
    i128 b = bilinear(K, u, v);
    CHECK((b < 0 ? -b : b) <= qform(K, u));
    // unimodular: same determinant up to sign
    i128 det = u.x * v.y - u.y * v.x;
    CHECK((det == 1000003 * 8 - 7 * 999999 || det == -(1000003 * 8 - 7 * 999999)));
    for (auto const & [I, f] : ideals_up_to(K, Int(60))) {
        Int m = min_norm(K, I);
        Int brute = -1;
        for (auto const & z : disc_points(K, FracIdeal(I), Rat(I.norm() * 8)))
            if (!z.is_zero() && (brute < 0 || K.norm(z) < brute)) brute = K.norm(z).get_num();
        CHECK(m == brute);
    }
}

TEST_CASE("coset counting matches enumeration")
{
    Field K(-7);
    Vec2 c{3, -2}, v1{5, 1}, v2{-1, 4};
    for (i128 T : {0, 1, 10, 77, 1000, 12345}) {
        long enumerated = 0;
        for_each_coset(K, c, v1, v2, T, [&](Vec2 p) {
            CHECK(qform(K, p) <= T);
            ++enumerated;
        });
        long brute = 0;
        for (long m = -200; m <= 200; ++m)
            for (long k = -200; k <= 200; ++k)
                if (qform(K, c + (i128(m) * v1) + (i128(k) * v2)) <= T) ++brute;
        CHECK(count_coset(K, c, v1, v2, T) == brute);
        CHECK(enumerated == brute);
    }
}

TEST_CASE("quadratic-residue circle counts against the naive sum")
{
    struct Case {
        long d;
        std::string a, q, alpha;
        long t;
    };
    for (auto const & cs : {Case{-1, "1", "3", "1", 50}, Case{-1, "2+w", "3", "1", 90}, Case{-1, "1", "3+2w", "w", 200},
                            Case{-5, "1", "3", "1", 60}, Case{-5, "1", "7", "2", 150}, Case{-3, "1", "2", "1", 40},
                            Case{-23, "1", "5", "1", 120}}) {
        Field K(cs.d);
        CircleQuery Q{FracIdeal(principal_ideal(K, parse_algnum(cs.a))), principal_ideal(K, parse_algnum(cs.q)),
                      parse_algnum(cs.alpha), Rat(cs.t)};
        INFO("d = " << cs.d << ", q = " << cs.q << ", alpha = " << cs.alpha);
        validate(K, Q);
        CHECK(qr_circle_count(K, Q) == brute_qr(K, Q));
    }
    Field K(-5);
    Ideal P2 = primes_above(K, Int(2))[0];
    CircleQuery Q{FracIdeal(P2), principal_ideal(K, AlgNum(3)), AlgNum(1), Rat(300)};
    CHECK(qr_circle_count(K, Q) == brute_qr(K, Q));
}

TEST_CASE("circle query hypotheses")
{
    Field K(-1);
    FracIdeal O(Ideal::unit());
    Ideal q3 = principal_ideal(K, AlgNum(3));
    CHECK_THROWS_AS(validate(K, CircleQuery{O, q3, AlgNum(3), Rat(10)}), hypothesis_error);
    CHECK_THROWS_AS(validate(K, CircleQuery{FracIdeal(q3), q3, AlgNum(1), Rat(10)}), hypothesis_error);
    CHECK_THROWS_AS(validate(K, CircleQuery{O, q3, AlgNum(1), Rat(-1)}), hypothesis_error);
    CHECK_NOTHROW(validate(K, CircleQuery{O, q3, AlgNum(1), Rat(10)}));
}

TEST_CASE("crt_unit")
{
    Field K(-5);
    for (auto const & [a, fa] : ideals_up_to(K, Int(30)))
        for (auto const & [q, fq] : ideals_up_to(K, Int(30))) {
            if (!ideal_coprime(a, q)) continue;
            AlgNum e = crt_unit(K, a, q);
            CHECK(a.contains(e));
            CHECK(congruent(q, e, AlgNum(1)));
        }
}

TEST_CASE("main term and error exponent")
{
    Field K(-1);
    CircleQuery Q{FracIdeal(Ideal::unit()), principal_ideal(K, AlgNum(3)), AlgNum(1), Rat(100000)};
    // phi*(3) = 8/9, |D| = 4
    double mt = to_double(qr_circle_main_term(K, Q));
    CHECK(mt == doctest::Approx(2 * M_PI * 8.0 / 9.0 * 100000 / 2.0).epsilon(1e-12));
    auto rep = qr_circle_report(K, Q);
    CHECK(to_double(rep.exact) == doctest::Approx(mt).epsilon(0.01));
    double slope = fit_error_exponent(K, Q, 1e3, 1e6, 12);
    CHECK(slope < 0.5);
}

}
