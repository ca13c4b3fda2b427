#include <doctest.h>

#include <cmath>
#include <complex>

#include "e6/expsums.hpp"

using namespace e6;

namespace {

std::complex<double> direct_sum(Field const & K, Ideal const & q, AlgNum const & w, bool units_only)
{
    std::complex<double> s = 0;
    for (auto const & beta : residues(q)) {
        if (units_only && !element_coprime(K, beta, q)) continue;
        double x = to_double(K.trace(K.mul(w, K.mul(beta, beta))));
        s += std::polar(1.0, 2 * M_PI * x);
    }
    return s;
}

std::complex<double> to_cd(Complex const & z) { return {to_double(z.real()), to_double(z.imag())}; }

} // namespace

TEST_SUITE("expsums") {

TEST_CASE("hand values")
{
    FieldContext ctx = make_field(-1);
    Field const & K = ctx.K;
    // the trivial modulus has one term
    CHECK(to_cd(quad_exp_sum(ctx, {Ideal::unit(), AlgNum(0), false})) == std::complex<double>(1, 0));
    // q = (2), w = 1/4: Tr(beta^2 / 4) = (x^2 - y^2) / 2 over x, y mod 2 cancels
    auto s = to_cd(quad_exp_sum(ctx, {principal_ideal(K, AlgNum(2)), AlgNum(Rat(1, 4)), false}));
    CHECK(std::abs(s) < 1e-12);
    // q = (3), w = 1/3: G(2) G(-2) over F_3 with G(1) = i sqrt 3, so 3
    s = to_cd(quad_exp_sum(ctx, {principal_ideal(K, AlgNum(3)), AlgNum(Rat(1, 3)), false}));
    CHECK(s.real() == doctest::Approx(3).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-12);
    // w in q^-1 D^-1 times q: every summand is 1
    s = to_cd(quad_exp_sum(ctx, {principal_ideal(K, AlgNum(3)), AlgNum(Rat(1, 2)), false}));
    CHECK(s.real() == doctest::Approx(9));
    s = to_cd(quad_exp_sum(ctx, {principal_ideal(K, AlgNum(3)), AlgNum(Rat(1, 2)), true}));
    CHECK(s.real() == doctest::Approx(8));
}

TEST_CASE("angle maps against direct complex sums")
{
    for (long d : {-1L, -2L, -3L, -5L, -7L}) {
        FieldContext ctx = make_field(d);
        Field const & K = ctx.K;
        for (auto const & [q, f] : ideals_up_to(K, Int(50))) {
            FracIdeal dual = dual_tr(ctx, FracIdeal(q));
            auto basis = dual.basis();
            for (long i = 0; i < 3; ++i)
                for (long j = 0; j < 3; ++j) {
                    AlgNum w = K.add(K.scale(basis[0], Rat(i)), K.scale(basis[1], Rat(j)));
                    for (bool units : {false, true}) {
                        ExpSumQuery Q{q, w, units};
                        INFO("d = " << d << ", q = " << q << ", w = " << w << ", units " << units);
                        auto got = to_cd(quad_exp_sum(ctx, Q));
                        auto want = direct_sum(K, q, w, units);
                        CHECK(std::abs(got - want) < 1e-9 * (1 + q.norm().get_d()));
                        long total = 0;
                        for (auto const & [r, m] : angle_multiset(K, q, w, units)) {
                            CHECK(r >= 0);
                            CHECK(r < 1);
                            total += m;
                        }
                        CHECK(Int(total) == (units ? euler_phi(K, q) : q.norm()));
                    }
                }
        }
    }
}

TEST_CASE("Moebius inversion of the unit-restricted sum")
{
    for (long d : {-1L, -5L, -23L}) {
        FieldContext ctx = make_field(d);
        Field const & K = ctx.K;
        for (auto const & [q, f] : ideals_up_to(K, Int(80))) {
            FracIdeal dual = dual_tr(ctx, FracIdeal(q));
            AlgNum w = dual.basis()[1];
            auto direct = angle_multiset(K, q, w, true);
            auto inverted = mobius_angle_map(K, q, w);
            // zero multiplicities may remain after cancellation
            std::erase_if(inverted, [](auto const & e) { return e.second == 0; });
            INFO("d = " << d << ", q = " << q);
            CHECK(direct == inverted);
        }
    }
}

TEST_CASE("hypotheses")
{
    FieldContext ctx = make_field(-1);
    Ideal q2 = principal_ideal(ctx.K, AlgNum(2));
    CHECK_THROWS_AS(validate(ctx, {q2, AlgNum(Rat(1, 8)), false}), hypothesis_error);
    CHECK_NOTHROW(validate(ctx, {q2, AlgNum(Rat(1, 4)), false}));
    CHECK(dual_tr(ctx, FracIdeal(q2)) == FracIdeal(Ideal::unit(), 4));
}

TEST_CASE("bound report")
{
    FieldContext ctx = make_field(-5);
    Ideal q = principal_ideal(ctx.K, AlgNum(21));
    AlgNum w = dual_tr(ctx, FracIdeal(q)).basis()[1];
    auto rep = exp_sum_bound_report(ctx, {q, w, false});
    CHECK(to_double(rep.bound) > 0);
    CHECK(to_double(rep.ratio) == doctest::Approx(std::abs(to_cd(rep.value)) / to_double(rep.bound)));
}

}
