#include "e6/expsums.hpp"

#include <boost/math/constants/constants.hpp>

namespace e6 {

namespace {

FracIdeal inverse_different(FieldContext const & ctx)
{
    return frac_inverse(ctx.K, FracIdeal(ctx.different));
}

Rat frac_part(Rat const & r)
{
    return r - Rat(floor_rat(r));
}

} // namespace

FracIdeal dual_tr(FieldContext const & ctx, FracIdeal const & a)
{
    return frac_mul(ctx.K, frac_inverse(ctx.K, a), inverse_different(ctx));
}

std::vector<AlgNum> coset_reps(FracIdeal const & big, FracIdeal const & small)
{
    Int m = lcm(big.den(), small.den());
    auto scaled = [&m](FracIdeal const & X) {
        Int k = m / X.den();
        Ideal const & n = X.num();
        return std::make_pair(n, k);
    };
    auto [bn, bk] = scaled(big);
    auto [sn, sk] = scaled(small);
    // m*small has HNF (sk a, sk b, sk c); walk its fundamental box
    Int sa = sn.a() * sk;
    Int sc = sn.c() * sk;
    std::vector<AlgNum> out;
    for (Int y = 0; y < sc; ++y) {
        for (Int x = 0; x < sa; ++x) {
            // z in m*big iff z/bk in bn
            if (x % bk != 0 || y % bk != 0) continue;
            if (!bn.contains(AlgNum(Rat(x / bk), Rat(y / bk)))) continue;
            out.push_back(AlgNum(make_rat(x, m), make_rat(y, m)));
        }
    }
    return out;
}

AngleMap angle_multiset(Field const & K, Ideal const & q, AlgNum const & w, bool units_only)
{
    AngleMap out;
    auto betas = units_only ? reduced_residues(K, q) : residues(q);
    for (auto const & beta : betas) ++out[frac_part(K.trace(K.mul(w, K.mul(beta, beta))))];
    return out;
}

Complex sum_angles(AngleMap const & angles)
{
    Real re = 0;
    Real im = 0;
    Real two_pi = 2 * boost::math::constants::pi<Real>();
    for (auto const & [r, mult] : angles) {
        if (mult == 0) continue;
        Real c;
        Real s;
        if (r == 0) {
            c = 1, s = 0;
        } else if (r == Rat(1, 4)) {
            c = 0, s = 1;
        } else if (r == Rat(1, 2)) {
            c = -1, s = 0;
        } else if (r == Rat(3, 4)) {
            c = 0, s = -1;
        } else {
            Real x = two_pi * to_real(r);
            c = cos(x);
            s = sin(x);
        }
        re += c * mult;
        im += s * mult;
    }
    return {re, im};
}

void validate(FieldContext const & ctx, ExpSumQuery const & query)
{
    Field const & K = ctx.K;
    if (query.q.is_zero()) throw hypothesis_error("the modulus q must be nonzero");
    if (!dual_tr(ctx, FracIdeal(query.q)).contains(query.w))
        throw hypothesis_error("w is not in the trace dual of q");
    auto res = residues(query.q);
    auto qb = query.q.basis();
    for (int i = 0; i < 20; ++i) {
        AlgNum const & beta = res[static_cast<std::size_t>(i * 7919) % res.size()];
        AlgNum rho(Rat(i % 5 - 2), Rat(i % 3 - 1 + i / 7));
        AlgNum shifted = K.add(beta, K.mul(rho, qb[static_cast<std::size_t>(i) % 2]));
        Rat r0 = K.trace(K.mul(query.w, K.mul(beta, beta)));
        Rat r1 = K.trace(K.mul(query.w, K.mul(shifted, shifted)));
        if (Rat(r1 - r0).get_den() != 1) throw hypothesis_error("summand is not well defined modulo q");
    }
}

Complex quad_exp_sum(FieldContext const & ctx, ExpSumQuery const & query)
{
    validate(ctx, query);
    return sum_angles(angle_multiset(ctx.K, query.q, query.w, query.units_only));
}

ExpSumReport exp_sum_bound_report(FieldContext const & ctx, ExpSumQuery const & query, double eps0)
{
    Field const & K = ctx.K;
    ExpSumReport r;
    r.value = quad_exp_sum(ctx, query);
    FracIdeal wqd = frac_mul(K, frac_mul(K, frac_principal(K, query.w), FracIdeal(query.q)), FracIdeal(ctx.different));
    r.gcd = frac_add(wqd, FracIdeal(query.q));
    Real e(eps0);
    r.bound = pow(to_real(r.gcd.norm()), Real(0.5) - e) * pow(to_real(query.q.norm()), Real(0.5) + 2 * e);
    r.ratio = abs(r.value) / r.bound;
    return r;
}

AngleMap mobius_angle_map(Field const & K, Ideal const & q, AlgNum const & w)
{
    AngleMap out;
    auto res = residues(q);
    for (auto const & a : divisors(K, q)) {
        int mu = mobius(K, a);
        if (mu == 0) continue;
        for (auto const & beta : res) {
            if (!a.contains(beta)) continue;
            out[frac_part(K.trace(K.mul(w, K.mul(beta, beta))))] += mu;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace e6
