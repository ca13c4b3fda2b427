#include "e6/classgroup.hpp"

#include <algorithm>
#include <numeric>

#include "e6/lattice.hpp"

namespace e6 {

std::vector<ReducedForm> reduced_forms(long disc)
{
    std::vector<ReducedForm> out;
    for (long a = 1; 3 * a * a <= -disc; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

Ideal form_ideal(Field const & K, ReducedForm const & f)
{
    // (-b + sqrt(disc))/2 = (-b - t)/2 + omega since sqrt(disc) = 2 omega - t
    long t = K.trace_omega();
    AlgNum g(Rat((-f.b - t) / 2), 1);
    Ideal I = ideal_from_generators(K, {AlgNum(f.a), g});
    if (I.norm() != f.a) throw std::logic_error("form ideal has the wrong norm");
    return I;
}

std::optional<AlgNum> principal_generator(Field const & K, Ideal const & I)
{
    if (I.is_zero()) return AlgNum(0);
    auto b = I.basis();
    gauss_reduce(K, b[0], b[1]);
    if (K.norm(b[0]) != Rat(I.norm())) return std::nullopt;
    return b[0];
}

namespace {

std::size_t class_index(FieldContext const & ctx, FracIdeal const & I, AlgNum * witness)
{
    Field const & K = ctx.K;
    for (std::size_t k = 0; k < ctx.class_reps.size(); ++k) {
        Ideal const & R = ctx.class_reps[k];
        // I R^-1 = num conj(R) / (den N(R))
        Ideal J = ideal_mul(K, I.num(), ideal_conj(K, R));
        if (auto g = principal_generator(K, J)) {
            if (witness) *witness = K.scale(*g, Rat(1) / (I.den() * R.norm()));
            return k;
        }
    }
    throw std::logic_error("ideal lies in no class");
}

} // namespace

ClassOf ideal_class_of(FieldContext const & ctx, FracIdeal const & I)
{
    if (I.num().is_zero()) throw std::domain_error("class of the zero ideal");
    ClassOf r{0, AlgNum(1)};
    r.index = class_index(ctx, I, &r.witness);
    return r;
}

FieldContext make_field(long d, RepChoice choice)
{
    FieldContext ctx(d);
    Field const & K = ctx.K;
    long t = K.trace_omega();
    ctx.different = principal_ideal(K, AlgNum(Rat(-t), 2));
    for (auto const & f : reduced_forms(K.disc())) ctx.class_reps.push_back(form_ideal(K, f));
    std::sort(ctx.class_reps.begin(), ctx.class_reps.end());
    ctx.h = static_cast<long>(ctx.class_reps.size());
    ctx.choice = choice;

    if (choice == RepChoice::alternate) {
        std::vector<Ideal> alt(ctx.class_reps.size());
        std::vector<bool> found(ctx.class_reps.size(), false);
        std::size_t missing = alt.size();
        for (Int bound = 16; missing > 0; bound *= 4) {
            for (auto const & [I, f] : ideals_up_to(K, bound)) {
                std::size_t k = class_index(ctx, FracIdeal(I), nullptr);
                if (found[k] || I == ctx.class_reps[k]) continue;
                alt[k] = I;
                found[k] = true;
                --missing;
            }
        }
        ctx.class_reps = std::move(alt);
    }
    return ctx;
}

} // namespace e6
