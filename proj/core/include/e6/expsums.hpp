#ifndef E6_EXPSUMS_HPP
#define E6_EXPSUMS_HPP

#include <complex>
#include <map>
#include <vector>

#include "e6/classgroup.hpp"

namespace e6 {

using Complex = std::complex<Real>;

/// a^-1 D^-1, the dual of a under the trace pairing.
FracIdeal dual_tr(FieldContext const & ctx, FracIdeal const & a);

/// Representatives of big / small for fractional ideals small within big.
std::vector<AlgNum> coset_reps(FracIdeal const & big, FracIdeal const & small);

struct ExpSumQuery {
    Ideal q;
    AlgNum w;
    bool units_only = false;
};

/// Throws hypothesis_error unless w lies in dual_tr(q) and every summand
/// is invariant under 20 deterministic shifts of beta by elements of q.
void validate(FieldContext const & ctx, ExpSumQuery const & query);

/// Multiplicity of each angle Tr(w beta^2) mod 1 over beta mod q.
using AngleMap = std::map<Rat, long>;

AngleMap angle_multiset(Field const & K, Ideal const & q, AlgNum const & w, bool units_only);

/// sum of mult * e^(2 pi i r); r in {0, 1/4, 1/2, 3/4} evaluated exactly.
Complex sum_angles(AngleMap const & angles);

Complex quad_exp_sum(FieldContext const & ctx, ExpSumQuery const & query);

struct ExpSumReport {
    Complex value;
    FracIdeal gcd; // w q D + q
    Real bound;    // N(gcd)^(1/2 - eps) N q^(1/2 + 2 eps)
    Real ratio;
};

ExpSumReport exp_sum_bound_report(FieldContext const & ctx, ExpSumQuery const & query, double eps0 = 0.05);

/// The unit-restricted angle map rebuilt by inclusion-exclusion over the
/// divisors a of q: sum mu(a) * (angles of beta in a, beta mod q).
AngleMap mobius_angle_map(Field const & K, Ideal const & q, AlgNum const & w);

} // namespace e6

#endif
