#ifndef E6_CONSTANTS_HPP
#define E6_CONSTANTS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "e6/classgroup.hpp"

namespace e6 {

/// A Monte-Carlo estimate: mean of `samples` weights and its standard error.
struct Estimate {
    double value = 0;
    double sigma = 0;
    long samples = 0;
};

/// Inverse-variance weighted mean of independent estimates.
Estimate combine(Estimate const & a, Estimate const & b);

/* --- the polytope constant --------------------------------------------- */

/// vol{u >= 0 : sum a_i u_i <= 1} = 1 / (n! prod a_i).
Rat simplex_volume(std::vector<long> const & a);

/// Anticanonical exponents of E1, E3, ..., E7 (E2 is dropped).
inline std::vector<long> const anticanonical_exponents{2, 4, 4, 5, 6, 3};

/// simplex_volume(anticanonical_exponents) / 3 = 1/6220800; throws
/// std::logic_error if the computation disagrees.
Rat alpha_exact();

/// Hit-or-miss volume of the same simplex inside its bounding box.
Estimate simplex_volume_mc(std::vector<long> const & a, std::uint64_t seed, long samples, int threads = 1);

/* --- the Euler product ------------------------------------------------- */

/// (1 - 1/N)^7 (1 + 7/N + 1/N^2).
Real euler_factor(Int const & norm);

struct EulerReport {
    long cutoff = 0;
    Real value;  // product over prime ideals of norm <= cutoff
    double tail; // |log(full product / value)| <= tail
    Real lo, hi; // value * exp(-tail), value * exp(tail)
    long primes = 0;
};

/// Rigorous: |log factor(N)| <= 29 / N^2 for every N >= 2.
EulerReport euler_product(Field const & K, long cutoff);

/* --- the archimedean density ------------------------------------------- */

/// The four defining inequalities of the archimedean region.
bool omega_region_contains(std::complex<double> z0, std::complex<double> z1, std::complex<double> z2);

/*
 * (1/2) * integral of dA(w) / |w| over D(c, rho) intersected with D(0, R),
 * for a centre at distance c from 0 (Euclidean radii).  This is the area of
 * {z : z^2 in that set}.
 */
double root_slice_area(double c, double rho, double R);

/// Plain importance-sampled estimate over (z0, z1, z2) in C^3.
Estimate omega_plain(std::uint64_t seed, long samples, int threads = 1);
/// z0-slices integrated by quadrature, Monte Carlo over (z1, z2).
Estimate omega_slice(std::uint64_t seed, long samples, int threads = 1);
/// Nested deterministic quadrature over |z1|, |z2|; a reference value.
double omega_quadrature(double tol = 1e-6);

struct OmegaReport {
    std::uint64_t seed = 0;
    long budget = 0;
    Estimate plain;
    Estimate slice;
    Estimate value; // combined
    double z_score = 0; // |plain - slice| / combined sigma
};

/// Both estimators with `budget` samples each; throws std::invalid_argument
/// for budget < 10^5.
OmegaReport omega_infinity(std::uint64_t seed, long budget, int threads = 1);

/* --- the leading constant ---------------------------------------------- */

struct FieldFactor {
    Rat rational; // (2pi)^7 h^7 / (sqrt|disc|^9 w^7) = rational * pi^7 / sqrt|disc|
    Real value;
    std::string symbolic;
};

FieldFactor field_factor(FieldContext const & ctx);

struct ConstantReport {
    long d = 0;
    long disc = 0;
    long h = 0;
    long w = 0;
    Rat alpha;
    FieldFactor field;
    EulerReport euler;
    OmegaReport omega;
    double c_SH = 0;
    double sigma = 0; // first-order propagation of the omega error and the Euler tail
};

ConstantReport c_SH(FieldContext const & ctx, std::uint64_t seed, long budget, long euler_cutoff = 100000,
                    int threads = 1);

/* --- region volumes ---------------------------------------------------- */

/// The height conditions on complex (eta1, ..., eta9) (index 0 unused),
/// evaluated in floating point.
bool region_contains_approx(std::array<std::complex<double>, 10> const & eta, double B);

/// Volume over eta1..eta9 with |eta1|, |eta3|, ..., |eta7| >= 1 and the
/// extra condition |eta1^2 eta3^4 eta4^4 eta5^5 eta6^6 eta7^3| <= B.
Estimate v0prime(double B, std::uint64_t seed, long samples, int threads = 1);
/// Volume over eta1..eta9 with |eta1|, ..., |eta7| >= 1.
Estimate v0(double B, std::uint64_t seed, long samples, int threads = 1);

/// t = (unused, t1, ..., t8); deterministic by slice quadrature.
double v9(std::array<double, 9> const & t, double B);
Estimate v9_mc(std::array<double, 9> const & t, double B, std::uint64_t seed, long samples);

/// t = (unused, t1, ..., t7); pi times the integral of v9 over t8.
double v98_quadrature(std::array<double, 8> const & t, double B, double tol = 1e-9);
Estimate v98_mc(std::array<double, 8> const & t, double B, std::uint64_t seed, long samples, int threads = 1);

enum class VolumeKind { V0, V0prime, V9, V98 };

/// Monte-Carlo estimate of one of the volumes; `t` holds t1.. as needed.
Estimate region_volume(VolumeKind kind, std::vector<double> const & t, double B, std::uint64_t seed, long budget,
                       int threads = 1);

struct Lemma61Report {
    double B = 0;
    Rat alpha;
    Estimate omega;
    Estimate v0prime;
    double lhs = 0;   // pi^7 alpha omega B (log B)^6
    double rhs = 0;   // 4 V0'(B)
    double ratio = 0; // rhs / lhs
    double sigma = 0;
    bool pass = false; // |ratio - 1| < 3 sigma
};

/// Throws std::invalid_argument for B < 10.
Lemma61Report lemma61_check(double B, std::uint64_t seed, long budget, int threads = 1);
/// The same against an already computed estimate of omega.
Lemma61Report lemma61_check(double B, Estimate const & omega, std::uint64_t seed, long budget, int threads = 1);

struct PredictionRow {
    Rat B;
    Int count;
    double predicted = 0; // c_SH B (log B)^6
    double ratio = 0;
};

/// Counts through the torsor; c_SH from `constants`.
std::vector<PredictionRow> prediction_table(FieldContext const & ctx, ConstantReport const & constants,
                                            std::vector<Rat> const & bounds, int threads = 1);

} // namespace e6

#endif
