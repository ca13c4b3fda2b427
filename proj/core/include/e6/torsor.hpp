#ifndef E6_TORSOR_HPP
#define E6_TORSOR_HPP

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "e6/classgroup.hpp"

namespace e6 {

/*
 * Variables are numbered 1..10 as in the torsor equation
 *
 *   eta1^2 eta3 eta8^3 + eta2 eta9^2 + eta4^2 eta5 eta7^3 eta10 = 0;
 *
 * index 0 of every array below is unused.
 */

inline constexpr std::array<std::pair<int, int>, 12> torsor_edges{{
    {1, 3}, {1, 8}, {2, 6}, {2, 9}, {3, 6}, {4, 5}, {4, 7}, {5, 6}, {7, 10}, {8, 9}, {8, 10}, {9, 10},
}};

bool adjacent(int j, int k);
/// Pairs j < k of distinct non-adjacent vertices.
std::vector<std::pair<int, int>> non_edges();

/// Indices into FieldContext::class_reps for C_0..C_6.
using ClassTuple = std::array<std::size_t, 7>;

struct TorsorContext {
    ClassTuple C{};
    std::array<FracIdeal, 11> O; // O[1..10]
    Rat u;                       // N(C_0^3 C_1^-1 ... C_6^-1)
};

TorsorContext make_torsor_context(FieldContext const & ctx, ClassTuple const & C);
/// All h^7 class tuples in lexicographic order.
std::vector<ClassTuple> all_class_tuples(FieldContext const & ctx);

using Eta = std::array<AlgNum, 11>;

/// The four height conditions on eta[1..9] with bound B; throws
/// std::domain_error if eta4 eta5 eta7 = 0.
bool region_contains(Field const & K, Eta const & eta, Rat const & bound);

/// eta10 from the torsor equation, if it lies in O_10.
std::optional<AlgNum> solve_eta10(Field const & K, TorsorContext const & tc, Eta const & eta);

/// I_j = eta_j O_j^-1 for j = 1..10 (the zero ideal for eta_j = 0).
std::array<Ideal, 11> divisor_ideals(Field const & K, TorsorContext const & tc, Eta const & eta);

bool coprimality_ok(Field const & K, TorsorContext const & tc, Eta const & eta);

/// Product over primes of the local indicator on I[1..8]: 1 iff every
/// prime divides at most one I_j or exactly an adjacent pair.
int theta0(Field const & K, std::array<Ideal, 9> const & I);

/// Membership in M_C(B), checked condition by condition.
bool in_M(Field const & K, TorsorContext const & tc, Eta const & eta, Rat const & B);

/// The map to the surface.
std::array<AlgNum, 4> psi(Field const & K, Eta const & eta);

using TorsorSink = std::function<void(TorsorContext const &, Eta const &)>;

/*
 * Points of M_C(B).  With all_units the full set is enumerated.  Otherwise
 * eta1..eta7 run over canonical associates only: scaling eta1..eta7 by
 * units permutes the admissible (eta8, eta9) bijectively, so this counts
 * |M_C(B)| / w^7 exactly.
 */
Int enumerate_M(FieldContext const & ctx, TorsorContext const & tc, Rat const & B, bool all_units,
                TorsorSink const & sink = {});

/// N_{U,H}(B) through the torsor: sum over class tuples of |M_C(B)| / w^7.
/// The sink sees points in a deterministic order regardless of threads.
Int torsor_count_N(FieldContext const & ctx, Rat const & B, int threads = 1, TorsorSink const & sink = {});

/// The same total from full unit orbits, divided by w^7; throws
/// std::logic_error if the division is not exact.
Int torsor_count_N_full(FieldContext const & ctx, Rat const & B);

} // namespace e6

#endif
