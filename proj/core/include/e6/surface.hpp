#ifndef E6_SURFACE_HPP
#define E6_SURFACE_HPP

#include <array>
#include <functional>

#include "e6/classgroup.hpp"

namespace e6 {

/// A point of P^3(K) scaled so that its first nonzero coordinate is 1.
struct ProjPoint {
    std::array<AlgNum, 4> x;

    friend bool operator==(ProjPoint const &, ProjPoint const &) = default;
    friend bool operator<(ProjPoint const & p, ProjPoint const & q) { return p.x < q.x; }
};

std::ostream & operator<<(std::ostream & os, ProjPoint const & p);

/// Throws std::invalid_argument if all coordinates vanish.
ProjPoint canonicalize(Field const & K, std::array<AlgNum, 4> const & x);

/// x0^2 x2 + x1 x2^2 + x3^3
AlgNum cubic_form(Field const & K, std::array<AlgNum, 4> const & x);
bool on_surface(Field const & K, ProjPoint const & p);
/// x2 = x3 = 0
bool on_line(ProjPoint const & p);

/// The fractional ideal generated by the coordinates.
FracIdeal content(Field const & K, std::array<AlgNum, 4> const & x);

/// max_i norm(x_i) / N(content); independent of the representative.
Rat height(Field const & K, std::array<AlgNum, 4> const & x);

/// (x0 : x1 : x2 : x3) -> (x0 : x2 : x3)
std::array<AlgNum, 3> project(std::array<AlgNum, 4> const & x);
/// (y0 : y1 : y2) -> (y0 y1^2 : -y0^2 y1 - y2^3 : y1^3 : y1^2 y2); throws on y = 0.
std::array<AlgNum, 4> lift(Field const & K, std::array<AlgNum, 3> const & y);

using PointSink = std::function<void(ProjPoint const &)>;

/*
 * N_{U,H}(B) by direct search.  A point of height <= B off L has a unique
 * (up to units) representative whose content is exactly its class
 * representative C; then every norm(x_i) <= B N(C) and x2 != 0.  Fixing x2
 * to its canonical associate picks one representative per point, so no
 * deduplication is needed.
 */
Int enumerate_N_direct(FieldContext const & ctx, Rat const & B, int threads = 1, PointSink const & sink = {});

} // namespace e6

template <> struct std::hash<e6::ProjPoint> {
    std::size_t operator()(e6::ProjPoint const & p) const noexcept
    {
        std::size_t h = 0;
        for (auto const & c : p.x) h = h * 1000003U ^ std::hash<e6::AlgNum>{}(c);
        return h;
    }
};

#endif
