#include "e6/surface.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <ostream>
#include <thread>

#include "e6/lattice.hpp"

namespace e6 {

std::ostream & operator<<(std::ostream & os, ProjPoint const & p)
{
    return os << "(" << alg_string(p.x[0]) << " : " << alg_string(p.x[1]) << " : " << alg_string(p.x[2]) << " : "
              << alg_string(p.x[3]) << ")";
}

ProjPoint canonicalize(Field const & K, std::array<AlgNum, 4> const & x)
{
    for (int i = 0; i < 4; ++i) {
        if (x[i].is_zero()) continue;
        ProjPoint p;
        for (int j = 0; j < 4; ++j) p.x[j] = K.div(x[j], x[i]);
        return p;
    }
    throw std::invalid_argument("all coordinates are zero");
}

AlgNum cubic_form(Field const & K, std::array<AlgNum, 4> const & x)
{
    AlgNum a = K.mul(K.mul(x[0], x[0]), x[2]);
    AlgNum b = K.mul(x[1], K.mul(x[2], x[2]));
    AlgNum c = K.pow(x[3], 3);
    return K.add(K.add(a, b), c);
}

bool on_surface(Field const & K, ProjPoint const & p)
{
    return cubic_form(K, p.x).is_zero();
}

bool on_line(ProjPoint const & p)
{
    return p.x[2].is_zero() && p.x[3].is_zero();
}

FracIdeal content(Field const & K, std::array<AlgNum, 4> const & x)
{
    FracIdeal c(Ideal::zero());
    for (auto const & xi : x) c = frac_add(c, frac_principal(K, xi));
    return c;
}

Rat height(Field const & K, std::array<AlgNum, 4> const & x)
{
    FracIdeal c = content(K, x);
    if (c.num().is_zero()) throw std::invalid_argument("height of the zero vector");
    Rat m = 0;
    for (auto const & xi : x) m = std::max(m, K.norm(xi));
    return m / c.norm();
}

std::array<AlgNum, 3> project(std::array<AlgNum, 4> const & x)
{
    return {x[0], x[2], x[3]};
}

std::array<AlgNum, 4> lift(Field const & K, std::array<AlgNum, 3> const & y)
{
    if (y[0].is_zero() && y[1].is_zero() && y[2].is_zero()) throw std::invalid_argument("lift of the zero vector");
    AlgNum y11 = K.mul(y[1], y[1]);
    return {
        K.mul(y[0], y11),
        K.sub(K.neg(K.mul(K.mul(y[0], y[0]), y[1])), K.pow(y[2], 3)),
        K.mul(y11, y[1]),
        K.mul(y11, y[2]),
    };
}

namespace {

struct ClassScan {
    Ideal C;
    i128 bound;  // floor(B N(C))
    i128 NC;
    i128 ca, cb, cc;
    std::vector<Vec2> all;   // every element with norm <= bound, zero included
    std::vector<Vec2> canon; // canonical nonzero elements
};

bool contains(ClassScan const & s, Vec2 v)
{
    if (v.y % s.cc != 0) return false;
    return csub(v.x, cmul(v.y / s.cc, s.cb)) % s.ca == 0;
}

// divides z by the integer n exactly, or returns false
bool exact_div(Vec2 z, i128 n, Vec2 & out)
{
    if (z.x % n != 0 || z.y % n != 0) return false;
    out = {z.x / n, z.y / n};
    return true;
}

i128 scan_x2(Field const & K, ClassScan const & s, Vec2 x2, PointSink const * sink,
             std::vector<ProjPoint> * out)
{
    i128 N2 = qform(K, x2);
    Vec2 x2c = vconj(K, x2);
    Vec2 x2c2 = vmul(K, x2c, x2c);
    i128 N2sq = cmul(N2, N2);
    i128 count = 0;
    for (Vec2 x3 : s.all) {
        Vec2 x33 = vmul(K, vmul(K, x3, x3), x3);
        Vec2 tmp;
        if (!exact_div(vmul(K, x33, x2c), N2, tmp)) continue; // x2 | x3^3
        for (Vec2 x0 : s.all) {
            Vec2 num = vmul(K, vmul(K, x0, x0), x2) + x33;
            Vec2 x1;
            if (!exact_div(vmul(K, num, x2c2), N2sq, x1)) continue;
            x1 = {-x1.x, -x1.y};
            if (qform(K, x1) > s.bound || !contains(s, x1)) continue;

            std::array<Vec2, 4> x{x0, x1, x2, x3};
            i128 g = 0;
            for (auto const & v : x) g = gcd128(g, qform(K, v) / s.NC);
            if (g != 1) {
                std::array<AlgNum, 4> xa{to_alg(x0), to_alg(x1), to_alg(x2), to_alg(x3)};
                if (ideal_from_generators(K, std::span<const AlgNum>(xa)) != s.C) continue;
            }
            ++count;
            if (sink && *sink) out->push_back(canonicalize(K, {to_alg(x0), to_alg(x1), to_alg(x2), to_alg(x3)}));
        }
    }
    return count;
}

} // namespace

Int enumerate_N_direct(FieldContext const & ctx, Rat const & B, int threads, PointSink const & sink)
{
    Field const & K = ctx.K;
    if (B < 1) return 0;
    std::vector<ClassScan> scans;
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (auto const & C : ctx.class_reps) {
        ClassScan s;
        s.C = C;
        s.NC = to_i128(C.norm());
        s.bound = to_i128(floor_rat(B * C.norm()));
        s.ca = to_i128(C.a());
        s.cb = to_i128(C.b());
        s.cc = to_i128(C.c());
        auto [v1, v2] = reduced_int_basis(K, C);
        for_each_coset(K, Vec2{}, v1, v2, s.bound, [&](Vec2 p) {
            s.all.push_back(p);
            if ((p.x != 0 || p.y != 0) && K.is_canonical(to_alg(p))) s.canon.push_back(p);
        });
        for (std::size_t i = 0; i < s.canon.size(); ++i) units.emplace_back(scans.size(), i);
        scans.push_back(std::move(s));
    }

    std::vector<i128> counts(units.size(), 0);
    std::vector<std::vector<ProjPoint>> found(units.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                std::size_t u = next.fetch_add(1);
                if (u >= units.size()) break;
                ClassScan const & s = scans[units[u].first];
                counts[u] = scan_x2(K, s, s.canon[units[u].second], &sink, &found[u]);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = units.size();
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto & t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    Int total = 0;
    for (std::size_t u = 0; u < units.size(); ++u) {
        total += to_int(counts[u]);
        if (sink)
            for (auto const & p : found[u]) sink(p);
    }
    return total;
}

} // namespace e6
