#include "e6/torsor.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "e6/lattice.hpp"

namespace e6 {

bool adjacent(int j, int k)
{
    for (auto [a, b] : torsor_edges)
        if ((a == j && b == k) || (a == k && b == j)) return true;
    return false;
}

std::vector<std::pair<int, int>> non_edges()
{
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= 10; ++j)
        for (int k = j + 1; k <= 10; ++k)
            if (!adjacent(j, k)) out.emplace_back(j, k);
    return out;
}

namespace {

// exponent of C_i in O_j
constexpr int kOExp[11][7] = {
    {0, 0, 0, 0, 0, 0, 0},
    {0, 1, -1, 0, 0, 0, 0},    // O_1 = C1 C2^-1
    {1, -1, -1, -1, 0, 0, 0},  // O_2 = C0 C1^-1 C2^-1 C3^-1
    {0, 0, 1, -1, 0, 0, 0},    // O_3 = C2 C3^-1
    {0, 0, 0, 0, 0, 1, -1},    // O_4 = C5 C6^-1
    {0, 0, 0, 0, 1, -1, 0},    // O_5 = C4 C5^-1
    {0, 0, 0, 1, -1, 0, 0},    // O_6 = C3 C4^-1
    {0, 0, 0, 0, 0, 0, 1},     // O_7 = C6
    {1, -1, 0, 0, 0, 0, 0},    // O_8 = C0 C1^-1
    {1, 0, 0, 0, 0, 0, 0},     // O_9 = C0
    {3, -1, -1, -1, -1, -1, -1}, // O_10
};

// exponents of eta_j in the four height conditions
constexpr int kE1[11] = {0, 2, 3, 4, 4, 5, 6, 3, 0, 0, 0};
constexpr int kE2[11] = {0, 2, 2, 3, 2, 3, 4, 1, 1, 0, 0};
constexpr int kE3[11] = {0, 1, 2, 2, 1, 2, 3, 0, 0, 1, 0};

bool allowed_set(std::vector<int> const & J)
{
    if (J.size() <= 1) return true;
    return J.size() == 2 && adjacent(J[0], J[1]) && J[0] <= 8 && J[1] <= 8;
}

} // namespace

TorsorContext make_torsor_context(FieldContext const & ctx, ClassTuple const & C)
{
    Field const & K = ctx.K;
    TorsorContext tc;
    tc.C = C;
    for (int j = 1; j <= 10; ++j) {
        FracIdeal O;
        for (int i = 0; i < 7; ++i) {
            if (kOExp[j][i] == 0) continue;
            O = frac_mul(K, O, frac_pow(K, FracIdeal(ctx.class_reps.at(C[i])), kOExp[j][i]));
        }
        tc.O[j] = O;
    }
    Rat u = 1;
    for (int i = 0; i < 7; ++i) {
        Rat n(ctx.class_reps[C[i]].norm());
        u *= i == 0 ? Rat(n * n * n) : Rat(1 / n);
    }
    tc.u = u;
    return tc;
}

std::vector<ClassTuple> all_class_tuples(FieldContext const & ctx)
{
    std::vector<ClassTuple> out;
    auto h = static_cast<std::size_t>(ctx.h);
    ClassTuple C{};
    for (;;) {
        out.push_back(C);
        int i = 6;
        while (i >= 0 && ++C[static_cast<std::size_t>(i)] == h) C[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return out;
}

bool region_contains(Field const & K, Eta const & eta, Rat const & bound)
{
    if (eta[4].is_zero() || eta[5].is_zero() || eta[7].is_zero())
        throw std::domain_error("eta4 eta5 eta7 must be nonzero");
    std::array<Rat, 11> n;
    for (int j = 1; j <= 9; ++j) n[j] = K.norm(eta[j]);
    auto monomial = [&](int const * e, int last) {
        Rat p = 1;
        for (int j = 1; j <= last; ++j)
            for (int k = 0; k < e[j]; ++k) p *= n[j];
        return p;
    };
    if (monomial(kE1, 9) > bound) return false;
    if (monomial(kE2, 9) > bound) return false;
    if (monomial(kE3, 9) > bound) return false;
    AlgNum P = K.add(K.mul(K.mul(K.mul(eta[1], eta[1]), eta[3]), K.pow(eta[8], 3)),
                     K.mul(eta[2], K.mul(eta[9], eta[9])));
    AlgNum E = K.mul(K.mul(K.mul(eta[4], eta[4]), eta[5]), K.pow(eta[7], 3));
    return K.norm(P) <= bound * K.norm(E);
}

std::optional<AlgNum> solve_eta10(Field const & K, TorsorContext const & tc, Eta const & eta)
{
    AlgNum P = K.add(K.mul(K.mul(K.mul(eta[1], eta[1]), eta[3]), K.pow(eta[8], 3)),
                     K.mul(eta[2], K.mul(eta[9], eta[9])));
    AlgNum E = K.mul(K.mul(K.mul(eta[4], eta[4]), eta[5]), K.pow(eta[7], 3));
    AlgNum e10 = K.neg(K.div(P, E));
    if (!tc.O[10].contains(e10)) return std::nullopt;
    return e10;
}

std::array<Ideal, 11> divisor_ideals(Field const & K, TorsorContext const & tc, Eta const & eta)
{
    std::array<Ideal, 11> I;
    for (int j = 1; j <= 10; ++j) {
        if (eta[j].is_zero()) continue;
        FracIdeal f = frac_div(K, frac_principal(K, eta[j]), tc.O[j]);
        if (!f.is_integral()) throw std::invalid_argument("eta_j is not in O_j");
        I[j] = f.num();
    }
    return I;
}

bool coprimality_ok(Field const & K, TorsorContext const & tc, Eta const & eta)
{
    auto I = divisor_ideals(K, tc, eta);
    for (auto [j, k] : non_edges())
        if (!ideal_add(I[j], I[k]).is_unit()) return false;
    return true;
}

int theta0(Field const & K, std::array<Ideal, 9> const & I)
{
    std::vector<int> zeros;
    std::map<Ideal, std::vector<int>> by_prime;
    for (int j = 1; j <= 8; ++j) {
        if (I[j].is_zero()) {
            zeros.push_back(j);
            continue;
        }
        for (auto const & [P, e] : factor(K, I[j])) by_prime[P].push_back(j);
    }
    // infinitely many primes divide exactly the zero ideals
    if (!allowed_set(zeros)) return 0;
    for (auto const & [P, js] : by_prime) {
        std::vector<int> J = zeros;
        J.insert(J.end(), js.begin(), js.end());
        std::sort(J.begin(), J.end());
        if (!allowed_set(J)) return 0;
    }
    return 1;
}

bool in_M(Field const & K, TorsorContext const & tc, Eta const & eta, Rat const & B)
{
    for (int j = 1; j <= 10; ++j) {
        if (j <= 7 && eta[j].is_zero()) return false;
        if (!tc.O[j].contains(eta[j])) return false;
    }
    if (!region_contains(K, eta, tc.u * B)) return false;
    AlgNum lhs = K.add(K.add(K.mul(K.mul(K.mul(eta[1], eta[1]), eta[3]), K.pow(eta[8], 3)),
                             K.mul(eta[2], K.mul(eta[9], eta[9]))),
                       K.mul(K.mul(K.mul(K.mul(eta[4], eta[4]), eta[5]), K.pow(eta[7], 3)), eta[10]));
    if (!lhs.is_zero()) return false;
    return coprimality_ok(K, tc, eta);
}

std::array<AlgNum, 4> psi(Field const & K, Eta const & e)
{
    auto mono = [&](std::array<int, 11> const & ex) {
        AlgNum p(1);
        for (int j = 1; j <= 10; ++j)
            if (ex[j] != 0) p = K.mul(p, K.pow(e[j], static_cast<unsigned>(ex[j])));
        return p;
    };
    return {
        mono({0, 1, 2, 2, 1, 2, 3, 0, 0, 1, 0}),
        e[10],
        mono({0, 2, 3, 4, 4, 5, 6, 3, 0, 0, 0}),
        mono({0, 2, 2, 3, 2, 3, 4, 1, 1, 0, 0}),
    };
}

/* --- enumeration ------------------------------------------------------- */

namespace {

i128 ipow(i128 b, int e)
{
    i128 r = 1;
    for (int i = 0; i < e; ++i) r = cmul(r, b);
    return r;
}

struct Elem {
    Vec2 y;
    i128 norm;
};

struct Slot {
    Ideal J;
    i128 d = 1;
    Vec2 v1, v2;
    i128 ja = 1, jb = 0, jc = 1;
    i128 min_norm = 1;
    i128 NJ = 1;
    std::vector<Elem> elems; // nonzero, ascending norm (variables 1..7 only)
};

constexpr std::array<int, 7> kOrder = {6, 5, 4, 7, 3, 2, 1};

class Enumerator {
  public:
    Enumerator(FieldContext const & ctx, TorsorContext const & tc, Rat const & B, bool all_units)
        : K_(ctx.K), tc_(tc), all_units_(all_units)
    {
        Rat U = tc.u * B;
        for (int j = 1; j <= 10; ++j) {
            Slot & s = slot_[j];
            s.J = tc.O[j].num();
            s.d = to_i128(tc.O[j].den());
            std::tie(s.v1, s.v2) = reduced_int_basis(K_, s.J);
            s.ja = to_i128(s.J.a());
            s.jb = to_i128(s.J.b());
            s.jc = to_i128(s.J.c());
            s.min_norm = qform(K_, s.v1);
            s.NJ = to_i128(s.J.norm());
        }
        Int k1 = 1, k2 = 1, k3 = 1;
        for (int j = 1; j <= 9; ++j) {
            Int d2 = tc.O[j].den() * tc.O[j].den();
            for (int e = 0; e < kE1[j]; ++e) k1 *= d2;
            for (int e = 0; e < kE2[j]; ++e) k2 *= d2;
            for (int e = 0; e < kE3[j]; ++e) k3 *= d2;
        }
        Int d10 = tc.O[10].den();
        if (sgn(U) < 0) U = 0;
        K1_ = to_i128(floor_rat(U * k1));
        K2_ = to_i128(floor_rat(U * k2));
        K3_ = to_i128(floor_rat(U * k3));
        K4_ = to_i128(floor_rat(U * d10 * d10));

        auto d = [&](int j) { return slot_[j].d; };
        M1_ = cmul(cmul(ipow(d(1), 2), d(3)), ipow(d(8), 3));
        M2_ = cmul(d(2), ipow(d(9), 2));
        G_ = cmul(cmul(d(10), ipow(d(4), 2)), cmul(d(5), ipow(d(7), 3)));
        L_ = cmul(M1_, M2_);
        i128 g = gcd128(G_, L_);
        G_ /= g;
        L_ /= g;

        for (auto const & u : K_.units()) units_.push_back(to_vec(u));

        // element lists for eta1..eta7 up to their largest possible norm
        for (int j = 1; j <= 7; ++j) {
            i128 rest = 1;
            for (int i = 1; i <= 7; ++i)
                if (i != j) rest = mul_sat(rest, ipow(slot_[i].min_norm, kE1[i]));
            i128 rmax = rest > K1_ ? 0 : iroot(K1_ / rest, kE1[j]);
            Slot & s = slot_[j];
            for_each_coset(K_, Vec2{}, s.v1, s.v2, rmax, [&](Vec2 p) {
                if (p.x == 0 && p.y == 0) return;
                if (!all_units_ && !canonical(p)) return;
                s.elems.push_back({p, qform(K_, p)});
            });
            std::stable_sort(s.elems.begin(), s.elems.end(), [](Elem const & a, Elem const & b) {
                if (a.norm != b.norm) return a.norm < b.norm;
                if (a.y.x != b.y.x) return a.y.x < b.y.x;
                return a.y.y < b.y.y;
            });
        }
        for (int j = 1; j <= 10; ++j)
            for (int k = 1; k <= 10; ++k) nonadj_[j][k] = j != k && !adjacent(j, k);
    }

    /// Candidates of the outermost variable.
    std::size_t top_count() const
    {
        i128 R = bound_for(0, 1);
        auto const & el = slot_[kOrder[0]].elems;
        std::size_t n = 0;
        while (n < el.size() && el[n].norm <= R) ++n;
        return n;
    }

    i128 run_top(std::size_t idx, TorsorSink const * sink)
    {
        sink_ = sink;
        count_ = 0;
        for (auto & c : cache_) c.reset();
        Elem const & e = slot_[kOrder[0]].elems[idx];
        assign(kOrder[0], e);
        loop(1, ipow(e.norm, kE1[kOrder[0]]));
        return count_;
    }

  private:
    static i128 mul_sat(i128 a, i128 b)
    {
        i128 r;
        if (__builtin_mul_overflow(a, b, &r)) return static_cast<i128>(1) << 120;
        return r;
    }

    bool canonical(Vec2 p) const
    {
        auto key = [&](Vec2 v) { return std::make_pair(2 * v.x + K_.trace_omega() * v.y, v.y); };
        auto best = key(p);
        for (std::size_t i = 1; i < units_.size(); ++i)
            if (key(vmul(K_, units_[i], p)) > best) return false;
        return true;
    }

    // largest admissible norm of the variable at position depth, given the
    // product of assigned cond-1 factors
    i128 bound_for(int depth, i128 assigned) const
    {
        i128 rest = assigned;
        for (int i = depth + 1; i < 7; ++i) rest = mul_sat(rest, ipow(slot_[kOrder[i]].min_norm, kE1[kOrder[i]]));
        if (rest > K1_) return 0;
        return iroot(K1_ / rest, kE1[kOrder[depth]]);
    }

    void assign(int j, Elem const & e)
    {
        y_[j] = e.y;
        n_[j] = e.norm;
        nI_[j] = e.norm / slot_[j].NJ;
        cache_[j].reset();
    }

    void assign_vec(int j, Vec2 y)
    {
        y_[j] = y;
        n_[j] = qform(K_, y);
        nI_[j] = n_[j] / slot_[j].NJ;
        cache_[j].reset();
    }

    Ideal const & ideal(int j)
    {
        if (!cache_[j]) {
            if (n_[j] == 0)
                cache_[j] = Ideal::zero();
            else
                cache_[j] = ideal_quotient(K_, principal_ideal(K_, to_alg(y_[j])), slot_[j].J);
        }
        return *cache_[j];
    }

    bool coprime(int j, int k)
    {
        if (gcd128(nI_[j], nI_[k]) == 1) return true;
        return ideal_add(ideal(j), ideal(k)).is_unit();
    }

    // j against every assigned non-neighbour in `done`
    bool coprime_with(int j, int const * done, int count)
    {
        for (int i = 0; i < count; ++i)
            if (nonadj_[j][done[i]] && !coprime(j, done[i])) return false;
        return true;
    }

    void loop(int depth, i128 assigned)
    {
        if (depth == 7) {
            inner();
            return;
        }
        int j = kOrder[depth];
        i128 R = bound_for(depth, assigned);
        for (Elem const & e : slot_[j].elems) {
            if (e.norm > R) break;
            assign(j, e);
            if (!coprime_with(j, kOrder.data(), depth)) continue;
            loop(depth + 1, cmul(assigned, ipow(e.norm, kE1[j])));
        }
    }

    void inner()
    {
        i128 p2 = 1;
        i128 p3 = 1;
        for (int j = 1; j <= 7; ++j) p2 = cmul(p2, ipow(n_[j], kE2[j]));
        for (int j = 1; j <= 6; ++j) p3 = cmul(p3, ipow(n_[j], kE3[j]));
        i128 T8 = K2_ / p2;
        i128 T9 = K3_ / p3;

        Vec2 E = vmul(K_, vmul(K_, vmul(K_, y_[4], y_[4]), y_[5]), vmul(K_, vmul(K_, y_[7], y_[7]), y_[7]));
        i128 NE = qform(K_, E);
        Vec2 Ec = vconj(K_, E);
        i128 Dv = cmul(L_, NE);
        Vec2 A0 = vmul(K_, vmul(K_, y_[1], y_[1]), y_[3]);
        std::complex<double> ey2 = vembed(K_, y_[2]);
        double r = std::sqrt(static_cast<double>(K4_)) * static_cast<double>(L_) *
                   std::sqrt(static_cast<double>(NE)) /
                   (static_cast<double>(G_) * static_cast<double>(M1_) * std::abs(ey2));

        static constexpr int kDone8[] = {1, 2, 3, 4, 5, 6, 7};
        Slot const & s8 = slot_[8];
        Slot const & s9 = slot_[9];
        for_each_coset(K_, Vec2{}, s8.v1, s8.v2, T8, [&](Vec2 y8) {
            assign_vec(8, y8);
            if (!coprime_with(8, kDone8, 7)) return;
            Vec2 a = vmul(K_, A0, vmul(K_, vmul(K_, y8, y8), y8));
            Vec2 aM = M2_ * a;
            std::complex<double> c = vembed(K_, aM) / (static_cast<double>(M1_) * ey2);

            // y9^2 lies in the disc about -c of radius r
            cands_.clear();
            double ac = std::abs(c);
            double single = ac + r;
            double two = ac > 0 ? 2 * r * r / ac : single + 1;
            double t9 = static_cast<double>(T9);
            auto push = [&](Vec2 v) { cands_.push_back(v); };
            if (two < single && two < t9) {
                std::complex<double> s = std::sqrt(-c);
                double rad = r / std::abs(s);
                for_each_near(K_, s9.v1, s9.v2, s, rad, push);
                for_each_near(K_, s9.v1, s9.v2, -s, rad, push);
                std::sort(cands_.begin(), cands_.end(), [](Vec2 u, Vec2 v) {
                    return u.x != v.x ? u.x < v.x : u.y < v.y;
                });
                cands_.erase(std::unique(cands_.begin(), cands_.end()), cands_.end());
            } else {
                for_each_near(K_, s9.v1, s9.v2, {0, 0}, std::sqrt(std::min(single, t9)), push);
            }
            for (Vec2 y9 : cands_) try_eta9(y9, T9, a, Ec, Dv);
        });
    }

    void try_eta9(Vec2 y9, i128 T9, Vec2 a, Vec2 Ec, i128 Dv)
    {
        i128 n9 = qform(K_, y9);
        if (n9 > T9) return;
        Vec2 P = (M2_ * a) + (M1_ * vmul(K_, y_[2], vmul(K_, y9, y9)));
        Vec2 Z = G_ * vmul(K_, P, Ec);
        if (Z.x % Dv != 0 || Z.y % Dv != 0) return;
        Vec2 y10{-(Z.x / Dv), -(Z.y / Dv)};
        Slot const & s10 = slot_[10];
        if (y10.y % s10.jc != 0) return;
        if (csub(y10.x, cmul(y10.y / s10.jc, s10.jb)) % s10.ja != 0) return;
        if (qform(K_, y10) > K4_) return;

        assign_vec(9, y9);
        static constexpr int kDone9[] = {1, 3, 4, 5, 6, 7};
        if (!coprime_with(9, kDone9, 6)) return;
        assign_vec(10, y10);
        static constexpr int kDone10[] = {1, 2, 3, 4, 5, 6};
        if (!coprime_with(10, kDone10, 6)) return;

        ++count_;
        if (sink_ && *sink_) {
            Eta eta;
            for (int j = 1; j <= 10; ++j) eta[j] = K_.scale(to_alg(y_[j]), make_rat(1, to_int(slot_[j].d)));
            (*sink_)(tc_, eta);
        }
    }

    Field const & K_;
    TorsorContext const & tc_;
    bool all_units_;
    std::array<Slot, 11> slot_;
    std::vector<Vec2> units_;
    i128 K1_ = 0, K2_ = 0, K3_ = 0, K4_ = 0;
    i128 M1_ = 1, M2_ = 1, G_ = 1, L_ = 1;
    bool nonadj_[11][11] = {};

    std::array<Vec2, 11> y_{};
    std::array<i128, 11> n_{};
    std::array<i128, 11> nI_{};
    std::array<std::optional<Ideal>, 11> cache_;
    std::vector<Vec2> cands_;
    TorsorSink const * sink_ = nullptr;
    i128 count_ = 0;
};

struct WorkUnit {
    std::size_t context;
    std::size_t top;
};

// Runs all units; sink output is replayed in unit order.
Int run_units(FieldContext const & ctx, std::vector<TorsorContext> const & tcs, Rat const & B, bool all_units,
              int threads, TorsorSink const & sink)
{
    std::vector<std::unique_ptr<Enumerator>> enums;
    std::vector<WorkUnit> units;
    for (std::size_t c = 0; c < tcs.size(); ++c) {
        enums.push_back(std::make_unique<Enumerator>(ctx, tcs[c], B, all_units));
        std::size_t n = enums.back()->top_count();
        for (std::size_t i = 0; i < n; ++i) units.push_back({c, i});
    }
    if (units.empty()) return 0;

    std::vector<i128> counts(units.size(), 0);
    std::vector<std::vector<std::pair<std::size_t, Eta>>> buffered(sink ? units.size() : 0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    // enumerators carry mutable state, so every extra thread builds its own
    auto worker = [&](std::vector<std::unique_ptr<Enumerator>> & local) {
        try {
            for (;;) {
                std::size_t u = next.fetch_add(1);
                if (u >= units.size()) break;
                auto [c, top] = units[u];
                if (!local[c]) local[c] = std::make_unique<Enumerator>(ctx, tcs[c], B, all_units);
                TorsorSink collect;
                if (sink) collect = [&buffered, u, c](TorsorContext const &, Eta const & e) { buffered[u].emplace_back(c, e); };
                counts[u] = local[c]->run_top(top, sink ? &collect : nullptr);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = units.size();
        }
    };

    int n = std::max(1, threads);
    std::vector<std::vector<std::unique_ptr<Enumerator>>> extra(static_cast<std::size_t>(n - 1));
    std::vector<std::thread> pool;
    for (auto & local : extra) {
        local.resize(tcs.size());
        pool.emplace_back(worker, std::ref(local));
    }
    worker(enums);
    for (auto & t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    Int total = 0;
    for (i128 c : counts) total += to_int(c);
    if (sink)
        for (auto const & buf : buffered)
            for (auto const & [c, e] : buf) sink(tcs[c], e);
    return total;
}

} // namespace

Int enumerate_M(FieldContext const & ctx, TorsorContext const & tc, Rat const & B, bool all_units,
                TorsorSink const & sink)
{
    if (sgn(B) < 0) return 0;
    return run_units(ctx, {tc}, B, all_units, 1, sink);
}

Int torsor_count_N(FieldContext const & ctx, Rat const & B, int threads, TorsorSink const & sink)
{
    if (sgn(B) < 0) return 0;
    std::vector<TorsorContext> tcs;
    for (auto const & C : all_class_tuples(ctx)) tcs.push_back(make_torsor_context(ctx, C));
    return run_units(ctx, tcs, B, false, threads, sink);
}

Int torsor_count_N_full(FieldContext const & ctx, Rat const & B)
{
    if (sgn(B) < 0) return 0;
    std::vector<TorsorContext> tcs;
    for (auto const & C : all_class_tuples(ctx)) tcs.push_back(make_torsor_context(ctx, C));
    Int total = run_units(ctx, tcs, B, true, 1, {});
    Int w7 = 1;
    for (int i = 0; i < 7; ++i) w7 *= ctx.K.unit_count();
    if (total % w7 != 0) throw std::logic_error("sum of |M_C(B)| is not divisible by w^7");
    return total / w7;
}

} // namespace e6
