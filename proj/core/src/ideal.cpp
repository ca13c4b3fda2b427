#include "e6/ideal.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <ostream>

namespace e6 {

namespace {

// omega * (x + y*omega) in coordinates
std::pair<Int, Int> times_omega(Field const & K, Int const & x, Int const & y)
{
    return {-K.norm_omega() * y, x + K.trace_omega() * y};
}

bool lattice_contains(Int const & a, Int const & b, Int const & c, Int const & x, Int const & y)
{
    if (sgn(a) == 0) return sgn(x) == 0 && sgn(y) == 0;
    if (y % c != 0) return false;
    Int k = y / c;
    Int r = x - k * b;
    return r % a == 0;
}

Ideal scale_ideal(Field const & K, Ideal const & I, Int const & k)
{
    if (I.is_zero() || k == 1) return I;
    return Ideal::from_hnf(K, I.a() * k, I.b() * k, I.c() * k);
}

std::pair<Int, Int> integral_coords(AlgNum const & z)
{
    if (!z.is_integral()) throw std::invalid_argument("ideal generator is not integral");
    return {z.a.get_num(), z.b.get_num()};
}

} // namespace

Ideal lattice_to_ideal(std::span<const std::pair<Int, Int>> vectors)
{
    Int A = 0;
    Int px = 0;
    Int py = 0;
    for (auto const & [x, y] : vectors) {
        if (sgn(y) == 0) {
            A = gcd(A, x);
        } else if (sgn(py) == 0) {
            px = x;
            py = y;
        } else {
            Int g;
            Int s;
            Int r;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), py.get_mpz_t(), y.get_mpz_t());
            Int other = (y / g) * px - (py / g) * x;
            Int nx = s * px + r * x;
            Int ny = s * py + r * y;
            px = nx;
            py = ny;
            A = gcd(A, other);
        }
    }
    if (sgn(py) < 0) {
        px = -px;
        py = -py;
    }
    A = abs(A);
    if (sgn(py) == 0 && sgn(A) == 0) return {};
    if (sgn(py) == 0 || sgn(A) == 0) throw std::logic_error("lattice is not of full rank");
    Int b = px % A;
    if (sgn(b) < 0) b += A;
    return Ideal(A, b, py);
}

Ideal Ideal::from_hnf(Field const & K, Int a, Int b, Int c)
{
    if (sgn(a) <= 0 || sgn(c) <= 0 || a % c != 0 || b % c != 0 || sgn(b) < 0 || b >= a)
        throw std::invalid_argument("not a Hermite normal form");
    auto [x1, y1] = times_omega(K, a, Int(0));
    auto [x2, y2] = times_omega(K, b, c);
    if (!lattice_contains(a, b, c, x1, y1) || !lattice_contains(a, b, c, x2, y2))
        throw std::invalid_argument("lattice is not closed under omega");
    return Ideal(std::move(a), std::move(b), std::move(c));
}

std::vector<AlgNum> Ideal::basis() const
{
    if (is_zero()) return {};
    return {AlgNum(Rat(a_)), AlgNum(Rat(b_), Rat(c_))};
}

bool Ideal::contains(AlgNum const & z) const
{
    if (!z.is_integral()) return false;
    return lattice_contains(a_, b_, c_, z.a.get_num(), z.b.get_num());
}

bool operator<(Ideal const & x, Ideal const & y)
{
    Int nx = x.norm();
    Int ny = y.norm();
    if (nx != ny) return nx < ny;
    if (x.a_ != y.a_) return x.a_ < y.a_;
    if (x.b_ != y.b_) return x.b_ < y.b_;
    return x.c_ < y.c_;
}

std::ostream & operator<<(std::ostream & os, Ideal const & I)
{
    if (I.is_zero()) return os << "[0]";
    return os << "[" << I.a() << ", " << I.b() << " + " << I.c() << "w]";
}

Ideal ideal_from_generators(Field const & K, std::span<const AlgNum> gens)
{
    std::vector<std::pair<Int, Int>> vecs;
    vecs.reserve(2 * gens.size());
    for (auto const & g : gens) {
        auto [x, y] = integral_coords(g);
        vecs.push_back(times_omega(K, x, y));
        vecs.emplace_back(std::move(x), std::move(y));
    }
    return lattice_to_ideal(vecs);
}

Ideal ideal_from_generators(Field const & K, std::initializer_list<AlgNum> gens)
{
    return ideal_from_generators(K, std::span<const AlgNum>(gens.begin(), gens.size()));
}

Ideal principal_ideal(Field const & K, AlgNum const & z)
{
    return ideal_from_generators(K, {z});
}

Ideal ideal_mul(Field const & K, Ideal const & I, Ideal const & J)
{
    if (I.is_zero() || J.is_zero()) return {};
    if (I.is_unit()) return J;
    if (J.is_unit()) return I;
    auto bi = I.basis();
    auto bj = J.basis();
    std::vector<AlgNum> gens;
    for (auto const & x : bi)
        for (auto const & y : bj) gens.push_back(K.mul(x, y));
    return ideal_from_generators(K, gens);
}

Ideal ideal_pow(Field const & K, Ideal const & I, unsigned e)
{
    Ideal r = Ideal::unit();
    Ideal base = I;
    while (e != 0) {
        if (e & 1U) r = ideal_mul(K, r, base);
        e >>= 1U;
        if (e != 0) base = ideal_mul(K, base, base);
    }
    return r;
}

Ideal ideal_add(Ideal const & I, Ideal const & J)
{
    if (I.is_zero()) return J;
    if (J.is_zero()) return I;
    std::vector<std::pair<Int, Int>> vecs{{I.a(), 0}, {I.b(), I.c()}, {J.a(), 0}, {J.b(), J.c()}};
    return lattice_to_ideal(vecs);
}

Ideal ideal_intersect(Field const & K, Ideal const & I, Ideal const & J)
{
    if (I.is_zero() || J.is_zero()) return {};
    return ideal_quotient(K, ideal_mul(K, I, J), ideal_add(I, J));
}

Ideal ideal_conj(Field const & K, Ideal const & I)
{
    if (I.is_zero()) return I;
    return ideal_from_generators(K, {AlgNum(Rat(I.a())), K.conj(AlgNum(Rat(I.b()), Rat(I.c())))});
}

bool ideal_divides(Ideal const & J, Ideal const & I)
{
    if (I.is_zero()) return true;
    if (J.is_zero()) return false;
    return lattice_contains(J.a(), J.b(), J.c(), I.a(), 0) &&
           lattice_contains(J.a(), J.b(), J.c(), I.b(), I.c());
}

Ideal ideal_quotient(Field const & K, Ideal const & I, Ideal const & J)
{
    if (J.is_zero()) throw std::domain_error("quotient by the zero ideal");
    if (I.is_zero()) return I;
    Ideal M = ideal_mul(K, I, ideal_conj(K, J));
    Int n = J.norm();
    if (M.a() % n != 0 || M.b() % n != 0 || M.c() % n != 0)
        throw std::domain_error("ideal quotient is not integral");
    return Ideal::from_hnf(K, M.a() / n, M.b() / n, M.c() / n);
}

bool ideal_coprime(Ideal const & I, Ideal const & J)
{
    if (!I.is_zero() && !J.is_zero() && gcd(I.norm(), J.norm()) == 1) return true;
    return ideal_add(I, J).is_unit();
}

/* --- fractional ideals ------------------------------------------------- */

FracIdeal::FracIdeal(Ideal num, Int den) : num_(std::move(num)), den_(std::move(den))
{
    if (sgn(den_) <= 0) throw std::invalid_argument("fractional ideal denominator must be positive");
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    Int g = gcd(gcd(den_, num_.a()), gcd(num_.b(), num_.c()));
    if (g != 1) {
        // num/g keeps HNF shape; closure under omega is inherited
        num_ = lattice_to_ideal(std::vector<std::pair<Int, Int>>{{num_.a() / g, 0}, {num_.b() / g, num_.c() / g}});
        den_ /= g;
    }
}

bool FracIdeal::contains(AlgNum const & z) const
{
    return num_.contains(AlgNum(z.a * den_, z.b * den_));
}

std::vector<AlgNum> FracIdeal::basis() const
{
    auto b = num_.basis();
    for (auto & v : b) {
        v.a /= den_;
        v.b /= den_;
    }
    return b;
}

bool operator<(FracIdeal const & x, FracIdeal const & y)
{
    Rat nx = x.norm();
    Rat ny = y.norm();
    if (nx != ny) return nx < ny;
    if (x.num_ != y.num_) return x.num_ < y.num_;
    return x.den_ < y.den_;
}

std::ostream & operator<<(std::ostream & os, FracIdeal const & I)
{
    os << I.num();
    if (I.den() != 1) os << "/" << I.den();
    return os;
}

FracIdeal frac_principal(Field const & K, AlgNum const & z)
{
    if (z.is_zero()) return FracIdeal(Ideal::zero());
    Int m = lcm(z.a.get_den(), z.b.get_den());
    return FracIdeal(principal_ideal(K, AlgNum(z.a * m, z.b * m)), m);
}

FracIdeal frac_mul(Field const & K, FracIdeal const & I, FracIdeal const & J)
{
    return FracIdeal(ideal_mul(K, I.num(), J.num()), I.den() * J.den());
}

FracIdeal frac_inverse(Field const & K, FracIdeal const & I)
{
    if (I.num().is_zero()) throw std::domain_error("inverse of the zero ideal");
    Ideal c = ideal_conj(K, I.num());
    return FracIdeal(scale_ideal(K, c, I.den()), I.num().norm());
}

FracIdeal frac_div(Field const & K, FracIdeal const & I, FracIdeal const & J)
{
    return frac_mul(K, I, frac_inverse(K, J));
}

FracIdeal frac_add(FracIdeal const & I, FracIdeal const & J)
{
    Int L = lcm(I.den(), J.den());
    auto scaled = [&L](FracIdeal const & X) {
        Int k = L / X.den();
        Ideal const & n = X.num();
        if (n.is_zero()) return n;
        return lattice_to_ideal(std::vector<std::pair<Int, Int>>{{n.a() * k, 0}, {n.b() * k, n.c() * k}});
    };
    return FracIdeal(ideal_add(scaled(I), scaled(J)), L);
}

FracIdeal frac_pow(Field const & K, FracIdeal const & I, int e)
{
    FracIdeal base = e < 0 ? frac_inverse(K, I) : I;
    unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
    return FracIdeal(ideal_pow(K, base.num(), k), [&] {
        Int d;
        mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), k);
        return d;
    }());
}

/* --- factorization ------------------------------------------------------ */

int kronecker(long disc, Int const & p)
{
    Int D = disc;
    return mpz_kronecker(D.get_mpz_t(), p.get_mpz_t());
}

namespace {

Int pollard_brent(Int const & n)
{
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2;
        Int x;
        Int ys;
        Int g = 1;
        Int q = 1;
        unsigned long r = 1;
        const unsigned long m = 64;
        auto f = [&](Int const & v) { return Int((v * v + c) % n); };
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(Int(x - y))) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(Int(x - ys)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(Int n, std::map<Int, int> & out)
{
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        ++out[n];
        return;
    }
    Int d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

// square root of a mod odd prime p, a a quadratic residue
Int sqrt_mod(Int a, Int const & p)
{
    a %= p;
    if (sgn(a) < 0) a += p;
    if (sgn(a) == 0) return 0;
    Int q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    Int pm1h = (p - 1) / 2;
    Int t;
    for (;; ++z) {
        mpz_powm(t.get_mpz_t(), z.get_mpz_t(), pm1h.get_mpz_t(), p.get_mpz_t());
        if (t == p - 1) break;
    }
    Int c;
    Int r;
    Int qh = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), qh.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + 1 < m - i; ++j) b = (b * b) % p;
        r = (r * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    return r;
}

} // namespace

std::vector<std::pair<Int, int>> factor_integer(Int n)
{
    if (sgn(n) <= 0) throw std::invalid_argument("factor_integer needs a positive integer");
    std::map<Int, int> out;
    for (unsigned long p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[Int(p)];
            n /= p;
        }
    }
    factor_rec(n, out);
    return {out.begin(), out.end()};
}

std::vector<Ideal> primes_above(Field const & K, Int const & p)
{
    int k = kronecker(K.disc(), p);
    if (k == -1) return {Ideal::from_hnf(K, p, 0, p)};
    std::vector<Int> roots;
    Int t = K.trace_omega();
    Int n = K.norm_omega();
    if (p == 2) {
        for (int r = 0; r < 2; ++r) {
            Int v = r * r - t * r + n;
            if (v % 2 == 0) roots.emplace_back(r);
        }
    } else {
        Int inv2 = (p + 1) / 2;
        Int s = sqrt_mod(Int(K.disc()), p);
        roots.push_back(((t + s) * inv2) % p);
        if (k == 1) roots.push_back((((t - s) * inv2) % p + p) % p);
    }
    if (k == 0) roots.resize(1);
    std::vector<Ideal> out;
    for (auto const & r : roots) {
        Ideal P = ideal_from_generators(K, {AlgNum(Rat(p)), AlgNum(Rat(-r), 1)});
        assert(P.norm() == p);
        out.push_back(P);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Factorization factor(Field const & K, Ideal const & I)
{
    if (I.is_zero()) throw std::domain_error("factor of the zero ideal");
    Factorization out;
    Ideal cur = I;
    for (auto const & [p, e] : factor_integer(I.norm())) {
        (void) e;
        for (auto const & P : primes_above(K, p)) {
            int v = 0;
            while (ideal_divides(P, cur)) {
                cur = ideal_quotient(K, cur, P);
                ++v;
            }
            if (v > 0) out.emplace_back(P, v);
        }
    }
    if (!cur.is_unit()) throw std::logic_error("incomplete ideal factorisation");
    std::sort(out.begin(), out.end());
    return out;
}

Ideal unfactor(Field const & K, Factorization const & f)
{
    Ideal r = Ideal::unit();
    for (auto const & [P, e] : f) r = ideal_mul(K, r, ideal_pow(K, P, static_cast<unsigned>(e)));
    return r;
}

int mobius(Field const & K, Ideal const & I)
{
    int mu = 1;
    for (auto const & [P, e] : factor(K, I)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

Int euler_phi(Field const & K, Ideal const & I)
{
    Int phi = 1;
    for (auto const & [P, e] : factor(K, I)) {
        Int np = P.norm();
        phi *= np - 1;
        for (int i = 1; i < e; ++i) phi *= np;
    }
    return phi;
}

Rat phi_star(Field const & K, Ideal const & I)
{
    return make_rat(euler_phi(K, I), I.norm());
}

int prime_omega(Field const & K, Ideal const & I)
{
    return static_cast<int>(factor(K, I).size());
}

std::vector<Ideal> divisors(Field const & K, Ideal const & I)
{
    auto f = factor(K, I);
    std::vector<Ideal> out{Ideal::unit()};
    for (auto const & [P, e] : f) {
        std::vector<Ideal> next;
        for (auto const & D : out) {
            Ideal cur = D;
            next.push_back(cur);
            for (int i = 0; i < e; ++i) {
                cur = ideal_mul(K, cur, P);
                next.push_back(cur);
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/* --- residues ----------------------------------------------------------- */

AlgNum reduce_mod(Ideal const & q, AlgNum const & z)
{
    if (q.is_zero()) throw std::domain_error("reduction modulo the zero ideal");
    if (!z.is_integral()) throw std::domain_error("reduction of a non-integral element");
    Int x = z.a.get_num();
    Int y = z.b.get_num();
    Int yr;
    mpz_fdiv_r(yr.get_mpz_t(), y.get_mpz_t(), q.c().get_mpz_t());
    Int k = (y - yr) / q.c();
    Int xr = x - k * q.b();
    mpz_fdiv_r(xr.get_mpz_t(), xr.get_mpz_t(), q.a().get_mpz_t());
    return {Rat(xr), Rat(yr)};
}

bool congruent(Ideal const & q, AlgNum const & x, AlgNum const & y)
{
    return q.contains(AlgNum(x.a - y.a, x.b - y.b));
}

std::vector<AlgNum> residues(Ideal const & q)
{
    if (q.is_zero()) throw std::domain_error("residues modulo the zero ideal");
    std::vector<AlgNum> out;
    for (Int y = 0; y < q.c(); ++y)
        for (Int x = 0; x < q.a(); ++x) out.emplace_back(Rat(x), Rat(y));
    return out;
}

bool element_coprime(Field const & K, AlgNum const & z, Ideal const & q)
{
    if (!z.is_zero()) {
        Rat n = K.norm(z);
        if (n.get_den() == 1 && gcd(n.get_num(), q.norm()) == 1) return true;
    }
    return ideal_add(principal_ideal(K, z), q).is_unit();
}

std::vector<AlgNum> reduced_residues(Field const & K, Ideal const & q)
{
    std::vector<AlgNum> out;
    for (auto & r : residues(q))
        if (element_coprime(K, r, q)) out.push_back(std::move(r));
    return out;
}

std::vector<std::pair<Ideal, Factorization>> ideals_up_to(Field const & K, Int const & bound)
{
    std::vector<Ideal> primes;
    long X = bound.get_si();
    std::vector<char> composite(static_cast<std::size_t>(X) + 1, 0);
    for (long p = 2; p <= X; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (long m = p * p; m <= X; m += p) composite[static_cast<std::size_t>(m)] = 1;
        for (auto const & P : primes_above(K, Int(p)))
            if (P.norm() <= bound) primes.push_back(P);
    }
    std::sort(primes.begin(), primes.end());

    std::vector<std::pair<Ideal, Factorization>> out;
    Factorization f;
    auto rec = [&](auto & self, std::size_t from, Ideal const & I) -> void {
        out.emplace_back(I, f);
        for (std::size_t i = from; i < primes.size(); ++i) {
            if (I.norm() * primes[i].norm() > bound) break;
            Ideal J = I;
            int e = 0;
            while (J.norm() * primes[i].norm() <= bound) {
                J = ideal_mul(K, J, primes[i]);
                ++e;
                f.emplace_back(primes[i], e);
                self(self, i + 1, J);
                f.pop_back();
            }
        }
    };
    rec(rec, 0, Ideal::unit());
    std::sort(out.begin(), out.end(), [](auto const & x, auto const & y) { return x.first < y.first; });
    return out;
}

} // namespace e6
