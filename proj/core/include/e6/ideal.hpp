#ifndef E6_IDEAL_HPP
#define E6_IDEAL_HPP

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "e6/field.hpp"

namespace e6 {

/*
 * An integral ideal of O_K in Hermite normal form over {1, omega}: the
 * Z-basis is {a, b + c*omega} with a, c > 0, c | a, c | b and 0 <= b < a.
 * Its norm is a*c.
 *
 * The zero ideal (a = b = c = 0) is representable; it is only meaningful
 * to coprimality tests, where zero + J = J.
 */
class Ideal {
  public:
    Ideal() = default; // zero ideal

    static Ideal zero() { return {}; }
    static Ideal unit() { return Ideal(1, 0, 1); }
    /// Validates the HNF shape and closure under multiplication by omega.
    static Ideal from_hnf(Field const & K, Int a, Int b, Int c);

    bool is_zero() const { return sgn(a_) == 0; }
    bool is_unit() const { return a_ == 1 && c_ == 1; }

    Int const & a() const { return a_; }
    Int const & b() const { return b_; }
    Int const & c() const { return c_; }
    Int norm() const { return a_ * c_; }

    /// Z-basis {a, b + c*omega} (empty for the zero ideal).
    std::vector<AlgNum> basis() const;

    bool contains(AlgNum const & z) const;

    friend bool operator==(Ideal const & x, Ideal const & y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
    }
    friend bool operator!=(Ideal const & x, Ideal const & y) { return !(x == y); }
    /// (norm, a, b, c) lexicographic
    friend bool operator<(Ideal const & x, Ideal const & y);

  private:
    Ideal(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
    friend Ideal lattice_to_ideal(std::span<const std::pair<Int, Int>> vectors);

    Int a_;
    Int b_;
    Int c_;
};

std::ostream & operator<<(std::ostream & os, Ideal const & I);

/// HNF of the Z-span of integer coordinate vectors; the caller guarantees
/// the span is an ideal (or zero).
Ideal lattice_to_ideal(std::span<const std::pair<Int, Int>> vectors);

/// Smallest ideal containing the integral generators; zero if all are zero.
Ideal ideal_from_generators(Field const & K, std::span<const AlgNum> gens);
Ideal ideal_from_generators(Field const & K, std::initializer_list<AlgNum> gens);
Ideal principal_ideal(Field const & K, AlgNum const & z);

Ideal ideal_mul(Field const & K, Ideal const & I, Ideal const & J);
Ideal ideal_pow(Field const & K, Ideal const & I, unsigned e);
/// I + J, the gcd.  zero + J = J.
Ideal ideal_add(Ideal const & I, Ideal const & J);
/// I intersect J, the lcm.
Ideal ideal_intersect(Field const & K, Ideal const & I, Ideal const & J);
Ideal ideal_conj(Field const & K, Ideal const & I);
/// J | I, i.e. I is contained in J.  Every ideal divides zero.
bool ideal_divides(Ideal const & J, Ideal const & I);
/// I / J; throws std::domain_error unless J | I and J is nonzero.
Ideal ideal_quotient(Field const & K, Ideal const & I, Ideal const & J);
bool ideal_coprime(Ideal const & I, Ideal const & J);

/*
 * A fractional ideal num/den with den > 0 minimal.
 */
class FracIdeal {
  public:
    FracIdeal() : num_(Ideal::unit()), den_(1) {}
    FracIdeal(Ideal num, Int den = 1);

    Ideal const & num() const { return num_; }
    Int const & den() const { return den_; }

    bool is_integral() const { return den_ == 1; }
    Rat norm() const { return make_rat(num_.norm(), den_ * den_); }
    bool contains(AlgNum const & z) const;
    std::vector<AlgNum> basis() const;

    friend bool operator==(FracIdeal const & x, FracIdeal const & y)
    {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(FracIdeal const & x, FracIdeal const & y) { return !(x == y); }
    friend bool operator<(FracIdeal const & x, FracIdeal const & y);

  private:
    Ideal num_;
    Int den_;
};

std::ostream & operator<<(std::ostream & os, FracIdeal const & I);

FracIdeal frac_principal(Field const & K, AlgNum const & z);
FracIdeal frac_mul(Field const & K, FracIdeal const & I, FracIdeal const & J);
FracIdeal frac_inverse(Field const & K, FracIdeal const & I);
FracIdeal frac_div(Field const & K, FracIdeal const & I, FracIdeal const & J);
FracIdeal frac_add(FracIdeal const & I, FracIdeal const & J);
FracIdeal frac_pow(Field const & K, FracIdeal const & I, int e);

/* --- factorization and arithmetic functions -------------------------- */

/// Kronecker symbol (disc | p) for a prime p.
int kronecker(long disc, Int const & p);

/// Prime factorisation of a positive integer, ascending.
std::vector<std::pair<Int, int>> factor_integer(Int n);

/// The one or two prime ideals above the rational prime p, ascending.
std::vector<Ideal> primes_above(Field const & K, Int const & p);

using Factorization = std::vector<std::pair<Ideal, int>>;

/// Prime ideal factorisation, ascending by prime; I nonzero.
Factorization factor(Field const & K, Ideal const & I);
Ideal unfactor(Field const & K, Factorization const & f);

int mobius(Field const & K, Ideal const & I);
Int euler_phi(Field const & K, Ideal const & I);
Rat phi_star(Field const & K, Ideal const & I);
int prime_omega(Field const & K, Ideal const & I);

/// All divisors of a nonzero ideal, ascending.
std::vector<Ideal> divisors(Field const & K, Ideal const & I);

/* --- residues ---------------------------------------------------------- */

/// Canonical representative of z mod q: x + y*omega with 0 <= x < a, 0 <= y < c.
AlgNum reduce_mod(Ideal const & q, AlgNum const & z);
bool congruent(Ideal const & q, AlgNum const & x, AlgNum const & y);
/// N(q) pairwise incongruent representatives, in canonical form.
std::vector<AlgNum> residues(Ideal const & q);
/// Those residues rho with rho*O_K + q = O_K.
std::vector<AlgNum> reduced_residues(Field const & K, Ideal const & q);
bool element_coprime(Field const & K, AlgNum const & z, Ideal const & q);

/// All nonzero ideals of norm <= bound, ascending (products of primes).
std::vector<std::pair<Ideal, Factorization>> ideals_up_to(Field const & K, Int const & bound);

} // namespace e6

#endif
