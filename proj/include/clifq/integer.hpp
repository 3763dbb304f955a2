#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clifq {

using Integer = mpz_class;
using Rational = mpq_class;

namespace nt {

/// Trial-division bound used by factor(). Defaults to 10^6 and is read once
/// from QF_FACTOR_BOUND when present.
long factor_bound();
void set_factor_bound(long bound);

/// Prime factorization of |n| by trial division up to factor_bound().
/// A leftover cofactor above bound^2 is accepted only when GMP's primality
/// test reports it prime; otherwise BoundExceeded is thrown.
std::vector<std::pair<Integer, int>> factor(const Integer& n);

bool is_prime(const Integer& n);

/// Sign-preserving squarefree part: n = s * k^2 with s squarefree.
Integer squarefree_part(const Integer& n);

/// Squarefree integer in the square class of a nonzero rational.
Integer squarefree_class(const Rational& q);

bool is_square(const Integer& n);
bool is_square(const Rational& q);
std::optional<Rational> rational_sqrt(const Rational& q);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const Integer& a, const Integer& p);

/// Square root of a modulo an odd prime p (Tonelli-Shanks), if one exists.
std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p);

/// p-adic valuation of a nonzero integer.
int valuation(Integer n, const Integer& p);

long mod_inverse(long a, long p);
long mod_pow(long base, long exp, long p);

/// A place of Q: a finite prime or the real place.
class Place {
public:
    static Place finite(Integer p);
    static Place infinity();

    bool is_infinite() const { return infinite_; }
    const Integer& prime() const { return prime_; }

    /// "2", "5", ..., "inf".
    std::string to_string() const;
    static Place parse(const std::string& text);

    bool operator==(const Place& other) const;
    /// Finite places by increasing prime, then the real place.
    bool operator<(const Place& other) const;

private:
    Integer prime_{0};
    bool infinite_ = false;
};

/// Hilbert symbol (a, b)_v for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// The places where (a, b)_v can be -1: 2, infinity and every prime dividing
/// the numerators or denominators of a and b.
std::vector<Place> relevant_places(const std::vector<Rational>& values);

/// True iff the product over all places of (a, b)_v equals +1.
bool product_formula_check(const Rational& a, const Rational& b);

/// Exact rational square test in the completion Q_v.
bool is_local_square(const Rational& q, const Place& v);

} // namespace nt
} // namespace clifq
