#pragma once

#include "clifq/integer.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace clifq {

/// The base field an exact Scalar lives in.
///
/// Supported: Q, F_p (p an odd prime), Q(sqrt d) with d squarefree, and the
/// rational function fields Q(t) and F_p(t).
class Field {
public:
    enum class Kind { Rational, PrimeField, Quadratic, FunctionField };

    static Field rationals();
    static Field prime_field(long p);
    static Field quadratic(long d);
    /// Q(t) when p == 0, F_p(t) otherwise.
    static Field function_field(long p = 0);

    /// Inverse of name(): "Q", "F_7", "Q(sqrt(-5))", "Q(t)", "F_5(t)".
    static Field parse(const std::string& text);

    Kind kind() const { return kind_; }
    /// Characteristic (0 or p).
    long characteristic() const { return p_; }
    long d() const { return d_; }
    std::string name() const;

    bool operator==(const Field& other) const = default;

private:
    Kind kind_ = Kind::Rational;
    long p_ = 0;
    long d_ = 0;
};

/// Dense univariate polynomial over Q (p == 0) or F_p.
class Poly {
public:
    explicit Poly(long p = 0) : p_(p) {}
    Poly(long p, std::vector<Rational> coeffs);

    static Poly constant(const Rational& c, long p = 0);
    /// The indeterminate t.
    static Poly t(long p = 0);

    long characteristic() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coeff(int i) const;
    const Rational& lc() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    /// Quotient and remainder; o must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& o) const;
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly monic() const;
    Poly derivative() const;
    Rational eval(const Rational& x) const;
    bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const Poly& o) const;

    std::string to_string(const std::string& var = "t") const;

    /// Coefficient normalization (reduction mod p).
    Rational norm(const Rational& x) const;
    Rational inv(const Rational& x) const;

private:
    void trim();
    long p_;
    std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);

/// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
/// f = prod g_i^i, g_i squarefree and pairwise coprime.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

/// Factorization into monic irreducibles (with the leading coefficient
/// returned separately). Over F_p by exhaustive search; over Q by rational
/// roots, with any remaining factor of degree <= 3 irreducible. Larger
/// root-free remainders raise BoundExceeded.
struct PolyFactorization {
    Rational unit;
    std::vector<std::pair<Poly, int>> factors;
};
PolyFactorization factor_poly(const Poly& f);
bool is_irreducible(const Poly& f);

/// Reduced fraction num/den with den monic.
struct RatFunc {
    Poly num;
    Poly den;
};

struct QuadValue {
    Rational a;
    Rational b;
};

/// An exact field element. Values are immutable in practice; all arithmetic
/// returns new values. Mixing fields throws DomainError.
class Scalar {
public:
    Scalar() : Scalar(Field::rationals(), Rational(0)) {}
    Scalar(const Field& f, const Rational& r);
    static Scalar from_int(const Field& f, long n) { return Scalar(f, Rational(n)); }
    static Scalar zero(const Field& f) { return Scalar(f, Rational(0)); }
    static Scalar one(const Field& f) { return Scalar(f, Rational(1)); }
    static Scalar quadratic(const Field& f, const Rational& a, const Rational& b);
    static Scalar ratfunc(const Field& f, const Poly& num, const Poly& den);
    /// sqrt(d) in Q(sqrt d), t in a function field.
    static Scalar generator(const Field& f);

    /// Parses the serialized forms "p/q", "a mod p", "a+b*sqrt(d)", and
    /// polynomials / fractions in t.
    static Scalar parse(const Field& f, const std::string& text);
    std::string to_string() const;

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;
    bool operator==(const Scalar& o) const;

    /// Rational value for Q / F_p elements (residue in [0, p)), or the
    /// rational part of a constant.
    const Rational& rational() const;
    const QuadValue& quad() const;
    const RatFunc& ratfunc() const;
    /// True when the element lies in the prime subfield (Q or F_p).
    bool is_prime_subfield() const;

    /// Exact square root, when the element is a square.
    std::optional<Scalar> sqrt() const;
    bool is_square() const { return sqrt().has_value(); }

private:
    Field field_;
    std::variant<Rational, QuadValue, RatFunc> v_;
};

/// Canonical representative of a nonzero element modulo squares.
///
/// Over Q: a squarefree integer. Over F_p: 1 or the least quadratic
/// nonresidue. Over Q(t) / F_p(t): a squarefree constant (as above) times a
/// monic squarefree polynomial.
class SquareClass {
public:
    static SquareClass of(const Scalar& a);
    const Scalar& representative() const { return rep_; }
    bool is_trivial() const { return rep_.is_one(); }
    SquareClass operator*(const SquareClass& o) const;
    bool operator==(const SquareClass& o) const { return rep_ == o.rep_; }
    std::string to_string() const { return rep_.to_string(); }

private:
    explicit SquareClass(Scalar rep) : rep_(std::move(rep)) {}
    Scalar rep_;
};

inline SquareClass square_class(const Scalar& a) { return SquareClass::of(a); }

/// Legendre symbol on machine integers (p odd prime), for the CLI and tests.
int legendre(long a, long p);

/// Maps Q -> F_p, or Q(sqrt d) -> F_p at a split prime (sqrt d -> root).
/// Throws DomainError when a denominator is not invertible.
class ReductionMap {
public:
    static ReductionMap rational_to(long p);
    static ReductionMap quadratic_to(long d, long p, long root);
    /// For Q(sqrt d) picks the least root of d mod p; throws if p is not split.
    static ReductionMap split_prime(long d, long p);

    Scalar operator()(const Scalar& x) const;
    const Field& target() const { return target_; }
    long root() const { return root_; }

private:
    Field source_;
    Field target_;
    long root_ = 0;
};

} // namespace clifq
