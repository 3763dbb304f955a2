#pragma once

#include "clifq/algebras.hpp"
#include "clifq/forms.hpp"
#include "clifq/invariants.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clifq {

/// Maximal order of Q(sqrt d), Z-basis 1, w with w = sqrt d or (1 + sqrt d)/2.
class QuadOrder {
public:
    explicit QuadOrder(long d);

    long d() const { return d_; }
    const Field& field() const { return field_; }
    /// Field discriminant: d or 4d.
    long discriminant() const;
    bool imaginary() const { return d_ < 0; }
    Scalar omega() const;
    /// Coordinates (x, y) of z = x + y w.
    std::pair<Rational, Rational> coords(const Scalar& z) const;
    Scalar element(const Rational& x, const Rational& y) const;
    Scalar conj(const Scalar& z) const;
    Rational norm(const Scalar& z) const;
    bool is_integral(const Scalar& z) const;
    /// Minkowski bound (2/pi) sqrt|D| or sqrt(D)/2.
    double minkowski_bound() const;

    bool operator==(const QuadOrder& o) const { return d_ == o.d_; }

private:
    long d_;
    Field field_;
};

/// Nonzero fractional ideal, stored as the lattice Z r + Z (s + t w) in
/// rational Hermite form: r, t > 0 and 0 <= s < r.
class FracIdeal {
public:
    FracIdeal(const QuadOrder& o, const std::vector<Scalar>& generators);
    static FracIdeal unit(const QuadOrder& o);
    static FracIdeal principal(const QuadOrder& o, const Scalar& a);

    const QuadOrder& order() const { return o_; }
    /// Z-basis r, s + t w (also O-generators).
    std::pair<Scalar, Scalar> basis() const;
    const Rational& r() const { return r_; }
    const Rational& s() const { return s_; }
    const Rational& t() const { return t_; }

    Rational norm() const { return r_ * t_; }
    bool contains(const Scalar& z) const;
    bool contains(const FracIdeal& j) const;
    bool is_integral() const;
    FracIdeal operator*(const FracIdeal& o) const;
    FracIdeal operator*(const Scalar& a) const;
    FracIdeal inverse() const;
    FracIdeal pow(int e) const;
    FracIdeal conj() const;

    /// A generator, found by norm enumeration (imaginary) or a bounded norm
    /// search (real; BoundExceeded when inconclusive).
    std::optional<Scalar> principal_generator() const;
    bool is_principal() const { return principal_generator().has_value(); }

    std::string to_string() const;
    bool operator==(const FracIdeal& o) const { return o_ == o.o_ && r_ == o.r_ && s_ == o.s_ && t_ == o.t_; }
    bool operator<(const FracIdeal& o) const;

private:
    FracIdeal(const QuadOrder& o, Rational r, Rational s, Rational t) : o_(o), r_(std::move(r)), s_(std::move(s)), t_(std::move(t)) {}
    QuadOrder o_;
    Rational r_, s_, t_;
};

/// Prime ideals of norm p (split or ramified p) as (p, w - root).
std::vector<FracIdeal> primes_above(const QuadOrder& o, long p);

/// Genus characters of the class of i, one bit per prime discriminant
/// dividing D (narrow sense).
std::vector<int> genus_vector(const FracIdeal& i);

struct ClassRep {
    std::string label; // "O", "p2", "p3,1*p5,2", ...
    FracIdeal ideal;
};
/// Representatives of Cl(O)/2: O and products of subsets of the chosen
/// smallest-norm primes. BoundExceeded when |D| > 10^6.
std::vector<ClassRep> class_group_mod_squares(const QuadOrder& o);
/// Index into `reps` of the class of i modulo squares.
size_t class_mod_squares(const std::vector<ClassRep>& reps, const FracIdeal& i);

/// Quadratic form on the pseudo-lattice sum a_i e_i with values in L.
/// `gram` follows the library convention (gram_ii = q(e_i)).
struct IdealValuedForm {
    QuadOrder order;
    std::vector<FracIdeal> coeffs;
    Matrix gram;
    FracIdeal value;

    IdealValuedForm(QuadOrder o, std::vector<FracIdeal> a, Matrix g, FracIdeal l);
    size_t rank() const { return coeffs.size(); }
    /// q(a_i e_i) in L and b(a_i e_i, a_j e_j) in L.
    bool is_integral() const;
    /// det(B) (prod a_i)^2 == L^n for the polar matrix B = 2 gram.
    bool is_regular() const;
};

IdealValuedForm orthogonal_sum(const IdealValuedForm& q, const IdealValuedForm& r);
/// H_L(P) for P = sum a_i: coefficients (L a_1^{-1}, ..., L a_r^{-1}, a_1, ..., a_r),
/// pairing t + v -> t(v).
IdealValuedForm hyperbolic_ideal_form(const std::vector<FracIdeal>& p, const FracIdeal& l);
/// Coefficients N a_i, gram phi G, value N^2 phi L.
IdealValuedForm twist_by_alignment(const IdealValuedForm& q, const FracIdeal& n, const Scalar& phi);

/// The even Clifford algebra of the generic fiber with pseudo-basis e_S
/// (original basis, |S| even) and coefficient ideals a_S (L^{-1})^{|S|/2}.
struct CliffordOrder {
    DiagonalForm diagonal;            // diagonalization over Q(sqrt d)
    StructureAlgebra algebra;         // C_0 of `diagonal`
    std::vector<uint32_t> subsets;    // even subsets of the original basis
    std::vector<Vec> elements;        // e_S in the coordinates of `algebra`
    std::vector<FracIdeal> ideals;    // coefficient ideal of e_S
    bool closed = false;
    std::optional<std::pair<size_t, size_t>> witness; // failing product (S, T)
};
CliffordOrder even_clifford_order(const IdealValuedForm& q);

/// Center of the order is O x O: a nontrivial central idempotent lies in
/// the order (even rank only).
bool order_center_split(const CliffordOrder& c);
/// Reduction at a split prime p: structure constants on a local basis,
/// mapped to F_p; true when the reduced algebra is associative with
/// nondegenerate trace form. DomainError when p is not split or divides 2D.
bool order_reduction_semisimple(const CliffordOrder& c, long p);
/// even_clifford of the reduced diagonal form equals the entrywise
/// reduction of the generic table (split p, p not dividing 2 D det).
bool reduction_commutes(const IdealValuedForm& q, long p);
/// Best-effort: the quaternion algebra (a, b) over Q(sqrt d) has a zero
/// divisor among norm-form vectors with coordinates in a small box.
bool quaternion_split_search(const Scalar& a, const Scalar& b, long box = 3);

/// Normalization of a value ideal into its representative label:
/// n^2 phi L == reps[label].
struct Alignment {
    size_t label;
    FracIdeal n;
    Scalar phi;
};
Alignment align_to_representative(const std::vector<ClassRep>& reps, const FracIdeal& l);

/// Deterministic closure test set: every coefficient pattern in {O, P}^r
/// and value ideal in {O, P} for r <= max_rank (P the first prime above 2),
/// `per_pattern` grams each, entries doubled until integral.
std::vector<IdealValuedForm> closure_test_set(const QuadOrder& o, size_t max_rank, size_t per_pattern, unsigned long seed);

/// Components twisted into their representative labels and diagonalized
/// over Q(sqrt d).
TotalWittElement total_witt_element(const std::vector<ClassRep>& reps, const std::vector<IdealValuedForm>& forms);

} // namespace clifq
