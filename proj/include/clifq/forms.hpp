#pragma once

#include "clifq/matrix.hpp"

#include <array>
#include <string>
#include <vector>

namespace clifq {

/// Quadratic form over a field. `gram` is the matrix of the bilinear form
/// b(x, y) = (q(x + y) - q(x) - q(y)) / 2, so gram(i, i) = q(e_i).
struct QuadraticForm {
    Matrix gram;
    std::string value_label = "trivial";

    QuadraticForm() = default;
    explicit QuadraticForm(Matrix g, std::string label = "trivial");

    const Field& field() const { return gram.field(); }
    size_t rank() const { return gram.rows(); }
    Scalar determinant() const { return gram.determinant(); }
    bool is_regular() const;
    Scalar value(const Vec& x) const;
    Scalar polar(const Vec& x, const Vec& y) const;
};

/// <a_1, ..., a_n> with every a_i nonzero.
struct DiagonalForm {
    Field field;
    std::vector<Scalar> entries;

    DiagonalForm() = default;
    DiagonalForm(Field f, std::vector<Scalar> e);
    static DiagonalForm of_rationals(const std::vector<Rational>& values);
    static DiagonalForm of_ints(const Field& f, const std::vector<long>& values);

    size_t rank() const { return entries.size(); }
    QuadraticForm to_form() const;
    std::string to_string() const;
    bool operator==(const DiagonalForm& o) const { return field == o.field && entries == o.entries; }
};

struct WittClass {
    DiagonalForm anisotropic_kernel;
    int witt_index = 0;
};

/// `basis` has the new basis vectors as columns: basis^T * gram * basis is
/// diagonal with the returned entries.
struct Diagonalization {
    DiagonalForm form;
    Matrix basis;
};

Diagonalization diagonalize(const QuadraticForm& q);
DiagonalForm diagonal_of(const QuadraticForm& q);

QuadraticForm orthogonal_sum(const QuadraticForm& q, const QuadraticForm& r);
DiagonalForm orthogonal_sum(const DiagonalForm& q, const DiagonalForm& r);
/// H(F^r): q(t + v) = t(v), gram [[0, I/2], [I/2, 0]].
QuadraticForm hyperbolic(const Field& f, int r);
/// Field-layer alignment twist: the Gram matrix scaled by n.
QuadraticForm twist(const QuadraticForm& q, const Scalar& n);
DiagonalForm twist(const DiagonalForm& q, const Scalar& n);

/// (-1)^{n(n-1)/2} det.
SquareClass signed_discriminant(const QuadraticForm& q);
SquareClass signed_discriminant(const DiagonalForm& q);

/// Entries replaced by canonical square-class representatives (Q, F_p).
DiagonalForm reduce_entries(const DiagonalForm& q);

/// Exact isotropy decision over Q (Hasse-Minkowski) or F_p.
bool is_isotropic(const QuadraticForm& q);
bool is_isotropic(const DiagonalForm& q);
/// A nonzero isotropic vector in the coordinates of q, if q is isotropic.
std::optional<Vec> isotropic_vector(const QuadraticForm& q);
std::optional<Vec> isotropic_vector(const DiagonalForm& q);

WittClass witt_decompose(const QuadraticForm& q);
WittClass witt_decompose(const DiagonalForm& q);

/// q is hyperbolic (zero in the Witt group). Q via classical invariants,
/// F_p via rank and discriminant.
bool is_witt_trivial(const DiagonalForm& q);
/// Isometry test via classical invariants over Q and F_p.
bool is_isometric(const DiagonalForm& q, const DiagonalForm& r);

/// Over Q: product over i < j of (a_i, a_j)_v.
int hasse_invariant(const DiagonalForm& q, const nt::Place& v);
/// Over Q: (#positive) - (#negative) entries.
int signature(const DiagonalForm& q);
/// Places relevant to a diagonal form over Q: 2, infinity and the primes
/// dividing the entries.
std::vector<nt::Place> relevant_places(const DiagonalForm& q);

/// Solution of X^2 = A Y^2 + B Z^2 in integers, not all zero, for nonzero
/// integers A, B; nullopt when none exists.
std::optional<std::array<Integer, 3>> solve_legendre(const Integer& a, const Integer& b);

} // namespace clifq
