#pragma once

#include "clifq/matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace clifq {

/// One structure constant c_{ij}^k of a basis product e_i e_j.
struct Term {
    size_t index;
    Scalar coeff;
};

/// Finite-dimensional algebra over a field given by sparse structure
/// constants: e_i e_j = sum_k c_{ij}^k e_k.
class StructureAlgebra {
public:
    static constexpr size_t max_dim = 64;

    StructureAlgebra() = default;
    StructureAlgebra(Field f, std::vector<std::string> labels, std::vector<std::vector<Term>> table, Vec unit);
    /// Dense constants indexed (i * dim + j) * dim + k.
    static StructureAlgebra from_dense(Field f, std::vector<std::string> labels, const std::vector<Scalar>& table,
                                       Vec unit);

    const Field& field() const { return field_; }
    size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Vec& unit() const { return unit_; }
    const std::vector<Term>& product(size_t i, size_t j) const { return table_[i * dim_ + j]; }
    std::vector<Scalar> dense_table() const;

    Vec multiply(const Vec& x, const Vec& y) const;
    Vec basis(size_t i) const { return unit_vec(field_, dim_, i); }
    Vec scalar(const Scalar& c) const { return clifq::scale(c, unit_); }
    /// Matrix of y -> x y (columns are images of basis vectors).
    Matrix left_mult(const Vec& x) const;
    Matrix right_mult(const Vec& x) const;
    /// Trace of left multiplication.
    Scalar trace(const Vec& x) const;
    /// The scalar c with x = c * 1, if x is a scalar.
    std::optional<Scalar> as_scalar(const Vec& x) const;

    const std::optional<Matrix>& involution() const { return involution_; }
    void set_involution(Matrix m) { involution_ = std::move(m); }
    /// Elements whose powers and products generate the algebra; used to
    /// speed up center computations. Empty means "the whole basis".
    const std::vector<Vec>& generators() const { return generators_; }
    void set_generators(std::vector<Vec> g) { generators_ = std::move(g); }

    std::string element_to_string(const Vec& x) const;
    bool operator==(const StructureAlgebra& o) const;

private:
    Field field_;
    size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<Term>> table_;
    Vec unit_;
    std::optional<Matrix> involution_;
    std::vector<Vec> generators_;
};

struct AssociativityReport {
    bool associative = true;
    std::optional<std::array<size_t, 3>> witness;
};

AssociativityReport check_associative(const StructureAlgebra& a);
/// Unit is a two-sided identity.
bool check_unit(const StructureAlgebra& a);
/// m is an anti-automorphism of order <= 2.
bool is_involution(const StructureAlgebra& a, const Matrix& m);

/// Basis of the center, computed as an exact linear system.
std::vector<Vec> center(const StructureAlgebra& a);
/// All idempotents of a center of dimension <= 2: {0, 1} or {0, 1, e, 1 - e}.
std::vector<Vec> central_idempotents(const StructureAlgebra& a);

StructureAlgebra tensor(const StructureAlgebra& a, const StructureAlgebra& b);
StructureAlgebra opposite(const StructureAlgebra& a);
StructureAlgebra matrix_algebra(const Field& f, size_t n);
StructureAlgebra product(const StructureAlgebra& a, const StructureAlgebra& b);
/// Basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji; conjugation attached.
StructureAlgebra quaternion(const Scalar& a, const Scalar& b);

/// Algebra spanned by `span` (closed under products), with unit `unit`.
/// `embedding` has the chosen basis as columns in the coordinates of `a`.
struct Subalgebra {
    StructureAlgebra algebra;
    Matrix embedding;
};
Subalgebra cut_subalgebra(const StructureAlgebra& a, const std::vector<Vec>& span, const Vec& unit);
/// e A for a central idempotent e.
Subalgebra corner(const StructureAlgebra& a, const Vec& e);

/// Change of basis: the new basis vectors are the columns of p.
StructureAlgebra transport(const StructureAlgebra& a, const Matrix& p);

struct QuaternionBasis {
    Scalar a, b;
    /// Columns: 1, x, y, xy in the coordinates of the input algebra.
    Matrix change;
};
QuaternionBasis find_quaternion_basis(const StructureAlgebra& a);
bool is_split_quaternion(const StructureAlgebra& a);

/// Linear map between algebras given by a dim(target) x dim(source) matrix.
struct AlgebraMorphism {
    StructureAlgebra source;
    StructureAlgebra target;
    Matrix map;

    Vec operator()(const Vec& x) const { return map.apply(x); }
    bool preserves_unit() const;
    bool is_multiplicative() const;
    bool is_bijective() const;
    bool is_isomorphism() const { return preserves_unit() && is_multiplicative() && is_bijective(); }
};

/// Gram matrix of (x, y) -> Tr(L_{xy}).
Matrix trace_form(const StructureAlgebra& a);

} // namespace clifq
