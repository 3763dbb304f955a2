#pragma once

#include "clifq/algebras.hpp"
#include "clifq/forms.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace clifq {

/// Monomial arithmetic in the full Clifford algebra of <a_1, ..., a_n>:
/// e_S e_T = sign(S, T) * prod_{i in S and T} a_i * e_{S xor T}.
class CliffordMonomials {
public:
    explicit CliffordMonomials(DiagonalForm form);

    const DiagonalForm& form() const { return form_; }
    size_t rank() const { return form_.rank(); }
    /// Coefficient and subset of e_S e_T.
    std::pair<Scalar, uint32_t> mul(uint32_t s, uint32_t t) const;
    /// "e1e3" style label; "1" for the empty set.
    static std::string label(uint32_t s);
    /// Subsets of the given parity ordered by size, then lexicographically.
    std::vector<uint32_t> subsets(int parity) const;

private:
    DiagonalForm form_;
};

/// C_0 of a diagonal form, basis e_S with |S| even.
struct EvenClifford {
    DiagonalForm form;
    StructureAlgebra algebra;
    std::vector<uint32_t> subsets;
    std::vector<int> index_of; // subset -> basis index, -1 for odd subsets

    /// Coordinates of e_i e_j (0-based; e_i e_i = a_i).
    Vec generator(size_t i, size_t j) const;
    Vec monomial(uint32_t s) const;
    size_t dim() const { return algebra.dim(); }
};

/// C_1 of a diagonal form as a C_0-bimodule, basis e_S with |S| odd.
struct CliffordBimodule {
    DiagonalForm form;
    std::vector<uint32_t> subsets;
    std::vector<int> index_of;

    size_t dim() const { return subsets.size(); }
    /// i_1(e_j).
    Vec embed(size_t j) const;
    Vec left(const EvenClifford& c0, const Vec& c, const Vec& x) const;
    Vec right(const EvenClifford& c0, const Vec& x, const Vec& c) const;
    /// Matrix of x -> c x on C_1.
    Matrix left_matrix(const EvenClifford& c0, const Vec& c) const;
    Matrix right_matrix(const EvenClifford& c0, const Vec& c) const;
};

EvenClifford even_clifford(const DiagonalForm& q);
CliffordBimodule clifford_bimodule(const DiagonalForm& q);
/// m : C_1 x C_1 -> C_0, the product in the full Clifford algebra.
Vec bimodule_mult(const EvenClifford& c0, const CliffordBimodule& c1, const Vec& x, const Vec& y);

/// tau_0(e_S) = (-1)^{|S|(|S|-1)/2} e_S.
Matrix canonical_involution(const EvenClifford& c);

struct DiscriminantAlgebra {
    Scalar delta;        // z^2 for z = e_1 ... e_n
    std::optional<SquareClass> klass; // square class of delta (Q and F_p only)
    bool split = false;  // delta is a square
    Vec z;               // coordinates of z in C_0
    StructureAlgebra algebra; // F[x]/(x^2 - delta)
};
DiscriminantAlgebra discriminant_algebra(const DiagonalForm& q);

struct SplitComponents {
    Subalgebra plus;
    Subalgebra minus;
    Vec e_plus; // (1 + z/s)/2 with s^2 = delta
    Vec e_minus;
};
/// Requires even rank and square discriminant. s is the positive root over
/// Q and the least residue over F_p.
SplitComponents split_components(const DiagonalForm& q);

/// Index-1 certificate for both components of C_0 of a form whose diagonal
/// entries pair up as <a, b> with -ab a square (a hyperbolic plane each):
/// idempotents p+ in C_0^+ and p- in C_0^- with dim p C_0 p = 1.
struct SplitCertificate {
    bool found = false;
    Vec idempotent_plus;
    Vec idempotent_minus;
    size_t corner_dim_plus = 0;
    size_t corner_dim_minus = 0;
};
SplitCertificate metabolic_split_certificate(const DiagonalForm& q);

/// Exterior-algebra operators on Lambda(F^r), basis subsets of {1..r}.
/// Contraction by the functional t (coefficients on the dual basis).
Matrix exterior_contraction(const Field& f, int r, const Vec& t);
/// Left wedge with v.
Matrix exterior_wedge(const Field& f, int r, const Vec& v);

struct HyperbolicModel {
    int r = 0;
    DiagonalForm diagonal;  // diagonalization of H(F^r)
    Matrix basis;           // diagonal basis in the coordinates (t_1..t_r, v_1..v_r)
    EvenClifford c0;
    CliffordBimodule c1;
    StructureAlgebra target; // End(Lambda^+) x End(Lambda^-)
    AlgebraMorphism phi0;
    Matrix phi1;             // C_1 -> Hom(Lambda^+, Lambda^-) + Hom(Lambda^-, Lambda^+)
    bool phi0_homomorphism = false;
    bool phi0_bijective = false;
    bool phi1_equivariant = false;
    bool phi1_bijective = false;
    Vec idempotent_plus;  // preimage of (1, 0)
    Vec idempotent_minus; // preimage of (0, 1)
};
/// r <= 3 (C_0 of dimension <= 32).
HyperbolicModel hyperbolic_model(const Field& f, int r);

struct SumIsomorphism {
    EvenClifford source;          // C_0(q + q')
    StructureAlgebra target;      // C_0(q) (x) C_0(q') + C_1(q) (x) C_1(q')
    AlgebraMorphism morphism;
    bool homomorphism = false;
    bool bijective = false;
    bool unit_preserving = false;
};
SumIsomorphism sum_isomorphism(const DiagonalForm& q, const DiagonalForm& qp);

/// Entrywise image of q under a field homomorphism; DomainError if an entry
/// maps to zero.
DiagonalForm base_change(const DiagonalForm& q, const Field& target, const std::function<Scalar(const Scalar&)>& map);
DiagonalForm base_change(const DiagonalForm& q, const ReductionMap& map);

} // namespace clifq
