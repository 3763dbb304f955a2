#pragma once

#include "clifq/brauer.hpp"
#include "clifq/forms.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clifq {

/// Element of a total Witt group: one form representative per value label.
/// Over a field the only label is "trivial"; missing labels are zero.
struct TotalWittElement {
    Field field;
    std::map<std::string, DiagonalForm> components;

    TotalWittElement() = default;
    explicit TotalWittElement(Field f) : field(std::move(f)) {}
    static TotalWittElement of(const DiagonalForm& q, const std::string& label = "trivial");

    TotalWittElement operator+(const TotalWittElement& o) const;
    /// Componentwise negation <a_i> -> <-a_i>.
    TotalWittElement operator-() const;
};

/// Total rank mod 2.
int e0(const TotalWittElement& w);
int e0(const DiagonalForm& q);

/// Product of the signed discriminants of the components. DomainError when
/// some component has odd rank.
SquareClass e1(const TotalWittElement& w);
SquareClass e1(const DiagonalForm& q);

/// Sum over components of the class of C_0^+. Components of rank > 4 are
/// first reduced to their anisotropic kernel. DomainError outside I^2
/// (odd rank or nontrivial discriminant); Unsupported when a kernel still
/// exceeds rank 6 or the field is not Q or F_p.
BrauerClass2 e2(const TotalWittElement& w);
BrauerClass2 e2(const DiagonalForm& q);

/// e2(q + q') == e2(q) + e2(q').
bool e2_additivity_check(const DiagonalForm& q, const DiagonalForm& qp);

/// <1, -a, -b, ab> for (a, b) = quaternion_from_class(c), checked to have
/// e2 equal to c (VerificationFailure otherwise).
DiagonalForm construct_preimage(const BrauerClass2& c);

// ------------------------------------------------------------------ residues

/// Second residue of a form over F(t) at a monic irreducible pi (or at
/// infinity when `pi` is empty). `entries` are the residue units, reduced
/// modulo pi (constants at infinity).
struct ResidueData {
    Field base;
    std::optional<Poly> pi;
    std::vector<Poly> entries;

    bool at_infinity() const { return !pi.has_value(); }
    int degree() const { return pi ? pi->degree() : 1; }
    std::string place() const { return pi ? pi->to_string() : "inf"; }
    bool is_zero() const { return entries.empty(); }
};

/// Prime subfield F of a function field F(t).
Field constant_field(const Field& function_field);

ResidueData second_residue(const DiagonalForm& q, const std::optional<Poly>& pi);

/// Transfer W(F[t]/pi) -> W(F) along the functional x -> Tr(x / pi'(theta));
/// at infinity the residue is twisted by -1.
DiagonalForm transfer(const ResidueData& r);

struct ReciprocityReport {
    std::vector<ResidueData> residues; // nonzero residues only
    DiagonalForm total;                // sum of transfers in W(F)
    bool holds = false;
};
ReciprocityReport milnor_reciprocity(const DiagonalForm& q);

/// Sufficient certificate that q over F(t) is extended from F: entries are
/// grouped by the squarefree kernel of num * den; every nonconstant group
/// must have a Witt-trivial coefficient form over F. Returns the constant
/// group as a form over F, or nullopt when the certificate does not apply.
std::optional<DiagonalForm> constant_witt_lift(const DiagonalForm& q);
bool milnor_reciprocity_check(const DiagonalForm& q);

} // namespace clifq
