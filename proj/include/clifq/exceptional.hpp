#pragma once

#include "clifq/brauer.hpp"
#include "clifq/forms.hpp"

namespace clifq {

/// <1, -a, -b, ab>, the reduced norm of quaternion(a, b) on the basis 1, i, j, k.
struct NormFormData {
    Scalar a, b;
    DiagonalForm form;
};
NormFormData reduced_norm_form(const Scalar& a, const Scalar& b);
/// q(x p) == Nrd(x) q(p) on `samples` pseudo-random pairs (seeded).
bool norm_multiplicativity_check(const NormFormData& n, int samples, unsigned long seed);

/// Both components of C_0(<1, -a, -b, ab>) have the class of (a, b).
bool norm_roundtrip_check(const Scalar& a, const Scalar& b);

/// <a, b, -ab, -c, -d, cd>.
struct AlbertFormData {
    Scalar a, b, c, d;
    DiagonalForm form;
};
AlbertFormData albert_form(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

/// A = (a, b) (x) (c, d) with sigma the tensor product of the conjugations.
/// psi is the sandwich image x -> sum_i e_i x sigma(e_i^*) of the Goldman
/// element sum_i e_i (x) e_i^* (dual basis for the reduced trace).
struct PfaffianSpaceData {
    StructureAlgebra ambient;
    Matrix psi;
    std::vector<Vec> alternating; // basis of im(id - psi)
    DiagonalForm form;            // x -> -x rho(x), rho conjugating the first factor
    bool psi_involutory = false;
    bool psi_is_sigma = false;
    bool similar_to_albert = false;
};
/// VerificationFailure when dim im(id - psi) != 6.
PfaffianSpaceData pfaffian_space(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

struct PfaffianRoundtrip {
    BrauerClass2 albert_class;   // e2 of the Albert form
    BrauerClass2 expected;       // (a, b) + (c, d)
    size_t component_dim = 0;    // dim of C_0^+ of the Albert form
    bool holds = false;
};
/// Over Q.
PfaffianRoundtrip pfaffian_roundtrip(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);
bool pfaffian_roundtrip_check(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

/// Pic(F)/2 = 0 over a field: always the trivial class, reported as 0.
int pfaffian_invariant_field(const StructureAlgebra& a);

} // namespace clifq
