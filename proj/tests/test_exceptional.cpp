#include <doctest.h>

#include "clifq/errors.hpp"
#include "clifq/exceptional.hpp"
#include "clifq/invariants.hpp"

#include <random>

using namespace clifq;

namespace {

const Field Q = Field::rationals();
using nt::Place;

Scalar qs(long n) { return Scalar::from_int(Q, n); }

long nonzero(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    long x = 0;
    while (!x) x = d(rng);
    return x;
}

} // namespace

TEST_CASE("reduced norm forms")
{
    CHECK(reduced_norm_form(qs(1), qs(1)).form == DiagonalForm::of_ints(Q, {1, -1, -1, 1}));
    CHECK(is_witt_trivial(reduced_norm_form(qs(1), qs(1)).form));
    CHECK(reduced_norm_form(qs(-1), qs(-1)).form == DiagonalForm::of_ints(Q, {1, 1, 1, 1}));
    CHECK_THROWS_AS(reduced_norm_form(qs(0), qs(1)), DomainError);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        auto n = reduced_norm_form(qs(nonzero(rng, 50)), qs(nonzero(rng, 50)));
        CHECK(signed_discriminant(n.form).is_trivial());
        CHECK(norm_multiplicativity_check(n, 5, static_cast<unsigned long>(k)));
    }
    // 100 pairs q(p p') = q(p) q(p')
    CHECK(norm_multiplicativity_check(reduced_norm_form(qs(-3), qs(7)), 100, 99));
    CHECK(norm_multiplicativity_check(reduced_norm_form(Scalar::from_int(Field::prime_field(7), 3),
                                                        Scalar::from_int(Field::prime_field(7), 5)),
                                      50, 1));
}

TEST_CASE("norm round trip")
{
    CHECK(norm_roundtrip_check(qs(-1), qs(-1)));
    for (long b : {-7L, 2L, 3L}) CHECK(norm_roundtrip_check(qs(1), qs(b)));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) CHECK(norm_roundtrip_check(qs(nonzero(rng, 50)), qs(nonzero(rng, 50))));
    const Field F5 = Field::prime_field(5);
    CHECK(norm_roundtrip_check(Scalar::from_int(F5, 2), Scalar::from_int(F5, 3)));
}

TEST_CASE("Albert forms")
{
    auto a = albert_form(qs(1), qs(1), qs(1), qs(1));
    CHECK(a.form == DiagonalForm::of_ints(Q, {1, 1, -1, -1, -1, 1}));
    CHECK(is_witt_trivial(a.form));
    CHECK(e2(a.form).is_trivial());
    auto m = albert_form(qs(-1), qs(-1), qs(-1), qs(-1));
    CHECK(is_isotropic(m.form));
    CHECK(e2(m.form).is_trivial());
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        Scalar x = qs(nonzero(rng, 30)), y = qs(nonzero(rng, 30)), z = qs(nonzero(rng, 30)), w = qs(nonzero(rng, 30));
        auto f = albert_form(x, y, z, w);
        CHECK(signed_discriminant(f.form).is_trivial());
        auto sum = add(class_of_quaternion(x.rational(), y.rational()), class_of_quaternion(z.rational(), w.rational()));
        CHECK(is_isotropic(f.form) == (index(sum) <= 2));
        Scalar n = qs(nonzero(rng, 20));
        CHECK(e2(twist(f.form, n)) == e2(f.form));
    }
}

TEST_CASE("pfaffian space")
{
    for (auto p : {std::array<long, 4>{1, 1, 1, 1}, std::array<long, 4>{-1, -1, -1, 3}, std::array<long, 4>{2, -5, 3, 7}}) {
        auto s = pfaffian_space(qs(p[0]), qs(p[1]), qs(p[2]), qs(p[3]));
        CHECK(s.alternating.size() == 6);
        CHECK(s.psi_involutory);
        CHECK(s.psi_is_sigma);
        CHECK(s.similar_to_albert);
    }
    std::mt19937_64 rng(4);
    for (int k = 0; k < 5; ++k) {
        auto s = pfaffian_space(qs(nonzero(rng, 20)), qs(nonzero(rng, 20)), qs(nonzero(rng, 20)), qs(nonzero(rng, 20)));
        CHECK(s.psi_involutory);
        CHECK(s.alternating.size() == 6);
        CHECK(s.similar_to_albert);
    }
    const Field F7 = Field::prime_field(7);
    auto s7 = pfaffian_space(Scalar::from_int(F7, 3), Scalar::from_int(F7, 5), Scalar::from_int(F7, 6), Scalar::from_int(F7, 2));
    CHECK(s7.psi_involutory);
    CHECK(s7.similar_to_albert);
}

TEST_CASE("pfaffian round trip")
{
    auto r = pfaffian_roundtrip(qs(-1), qs(-1), qs(-1), qs(-1));
    CHECK(r.holds);
    CHECK(r.albert_class.is_trivial());
    auto r2 = pfaffian_roundtrip(qs(-1), qs(-1), qs(-1), qs(3));
    CHECK(r2.holds);
    CHECK(r2.albert_class == BrauerClass2({Place::finite(3), Place::infinity()}));
    CHECK(r2.component_dim == 16);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k)
        CHECK(pfaffian_roundtrip_check(qs(nonzero(rng, 30)), qs(nonzero(rng, 30)), qs(nonzero(rng, 30)), qs(nonzero(rng, 30))));
}

TEST_CASE("pfaffian invariant over a field is trivial")
{
    CHECK(pfaffian_invariant_field(tensor(quaternion(qs(-1), qs(-1)), quaternion(qs(2), qs(3)))) == 0);
    CHECK(pfaffian_invariant_field(matrix_algebra(Q, 4)) == 0);
    CHECK(pfaffian_invariant_field(tensor(quaternion(qs(1), qs(1)), quaternion(qs(5), qs(-7)))) == 0);
    CHECK_THROWS_AS(pfaffian_invariant_field(matrix_algebra(Q, 2)), DomainError);
}
