#include <doctest.h>

#include "clifq/algebras.hpp"
#include "clifq/errors.hpp"

#include <random>

using namespace clifq;

namespace {

const Field Q = Field::rationals();

Scalar qs(long n) { return Scalar::from_int(Q, n); }

// F[x]/(x^2 - c) on the basis 1, x.
StructureAlgebra quadratic_algebra(const Field& f, long c)
{
    std::vector<Scalar> t(8, Scalar::zero(f));
    auto at = [&](int i, int j, int k) -> Scalar& { return t[(i * 2 + j) * 2 + k]; };
    at(0, 0, 0) = Scalar::one(f);
    at(0, 1, 1) = Scalar::one(f);
    at(1, 0, 1) = Scalar::one(f);
    at(1, 1, 0) = Scalar::from_int(f, c);
    return StructureAlgebra::from_dense(f, {"1", "x"}, t, unit_vec(f, 2, 0));
}

StructureAlgebra field_as_algebra(const Field& f) { return matrix_algebra(f, 1); }

Matrix random_invertible(const Field& f, size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> d(-3, 3);
    for (;;) {
        Matrix m(f, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) = Scalar::from_int(f, d(rng));
        if (!m.determinant().is_zero()) return m;
    }
}

} // namespace

TEST_CASE("associativity")
{
    CHECK(check_associative(matrix_algebra(Q, 2)).associative);
    CHECK(check_associative(quaternion(qs(-1), qs(-1))).associative);
    CHECK(check_associative(quaternion(qs(3), qs(-7))).associative);
    CHECK(check_unit(quaternion(qs(3), qs(-7))));
    auto t = quaternion(qs(-1), qs(-1)).dense_table();
    t[(1 * 4 + 2) * 4 + 3] = qs(2); // ij = 2k
    auto bad = StructureAlgebra::from_dense(Q, {"1", "i", "j", "k"}, t, unit_vec(Q, 4, 0));
    auto rep = check_associative(bad);
    CHECK_FALSE(rep.associative);
    REQUIRE(rep.witness.has_value());
    auto [i, j, k] = *rep.witness;
    Vec l = bad.multiply(bad.multiply(bad.basis(i), bad.basis(j)), bad.basis(k));
    Vec r = bad.multiply(bad.basis(i), bad.multiply(bad.basis(j), bad.basis(k)));
    CHECK_FALSE(l == r);
}

TEST_CASE("quaternion (1, b) matches explicit 2x2 matrices")
{
    for (long b : {-3L, 2L, 5L}) {
        auto h = quaternion(qs(1), qs(b));
        auto m2 = matrix_algebra(Q, 2);
        // coordinates on E11, E12, E21, E22
        auto mat = [](long a11, long a12, long a21, long a22) { return Vec{qs(a11), qs(a12), qs(a21), qs(a22)}; };
        Vec i = mat(1, 0, 0, -1), j = mat(0, b, 1, 0);
        Vec k = m2.multiply(i, j);
        Matrix phi(Q, 4, 4);
        std::vector<Vec> img{m2.unit(), i, j, k};
        for (size_t c = 0; c < 4; ++c)
            for (size_t r = 0; r < 4; ++r) phi(r, c) = img[c][r];
        AlgebraMorphism m{h, m2, phi};
        CHECK(m.is_isomorphism());
        CHECK(is_split_quaternion(h));
    }
}

TEST_CASE("center")
{
    CHECK(center(matrix_algebra(Q, 2)).size() == 1);
    CHECK(center(matrix_algebra(Q, 3)).size() == 1);
    CHECK(center(quaternion(qs(2), qs(5))).size() == 1);
    CHECK(center(product(field_as_algebra(Q), field_as_algebra(Q))).size() == 2);
    auto t = tensor(quaternion(qs(-1), qs(-1)), quaternion(qs(2), qs(3)));
    CHECK(t.dim() == 16);
    CHECK(center(t).size() == 1);
    CHECK(check_associative(t).associative);
}

TEST_CASE("central idempotents")
{
    auto ff = product(field_as_algebra(Q), field_as_algebra(Q));
    CHECK(central_idempotents(ff).size() == 4);
    CHECK(central_idempotents(quadratic_algebra(Q, 2)).size() == 2);
    auto q1 = quadratic_algebra(Q, 1);
    auto ids = central_idempotents(q1);
    REQUIRE(ids.size() == 4);
    for (const auto& e : ids) CHECK(q1.multiply(e, e) == e);
    Scalar half(Q, Rational(1, 2));
    CHECK(ids[2] == Vec{half, half});
    CHECK(ids[3] == Vec{half, -half});
    auto f7 = quadratic_algebra(Field::prime_field(7), 2);
    CHECK(central_idempotents(f7).size() == 4);
    auto f3 = product(product(field_as_algebra(Q), field_as_algebra(Q)), field_as_algebra(Q));
    CHECK_THROWS_AS(central_idempotents(f3), Unsupported);
}

TEST_CASE("tensor, opposite, matrix algebras")
{
    auto h = quaternion(qs(-1), qs(3));
    auto m3 = matrix_algebra(Q, 3);
    CHECK(tensor(h, m3).dim() == 36);
    CHECK(opposite(opposite(h)) == h);
    auto t1 = tensor(h, matrix_algebra(Q, 1));
    CHECK(t1.dense_table() == h.dense_table());
    auto op = opposite(h);
    CHECK(check_associative(op).associative);
    CHECK(center(op).size() == center(h).size());
    CHECK(is_involution(m3, *m3.involution()));
    CHECK(is_involution(h, *h.involution()));
    auto tt = tensor(h, quaternion(qs(2), qs(5)));
    CHECK(is_involution(tt, *tt.involution()));
}

TEST_CASE("quaternion involution fixes only scalars")
{
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int n = 0; n < 30; ++n) {
        long a = 0, b = 0;
        while (!a) a = d(rng);
        while (!b) b = d(rng);
        auto h = quaternion(qs(a), qs(b));
        Matrix fix = *h.involution() - Matrix::identity(Q, 4);
        auto ker = fix.nullspace();
        REQUIRE(ker.size() == 1);
        CHECK(h.as_scalar(ker[0]).has_value());
    }
}

TEST_CASE("splitting of quaternions")
{
    CHECK_FALSE(is_split_quaternion(quaternion(qs(-1), qs(-1))));
    CHECK(is_split_quaternion(quaternion(qs(1), qs(-1))));
    CHECK(is_split_quaternion(quaternion(qs(-1), qs(2))));
    CHECK_FALSE(is_split_quaternion(quaternion(qs(-1), qs(3))));
    for (long p : {3L, 5L, 7L}) {
        Field f = Field::prime_field(p);
        for (long a = 1; a < p; ++a)
            for (long b = 1; b < p; ++b) {
                // x^2 - a y^2 - b z^2 = 0 has a nonzero solution mod p
                bool found = false;
                for (long x = 0; x < p && !found; ++x)
                    for (long y = 0; y < p && !found; ++y)
                        for (long z = 0; z < p && !found; ++z)
                            found = (x || y || z) && (x * x - a * y * y - b * z * z) % p == 0;
                CHECK(found);
                CHECK(is_split_quaternion(quaternion(Scalar::from_int(f, a), Scalar::from_int(f, b))));
            }
    }
}

TEST_CASE("quaternion basis extraction")
{
    auto std_basis = find_quaternion_basis(quaternion(qs(-1), qs(-1)));
    CHECK(std_basis.a == qs(-1));
    CHECK(std_basis.b == qs(-1));

    std::mt19937_64 rng(17);
    for (int n = 0; n < 20; ++n) {
        auto h = quaternion(qs(-1), qs(-1));
        auto conj = transport(h, random_invertible(Q, 4, rng));
        auto qb = find_quaternion_basis(conj);
        for (auto v : nt::relevant_places({qb.a.rational(), qb.b.rational()}))
            CHECK(nt::hilbert_symbol(qb.a.rational(), qb.b.rational(), v) == (v.prime() == 2 || v.is_infinite() ? -1 : 1));
        CHECK_FALSE(is_split_quaternion(conj));
    }
    auto ffff = product(product(field_as_algebra(Q), field_as_algebra(Q)), product(field_as_algebra(Q), field_as_algebra(Q)));
    CHECK_THROWS_AS(find_quaternion_basis(ffff), DomainError);
    CHECK_THROWS_AS(find_quaternion_basis(matrix_algebra(Q, 3)), DomainError);
}

TEST_CASE("corners and transport")
{
    auto ff = product(quaternion(qs(-1), qs(-1)), matrix_algebra(Q, 2));
    auto ids = central_idempotents(ff);
    REQUIRE(ids.size() == 4);
    auto c = corner(ff, ids[2]);
    CHECK(c.algebra.dim() == 4);
    CHECK(check_associative(c.algebra).associative);
    CHECK(check_unit(c.algebra));
    auto d = corner(ff, ids[3]);
    CHECK(is_split_quaternion(c.algebra) != is_split_quaternion(d.algebra));

    std::mt19937_64 rng(1);
    auto h = quaternion(qs(2), qs(3));
    Matrix p = random_invertible(Q, 4, rng);
    auto t = transport(h, p);
    CHECK(check_associative(t).associative);
    CHECK(check_unit(t));
    CHECK(is_involution(t, *t.involution()));
    AlgebraMorphism m{t, h, p};
    CHECK(m.is_isomorphism());
}

TEST_CASE("trace form detects semisimplicity")
{
    CHECK_FALSE(trace_form(quaternion(qs(2), qs(3))).determinant().is_zero());
    // dual numbers F[x]/(x^2)
    std::vector<Scalar> t(8, Scalar::zero(Q));
    t[0] = qs(1);
    t[3] = qs(1);
    t[5] = qs(1);
    auto dual = StructureAlgebra::from_dense(Q, {"1", "x"}, t, unit_vec(Q, 2, 0));
    CHECK(trace_form(dual).determinant().is_zero());
}
