#include <doctest.h>

#include "clifq/brauer.hpp"
#include "clifq/clifford.hpp"
#include "clifq/errors.hpp"

#include <random>

using namespace clifq;

namespace {

const Field Q = Field::rationals();

Scalar qs(long n) { return Scalar::from_int(Q, n); }

DiagonalForm random_form(const Field& f, size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> d(-12, 12);
    std::vector<Scalar> e;
    while (e.size() < n) {
        Scalar s = Scalar::from_int(f, d(rng));
        if (!s.is_zero()) e.push_back(s);
    }
    return DiagonalForm(f, e);
}

Vec random_vec(const Field& f, size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> d(-5, 5);
    Vec v;
    for (size_t i = 0; i < n; ++i) v.push_back(Scalar::from_int(f, d(rng)));
    return v;
}

// Independent model: words in the generators reduced by bubble sort, e_i e_i = a_i.
std::pair<Scalar, uint32_t> reduce_word(const DiagonalForm& q, std::vector<int> w)
{
    Scalar c = Scalar::one(q.field);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k + 1 < w.size(); ++k) {
            if (w[k] == w[k + 1]) {
                c *= q.entries[static_cast<size_t>(w[k])];
                w.erase(w.begin() + static_cast<long>(k), w.begin() + static_cast<long>(k) + 2);
                changed = true;
                break;
            }
            if (w[k] > w[k + 1]) {
                std::swap(w[k], w[k + 1]);
                c = -c;
                changed = true;
                break;
            }
        }
    }
    uint32_t s = 0;
    for (int i : w) s |= 1u << i;
    return {c, s};
}

std::vector<int> word_of(uint32_t s)
{
    std::vector<int> w;
    for (int i = 0; i < 32; ++i)
        if (s >> i & 1) w.push_back(i);
    return w;
}

} // namespace

TEST_CASE("monomial products agree with word reduction")
{
    std::mt19937_64 rng(11);
    for (size_t n = 1; n <= 5; ++n) {
        auto q = random_form(Q, n, rng);
        CliffordMonomials cm(q);
        for (uint32_t s = 0; s < (1u << n); ++s)
            for (uint32_t t = 0; t < (1u << n); ++t) {
                auto w = word_of(s);
                auto wt = word_of(t);
                w.insert(w.end(), wt.begin(), wt.end());
                auto expect = reduce_word(q, w);
                auto got = cm.mul(s, t);
                CHECK(got.first == expect.first);
                CHECK(got.second == expect.second);
            }
    }
}

TEST_CASE("dimensions and associativity")
{
    std::mt19937_64 rng(5);
    for (const Field& f : {Q, Field::prime_field(3), Field::prime_field(5), Field::prime_field(7), Field::prime_field(11)})
        for (size_t n = 1; n <= 7; ++n) {
            auto q = random_form(f, n, rng);
            auto c = even_clifford(q);
            auto b = clifford_bimodule(q);
            CHECK(c.dim() == (size_t{1} << (n - 1)));
            CHECK(b.dim() == (size_t{1} << (n - 1)));
            if (n <= 5) {
                CHECK(check_associative(c.algebra).associative);
                CHECK(check_unit(c.algebra));
            }
        }
    CHECK_THROWS_AS(even_clifford(random_form(Q, 8, rng)), BoundExceeded);
}

TEST_CASE("even Clifford examples")
{
    auto c1 = even_clifford(DiagonalForm::of_ints(Q, {7}));
    CHECK(c1.dim() == 1);
    for (long a : {2L, -3L})
        for (long b : {5L, -1L}) {
            auto c = even_clifford(DiagonalForm::of_ints(Q, {a, b}));
            Vec g = c.generator(0, 1);
            CHECK(c.algebra.multiply(g, g) == c.algebra.scalar(qs(-a * b)));
        }
    auto c = even_clifford(DiagonalForm::of_ints(Q, {1, 1, 1}));
    CHECK(c.dim() == 4);
    CHECK(center(c.algebra).size() == 1);
    auto qb = find_quaternion_basis(c.algebra);
    CHECK(class_of_quaternion(qb.a.rational(), qb.b.rational()) == BrauerClass2({nt::Place::finite(2), nt::Place::infinity()}));
    // relations (e_i e_j)(e_j e_k) = a_j e_i e_k
    std::mt19937_64 rng(2);
    auto q = random_form(Q, 4, rng);
    auto c4 = even_clifford(q);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            for (size_t k = 0; k < 4; ++k)
                CHECK(c4.algebra.multiply(c4.generator(i, j), c4.generator(j, k)) ==
                      scale(q.entries[j], c4.generator(i, k)));
}

TEST_CASE("bimodule")
{
    auto q = DiagonalForm::of_ints(Q, {3, -5});
    auto c0 = even_clifford(q);
    auto c1 = clifford_bimodule(q);
    CHECK(c1.left(c0, c0.generator(0, 1), c1.embed(0)) == scale(qs(-3), c1.embed(1)));
    CHECK(bimodule_mult(c0, c1, c1.embed(0), c1.embed(0)) == c0.algebra.scalar(qs(3)));
    CHECK(bimodule_mult(c0, c1, c1.embed(0), c1.embed(1)) == c0.generator(0, 1));
    auto other = even_clifford(DiagonalForm::of_ints(Q, {3, 5}));
    CHECK_THROWS_AS(bimodule_mult(other, c1, c1.embed(0), c1.embed(0)), DomainError);

    std::mt19937_64 rng(8);
    for (size_t n = 1; n <= 5; ++n) {
        auto f = random_form(Q, n, rng);
        auto a0 = even_clifford(f);
        auto a1 = clifford_bimodule(f);
        for (size_t i = 0; i < n; ++i)
            CHECK(bimodule_mult(a0, a1, a1.embed(i), a1.embed(i)) == a0.algebra.scalar(f.entries[i]));
        for (int t = 0; t < 20; ++t) {
            Vec v = random_vec(Q, n, rng);
            Vec iv = zero_vec(Q, a1.dim());
            for (size_t i = 0; i < n; ++i) iv = add(iv, scale(v[i], a1.embed(i)));
            CHECK(bimodule_mult(a0, a1, iv, iv) == a0.algebra.scalar(f.to_form().value(v)));
            Vec x = random_vec(Q, a1.dim(), rng), y = random_vec(Q, a1.dim(), rng), c = random_vec(Q, a0.dim(), rng);
            // balanced over C_0
            CHECK(bimodule_mult(a0, a1, a1.right(a0, x, c), y) == bimodule_mult(a0, a1, x, a1.left(a0, c, y)));
            // left and right actions commute
            Vec d = random_vec(Q, a0.dim(), rng);
            CHECK(a1.right(a0, a1.left(a0, c, x), d) == a1.left(a0, c, a1.right(a0, x, d)));
        }
        // action matrices of the generators e_1 e_j are invertible
        for (size_t j = 0; j < n; ++j) {
            CHECK_FALSE(a1.left_matrix(a0, a0.generator(0, j)).determinant().is_zero());
            CHECK_FALSE(a1.right_matrix(a0, a0.generator(0, j)).determinant().is_zero());
        }
    }
}

TEST_CASE("canonical involution")
{
    auto q2 = DiagonalForm::of_ints(Q, {2, 3});
    auto c2 = even_clifford(q2);
    auto tau = canonical_involution(c2);
    CHECK(tau.apply(c2.generator(0, 1)) == scale(qs(-1), c2.generator(0, 1)));
    std::mt19937_64 rng(3);
    for (size_t n = 2; n <= 6; ++n) {
        auto c = even_clifford(random_form(Q, n, rng));
        auto t = canonical_involution(c);
        CHECK(t * t == Matrix::identity(Q, c.dim()));
        CHECK(is_involution(c.algebra, t));
        for (int k = 0; k < 100 / 5; ++k) {
            Vec x = random_vec(Q, c.dim(), rng), y = random_vec(Q, c.dim(), rng);
            CHECK(t.apply(c.algebra.multiply(x, y)) == c.algebra.multiply(t.apply(y), t.apply(x)));
        }
        // tau(e_i e_j) = e_j e_i
        CHECK(t.apply(c.generator(0, 1)) == c.generator(1, 0));
    }
}

TEST_CASE("center and discriminant")
{
    std::mt19937_64 rng(21);
    for (const Field& f : {Q, Field::prime_field(5), Field::prime_field(7)})
        for (size_t n = 1; n <= 6; ++n) {
            auto q = random_form(f, n, rng);
            auto c = even_clifford(q);
            CHECK(center(c.algebra).size() == (n % 2 ? 1u : 2u));
            if (n % 2 == 0) {
                auto d = discriminant_algebra(q);
                CHECK(*d.klass == signed_discriminant(q));
                CHECK(d.split == d.delta.is_square());
            } else {
                CHECK_THROWS_AS(discriminant_algebra(q), DomainError);
            }
        }
    CHECK(discriminant_algebra(DiagonalForm::of_ints(Q, {1, -1})).split);
    auto d11 = discriminant_algebra(DiagonalForm::of_ints(Q, {1, 1}));
    CHECK_FALSE(d11.split);
    CHECK(d11.delta == qs(-1));
    CHECK(discriminant_algebra(DiagonalForm::of_ints(Q, {2, 3, 5, 7})).delta == qs(210));
}

TEST_CASE("split components")
{
    auto s = split_components(DiagonalForm::of_ints(Q, {1, -1}));
    CHECK(s.plus.algebra.dim() == 1);
    CHECK(s.minus.algebra.dim() == 1);
    auto h = split_components(DiagonalForm::of_ints(Q, {1, 1, 1, 1}));
    for (const auto* comp : {&h.plus, &h.minus}) {
        REQUIRE(comp->algebra.dim() == 4);
        CHECK(check_associative(comp->algebra).associative);
        CHECK(class_of_algebra(comp->algebra) == BrauerClass2({nt::Place::finite(2), nt::Place::infinity()}));
    }
    auto hyp = split_components(DiagonalForm::of_ints(Q, {1, -1, 1, -1}));
    CHECK(is_split_quaternion(hyp.plus.algebra));
    CHECK(is_split_quaternion(hyp.minus.algebra));
    CHECK_THROWS_AS(split_components(DiagonalForm::of_ints(Q, {1, 1})), DomainError);
    // over F_p the least residue root labels the components
    auto fp = split_components(DiagonalForm::of_ints(Field::prime_field(5), {1, 1}));
    CHECK(fp.plus.algebra.dim() == 1);
}

TEST_CASE("semilinearity and involution type")
{
    std::mt19937_64 rng(13);
    for (size_t n : {2u, 4u, 6u}) {
        auto q = random_form(Q, n, rng);
        auto c0 = even_clifford(q);
        auto c1 = clifford_bimodule(q);
        Vec z = c0.monomial((1u << n) - 1);
        Vec iz = scale(qs(-1), z);
        CHECK(c1.right_matrix(c0, z) == c1.left_matrix(c0, iz));
    }
    for (size_t n : {2u, 4u, 6u}) {
        // trivial discriminant: <1, -1, ..., 1, -1>
        std::vector<long> e;
        for (size_t i = 0; i < n / 2; ++i) {
            e.push_back(static_cast<long>(i) + 1);
            e.push_back(-static_cast<long>(i) - 1);
        }
        auto q = DiagonalForm::of_ints(Q, e);
        auto sc = split_components(q);
        auto tau = canonical_involution(even_clifford(q));
        if (n % 4 == 2) {
            CHECK(tau.apply(sc.e_plus) == sc.e_minus);
        } else {
            CHECK(tau.apply(sc.e_plus) == sc.e_plus);
        }
    }
}

TEST_CASE("exterior operators")
{
    std::mt19937_64 rng(31);
    for (int r = 1; r <= 4; ++r) {
        const size_t d = size_t{1} << r;
        for (int k = 0; k < 10; ++k) {
            Vec t = random_vec(Q, static_cast<size_t>(r), rng), v = random_vec(Q, static_cast<size_t>(r), rng);
            Matrix dt = exterior_contraction(Q, r, t), lv = exterior_wedge(Q, r, v);
            CHECK(dt * dt == Matrix(Q, d, d));
            CHECK(lv * lv == Matrix(Q, d, d));
            Scalar tv = Scalar::zero(Q);
            for (int i = 0; i < r; ++i) tv += t[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
            // d_t l_v + l_v d_t = t(v)
            CHECK(dt * lv + lv * dt == Matrix::identity(Q, d).scaled(tv));
        }
    }
}

TEST_CASE("hyperbolic model")
{
    for (const Field& f : {Q, Field::prime_field(3), Field::prime_field(7)})
        for (int r = 1; r <= 3; ++r) {
            auto hm = hyperbolic_model(f, r);
            CHECK(hm.c0.dim() == (size_t{1} << (2 * r - 1)));
            CHECK(hm.phi0_homomorphism);
            CHECK(hm.phi0_bijective);
            CHECK(hm.phi1_equivariant);
            CHECK(hm.phi1_bijective);
            CHECK(hm.c0.algebra.multiply(hm.idempotent_plus, hm.idempotent_plus) == hm.idempotent_plus);
            CHECK(add(hm.idempotent_plus, hm.idempotent_minus) == hm.c0.algebra.unit());
            if (f == Q && r == 2) {
                auto sc = split_components(hm.diagonal);
                CHECK(is_split_quaternion(sc.plus.algebra));
                CHECK(is_split_quaternion(sc.minus.algebra));
            }
        }
    auto r1 = hyperbolic_model(Q, 1);
    CHECK(discriminant_algebra(r1.diagonal).split);
    CHECK_THROWS_AS(hyperbolic_model(Q, 4), BoundExceeded);
    CHECK_THROWS_AS(hyperbolic_model(Q, 0), DomainError);
}

TEST_CASE("orthogonal sum isomorphism")
{
    auto ab = sum_isomorphism(DiagonalForm::of_ints(Q, {2}), DiagonalForm::of_ints(Q, {-3}));
    REQUIRE(ab.target.dim() == 2);
    Vec x = ab.target.basis(1);
    CHECK(ab.target.multiply(x, x) == ab.target.scalar(qs(6)));
    CHECK(ab.homomorphism);
    CHECK(ab.bijective);

    std::mt19937_64 rng(77);
    for (const Field& f : {Q, Field::prime_field(3), Field::prime_field(5), Field::prime_field(7)})
        for (size_t n = 1; n <= 5; ++n)
            for (size_t np = 1; n + np <= 6; ++np) {
                auto s = sum_isomorphism(random_form(f, n, rng), random_form(f, np, rng));
                CHECK(s.unit_preserving);
                CHECK(s.homomorphism);
                CHECK(s.bijective);
            }
    CHECK_THROWS_AS(sum_isomorphism(DiagonalForm::of_ints(Q, {1}), DiagonalForm::of_ints(Field::prime_field(3), {1})),
                    DomainError);
}

TEST_CASE("base change")
{
    auto red = ReductionMap::rational_to(5);
    auto q = base_change(DiagonalForm::of_ints(Q, {1, -1}), red);
    CHECK(q == DiagonalForm::of_ints(Field::prime_field(5), {1, 4}));
    CHECK_THROWS_AS(base_change(DiagonalForm::of_ints(Q, {1, 10}), red), DomainError);
    std::mt19937_64 rng(9);
    for (long p : {3L, 7L, 11L}) {
        auto rp = ReductionMap::rational_to(p);
        for (size_t n = 1; n <= 4; ++n) {
            DiagonalForm f = random_form(Q, n, rng);
            bool good = true;
            for (const auto& a : f.entries) good = good && !rp(a).is_zero();
            if (!good) continue;
            auto lhs = even_clifford(base_change(f, rp)).algebra.dense_table();
            auto rhs = even_clifford(f).algebra.dense_table();
            REQUIRE(lhs.size() == rhs.size());
            for (size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == rp(rhs[i]));
        }
    }
}

TEST_CASE("metabolic split certificates")
{
    for (const Field& f : {Field::rationals(), Field::prime_field(3), Field::prime_field(7)}) {
        for (long r = 1; r <= 3; ++r) {
            std::vector<long> a;
            for (long k = 0; k < r; ++k) {
                const long v[] = {1, 2, 5};
                a.push_back(v[k]);
                a.push_back(-v[k]);
            }
            auto c = metabolic_split_certificate(DiagonalForm::of_ints(f, a));
            CHECK(c.found);
            CHECK(c.corner_dim_plus == 1);
            CHECK(c.corner_dim_minus == 1);
            DiagonalForm h(f, {});
            for (long k = 0; k < r; ++k) h = orthogonal_sum(h, diagonal_of(hyperbolic(f, 1)));
            CHECK(metabolic_split_certificate(h).found);
        }
    }
    CHECK(!metabolic_split_certificate(DiagonalForm::of_ints(Field::rationals(), {1, 1, 1, 1})).found);
    CHECK_THROWS_AS(metabolic_split_certificate(DiagonalForm::of_ints(Field::rationals(), {1, -1, 1})), DomainError);
}
