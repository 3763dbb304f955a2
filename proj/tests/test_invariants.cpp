#include <doctest.h>

#include "clifq/errors.hpp"
#include "clifq/invariants.hpp"

#include <random>

using namespace clifq;

namespace {

const Field Q = Field::rationals();
using nt::Place;

DiagonalForm dform(const std::vector<long>& a) { return DiagonalForm::of_ints(Q, a); }

DiagonalForm norm_form(long a, long b) { return dform({1, -a, -b, a * b}); }

// Clifford invariant from Hasse invariants and the determinant, case by n mod 8.
BrauerClass2 lam_oracle(const DiagonalForm& q)
{
    const size_t n = q.rank();
    Rational d = 1;
    for (const auto& a : q.entries) d *= a.rational();
    std::set<Place> out;
    for (const auto& v : relevant_places(q)) {
        int c = hasse_invariant(q, v);
        switch (n % 8) {
        case 3: case 4: c *= nt::hilbert_symbol(-1, Rational(-d), v); break;
        case 5: case 6: c *= nt::hilbert_symbol(-1, -1, v); break;
        case 7: case 0: c *= nt::hilbert_symbol(-1, d, v); break;
        default: break;
        }
        if (c < 0) out.insert(v);
    }
    return BrauerClass2(out);
}

// random element of I^2(Q): twisted norm forms plus hyperbolic planes
DiagonalForm random_i2(std::mt19937_64& rng, size_t blocks)
{
    std::uniform_int_distribution<long> d(-15, 15);
    auto nz = [&] {
        long x = 0;
        while (!x) x = d(rng);
        return x;
    };
    DiagonalForm q(Q, {});
    for (size_t i = 0; i < blocks; ++i) {
        DiagonalForm b = rng() % 3 ? norm_form(nz(), nz()) : dform({nz(), -1, 1, 1});
        if (b.entries[1] == Scalar::from_int(Q, -1) && b.entries[2] == Scalar::from_int(Q, 1)) {
            long x = b.entries[0].rational().get_num().get_si();
            b = dform({x, -x, 1, -1});
        }
        q = orthogonal_sum(q, twist(b, Scalar::from_int(Q, nz())));
    }
    return q;
}

Poly qpoly(const std::vector<long>& c, long p = 0)
{
    std::vector<Rational> r;
    for (long x : c) r.emplace_back(x);
    return Poly(p, r);
}

Scalar rf(const Field& f, const Poly& num, const Poly& den) { return Scalar::ratfunc(f, num, den); }
Scalar rf(const Field& f, const Poly& num) { return rf(f, num, Poly::constant(1, f.characteristic())); }

} // namespace

TEST_CASE("e0 and e1")
{
    CHECK(e0(dform({1, -1})) == 0);
    CHECK(e0(dform({1, 1, 1})) == 1);
    CHECK(e0(diagonal_of(hyperbolic(Q, 2))) == 0);
    for (long a : {2L, -3L, 5L, 6L})
        CHECK(e1(dform({1, -a})) == square_class(Scalar::from_int(Q, a)));
    CHECK(e1(dform({1, -2, 1, -3})) == square_class(Scalar::from_int(Q, 6)));
    CHECK(e1(diagonal_of(hyperbolic(Q, 3))).is_trivial());
    CHECK_THROWS_AS(e1(dform({1, 2, 3})), DomainError);

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> d(-30, 30);
    for (int k = 0; k < 100; ++k) {
        std::vector<long> a, b;
        for (int i = 0; i < 2 + 2 * (k % 2); ++i) {
            long x = 0, y = 0;
            while (!x) x = d(rng);
            while (!y) y = d(rng);
            a.push_back(x);
            b.push_back(y);
        }
        auto q = dform(a), r = dform(b);
        CHECK(e0(orthogonal_sum(q, r)) == (e0(q) ^ e0(r)));
        CHECK(e1(orthogonal_sum(q, r)) == e1(q) * e1(r));
        auto w = TotalWittElement::of(q) + TotalWittElement::of(r);
        CHECK(e1(w) == e1(orthogonal_sum(q, r)));
    }
}

TEST_CASE("e2 examples")
{
    CHECK(e2(diagonal_of(hyperbolic(Q, 2))).is_trivial());
    CHECK(e2(dform({1, 1, 1, 1})) == BrauerClass2({Place::finite(2), Place::infinity()}));
    CHECK(e2(dform({1, 1, -3, -3})) == BrauerClass2({Place::finite(2), Place::finite(3)}));
    CHECK_THROWS_AS(e2(dform({1, 1})), DomainError);
    CHECK_THROWS_AS(e2(dform({1, 1, 1})), DomainError);
    CHECK(e2(DiagonalForm::of_ints(Field::prime_field(5), {1, 1, 1, 1})).finite_field);
}

TEST_CASE("e2 agrees with the Hasse-invariant formula")
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 60; ++k) {
        auto q = random_i2(rng, 1 + static_cast<size_t>(k % 2));
        CHECK(e2(q) == lam_oracle(q));
    }
}

TEST_CASE("e2 is additive, twist invariant and kills metabolic forms")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int k = 0; k < 100; ++k) {
        auto q = random_i2(rng, 1), r = random_i2(rng, 1);
        CHECK(e2_additivity_check(q, r));
        if (k < 30) {
            long n = 0;
            while (!n) n = d(rng);
            CHECK(e2(twist(q, Scalar::from_int(Q, n))) == e2(q));
        }
    }
    CHECK(e2_additivity_check(dform({1, 1, 1, 1}), diagonal_of(hyperbolic(Q, 2))));
    auto s = e2(orthogonal_sum(norm_form(-1, -1), norm_form(-1, 3)));
    CHECK(s == BrauerClass2({Place::finite(3), Place::infinity()}));
    auto q = norm_form(-1, 7);
    CHECK(e2(orthogonal_sum(q, q)).is_trivial());
    for (int r = 1; r <= 4; ++r) CHECK(e2(diagonal_of(hyperbolic(Q, r))).is_trivial());
    auto tw = TotalWittElement::of(norm_form(-1, -1)) + TotalWittElement::of(norm_form(2, 5), "other");
    CHECK(e2(tw) == add(e2(norm_form(-1, -1)), e2(norm_form(2, 5))));
}

TEST_CASE("construct preimage")
{
    CHECK(construct_preimage(BrauerClass2{}) == dform({1, -1, -1, 1}));
    CHECK(construct_preimage(BrauerClass2({Place::finite(2), Place::infinity()})) == dform({1, 1, 1, 1}));
    CHECK(construct_preimage(BrauerClass2({Place::finite(2), Place::finite(3)})) == dform({1, 1, -3, -3}));
    std::vector<Place> pool{Place::finite(2), Place::finite(3), Place::finite(5), Place::finite(7), Place::finite(11),
                            Place::infinity()};
    int count = 0;
    for (unsigned mask = 0; mask < 64; ++mask) {
        if (std::popcount(mask) % 2) continue;
        std::set<Place> s;
        for (size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) s.insert(pool[i]);
        BrauerClass2 c(s);
        CHECK(e2(construct_preimage(c)) == c);
        ++count;
    }
    CHECK(count == 32);
}

TEST_CASE("second residues")
{
    const Field QT = Field::function_field(0);
    Poly t = Poly::t(0);
    auto r = second_residue(DiagonalForm(QT, {rf(QT, t)}), t);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0] == Poly::constant(1));
    CHECK(second_residue(DiagonalForm(QT, {rf(QT, qpoly({1, 1}))}), t).is_zero());
    auto ra = second_residue(DiagonalForm(QT, {rf(QT, t.scaled(5))}), t);
    CHECK(ra.entries[0] == Poly::constant(5));
    // <t^3 (t+2) / (t^2+1)> at t: unit (t+2)/(t^2+1) -> 2
    auto rb = second_residue(DiagonalForm(QT, {rf(QT, t * t * t * qpoly({2, 1}), qpoly({1, 0, 1}))}), t);
    CHECK(rb.entries[0] == Poly::constant(2));
    CHECK_THROWS_AS(second_residue(DiagonalForm(QT, {rf(QT, t)}), qpoly({-1, 0, 1})), DomainError);
    auto inf = second_residue(DiagonalForm(QT, {rf(QT, t.scaled(3))}), std::nullopt);
    CHECK(inf.entries[0] == Poly::constant(3));
}

TEST_CASE("transfer of a degree-2 residue")
{
    // F[t]/(t^2+1): the transfer of <1> is x -> Tr(x^2 / 2 theta), hyperbolic
    ResidueData r{Q, qpoly({1, 0, 1}), {Poly::constant(1)}};
    auto f = transfer(r);
    CHECK(f.rank() == 2);
    CHECK(is_witt_trivial(f));
    // at t^2 - 2 the transfer of <theta> is Tr(x^2 / 2) on Q(sqrt 2): <1, 2> * 2/2... check against trace form
    ResidueData s{Q, qpoly({-2, 0, 1}), {qpoly({0, 1})}};
    auto g = transfer(s);
    // w = theta / (2 theta) = 1/2, form Tr(x^2)/2 = <1, 2>
    CHECK(is_isometric(g, dform({1, 2})));
}

TEST_CASE("Milnor reciprocity")
{
    const Field QT = Field::function_field(0);
    Poly t = Poly::t(0);
    CHECK(milnor_reciprocity_check(DiagonalForm(QT, {Scalar(QT, 3), Scalar(QT, -7)})));
    auto tt = milnor_reciprocity(DiagonalForm(QT, {rf(QT, t), rf(QT, -t)}));
    CHECK(tt.holds);
    CHECK(milnor_reciprocity_check(DiagonalForm(QT, {rf(QT, t)})));

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> c(-4, 4);
    for (long p : {0L, 3L, 5L, 7L}) {
        const Field F = Field::function_field(p);
        int nontrivial = 0;
        for (int k = 0; k < 25; ++k) {
            std::vector<Scalar> e;
            size_t n = 1 + static_cast<size_t>(k % 4);
            while (e.size() < n) {
                std::vector<long> num(1 + static_cast<size_t>(rng() % 4)), den(1 + static_cast<size_t>(rng() % 2));
                for (auto& x : num) x = c(rng);
                for (auto& x : den) x = c(rng);
                Poly pn = qpoly(num, p), pd = qpoly(den, p);
                if (pn.is_zero() || pd.is_zero()) continue;
                e.push_back(rf(F, pn, pd));
            }
            auto rep = milnor_reciprocity(DiagonalForm(F, e));
            CHECK(rep.holds);
            if (!rep.residues.empty()) ++nontrivial;
        }
        CHECK(nontrivial > 10);
    }
}

TEST_CASE("forms with zero residues come from constants")
{
    const Field QT = Field::function_field(0);
    Poly t = Poly::t(0), t1 = qpoly({1, 1}), t2 = qpoly({1, 0, 1}), t3 = qpoly({-2, 0, 1});
    auto sq = [](const Poly& x) { return x * x; };
    // (form, evident constant part)
    std::vector<std::pair<std::vector<Scalar>, std::vector<long>>> cases{
        {{rf(QT, t), rf(QT, -t)}, {}},
        {{rf(QT, t), rf(QT, -t), Scalar(QT, 3)}, {3}},
        {{rf(QT, sq(t1).scaled(2)), Scalar(QT, -5)}, {2, -5}},
        {{rf(QT, t2.scaled(3)), rf(QT, t2.scaled(-3)), Scalar(QT, 7)}, {7}},
        {{rf(QT, sq(t) * t1), rf(QT, t1.scaled(-1))}, {}},
        {{rf(QT, Poly::constant(5), sq(t3)), Scalar(QT, 2)}, {5, 2}},
        {{rf(QT, t * t1, t2), rf(QT, (t * t1).scaled(-1), t2), Scalar(QT, -1)}, {-1}},
        {{rf(QT, t3.scaled(6)), rf(QT, t3.scaled(-6)), rf(QT, sq(t2).scaled(11))}, {11}},
        {{rf(QT, t, t1), rf(QT, t.scaled(-1), t1), Scalar(QT, 2), Scalar(QT, 3)}, {2, 3}},
        {{rf(QT, sq(t) * sq(t1).scaled(-3)), rf(QT, sq(t2).scaled(3))}, {-3, 3}},
    };
    for (const auto& [entries, constant] : cases) {
        DiagonalForm q(QT, entries);
        auto rep = milnor_reciprocity(q);
        for (const auto& r : rep.residues) CHECK(is_witt_trivial(transfer(r)));
        auto lift = constant_witt_lift(q);
        REQUIRE(lift);
        std::vector<long> neg;
        for (long c : constant) neg.push_back(-c);
        CHECK(is_witt_trivial(orthogonal_sum(*lift, dform(neg))));
        // q minus the constant form cancels entry by entry modulo squares
        std::vector<Scalar> all = entries;
        for (long c : constant) all.push_back(Scalar(QT, -c));
        auto key = [](const Scalar& s) {
            Poly num = s.ratfunc().num * s.ratfunc().den;
            Rational lc = num.lc();
            auto sf = [](Poly f) {
                Poly out = Poly::constant(1, f.characteristic());
                for (const auto& [g, e] : squarefree_decomposition(f.monic()))
                    if (e % 2) out = out * g;
                return out;
            };
            return std::make_pair(nt::squarefree_part(Integer(lc.get_num() * lc.get_den())), sf(num));
        };
        std::vector<bool> used(all.size(), false);
        bool ok = true;
        for (size_t i = 0; i < all.size() && ok; ++i) {
            if (used[i]) continue;
            bool found = false;
            for (size_t j = i + 1; j < all.size() && !found; ++j) {
                if (used[j]) continue;
                auto a = key(all[i]);
                auto b = key(all[j]);
                if (a.second == b.second && a.first == -b.first) found = used[i] = used[j] = true;
            }
            ok = found;
        }
        CHECK(ok);
    }
}

TEST_CASE("constant lift certificate rejects genuine residues")
{
    const Field QT = Field::function_field(0);
    Poly t = Poly::t(0);
    CHECK(!constant_witt_lift(DiagonalForm(QT, {rf(QT, t), Scalar(QT, 1)})));
    CHECK(!constant_witt_lift(DiagonalForm(QT, {rf(QT, t), rf(QT, t)})));
    const Field F5 = Field::function_field(5);
    auto l = constant_witt_lift(DiagonalForm(F5, {rf(F5, Poly::t(5)), rf(F5, Poly::t(5).scaled(-1)), Scalar(F5, 2)}));
    REQUIRE(l);
    CHECK(l->rank() == 1);
}

TEST_CASE("e2 of definite forms with large anisotropic kernels")
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> d(1, 15);
    CHECK(e2(dform({1, 1, 1, 1, 1, 1, 1, 1})).is_trivial());
    for (int k = 0; k < 20; ++k) {
        DiagonalForm q(Q, {});
        for (int b = 0; b < 2 + k % 2; ++b) {
            long s = k % 3 ? 1 : -1;
            q = orthogonal_sum(q, twist(norm_form(-d(rng), -d(rng)), Scalar::from_int(Q, s * d(rng))));
        }
        CHECK(e2(q) == lam_oracle(q));
    }
}
