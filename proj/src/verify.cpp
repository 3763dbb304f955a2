#include "clifq/verify.hpp"

#include "clifq/clifford.hpp"
#include "clifq/errors.hpp"
#include "clifq/exceptional.hpp"
#include "clifq/invariants.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <thread>

namespace clifq {

namespace {

using Rng = std::mt19937_64;
using CaseResult = std::optional<std::string>; // witness on failure
using CaseFn = std::function<CaseResult(size_t, Rng&)>;

struct Suite {
    SuiteInfo info;
    CaseFn run;
};

const Field Q = Field::rationals();

long nonzero(Rng& rng, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    long x = 0;
    while (!x) x = d(rng);
    return x;
}

Scalar random_unit(const Field& f, Rng& rng, long bound)
{
    if (f.kind() == Field::Kind::PrimeField) {
        std::uniform_int_distribution<long> d(1, f.characteristic() - 1);
        return Scalar::from_int(f, d(rng));
    }
    return Scalar::from_int(f, nonzero(rng, bound));
}

DiagonalForm random_diagonal(const Field& f, Rng& rng, size_t n, long bound = 30)
{
    std::vector<Scalar> e;
    for (size_t i = 0; i < n; ++i) e.push_back(random_unit(f, rng, bound));
    return DiagonalForm(f, e);
}

const std::vector<Field>& small_fields()
{
    static const std::vector<Field> f{Q, Field::prime_field(3), Field::prime_field(5), Field::prime_field(7),
                                      Field::prime_field(11)};
    return f;
}

CaseResult fail_if(bool bad, const std::function<std::string()>& witness)
{
    if (bad) return witness();
    return std::nullopt;
}

DiagonalForm norm_form(long a, long b) { return DiagonalForm::of_ints(Q, {1, -a, -b, a * b}); }

// twisted norm form or twisted <x, -x, 1, -1>, an element of I^2(Q)
DiagonalForm random_i2(Rng& rng)
{
    DiagonalForm b = rng() % 3 ? norm_form(nonzero(rng, 15), nonzero(rng, 15)) : [&] {
        long x = nonzero(rng, 15);
        return DiagonalForm::of_ints(Q, {x, -x, 1, -1});
    }();
    return twist(b, Scalar::from_int(Q, nonzero(rng, 15)));
}

// ------------------------------------------------------------------ suites

CaseResult clifford_dims(size_t i, Rng& rng)
{
    const Field& f = small_fields()[i % 5];
    const size_t n = 1 + rng() % 7;
    auto q = random_diagonal(f, rng, n);
    auto c0 = even_clifford(q);
    auto c1 = clifford_bimodule(q);
    const size_t want = size_t{1} << (n - 1);
    return fail_if(c0.dim() != want || c1.dim() != want, [&] {
        return q.to_string() + " over " + f.name() + ": dim C0 = " + std::to_string(c0.dim()) +
               ", dim C1 = " + std::to_string(c1.dim());
    });
}

CaseResult center_law(size_t i, Rng& rng)
{
    const Field& f = small_fields()[i % 5];
    const size_t n = 1 + rng() % 6;
    auto q = random_diagonal(f, rng, n);
    auto c = even_clifford(q);
    auto z = center(c.algebra);
    if (n % 2) return fail_if(z.size() != 1, [&] { return q.to_string() + ": center of dimension " + std::to_string(z.size()); });
    auto d = discriminant_algebra(q);
    bool ok = z.size() == 2;
    for (size_t k = 0; k < c.algebra.dim() && ok; ++k)
        ok = c.algebra.multiply(d.z, c.algebra.basis(k)) == c.algebra.multiply(c.algebra.basis(k), d.z);
    ok = ok && c.algebra.multiply(d.z, d.z) == c.algebra.scalar(d.delta);
    ok = ok && square_class(d.delta) == signed_discriminant(q);
    std::vector<Vec> span = z;
    span.push_back(d.z);
    ok = ok && independent_subset(f, span).size() == 2;
    return fail_if(!ok, [&] { return q.to_string() + " over " + f.name() + ": center is not F[x]/(x^2 - delta)"; });
}

CaseResult discriminant_additivity(size_t i, Rng& rng)
{
    const Field& f = small_fields()[i % 5];
    auto q = random_diagonal(f, rng, 2 * (1 + rng() % 3));
    auto r = random_diagonal(f, rng, 2 * (1 + rng() % 3));
    auto lhs = signed_discriminant(orthogonal_sum(q, r));
    auto rhs = signed_discriminant(q) * signed_discriminant(r);
    return fail_if(!(lhs == rhs), [&] { return q.to_string() + " + " + r.to_string() + ": " + lhs.to_string() + " vs " + rhs.to_string(); });
}

CaseResult components_equal(size_t, Rng& rng)
{
    long a = nonzero(rng, 20), b = nonzero(rng, 20), c = nonzero(rng, 20), s = nonzero(rng, 5);
    auto q = DiagonalForm::of_ints(Q, {a, b, c, a * b * c * s * s});
    auto sc = split_components(q);
    auto p = class_of_algebra(sc.plus.algebra), m = class_of_algebra(sc.minus.algebra);
    return fail_if(!(p == m), [&] { return q.to_string() + ": " + p.to_string() + " vs " + m.to_string(); });
}

CaseResult e2_additivity(size_t, Rng& rng)
{
    auto q = random_i2(rng), r = random_i2(rng);
    return fail_if(!e2_additivity_check(q, r), [&] { return q.to_string() + " + " + r.to_string(); });
}

std::pair<size_t, size_t> rank_pair(size_t k)
{
    for (size_t n = 1; n <= 5; ++n)
        for (size_t m = 1; n + m <= 6; ++m)
            if (k-- == 0) return {n, m};
    return {1, 1};
}

CaseResult sum_iso(size_t i, Rng& rng)
{
    const Field f = i < 15 ? Q : Field::prime_field(3);
    auto [n, m] = rank_pair(i % 15);
    auto q = random_diagonal(f, rng, n, 9), r = random_diagonal(f, rng, m, 9);
    auto s = sum_isomorphism(q, r);
    return fail_if(!(s.homomorphism && s.bijective && s.unit_preserving),
                   [&] { return q.to_string() + " + " + r.to_string() + " over " + f.name(); });
}

CaseResult metabolic(size_t i, Rng& rng)
{
    const Field& f = small_fields()[i % 4];
    const int r = 1 + static_cast<int>((i / 4) % 3);
    DiagonalForm q(f, {});
    if (i < 12) {
        for (int k = 0; k < r; ++k) q = orthogonal_sum(q, diagonal_of(hyperbolic(f, 1)));
    } else {
        for (int k = 0; k < r; ++k) {
            Scalar a = random_unit(f, rng, 30);
            q = orthogonal_sum(q, DiagonalForm(f, {a, -a}));
        }
    }
    auto c = metabolic_split_certificate(q);
    return fail_if(!c.found, [&] { return q.to_string() + " over " + f.name() + ": no index-1 certificate"; });
}

CaseResult hyperbolic_model_case(size_t i, Rng&)
{
    const Field& f = small_fields()[i % 4];
    const int r = 1 + static_cast<int>(i / 4);
    auto h = hyperbolic_model(f, r);
    return fail_if(!(h.phi0_homomorphism && h.phi0_bijective && h.phi1_equivariant && h.phi1_bijective),
                   [&] { return "H(F^" + std::to_string(r) + ") over " + f.name(); });
}

CaseResult norm_roundtrip(size_t, Rng& rng)
{
    long a = nonzero(rng, 50), b = nonzero(rng, 50);
    return fail_if(!norm_roundtrip_check(Scalar::from_int(Q, a), Scalar::from_int(Q, b)),
                   [&] { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; });
}

CaseResult pfaffian(size_t, Rng& rng)
{
    std::array<Scalar, 4> x;
    for (auto& v : x) v = Scalar::from_int(Q, nonzero(rng, 30));
    auto r = pfaffian_roundtrip(x[0], x[1], x[2], x[3]);
    auto s = pfaffian_space(x[0], x[1], x[2], x[3]);
    return fail_if(!(r.holds && s.alternating.size() == 6 && s.similar_to_albert), [&] {
        return "(" + x[0].to_string() + ", " + x[1].to_string() + ") + (" + x[2].to_string() + ", " +
               x[3].to_string() + "): e2 = " + r.albert_class.to_string() + ", expected " + r.expected.to_string();
    });
}

BrauerClass2 even_subset(size_t k)
{
    static const std::vector<nt::Place> places{nt::Place::finite(2), nt::Place::finite(3), nt::Place::finite(5),
                                               nt::Place::finite(7), nt::Place::finite(11), nt::Place::infinity()};
    std::vector<uint32_t> masks;
    for (uint32_t m = 0; m < 64; ++m)
        if (__builtin_popcount(m) % 2 == 0) masks.push_back(m);
    std::set<nt::Place> s;
    for (size_t j = 0; j < places.size(); ++j)
        if (masks[k] >> j & 1) s.insert(places[j]);
    return BrauerClass2(s);
}

CaseResult surjectivity(size_t i, Rng&)
{
    auto target = even_subset(i);
    auto q = construct_preimage(target);
    auto got = e2(q);
    return fail_if(!(got == target), [&] { return target.to_string() + " -> " + q.to_string() + " with e2 " + got.to_string(); });
}

CaseResult hilbert_product(size_t, Rng& rng)
{
    std::uniform_int_distribution<long> den(1, 100);
    Rational a(nonzero(rng, 10000), den(rng)), b(nonzero(rng, 10000), den(rng));
    a.canonicalize();
    b.canonicalize();
    return fail_if(!nt::product_formula_check(a, b), [&] { return "(" + a.get_str() + ", " + b.get_str() + ")"; });
}

Poly qpoly(const std::vector<long>& c)
{
    std::vector<Rational> r;
    for (long x : c) r.emplace_back(x);
    return Poly(0, r);
}

std::vector<DiagonalForm> curated_constant_forms()
{
    const Field QT = Field::function_field(0);
    Poly t = Poly::t(0), t1 = qpoly({1, 1}), t2 = qpoly({1, 0, 1}), t3 = qpoly({-2, 0, 1});
    Poly one = Poly::constant(1);
    auto rf = [&](const Poly& n, const Poly& d) { return Scalar::ratfunc(QT, n, d); };
    auto sq = [](const Poly& x) { return x * x; };
    return {
        DiagonalForm(QT, {rf(t, one), rf(t.scaled(-1), one)}),
        DiagonalForm(QT, {rf(t, one), rf(t.scaled(-1), one), Scalar(QT, 3)}),
        DiagonalForm(QT, {rf(sq(t1).scaled(2), one), Scalar(QT, -5)}),
        DiagonalForm(QT, {rf(t2.scaled(3), one), rf(t2.scaled(-3), one), Scalar(QT, 7)}),
        DiagonalForm(QT, {rf(sq(t) * t1, one), rf(t1.scaled(-1), one)}),
        DiagonalForm(QT, {rf(Poly::constant(5), sq(t3)), Scalar(QT, 2)}),
        DiagonalForm(QT, {rf(t * t1, t2), rf((t * t1).scaled(-1), t2), Scalar(QT, -1)}),
        DiagonalForm(QT, {rf(t3.scaled(6), one), rf(t3.scaled(-6), one), rf(sq(t2).scaled(11), one)}),
        DiagonalForm(QT, {rf(t, t1), rf(t.scaled(-1), t1), Scalar(QT, 2), Scalar(QT, 3)}),
        DiagonalForm(QT, {rf(sq(t) * sq(t1).scaled(-3), one), rf(sq(t2).scaled(3), one)}),
    };
}

CaseResult milnor(size_t i, Rng& rng)
{
    const Field QT = Field::function_field(0);
    if (i < 20) {
        std::uniform_int_distribution<long> c(-4, 4);
        std::vector<Scalar> e;
        const size_t n = 1 + rng() % 4;
        while (e.size() < n) {
            std::vector<long> num(1 + rng() % 4), den(1 + rng() % 4);
            for (auto& x : num) x = c(rng);
            for (auto& x : den) x = c(rng);
            Poly pn = qpoly(num), pd = qpoly(den);
            if (pn.is_zero() || pd.is_zero()) continue;
            e.push_back(Scalar::ratfunc(QT, pn, pd));
        }
        DiagonalForm q(QT, e);
        return fail_if(!milnor_reciprocity_check(q), [&] { return q.to_string(); });
    }
    auto q = curated_constant_forms().at(i - 20);
    auto rep = milnor_reciprocity(q);
    bool zero = true;
    for (const auto& r : rep.residues) zero = zero && is_witt_trivial(transfer(r));
    auto lift = constant_witt_lift(q);
    return fail_if(!(rep.holds && zero && lift), [&] { return q.to_string() + ": not certified as extended from Q"; });
}

CaseResult dedekind(size_t i, Rng&)
{
    static const QuadOrder o(-5);
    const FracIdeal one = FracIdeal::unit(o);
    const FracIdeal p2(o, {Scalar::from_int(o.field(), 2), o.element(1, 1)});
    if (i == 0) {
        auto reps = class_group_mod_squares(o);
        bool ok = reps.size() == 2 && reps[0].label == "O" && reps[0].ideal == one && reps[1].label == "p2" &&
                  reps[1].ideal == p2 && !p2.is_principal();
        return fail_if(!ok, [&] {
            std::string s;
            for (const auto& r : reps) s += r.label + "=" + r.ideal.to_string() + " ";
            return "Cl/2 of Z[sqrt(-5)]: " + s;
        });
    }
    if (i == 1) {
        auto c = even_clifford_order(hyperbolic_ideal_form({one}, p2));
        return fail_if(!(c.closed && order_center_split(c)), [] { return std::string("H_p2(O): C0 is not O x O"); });
    }
    static const auto set = closure_test_set(o, 4, 3, 2024);
    if (i < 2 + set.size()) {
        const auto& q = set[i - 2];
        auto c = even_clifford_order(q);
        return fail_if(!c.closed, [&] {
            return io::to_json(q).dump() + ": product e_S e_T for (S, T) = (" + CliffordMonomials::label(c.subsets[c.witness->first]) +
                   ", " + CliffordMonomials::label(c.subsets[c.witness->second]) + ") leaves its ideal";
        });
    }
    const long p = std::array<long, 3>{3, 7, 23}[i - 2 - set.size()];
    size_t done = 0;
    for (const auto& q : set) {
        bool good = true;
        for (const auto& e : diagonal_of(QuadraticForm(q.gram)).entries) {
            Rational n = o.norm(e);
            if (n.get_num() % p == 0 || n.get_den() % p == 0) good = false;
        }
        if (!good) continue;
        ++done;
        if (!reduction_commutes(q, p)) return io::to_json(q).dump() + ": reduction mod " + std::to_string(p) + " does not commute";
    }
    return fail_if(done == 0, [&] { return "no form of the suite has good reduction at " + std::to_string(p); });
}

CaseResult dedekind_reductions(size_t i, Rng&)
{
    static const std::array<long, 5> ds{-1, -5, -15, 2, 5};
    QuadOrder o(ds[i]);
    auto one = FracIdeal::unit(o);
    auto above2 = primes_above(o, 2);
    auto l = above2.empty() ? one : above2.front();
    std::vector<CliffordOrder> orders{even_clifford_order(hyperbolic_ideal_form({one}, l)),
                                      even_clifford_order(hyperbolic_ideal_form({one, one}, one)),
                                      even_clifford_order(hyperbolic_ideal_form({one, l}, l))};
    for (long p = 3; p <= 50; ++p) {
        if (!nt::is_prime(Integer(p)) || o.discriminant() % p == 0 || primes_above(o, p).size() != 2) continue;
        for (size_t k = 0; k < orders.size(); ++k)
            if (!order_reduction_semisimple(orders[k], p))
                return "d = " + std::to_string(ds[i]) + ", order " + std::to_string(k) + ": reduction mod " +
                       std::to_string(p) + " is not semisimple";
    }
    return std::nullopt;
}

const std::vector<Suite>& registry()
{
    static const std::vector<Suite> r{
        {{"clifford-dims", "dim C0 = dim C1 = 2^(n-1) over Q and F_3, F_5, F_7, F_11, ranks 1..7", 200}, clifford_dims},
        {{"center-law", "center of C0 is F (odd rank) or F[x]/(x^2 - delta) (even rank)", 200}, center_law},
        {{"discriminant-additivity", "d(q + q') = d(q) d(q') for even ranks", 100}, discriminant_additivity},
        {{"components-equal", "[C0+] = [C0-] for rank-4 forms of trivial discriminant", 50}, components_equal},
        {{"e2-additivity", "e2(q + q') = e2(q) + e2(q') on rank-4 forms in I^2(Q)", 50}, e2_additivity},
        {{"sum-isomorphism", "C0(q + q') = C0(q) C0(q') + C1(q) C1(q'), total rank <= 6, over Q and F_3", 30}, sum_iso},
        {{"metabolic-splitting", "hyperbolic forms of rank 2, 4, 6 have split C0 components", 24}, metabolic},
        {{"hyperbolic-model", "Phi0 onto End(L+) x End(L-) for r <= 3", 12}, hyperbolic_model_case},
        {{"norm-roundtrip", "both components of C0(norm form) carry the quaternion class", 20}, norm_roundtrip},
        {{"pfaffian-roundtrip", "e2(Albert form) = (a, b) + (c, d); alternating space of dimension 6", 10}, pfaffian},
        {{"surjectivity", "construct_preimage(S) has e2 = S for all even S in {2, 3, 5, 7, 11, inf}", 32}, surjectivity},
        {{"hilbert-product", "product over all places of (a, b)_v is 1", 1000}, hilbert_product},
        {{"milnor-residues", "reciprocity over Q(t); residue-free forms come from Q", 30}, milnor},
        {{"dedekind", "Cl/2 of Z[sqrt(-5)], H_p2(O), order closure, reduction mod 3, 7, 23", 185}, dedekind},
        {{"dedekind-reductions", "hyperbolic orders reduce to semisimple algebras at split p <= 50", 5}, dedekind_reductions},
    };
    return r;
}

unsigned long name_hash(const std::string& s)
{
    unsigned long h = 1469598103934665603ul;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ul;
    return h;
}

} // namespace

const std::vector<SuiteInfo>& suites()
{
    static const std::vector<SuiteInfo> out = [] {
        std::vector<SuiteInfo> v;
        for (const auto& s : registry()) v.push_back(s.info);
        return v;
    }();
    return out;
}

VerificationReport run_suite(const std::string& name, unsigned long seed, size_t parallelism)
{
    const Suite* suite = nullptr;
    for (const auto& s : registry())
        if (s.info.name == name) suite = &s;
    if (!suite) throw UsageError("unknown suite \"" + name + "\"");
    const auto start = std::chrono::steady_clock::now();
    const size_t n = suite->info.cases;
    std::vector<CaseResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<size_t> next{0};
    const unsigned long h = name_hash(name);
    auto worker = [&] {
        for (size_t i = next++; i < n; i = next++) {
            std::seed_seq ss{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(i),
                             static_cast<uint32_t>(h), static_cast<uint32_t>(h >> 32)};
            Rng rng(ss);
            try {
                results[i] = suite->run(i, rng);
            } catch (const BoundExceeded&) {
                errors[i] = std::current_exception();
            } catch (const std::exception& e) {
                results[i] = std::string("exception: ") + e.what();
            }
        }
    };
    const size_t threads = std::max<size_t>(1, std::min(parallelism, n));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    VerificationReport r{name, seed, n, {}, 0};
    for (size_t i = 0; i < n; ++i)
        if (results[i]) r.failures.push_back({i, *results[i]});
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

io::json to_json(const VerificationReport& r, bool timing)
{
    io::json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    io::json f = io::json::array();
    for (const auto& x : r.failures) f.push_back({{"case", x.index}, {"witness", x.witness}});
    j["failures"] = std::move(f);
    j["passed"] = r.passed();
    if (timing) j["wall_seconds"] = r.wall_seconds;
    return j;
}

} // namespace clifq
