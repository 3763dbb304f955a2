#include "clifq/dedekind.hpp"

#include "clifq/clifford.hpp"
#include "clifq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace clifq {

namespace {

bool is_int(const Rational& x) { return x.get_den() == 1; }

Integer lcm_den(const std::vector<std::pair<Rational, Rational>>& v)
{
    Integer l = 1;
    for (const auto& [x, y] : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), y.get_den_mpz_t());
    }
    return l;
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Hermite form (r, s, t) of the lattice spanned by the coordinate vectors.
std::array<Rational, 3> lattice_hnf(const std::vector<std::pair<Rational, Rational>>& gens)
{
    Integer l = lcm_den(gens);
    std::vector<std::pair<Integer, Integer>> cols;
    for (const auto& [x, y] : gens) {
        Rational sx = x * l, sy = y * l;
        cols.emplace_back(sx.get_num(), sy.get_num());
    }
    for (;;) {
        size_t best = cols.size();
        for (size_t k = 0; k < cols.size(); ++k)
            if (cols[k].second != 0 && (best == cols.size() || abs(cols[k].second) < abs(cols[best].second))) best = k;
        if (best == cols.size()) throw DomainError("ideal generators do not span a lattice");
        bool done = true;
        for (size_t k = 0; k < cols.size(); ++k) {
            if (k == best || cols[k].second == 0) continue;
            Integer q = floor_div(cols[k].second, cols[best].second);
            cols[k].first -= q * cols[best].first;
            cols[k].second -= q * cols[best].second;
            if (cols[k].second != 0) done = false;
        }
        if (!done) continue;
        Integer r = 0;
        for (size_t k = 0; k < cols.size(); ++k)
            if (k != best) mpz_gcd(r.get_mpz_t(), r.get_mpz_t(), Integer(cols[k].first).get_mpz_t());
        if (r == 0) throw DomainError("ideal generators do not span a lattice");
        Integer s = cols[best].first, t = cols[best].second;
        if (t < 0) {
            s = -s;
            t = -t;
        }
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t());
        std::array<Rational, 3> out{Rational(r, l), Rational(s, l), Rational(t, l)};
        for (auto& x : out) x.canonicalize();
        return out;
    }
}

struct PrimeDisc {
    long p;     // 2 or an odd prime
    long pstar; // -4, 8, -8 or +-p
};

std::vector<PrimeDisc> prime_discriminants(long disc)
{
    std::vector<PrimeDisc> out;
    long rest = disc;
    for (const auto& [p, e] : nt::factor(Integer(std::labs(disc)))) {
        long pl = p.get_si();
        if (pl == 2) continue;
        long ps = pl % 4 == 1 ? pl : -pl;
        out.push_back({pl, ps});
        rest /= ps;
    }
    if (rest != 1) out.insert(out.begin(), PrimeDisc{2, rest});
    return out;
}

int character(const PrimeDisc& pd, const Integer& m)
{
    if (pd.p != 2) return legendre(Integer(m % pd.p).get_si(), pd.p);
    long r = Integer(m % 8).get_si();
    switch (pd.pstar) {
    case -4: return r % 4 == 1 ? 1 : -1;
    case 8: return r == 1 || r == 7 ? 1 : -1;
    default: return r == 1 || r == 3 ? 1 : -1;
    }
}

} // namespace

// ------------------------------------------------------------------ order

QuadOrder::QuadOrder(long d) : d_(d), field_(Field::quadratic(d)) {}

long QuadOrder::discriminant() const { return ((d_ % 4) + 4) % 4 == 1 ? d_ : 4 * d_; }

Scalar QuadOrder::omega() const
{
    if (((d_ % 4) + 4) % 4 == 1) return Scalar::quadratic(field_, Rational(1, 2), Rational(1, 2));
    return Scalar::quadratic(field_, 0, 1);
}

std::pair<Rational, Rational> QuadOrder::coords(const Scalar& z) const
{
    const auto& q = z.quad();
    if (((d_ % 4) + 4) % 4 == 1) return {q.a - q.b, 2 * q.b};
    return {q.a, q.b};
}

Scalar QuadOrder::element(const Rational& x, const Rational& y) const
{
    return Scalar(field_, x) + Scalar(field_, y) * omega();
}

Scalar QuadOrder::conj(const Scalar& z) const
{
    const auto& q = z.quad();
    return Scalar::quadratic(field_, q.a, -q.b);
}

Rational QuadOrder::norm(const Scalar& z) const
{
    const auto& q = z.quad();
    return q.a * q.a - q.b * q.b * d_;
}

bool QuadOrder::is_integral(const Scalar& z) const
{
    auto [x, y] = coords(z);
    return is_int(x) && is_int(y);
}

double QuadOrder::minkowski_bound() const
{
    double s = std::sqrt(static_cast<double>(std::labs(discriminant())));
    return imaginary() ? 2.0 / std::numbers::pi * s : s / 2.0;
}

// ------------------------------------------------------------------ ideals

FracIdeal::FracIdeal(const QuadOrder& o, const std::vector<Scalar>& generators) : o_(o)
{
    std::vector<std::pair<Rational, Rational>> z;
    const Scalar w = o.omega();
    for (const auto& g : generators) {
        if (!(g.field() == o.field())) throw DomainError("ideal generator outside " + o.field().name());
        if (g.is_zero()) continue;
        z.push_back(o.coords(g));
        z.push_back(o.coords(g * w));
    }
    if (z.empty()) throw DomainError("the zero ideal is not a fractional ideal");
    auto h = lattice_hnf(z);
    r_ = h[0];
    s_ = h[1];
    t_ = h[2];
}

FracIdeal FracIdeal::unit(const QuadOrder& o) { return FracIdeal(o, {Scalar::one(o.field())}); }

FracIdeal FracIdeal::principal(const QuadOrder& o, const Scalar& a) { return FracIdeal(o, {a}); }

std::pair<Scalar, Scalar> FracIdeal::basis() const { return {o_.element(r_, 0), o_.element(s_, t_)}; }

bool FracIdeal::contains(const Scalar& z) const
{
    auto [x, y] = o_.coords(z);
    Rational v = y / t_;
    if (!is_int(v)) return false;
    return is_int((x - v * s_) / r_);
}

bool FracIdeal::contains(const FracIdeal& j) const
{
    auto [a, b] = j.basis();
    return contains(a) && contains(b);
}

bool FracIdeal::is_integral() const { return FracIdeal::unit(o_).contains(*this); }

FracIdeal FracIdeal::operator*(const FracIdeal& o) const
{
    auto [a1, a2] = basis();
    auto [b1, b2] = o.basis();
    return FracIdeal(o_, {a1 * b1, a1 * b2, a2 * b1, a2 * b2});
}

FracIdeal FracIdeal::operator*(const Scalar& a) const
{
    auto [a1, a2] = basis();
    return FracIdeal(o_, {a1 * a, a2 * a});
}

FracIdeal FracIdeal::conj() const
{
    auto [a1, a2] = basis();
    return FracIdeal(o_, {o_.conj(a1), o_.conj(a2)});
}

FracIdeal FracIdeal::inverse() const { return conj() * Scalar(o_.field(), 1 / norm()); }

FracIdeal FracIdeal::pow(int e) const
{
    FracIdeal base = e < 0 ? inverse() : *this;
    FracIdeal r = unit(o_);
    for (int i = 0; i < std::abs(e); ++i) r = r * base;
    return r;
}

std::optional<Scalar> FracIdeal::principal_generator() const
{
    auto [a1, a2] = basis();
    const Rational n = norm();
    const Rational A = o_.norm(a1), C = o_.norm(a2), B = o_.norm(a1 + a2) - A - C;
    auto make = [&](const Integer& u, const Integer& v) { return a1 * Scalar(o_.field(), Rational(u)) + a2 * Scalar(o_.field(), Rational(v)); };
    if (o_.imaginary()) {
        Rational delta = 4 * A * C - B * B;
        long vmax = static_cast<long>(std::sqrt(Rational(4 * A * n / delta).get_d())) + 1;
        long umax = static_cast<long>(std::sqrt(Rational(4 * C * n / delta).get_d())) + 1;
        for (long v = 0; v <= vmax; ++v)
            for (long u = -umax; u <= umax; ++u) {
                if (u == 0 && v == 0) continue;
                Rational q = A * u * u + B * u * v + C * v * v;
                if (q == n) return make(Integer(u), Integer(v));
            }
        return std::nullopt;
    }
    const long bound = 2000;
    for (long k = 0; k <= 2 * bound; ++k) {
        long v = k % 2 ? (k + 1) / 2 : -(k / 2);
        for (int sign : {1, -1}) {
            // A u^2 + B v u + (C v^2 - sign n) = 0
            Rational disc = B * B * v * v - 4 * A * (C * v * v - sign * n);
            if (disc < 0) continue;
            auto rt = nt::rational_sqrt(disc);
            if (!rt) continue;
            for (const Rational& u : {Rational((-B * v + *rt) / (2 * A)), Rational((-B * v - *rt) / (2 * A))})
                if (is_int(u) && !(u == 0 && v == 0)) return make(u.get_num(), Integer(v));
        }
    }
    throw BoundExceeded("no generator of norm +-" + n.get_str() + " with |y| <= 2000 in " + to_string());
}

std::string FracIdeal::to_string() const
{
    auto [a, b] = basis();
    return "(" + a.to_string() + ", " + b.to_string() + ")";
}

bool FracIdeal::operator<(const FracIdeal& o) const
{
    if (norm() != o.norm()) return norm() < o.norm();
    if (r_ != o.r_) return r_ < o.r_;
    if (s_ != o.s_) return s_ < o.s_;
    return t_ < o.t_;
}

std::vector<FracIdeal> primes_above(const QuadOrder& o, long p)
{
    if (!nt::is_prime(Integer(p))) throw DomainError(std::to_string(p) + " is not prime");
    const long d = o.d();
    const bool one_mod_four = ((d % 4) + 4) % 4 == 1;
    std::vector<FracIdeal> out;
    for (long r = 0; r < p; ++r) {
        // minimal polynomial of w at r
        Integer f = one_mod_four ? Integer(r * r - r - (d - 1) / 4) : Integer(r * r - d);
        if (f % p != 0) continue;
        FracIdeal i(o, {Scalar::from_int(o.field(), p), o.omega() - Scalar::from_int(o.field(), r)});
        if (i.norm() == p && std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> genus_vector(const FracIdeal& i)
{
    const QuadOrder& o = i.order();
    const long disc = o.discriminant();
    auto pds = prime_discriminants(disc);
    auto [a1, a2] = i.basis();
    for (long h = 1; h <= 60; ++h)
        for (long u = -h; u <= h; ++u)
            for (long v = -h; v <= h; ++v) {
                if (std::max(std::labs(u), std::labs(v)) != h) continue;
                Scalar al = a1 * Scalar::from_int(o.field(), u) + a2 * Scalar::from_int(o.field(), v);
                Rational nr = o.norm(al);
                if (nr <= 0) continue;
                Rational m = nr / i.norm();
                if (!is_int(m)) throw VerificationFailure("element norm not divisible by the ideal norm");
                Integer g;
                Integer mi = m.get_num();
                mpz_gcd(g.get_mpz_t(), mi.get_mpz_t(), Integer(disc).get_mpz_t());
                if (g != 1) continue;
                std::vector<int> bits;
                for (const auto& pd : pds) bits.push_back(character(pd, mi) < 0 ? 1 : 0);
                return bits;
            }
    throw BoundExceeded("no element of norm coprime to the discriminant found in " + i.to_string());
}

namespace {

// Sign vector for real fields: genus vector of (beta) with N(beta) < 0.
std::vector<int> sign_vector(const QuadOrder& o)
{
    const size_t t = prime_discriminants(o.discriminant()).size();
    if (o.imaginary()) return std::vector<int>(t, 0);
    for (long h = 1; h <= 50; ++h)
        for (long x = -h; x <= h; ++x)
            for (long y : {-h, h}) {
                Scalar b = o.element(Rational(x), Rational(y));
                if (o.norm(b) < 0) return genus_vector(FracIdeal::principal(o, b));
            }
    throw BoundExceeded("no element of negative norm found");
}

// Reduce v against an F_2 basis in echelon form (pivot = first set bit).
std::vector<int> reduce_bits(std::vector<int> v, const std::vector<std::vector<int>>& basis)
{
    for (const auto& b : basis) {
        size_t piv = std::find(b.begin(), b.end(), 1) - b.begin();
        if (v[piv]) for (size_t k = 0; k < v.size(); ++k) v[k] ^= b[k];
    }
    return v;
}

bool is_zero_bits(const std::vector<int>& v) { return std::find(v.begin(), v.end(), 1) == v.end(); }

std::string prime_label(const FracIdeal& p, const QuadOrder& o)
{
    long q = p.norm().get_num().get_si();
    auto ps = primes_above(o, q);
    if (ps.size() == 1) return "p" + std::to_string(q);
    return "p" + std::to_string(q) + "," + std::to_string(p == ps[0] ? 1 : 2);
}

} // namespace

std::vector<ClassRep> class_group_mod_squares(const QuadOrder& o)
{
    if (std::labs(o.discriminant()) > 1000000) throw BoundExceeded("discriminant beyond the desk bound 10^6");
    std::vector<std::vector<int>> basis;
    auto push = [&](std::vector<int> v) {
        v = reduce_bits(std::move(v), basis);
        if (is_zero_bits(v)) return false;
        // keep echelon form: clear the new pivot from older rows
        size_t piv = std::find(v.begin(), v.end(), 1) - v.begin();
        for (auto& b : basis)
            if (b[piv]) for (size_t k = 0; k < v.size(); ++k) b[k] ^= v[k];
        basis.push_back(std::move(v));
        return true;
    };
    push(sign_vector(o));
    std::vector<std::pair<std::string, FracIdeal>> chosen;
    const long mb = static_cast<long>(std::floor(o.minkowski_bound()));
    for (long p = 2; p <= mb; ++p) {
        if (!nt::is_prime(Integer(p))) continue;
        for (const auto& pr : primes_above(o, p))
            if (push(genus_vector(pr))) chosen.emplace_back(prime_label(pr, o), pr);
    }
    std::vector<ClassRep> reps;
    for (size_t mask = 0; mask < (size_t{1} << chosen.size()); ++mask) {
        FracIdeal id = FracIdeal::unit(o);
        std::string label;
        for (size_t k = 0; k < chosen.size(); ++k)
            if (mask >> k & 1) {
                id = id * chosen[k].second;
                label += (label.empty() ? "" : "*") + chosen[k].first;
            }
        reps.push_back({label.empty() ? "O" : label, id});
    }
    return reps;
}

size_t class_mod_squares(const std::vector<ClassRep>& reps, const FracIdeal& i)
{
    const QuadOrder& o = i.order();
    std::vector<std::vector<int>> sign;
    auto s = sign_vector(o);
    if (!is_zero_bits(s)) sign.push_back(s);
    auto vi = genus_vector(i);
    for (size_t k = 0; k < reps.size(); ++k) {
        auto vr = genus_vector(reps[k].ideal);
        for (size_t b = 0; b < vr.size(); ++b) vr[b] ^= vi[b];
        if (is_zero_bits(reduce_bits(vr, sign))) return k;
    }
    throw VerificationFailure("ideal class " + i.to_string() + " matches no representative");
}

// ------------------------------------------------------------------ forms

IdealValuedForm::IdealValuedForm(QuadOrder o, std::vector<FracIdeal> a, Matrix g, FracIdeal l)
    : order(std::move(o)), coeffs(std::move(a)), gram(std::move(g)), value(std::move(l))
{
    if (gram.rows() != coeffs.size() || !gram.is_square()) throw DomainError("gram size does not match the pseudo-basis");
    if (!(gram.field() == order.field())) throw DomainError("gram entries must lie in " + order.field().name());
    if (!gram.is_symmetric()) throw DomainError("gram matrix is not symmetric");
    for (const auto& c : coeffs)
        if (!(c.order() == order)) throw DomainError("coefficient ideal over a different order");
    if (!(value.order() == order)) throw DomainError("value ideal over a different order");
}

bool IdealValuedForm::is_integral() const
{
    const Scalar two = Scalar::from_int(order.field(), 2);
    for (size_t i = 0; i < rank(); ++i)
        for (size_t j = i; j < rank(); ++j) {
            Scalar c = i == j ? gram(i, i) : two * gram(i, j);
            if (c.is_zero()) continue;
            if (!value.contains(coeffs[i] * coeffs[j] * c)) return false;
        }
    return true;
}

bool IdealValuedForm::is_regular() const
{
    Scalar det = gram.scaled(Scalar::from_int(order.field(), 2)).determinant();
    if (det.is_zero()) return false;
    FracIdeal lhs = FracIdeal::principal(order, det);
    for (const auto& a : coeffs) lhs = lhs * a * a;
    return lhs == value.pow(static_cast<int>(rank()));
}

IdealValuedForm orthogonal_sum(const IdealValuedForm& q, const IdealValuedForm& r)
{
    if (!(q.order == r.order) || !(q.value == r.value)) throw DomainError("orthogonal sum needs a common value ideal");
    const size_t n = q.rank(), m = r.rank();
    Matrix g(q.order.field(), n + m, n + m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g(i, j) = q.gram(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g(n + i, n + j) = r.gram(i, j);
    auto a = q.coeffs;
    a.insert(a.end(), r.coeffs.begin(), r.coeffs.end());
    return IdealValuedForm(q.order, std::move(a), std::move(g), q.value);
}

IdealValuedForm hyperbolic_ideal_form(const std::vector<FracIdeal>& p, const FracIdeal& l)
{
    if (p.empty()) throw DomainError("hyperbolic form of a zero lattice");
    const QuadOrder& o = l.order();
    const size_t r = p.size();
    std::vector<FracIdeal> a;
    for (const auto& x : p) a.push_back(l * x.inverse());
    a.insert(a.end(), p.begin(), p.end());
    Matrix g(o.field(), 2 * r, 2 * r);
    const Scalar half = Scalar(o.field(), Rational(1, 2));
    for (size_t i = 0; i < r; ++i) g(i, r + i) = g(r + i, i) = half;
    return IdealValuedForm(o, std::move(a), std::move(g), l);
}

IdealValuedForm twist_by_alignment(const IdealValuedForm& q, const FracIdeal& n, const Scalar& phi)
{
    if (phi.is_zero()) throw DomainError("alignment scale must be nonzero");
    std::vector<FracIdeal> a;
    for (const auto& c : q.coeffs) a.push_back(n * c);
    return IdealValuedForm(q.order, std::move(a), q.gram.scaled(phi), n * n * q.value * phi);
}

// ------------------------------------------------------------------ orders

namespace {

uint32_t popcount(uint32_t s) { return static_cast<uint32_t>(__builtin_popcount(s)); }

std::vector<uint32_t> even_subsets(size_t n)
{
    std::vector<uint32_t> out;
    for (uint32_t s = 0; s < (1u << n); ++s)
        if (popcount(s) % 2 == 0) out.push_back(s);
    std::stable_sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        for (uint32_t k = 0; k < 32; ++k)
            if ((a >> k & 1) != (b >> k & 1)) return (a >> k & 1) != 0;
        return false;
    });
    return out;
}

// Coordinates of the order elements e_S, row U of the returned matrix is
// the coefficient on e_U.
Matrix order_basis_matrix(const CliffordOrder& c)
{
    const size_t n = c.elements.size();
    Matrix m(c.algebra.field(), n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) m(i, j) = c.elements[j][i];
    return m;
}

bool in_order(const CliffordOrder& c, const Matrix& inv, const Vec& x)
{
    Vec k = inv.apply(x);
    for (size_t u = 0; u < k.size(); ++u)
        if (!k[u].is_zero() && !c.ideals[u].contains(k[u])) return false;
    return true;
}

// Element of i whose norm is N(i) times an integer prime to p.
Scalar local_generator(const FracIdeal& i, long p)
{
    const QuadOrder& o = i.order();
    auto [a1, a2] = i.basis();
    for (long h = 0; h <= 40; ++h)
        for (long u = -h; u <= h; ++u)
            for (long v = -h; v <= h; ++v) {
                if (std::max(std::labs(u), std::labs(v)) != h) continue;
                Scalar x = a1 * Scalar::from_int(o.field(), u) + a2 * Scalar::from_int(o.field(), v);
                if (x.is_zero()) continue;
                Rational m = o.norm(x) / i.norm();
                if (m.get_num() % p != 0) return x;
            }
    throw BoundExceeded("no local generator of " + i.to_string() + " at " + std::to_string(p));
}

} // namespace

CliffordOrder even_clifford_order(const IdealValuedForm& q)
{
    const size_t n = q.rank();
    if (n == 0 || n > 6) throw DomainError("even Clifford order needs 1 <= rank <= 6");
    if (!q.is_integral()) throw DomainError("form is not integral with respect to its pseudo-basis");
    const Field& f = q.order.field();
    auto dz = diagonalize(QuadraticForm(q.gram));
    for (const auto& e : dz.form.entries)
        if (e.is_zero()) throw DomainError("form is degenerate");
    CliffordOrder c;
    c.diagonal = dz.form;
    auto c0 = even_clifford(c.diagonal);
    auto c1 = clifford_bimodule(c.diagonal);
    c.algebra = c0.algebra;
    auto pinv = dz.basis.inverse();
    if (!pinv) throw VerificationFailure("diagonalizing basis is singular");
    // original e_i inside C_1 of the diagonal form
    std::vector<Vec> e;
    for (size_t i = 0; i < n; ++i) {
        Vec v = zero_vec(f, c1.dim());
        for (size_t k = 0; k < n; ++k) v = add(v, scale((*pinv)(k, i), c1.embed(k)));
        e.push_back(v);
    }
    const FracIdeal linv = q.value.inverse();
    c.subsets = even_subsets(n);
    for (uint32_t s : c.subsets) {
        Vec x = c0.algebra.unit();
        FracIdeal id = FracIdeal::unit(q.order);
        std::vector<size_t> idx;
        for (size_t k = 0; k < n; ++k)
            if (s >> k & 1) {
                idx.push_back(k);
                id = id * q.coeffs[k];
            }
        for (size_t k = 0; k + 1 < idx.size(); k += 2) {
            x = c0.algebra.multiply(x, bimodule_mult(c0, c1, e[idx[k]], e[idx[k + 1]]));
            id = id * linv;
        }
        c.elements.push_back(std::move(x));
        c.ideals.push_back(std::move(id));
    }
    auto inv = order_basis_matrix(c).inverse();
    if (!inv) throw VerificationFailure("the elements e_S are not a basis of C_0");
    c.closed = true;
    for (size_t s = 0; s < c.subsets.size() && c.closed; ++s)
        for (size_t t = 0; t < c.subsets.size(); ++t) {
            Vec k = inv->apply(c0.algebra.multiply(c.elements[s], c.elements[t]));
            FracIdeal st = c.ideals[s] * c.ideals[t];
            bool ok = true;
            for (size_t u = 0; u < k.size() && ok; ++u)
                if (!k[u].is_zero() && !c.ideals[u].contains(st * k[u])) ok = false;
            if (!ok) {
                c.closed = false;
                c.witness = std::make_pair(s, t);
                break;
            }
        }
    return c;
}

bool order_center_split(const CliffordOrder& c)
{
    const size_t n = c.diagonal.rank();
    if (n % 2) throw DomainError("center splitting needs even rank");
    auto da = discriminant_algebra(c.diagonal);
    auto s = da.delta.sqrt();
    if (!s) return false;
    const Field& f = c.algebra.field();
    const Scalar half = Scalar(f, Rational(1, 2));
    Vec zs = scale(Scalar::one(f) / *s, da.z);
    Vec ep = scale(half, add(c.algebra.unit(), zs));
    Vec em = scale(half, sub(c.algebra.unit(), zs));
    auto inv = order_basis_matrix(c).inverse();
    return in_order(c, *inv, ep) && in_order(c, *inv, em);
}

bool order_reduction_semisimple(const CliffordOrder& c, long p)
{
    const QuadOrder& o = c.ideals.front().order();
    if (p == 2 || !nt::is_prime(Integer(p)) || o.discriminant() % p == 0)
        throw DomainError("reduction needs an odd prime not dividing the discriminant");
    auto red = ReductionMap::split_prime(o.d(), p);
    const size_t n = c.elements.size();
    std::vector<Scalar> loc;
    std::vector<Vec> basis;
    for (size_t s = 0; s < n; ++s) {
        loc.push_back(local_generator(c.ideals[s], p));
        basis.push_back(scale(loc.back(), c.elements[s]));
    }
    Matrix m(c.algebra.field(), n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) m(i, j) = basis[j][i];
    auto inv = m.inverse();
    if (!inv) throw VerificationFailure("local basis is singular");
    const Field& fp = red.target();
    std::vector<Scalar> table;
    table.reserve(n * n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec k = inv->apply(c.algebra.multiply(basis[i], basis[j]));
            for (const auto& x : k) table.push_back(red(x));
        }
    Vec unit = zero_vec(fp, n);
    Vec u = inv->apply(c.algebra.unit());
    for (size_t k = 0; k < n; ++k) unit[k] = red(u[k]);
    std::vector<std::string> labels;
    for (uint32_t s : c.subsets) labels.push_back(CliffordMonomials::label(s));
    auto a = StructureAlgebra::from_dense(fp, labels, table, unit);
    if (!check_associative(a).associative) return false;
    return !trace_form(a).determinant().is_zero();
}

bool reduction_commutes(const IdealValuedForm& q, long p)
{
    auto red = ReductionMap::split_prime(q.order.d(), p);
    auto diag = diagonal_of(QuadraticForm(q.gram));
    auto generic = even_clifford(diag).algebra.dense_table();
    auto reduced = even_clifford(base_change(diag, red)).algebra.dense_table();
    if (generic.size() != reduced.size()) return false;
    for (size_t k = 0; k < generic.size(); ++k)
        if (!(red(generic[k]) == reduced[k])) return false;
    return true;
}

bool quaternion_split_search(const Scalar& a, const Scalar& b, long box)
{
    if (a.is_zero() || b.is_zero()) throw DomainError("quaternion parameters must be nonzero");
    const Field& f = a.field();
    if (a.is_square() || b.is_square() || (-(a * b)).is_square()) return true;
    const QuadOrder o(f.d());
    std::vector<Scalar> pts;
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y) pts.push_back(o.element(Rational(x), Rational(y)));
    // a x1^2 + b x2^2 - ab x3^2 a nonzero square
    for (const auto& x1 : pts)
        for (const auto& x2 : pts)
            for (const auto& x3 : pts) {
                Scalar v = a * x1 * x1 + b * x2 * x2 - a * b * x3 * x3;
                if (v.is_zero()) {
                    if (!(x1.is_zero() && x2.is_zero() && x3.is_zero())) return true;
                    continue;
                }
                if (v.is_square()) return true;
            }
    return false;
}

// ------------------------------------------------------------------ alignment

Alignment align_to_representative(const std::vector<ClassRep>& reps, const FracIdeal& l)
{
    const QuadOrder& o = l.order();
    const size_t k = class_mod_squares(reps, l);
    const FracIdeal target = reps[k].ideal * l.inverse();
    std::vector<FracIdeal> cands{FracIdeal::unit(o)};
    for (long p = 2; p <= 50; ++p)
        if (nt::is_prime(Integer(p)))
            for (const auto& pr : primes_above(o, p)) {
                cands.push_back(pr);
                cands.push_back(pr.inverse());
            }
    const size_t single = cands.size();
    for (size_t i = 1; i < single; ++i)
        for (size_t j = i; j < single; ++j) cands.push_back(cands[i] * cands[j]);
    for (const auto& n : cands) {
        auto g = (target * n.pow(-2)).principal_generator();
        if (g) return {k, n, *g};
    }
    throw VerificationFailure("value ideal " + l.to_string() + " cannot be aligned to " + reps[k].label);
}

TotalWittElement total_witt_element(const std::vector<ClassRep>& reps, const std::vector<IdealValuedForm>& forms)
{
    if (reps.empty()) throw DomainError("empty representative set");
    TotalWittElement w(reps.front().ideal.order().field());
    for (const auto& q : forms) {
        auto al = align_to_representative(reps, q.value);
        auto t = twist_by_alignment(q, al.n, al.phi);
        if (!(t.value == reps[al.label].ideal)) throw VerificationFailure("alignment missed its representative");
        auto d = diagonal_of(QuadraticForm(t.gram));
        auto [it, fresh] = w.components.emplace(reps[al.label].label, d);
        if (!fresh) it->second = orthogonal_sum(it->second, d);
    }
    return w;
}

std::vector<IdealValuedForm> closure_test_set(const QuadOrder& o, size_t max_rank, size_t per_pattern, unsigned long seed)
{
    const Field& f = o.field();
    const FracIdeal one = FracIdeal::unit(o);
    const FracIdeal p2 = primes_above(o, 2).front();
    const Scalar w = o.omega();
    const std::vector<Scalar> diag{Scalar::from_int(f, 1), Scalar::from_int(f, -1), Scalar::from_int(f, 2),
                                   Scalar::from_int(f, 3), w, Scalar::one(f) + w, Scalar::from_int(f, -2) + w};
    const std::vector<Scalar> off{Scalar::from_int(f, 0), Scalar(f, Rational(1, 2)), Scalar::one(f),
                                  Scalar(f, Rational(1, 2)) * w, Scalar::one(f) - w};
    std::mt19937_64 rng(seed);
    std::vector<IdealValuedForm> out;
    for (size_t r = 1; r <= max_rank; ++r)
        for (uint32_t pat = 0; pat < (1u << r); ++pat)
            for (const FracIdeal& l : {one, p2})
                for (size_t k = 0, tries = 0; k < per_pattern && tries < 50 * per_pattern; ++tries) {
                    std::vector<FracIdeal> a;
                    for (size_t i = 0; i < r; ++i) a.push_back(pat >> i & 1 ? p2 : one);
                    Matrix g(f, r, r);
                    for (size_t i = 0; i < r; ++i) {
                        g(i, i) = diag[rng() % diag.size()];
                        for (size_t j = i + 1; j < r; ++j) g(i, j) = g(j, i) = off[rng() % off.size()];
                    }
                    const Scalar two = Scalar::from_int(f, 2);
                    for (size_t i = 0; i < r; ++i)
                        for (size_t j = i; j < r; ++j) {
                            Scalar c = i == j ? g(i, i) : two * g(i, j);
                            while (!c.is_zero() && !l.contains(a[i] * a[j] * c)) {
                                c = c * two;
                                if (i == j) g(i, i) = g(i, i) * two;
                                else g(i, j) = g(j, i) = g(i, j) * two;
                            }
                        }
                    if (g.determinant().is_zero()) continue;
                    out.emplace_back(o, std::move(a), std::move(g), l);
                    ++k;
                }
    return out;
}

} // namespace clifq
