#include "clifq/forms.hpp"

#include "clifq/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace clifq {

namespace {

void require_prime_or_q(const Field& f, const char* what)
{
    if (f.kind() != Field::Kind::Rational && f.kind() != Field::Kind::PrimeField)
        throw Unsupported(std::string(what) + " is only supported over Q and F_p, not " + f.name());
}

Rational rat(const Scalar& s) { return s.rational(); }

} // namespace

QuadraticForm::QuadraticForm(Matrix g, std::string label) : gram(std::move(g)), value_label(std::move(label))
{
    if (!gram.is_symmetric()) throw DomainError("gram matrix must be symmetric");
}

bool QuadraticForm::is_regular() const { return !determinant().is_zero(); }

Scalar QuadraticForm::value(const Vec& x) const { return polar(x, x); }

Scalar QuadraticForm::polar(const Vec& x, const Vec& y) const
{
    Vec gy = gram.apply(y);
    Scalar s = Scalar::zero(field());
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) s += x[i] * gy[i];
    return s;
}

DiagonalForm::DiagonalForm(Field f, std::vector<Scalar> e) : field(std::move(f)), entries(std::move(e))
{
    for (const auto& a : entries) {
        if (!(a.field() == field)) throw DomainError("diagonal entry over the wrong field");
        if (a.is_zero()) throw DomainError("diagonal form with a zero entry is degenerate");
    }
}

DiagonalForm DiagonalForm::of_rationals(const std::vector<Rational>& values)
{
    Field q = Field::rationals();
    std::vector<Scalar> e;
    for (const auto& v : values) e.emplace_back(q, v);
    return DiagonalForm(q, std::move(e));
}

DiagonalForm DiagonalForm::of_ints(const Field& f, const std::vector<long>& values)
{
    std::vector<Scalar> e;
    for (long v : values) e.push_back(Scalar::from_int(f, v));
    return DiagonalForm(f, std::move(e));
}

QuadraticForm DiagonalForm::to_form() const
{
    Matrix g(field, rank(), rank());
    for (size_t i = 0; i < rank(); ++i) g(i, i) = entries[i];
    return QuadraticForm(std::move(g));
}

std::string DiagonalForm::to_string() const
{
    std::ostringstream os;
    os << "<";
    for (size_t i = 0; i < entries.size(); ++i) os << (i ? ", " : "") << entries[i].to_string();
    os << ">";
    return os.str();
}

Diagonalization diagonalize(const QuadraticForm& q)
{
    const size_t n = q.rank();
    const Field& f = q.field();
    Matrix g = q.gram;
    Matrix p = Matrix::identity(f, n);
    auto swap_idx = [&](size_t a, size_t b) {
        for (size_t r = 0; r < n; ++r) std::swap(g(r, a), g(r, b));
        for (size_t c = 0; c < n; ++c) std::swap(g(a, c), g(b, c));
        for (size_t r = 0; r < n; ++r) std::swap(p(r, a), p(r, b));
    };
    // col_dst += c * col_src, applied as a congruence.
    auto add_col = [&](size_t dst, size_t src, const Scalar& c) {
        for (size_t r = 0; r < n; ++r) g(r, dst) += c * g(r, src);
        for (size_t s = 0; s < n; ++s) g(dst, s) += c * g(src, s);
        for (size_t r = 0; r < n; ++r) p(r, dst) += c * p(r, src);
    };
    for (size_t k = 0; k < n; ++k) {
        if (g(k, k).is_zero()) {
            size_t i = k + 1;
            while (i < n && g(i, i).is_zero()) ++i;
            if (i < n) {
                swap_idx(k, i);
            } else {
                size_t j = k + 1;
                while (j < n && g(k, j).is_zero()) ++j;
                if (j == n) throw DomainError("quadratic form is not regular");
                add_col(k, j, Scalar::one(f));
            }
        }
        for (size_t i = k + 1; i < n; ++i)
            if (!g(k, i).is_zero()) add_col(i, k, -(g(k, i) / g(k, k)));
    }
    std::vector<Scalar> e;
    for (size_t k = 0; k < n; ++k) e.push_back(g(k, k));
    return {DiagonalForm(f, std::move(e)), p};
}

DiagonalForm diagonal_of(const QuadraticForm& q) { return diagonalize(q).form; }

QuadraticForm orthogonal_sum(const QuadraticForm& q, const QuadraticForm& r)
{
    if (!(q.field() == r.field())) throw DomainError("orthogonal sum over different base fields");
    if (q.value_label != r.value_label) throw DomainError("orthogonal sum with different value labels");
    const size_t n = q.rank(), m = r.rank();
    Matrix g(q.field(), n + m, n + m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g(i, j) = q.gram(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g(n + i, n + j) = r.gram(i, j);
    return QuadraticForm(std::move(g), q.value_label);
}

DiagonalForm orthogonal_sum(const DiagonalForm& q, const DiagonalForm& r)
{
    if (!(q.field == r.field)) throw DomainError("orthogonal sum over different base fields");
    std::vector<Scalar> e = q.entries;
    e.insert(e.end(), r.entries.begin(), r.entries.end());
    return DiagonalForm(q.field, std::move(e));
}

QuadraticForm hyperbolic(const Field& f, int r)
{
    if (r < 1) throw DomainError("hyperbolic form needs r >= 1");
    const size_t n = static_cast<size_t>(r);
    Matrix g(f, 2 * n, 2 * n);
    Scalar half = Scalar::one(f) / Scalar::from_int(f, 2);
    for (size_t i = 0; i < n; ++i) {
        g(i, n + i) = half;
        g(n + i, i) = half;
    }
    return QuadraticForm(std::move(g));
}

QuadraticForm twist(const QuadraticForm& q, const Scalar& n)
{
    if (n.is_zero()) throw DomainError("twist by zero");
    return QuadraticForm(q.gram.scaled(n), q.value_label);
}

DiagonalForm twist(const DiagonalForm& q, const Scalar& n)
{
    if (n.is_zero()) throw DomainError("twist by zero");
    std::vector<Scalar> e;
    for (const auto& a : q.entries) e.push_back(n * a);
    return DiagonalForm(q.field, std::move(e));
}

namespace {

Scalar discriminant_sign(const Field& f, size_t n)
{
    return ((n * (n - 1) / 2) % 2) ? -Scalar::one(f) : Scalar::one(f);
}

} // namespace

SquareClass signed_discriminant(const QuadraticForm& q)
{
    Scalar d = q.determinant();
    if (d.is_zero()) throw DomainError("signed discriminant of a degenerate form");
    return square_class(discriminant_sign(q.field(), q.rank()) * d);
}

SquareClass signed_discriminant(const DiagonalForm& q)
{
    Scalar d = discriminant_sign(q.field, q.rank());
    for (const auto& a : q.entries) d *= a;
    return square_class(d);
}

DiagonalForm reduce_entries(const DiagonalForm& q)
{
    require_prime_or_q(q.field, "entry reduction");
    std::vector<Scalar> e;
    for (const auto& a : q.entries) e.push_back(square_class(a).representative());
    return DiagonalForm(q.field, std::move(e));
}

// ------------------------------------------------------------------ invariants

int hasse_invariant(const DiagonalForm& q, const nt::Place& v)
{
    if (q.field.kind() != Field::Kind::Rational) throw Unsupported("Hasse invariants are computed over Q only");
    int s = 1;
    for (size_t i = 0; i < q.rank(); ++i)
        for (size_t j = i + 1; j < q.rank(); ++j) s *= nt::hilbert_symbol(rat(q.entries[i]), rat(q.entries[j]), v);
    return s;
}

int signature(const DiagonalForm& q)
{
    if (q.field.kind() != Field::Kind::Rational) throw Unsupported("signature is computed over Q only");
    int s = 0;
    for (const auto& a : q.entries) s += rat(a) > 0 ? 1 : -1;
    return s;
}

std::vector<nt::Place> relevant_places(const DiagonalForm& q)
{
    std::vector<Rational> vals;
    for (const auto& a : q.entries) vals.push_back(rat(a));
    return nt::relevant_places(vals);
}

namespace {

Rational det_of(const DiagonalForm& q)
{
    Rational d = 1;
    for (const auto& a : q.entries) d *= rat(a);
    return d;
}

bool locally_isotropic(const DiagonalForm& q, const nt::Place& v)
{
    const size_t n = q.rank();
    if (n <= 1) return false;
    if (v.is_infinite()) {
        bool pos = false, neg = false;
        for (const auto& a : q.entries) (rat(a) > 0 ? pos : neg) = true;
        return pos && neg;
    }
    if (n >= 5) return true;
    Rational d = det_of(q);
    if (n == 2) return nt::is_local_square(-d, v);
    int eps = hasse_invariant(q, v);
    if (n == 3) return nt::hilbert_symbol(Rational(-1), -d, v) == eps;
    // n == 4
    if (!nt::is_local_square(d, v)) return true;
    return eps == nt::hilbert_symbol(Rational(-1), Rational(-1), v);
}

bool is_square_scalar(const Scalar& s) { return s.is_square(); }

} // namespace

bool is_isotropic(const DiagonalForm& q)
{
    require_prime_or_q(q.field, "isotropy");
    const size_t n = q.rank();
    if (n <= 1) return false;
    if (q.field.kind() == Field::Kind::PrimeField) {
        if (n >= 3) return true;
        return is_square_scalar(-(q.entries[0] / q.entries[1]));
    }
    for (const auto& v : relevant_places(q))
        if (!locally_isotropic(q, v)) return false;
    return true;
}

bool is_isotropic(const QuadraticForm& q) { return is_isotropic(diagonal_of(q)); }

// ------------------------------------------------------------------ Legendre

std::optional<std::array<Integer, 3>> solve_legendre(const Integer& a_in, const Integer& b_in)
{
    if (a_in == 0 || b_in == 0) throw DomainError("Legendre equation with a zero coefficient");
    if (nt::is_square(a_in)) return std::array<Integer, 3>{Integer(sqrt(a_in)), 1, 0};
    if (nt::is_square(b_in)) return std::array<Integer, 3>{Integer(sqrt(b_in)), 0, 1};
    Integer a = nt::squarefree_part(a_in), b = nt::squarefree_part(b_in);
    Integer s = sqrt(Integer(a_in / a)), u = sqrt(Integer(b_in / b));
    if (s != 1 || u != 1) {
        auto r = solve_legendre(a, b);
        if (!r) return std::nullopt;
        auto& [x, y, z] = *r;
        return std::array<Integer, 3>{x * s * u, y * u, z * s};
    }
    if (abs(a) > abs(b)) {
        auto r = solve_legendre(b, a);
        if (!r) return std::nullopt;
        return std::array<Integer, 3>{(*r)[0], (*r)[2], (*r)[1]};
    }
    Integer m = abs(b);
    if (m == 1) return std::nullopt;
    // r^2 = a mod |b| by CRT over the prime factors of b.
    Integer r = 0, mod = 1;
    for (const auto& [p, e] : nt::factor(m)) {
        Integer rp;
        if (p == 2) {
            rp = a % 2;
            if (rp < 0) rp += 2;
        } else {
            auto sq = nt::sqrt_mod_prime(a, p);
            if (!sq) return std::nullopt;
            rp = *sq;
        }
        // combine r (mod mod) with rp (mod p)
        Integer inv;
        mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), p.get_mpz_t());
        Integer k = ((rp - r) * inv) % p;
        if (k < 0) k += p;
        r += mod * k;
        mod *= p;
    }
    r %= m;
    if (2 * r > m) r -= m;
    Integer t = (r * r - a) / b;
    auto sub = solve_legendre(a, t);
    if (!sub) return std::nullopt;
    auto& [x, y, z] = *sub;
    std::array<Integer, 3> out{r * x + a * y, x + r * y, t * z};
    Integer g = 0;
    for (const auto& c : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : out) c /= g;
    return out;
}

// ------------------------------------------------------------------ vectors

namespace {

std::optional<Vec> isotropic_fp(const DiagonalForm& q)
{
    const Field& f = q.field;
    const size_t n = q.rank();
    Vec v = zero_vec(f, n);
    if (n < 2) return std::nullopt;
    if (n == 2) {
        auto r = (-(q.entries[0] / q.entries[1])).sqrt();
        if (!r) return std::nullopt;
        v[0] = Scalar::one(f);
        v[1] = *r;
        return v;
    }
    const Scalar& a = q.entries[0];
    const Scalar& b = q.entries[1];
    const Scalar& c = q.entries[2];
    for (long x = 0; x < f.characteristic(); ++x) {
        Scalar sx = Scalar::from_int(f, x);
        auto y = ((-c - a * sx * sx) / b).sqrt();
        if (y) {
            v[0] = sx;
            v[1] = *y;
            v[2] = Scalar::one(f);
            return v;
        }
    }
    throw VerificationFailure("no isotropic vector found for a rank >= 3 form over " + f.name());
}

std::optional<std::vector<Rational>> isotropic_q_ints(const std::vector<Integer>& a);

std::vector<Rational> rank3_vector(const Integer& a1, const Integer& a2, const Integer& a3)
{
    auto sol = solve_legendre(-a1 * a2, -a1 * a3);
    if (!sol) throw VerificationFailure("Legendre descent failed on a locally isotropic ternary form");
    const auto& [x, y, z] = *sol;
    return {Rational(x), Rational(a1 * y), Rational(a1 * z)};
}

DiagonalForm form_of_ints(const std::vector<Integer>& a)
{
    std::vector<Rational> r(a.begin(), a.end());
    return DiagonalForm::of_rationals(r);
}

std::optional<std::vector<Rational>> isotropic_q_ints(const std::vector<Integer>& a)
{
    const size_t n = a.size();
    if (!is_isotropic(form_of_ints(a))) return std::nullopt;
    if (n == 2) {
        Rational ratio(-a[1]);
        ratio /= a[0];
        auto r = nt::rational_sqrt(ratio);
        if (!r) throw VerificationFailure("binary isotropy certificate failed");
        return std::vector<Rational>{*r, Rational(1)};
    }
    if (n == 3) return rank3_vector(a[0], a[1], a[2]);
    // Rank >= 4: a subform may already be isotropic.
    std::vector<Integer> head{a[0], a[1]}, rest(a.begin() + 2, a.end());
    if (is_isotropic(form_of_ints(head))) {
        auto v = *isotropic_q_ints(head);
        v.resize(n, Rational(0));
        return v;
    }
    if (is_isotropic(form_of_ints(rest))) {
        auto w = *isotropic_q_ints(rest);
        std::vector<Rational> v{0, 0};
        v.insert(v.end(), w.begin(), w.end());
        return v;
    }
    // Find t = a1 x^2 + a2 y^2 with rest + <t> isotropic, then rest represents -t.
    constexpr long height = 1000;
    std::set<Integer> tried;
    for (long h = 1; h <= height; ++h) {
        for (long x = 0; x <= h; ++x) {
            for (long y : {h, -h}) {
                for (int swap = 0; swap < 2; ++swap) {
                    long xx = swap ? y : x, yy = swap ? x : y;
                    if (swap && x == h) continue;
                    Integer t = a[0] * xx * xx + a[1] * yy * yy;
                    if (t == 0) continue;
                    Integer tc = nt::squarefree_part(t);
                    if (!tried.insert(tc).second) continue;
                    std::vector<Integer> ext = rest;
                    ext.push_back(tc);
                    if (!is_isotropic(form_of_ints(ext))) continue;
                    auto w = *isotropic_q_ints(ext);
                    Rational last = w.back();
                    if (last == 0) throw VerificationFailure("unexpected isotropic subform");
                    // rest(w') + tc * last^2 = 0 with t = tc * k^2
                    Rational k = *nt::rational_sqrt(Rational(t) / Rational(tc));
                    std::vector<Rational> v{Rational(xx), Rational(yy)};
                    for (size_t i = 0; i + 1 < w.size(); ++i) v.push_back(w[i] * k / last);
                    return v;
                }
            }
        }
    }
    throw BoundExceeded("isotropic vector search exceeded height bound 1000");
}

} // namespace

std::optional<Vec> isotropic_vector(const DiagonalForm& q)
{
    require_prime_or_q(q.field, "isotropic vectors");
    if (q.field.kind() == Field::Kind::PrimeField) return isotropic_fp(q);
    // Scale coordinates so that each entry becomes a squarefree integer.
    std::vector<Integer> ints;
    std::vector<Rational> scale_back;
    for (const auto& a : q.entries) {
        Integer s = nt::squarefree_class(rat(a));
        ints.push_back(s);
        scale_back.push_back(*nt::rational_sqrt(Rational(s) / rat(a)));
    }
    auto v = isotropic_q_ints(ints);
    if (!v) return std::nullopt;
    Vec out;
    for (size_t i = 0; i < v->size(); ++i) out.emplace_back(q.field, (*v)[i] * scale_back[i]);
    if (!q.to_form().value(out).is_zero()) throw VerificationFailure("isotropic vector check failed");
    return out;
}

std::optional<Vec> isotropic_vector(const QuadraticForm& q)
{
    auto d = diagonalize(q);
    auto v = isotropic_vector(d.form);
    if (!v) return std::nullopt;
    return d.basis.apply(*v);
}

// ------------------------------------------------------------------ Witt

namespace {

// Splits a hyperbolic plane off an isotropic diagonal form; returns the
// reduced orthogonal complement.
DiagonalForm split_plane(const DiagonalForm& q, const Vec& v)
{
    const size_t n = q.rank();
    QuadraticForm g = q.to_form();
    Vec gv = g.gram.apply(v);
    size_t j = 0;
    while (gv[j].is_zero()) ++j;
    Matrix cons(q.field, 2, n);
    for (size_t i = 0; i < n; ++i) cons(0, i) = gv[i];
    cons(1, j) = q.entries[j];
    auto comp = cons.nullspace();
    if (comp.empty()) return DiagonalForm(q.field, {});
    Matrix c(q.field, n, comp.size());
    for (size_t k = 0; k < comp.size(); ++k)
        for (size_t i = 0; i < n; ++i) c(i, k) = comp[k][i];
    return reduce_entries(diagonal_of(QuadraticForm(c.transpose() * g.gram * c)));
}

// Over Q: a small diagonal k with sub = <1, -1> + k, chosen by classical
// invariants among products of -1, the primes of sub and a few small primes.
std::optional<DiagonalForm> small_complement(const DiagonalForm& sub)
{
    const Field& f = sub.field;
    const size_t m = sub.rank() - 2;
    Integer d = nt::squarefree_class(-det_of(sub));
    if (m == 0) return DiagonalForm(f, {});
    if (m == 1) return DiagonalForm(f, {Scalar(f, Rational(d))});
    std::vector<Integer> gens{Integer(-1)};
    for (const auto& v : relevant_places(sub))
        if (!v.is_infinite()) gens.push_back(v.prime());
    for (long p : {3L, 5L, 7L, 11L})
        if (std::find(gens.begin(), gens.end(), Integer(p)) == gens.end()) gens.push_back(Integer(p));
    if (gens.size() > 12) return std::nullopt;
    std::vector<Integer> vals;
    for (size_t mask = 0; mask < (size_t{1} << gens.size()); ++mask) {
        Integer v = 1;
        for (size_t i = 0; i < gens.size(); ++i)
            if (mask >> i & 1) v *= gens[i];
        vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end(), [](const Integer& x, const Integer& y) {
        if (abs(x) != abs(y)) return abs(x) < abs(y);
        return x > y;
    });
    auto sq = [&](const Integer& x) { return Scalar(f, Rational(nt::squarefree_class(Rational(x)))); };
    DiagonalForm plane(f, {Scalar::one(f), -Scalar::one(f)});
    const size_t limit = std::min<size_t>(vals.size(), 256);
    for (size_t i = 0; i < limit; ++i) {
        if (m == 2) {
            DiagonalForm k(f, {sq(vals[i]), sq(vals[i] * d)});
            if (is_isometric(sub, orthogonal_sum(plane, k))) return k;
            continue;
        }
        for (size_t j = 0; j <= i; ++j) {
            DiagonalForm k(f, {sq(vals[j]), sq(vals[i]), sq(vals[i] * vals[j] * d)});
            if (is_isometric(sub, orthogonal_sum(plane, k))) return k;
        }
    }
    return std::nullopt;
}

// Smallest-support isotropic subform, searched by increasing size.
std::optional<std::vector<size_t>> isotropic_support(const DiagonalForm& q)
{
    const size_t n = q.rank();
    for (size_t s = 2; s <= std::min<size_t>(n, 5); ++s) {
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            std::vector<Scalar> e;
            for (size_t i : idx) e.push_back(q.entries[i]);
            if (is_isotropic(DiagonalForm(q.field, e))) return idx;
            size_t k = s;
            while (k > 0 && idx[k - 1] == n - s + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (size_t i = k; i < s; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return std::nullopt;
}

} // namespace

WittClass witt_decompose(const DiagonalForm& q)
{
    require_prime_or_q(q.field, "Witt decomposition");
    WittClass w;
    DiagonalForm cur = reduce_entries(q);
    for (;;) {
        auto support = isotropic_support(cur);
        if (!support) break;
        std::vector<Scalar> in, out;
        std::vector<bool> used(cur.rank(), false);
        for (size_t i : *support) {
            in.push_back(cur.entries[i]);
            used[i] = true;
        }
        for (size_t i = 0; i < cur.rank(); ++i)
            if (!used[i]) out.push_back(cur.entries[i]);
        DiagonalForm sub(cur.field, in);
        std::optional<DiagonalForm> comp;
        if (cur.field.kind() == Field::Kind::Rational) comp = small_complement(sub);
        if (!comp) {
            auto v = isotropic_vector(sub);
            if (!v) throw VerificationFailure("isotropic subform without an isotropic vector");
            comp = split_plane(sub, *v);
        }
        cur = orthogonal_sum(DiagonalForm(cur.field, out), *comp);
        ++w.witt_index;
    }
    w.anisotropic_kernel = cur;
    return w;
}

WittClass witt_decompose(const QuadraticForm& q) { return witt_decompose(diagonal_of(q)); }

bool is_isometric(const DiagonalForm& q, const DiagonalForm& r)
{
    require_prime_or_q(q.field, "isometry");
    if (!(q.field == r.field)) throw DomainError("isometry test over different fields");
    if (q.rank() != r.rank()) return false;
    if (q.rank() == 0) return true;
    if (!(signed_discriminant(q) == signed_discriminant(r))) return false;
    if (q.field.kind() == Field::Kind::PrimeField) return true;
    if (signature(q) != signature(r)) return false;
    std::set<nt::Place> places;
    for (const auto& v : relevant_places(q)) places.insert(v);
    for (const auto& v : relevant_places(r)) places.insert(v);
    for (const auto& v : places)
        if (hasse_invariant(q, v) != hasse_invariant(r, v)) return false;
    return true;
}

bool is_witt_trivial(const DiagonalForm& q)
{
    if (q.rank() % 2) return false;
    std::vector<Scalar> h;
    for (size_t i = 0; i < q.rank() / 2; ++i) {
        h.push_back(Scalar::one(q.field));
        h.push_back(-Scalar::one(q.field));
    }
    return is_isometric(q, DiagonalForm(q.field, std::move(h)));
}

} // namespace clifq
