#include "clifq/clifford.hpp"

#include "clifq/errors.hpp"

#include <algorithm>
#include <bit>

namespace clifq {

namespace {

int popcount(uint32_t s) { return std::popcount(s); }

std::vector<int> indices(uint32_t s)
{
    std::vector<int> r;
    for (int i = 0; s >> i; ++i)
        if (s >> i & 1) r.push_back(i);
    return r;
}

// (-1)^{number of elements of s below i}
int sign_below(uint32_t s, int i) { return popcount(s & ((1u << i) - 1)) % 2 ? -1 : 1; }

std::vector<int> index_map(const std::vector<uint32_t>& subsets, size_t n)
{
    std::vector<int> idx(size_t{1} << n, -1);
    for (size_t i = 0; i < subsets.size(); ++i) idx[subsets[i]] = static_cast<int>(i);
    return idx;
}

// Product of x (over basis xs) and y (over basis ys), landing in basis zs.
Vec monomial_product(const CliffordMonomials& cm, const std::vector<uint32_t>& xs, const Vec& x,
                     const std::vector<uint32_t>& ys, const Vec& y, const std::vector<int>& z_index, size_t zdim)
{
    const Field& f = cm.form().field;
    Vec r = zero_vec(f, zdim);
    for (size_t i = 0; i < xs.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < ys.size(); ++j) {
            if (y[j].is_zero()) continue;
            auto [c, s] = cm.mul(xs[i], ys[j]);
            int k = z_index[s];
            if (k < 0) throw DomainError("product left the expected parity");
            r[static_cast<size_t>(k)] += c * x[i] * y[j];
        }
    }
    return r;
}

} // namespace

// ------------------------------------------------------------------ monomials

CliffordMonomials::CliffordMonomials(DiagonalForm form) : form_(std::move(form))
{
    if (form_.rank() > 16) throw BoundExceeded("Clifford rank too large");
}

std::pair<Scalar, uint32_t> CliffordMonomials::mul(uint32_t s, uint32_t t) const
{
    int swaps = 0;
    for (int j : indices(t)) swaps += popcount(s >> (j + 1));
    Scalar c = swaps % 2 ? -Scalar::one(form_.field) : Scalar::one(form_.field);
    for (int i : indices(s & t)) c *= form_.entries[static_cast<size_t>(i)];
    return {c, s ^ t};
}

std::string CliffordMonomials::label(uint32_t s)
{
    if (s == 0) return "1";
    std::string out;
    for (int i : indices(s)) out += "e" + std::to_string(i + 1);
    return out;
}

std::vector<uint32_t> CliffordMonomials::subsets(int parity) const
{
    std::vector<uint32_t> out;
    for (uint32_t s = 0; s < (1u << rank()); ++s)
        if (popcount(s) % 2 == parity) out.push_back(s);
    std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return indices(a) < indices(b);
    });
    return out;
}

// ------------------------------------------------------------------ C_0, C_1

Vec EvenClifford::generator(size_t i, size_t j) const
{
    CliffordMonomials cm(form);
    auto [c, s] = cm.mul(1u << i, 1u << j);
    return scale(c, monomial(s));
}

Vec EvenClifford::monomial(uint32_t s) const
{
    int k = index_of.at(s);
    if (k < 0) throw DomainError("odd monomial is not in C_0");
    return unit_vec(form.field, dim(), static_cast<size_t>(k));
}

EvenClifford even_clifford(const DiagonalForm& q)
{
    const size_t n = q.rank();
    if (n == 0) throw DomainError("even Clifford algebra of the zero form");
    if (n > 7) throw BoundExceeded("even Clifford algebras are limited to rank 7 (dimension 64)");
    CliffordMonomials cm(q);
    auto subs = cm.subsets(0);
    auto idx = index_map(subs, n);
    const size_t d = subs.size();
    std::vector<std::vector<Term>> table(d * d);
    std::vector<std::string> labels;
    for (size_t i = 0; i < d; ++i) {
        labels.push_back(CliffordMonomials::label(subs[i]));
        for (size_t j = 0; j < d; ++j) {
            auto [c, s] = cm.mul(subs[i], subs[j]);
            table[i * d + j].push_back({static_cast<size_t>(idx[s]), c});
        }
    }
    StructureAlgebra a(q.field, std::move(labels), std::move(table), unit_vec(q.field, d, 0));
    EvenClifford c{q, std::move(a), std::move(subs), std::move(idx)};
    std::vector<Vec> gens;
    for (size_t j = 1; j < n; ++j) gens.push_back(c.generator(0, j));
    c.algebra.set_generators(std::move(gens));
    c.algebra.set_involution(canonical_involution(c));
    return c;
}

CliffordBimodule clifford_bimodule(const DiagonalForm& q)
{
    const size_t n = q.rank();
    if (n == 0) throw DomainError("Clifford bimodule of the zero form");
    if (n > 7) throw BoundExceeded("Clifford bimodules are limited to rank 7 (dimension 64)");
    CliffordMonomials cm(q);
    auto subs = cm.subsets(1);
    auto idx = index_map(subs, n);
    return CliffordBimodule{q, std::move(subs), std::move(idx)};
}

Vec CliffordBimodule::embed(size_t j) const
{
    return unit_vec(form.field, dim(), static_cast<size_t>(index_of.at(1u << j)));
}

Vec CliffordBimodule::left(const EvenClifford& c0, const Vec& c, const Vec& x) const
{
    return monomial_product(CliffordMonomials(form), c0.subsets, c, subsets, x, index_of, dim());
}

Vec CliffordBimodule::right(const EvenClifford& c0, const Vec& x, const Vec& c) const
{
    return monomial_product(CliffordMonomials(form), subsets, x, c0.subsets, c, index_of, dim());
}

Matrix CliffordBimodule::left_matrix(const EvenClifford& c0, const Vec& c) const
{
    Matrix m(form.field, dim(), dim());
    for (size_t j = 0; j < dim(); ++j) {
        Vec col = left(c0, c, unit_vec(form.field, dim(), j));
        for (size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
    }
    return m;
}

Matrix CliffordBimodule::right_matrix(const EvenClifford& c0, const Vec& c) const
{
    Matrix m(form.field, dim(), dim());
    for (size_t j = 0; j < dim(); ++j) {
        Vec col = right(c0, unit_vec(form.field, dim(), j), c);
        for (size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
    }
    return m;
}

Vec bimodule_mult(const EvenClifford& c0, const CliffordBimodule& c1, const Vec& x, const Vec& y)
{
    if (!(c0.form == c1.form)) throw DomainError("bimodule and algebra come from different forms");
    return monomial_product(CliffordMonomials(c1.form), c1.subsets, x, c1.subsets, y, c0.index_of, c0.dim());
}

Matrix canonical_involution(const EvenClifford& c)
{
    const Field& f = c.form.field;
    Matrix m(f, c.dim(), c.dim());
    for (size_t i = 0; i < c.dim(); ++i) {
        int k = popcount(c.subsets[i]);
        m(i, i) = (k * (k - 1) / 2) % 2 ? -Scalar::one(f) : Scalar::one(f);
    }
    return m;
}

// ------------------------------------------------------------------ center

DiscriminantAlgebra discriminant_algebra(const DiagonalForm& q)
{
    const size_t n = q.rank();
    if (n == 0 || n % 2) throw DomainError("discriminant algebra needs even positive rank");
    auto c = even_clifford(q);
    const Field& f = q.field;
    uint32_t top = (1u << n) - 1;
    Vec z = c.monomial(top);
    auto [delta, s] = CliffordMonomials(q).mul(top, top);
    (void)s;
    auto cen = center(c.algebra);
    if (cen.size() != 2) throw VerificationFailure("center of C_0 is not 2-dimensional");
    for (const auto& g : c.algebra.generators())
        if (!(c.algebra.multiply(z, g) == c.algebra.multiply(g, z)))
            throw VerificationFailure("top monomial is not central");
    std::vector<Scalar> t(8, Scalar::zero(f));
    t[0] = Scalar::one(f);
    t[3] = Scalar::one(f);
    t[5] = Scalar::one(f);
    t[6] = delta;
    DiscriminantAlgebra d{delta, std::nullopt, delta.is_square(), z,
                          StructureAlgebra::from_dense(f, {"1", "z"}, t, unit_vec(f, 2, 0))};
    if (f.kind() == Field::Kind::Rational || f.kind() == Field::Kind::PrimeField) d.klass = square_class(delta);
    if (d.klass && !(*d.klass == signed_discriminant(q)))
        throw VerificationFailure("center disagrees with the signed discriminant");
    return d;
}

SplitComponents split_components(const DiagonalForm& q)
{
    auto disc = discriminant_algebra(q);
    auto s = disc.delta.sqrt();
    if (!s) throw DomainError("center of C_0 is not split (signed discriminant is not a square)");
    auto c = even_clifford(q);
    const Field& f = q.field;
    Scalar half = Scalar::one(f) / Scalar::from_int(f, 2);
    Vec u = c.algebra.unit();
    Vec zs = scale(Scalar::one(f) / *s, disc.z);
    Vec ep = scale(half, add(u, zs)), em = scale(half, sub(u, zs));
    return {corner(c.algebra, ep), corner(c.algebra, em), ep, em};
}

SplitCertificate metabolic_split_certificate(const DiagonalForm& q)
{
    const size_t n = q.rank();
    if (n == 0 || n % 2) throw DomainError("split certificate needs even rank");
    SplitCertificate out;
    const Field& f = q.field;
    auto c = even_clifford(q);
    const auto& A = c.algebra;
    const Scalar half = Scalar::one(f) / Scalar::from_int(f, 2);
    // (1 +- u/s)/2 for u = e_{2k} e_{2k+1}, u^2 = s^2
    std::vector<Vec> plus, minus;
    for (size_t k = 0; k < n; k += 2) {
        auto s = (-(q.entries[k] * q.entries[k + 1])).sqrt();
        if (!s) return out;
        Vec u = scale(Scalar::one(f) / *s, c.generator(k, k + 1));
        plus.push_back(scale(half, add(A.unit(), u)));
        minus.push_back(scale(half, sub(A.unit(), u)));
    }
    auto product = [&](bool flip_first) {
        Vec p = A.unit();
        for (size_t k = 0; k < plus.size(); ++k) p = A.multiply(p, k == 0 && flip_first ? minus[k] : plus[k]);
        return p;
    };
    auto corner_dim = [&](const Vec& p) {
        std::vector<Vec> span;
        for (size_t i = 0; i < A.dim(); ++i) span.push_back(A.multiply(A.multiply(p, A.basis(i)), p));
        return independent_subset(f, span).size();
    };
    auto sc = split_components(q);
    Vec p1 = product(false), p2 = product(true);
    if (A.multiply(p1, sc.e_plus) != p1) std::swap(p1, p2);
    if (A.multiply(p1, p1) != p1 || A.multiply(p2, p2) != p2) return out;
    if (A.multiply(p1, sc.e_plus) != p1 || A.multiply(p2, sc.e_minus) != p2) return out;
    out.idempotent_plus = p1;
    out.idempotent_minus = p2;
    out.corner_dim_plus = corner_dim(p1);
    out.corner_dim_minus = corner_dim(p2);
    out.found = out.corner_dim_plus == 1 && out.corner_dim_minus == 1;
    return out;
}

// ------------------------------------------------------------------ hyperbolic model

Matrix exterior_contraction(const Field& f, int r, const Vec& t)
{
    const size_t d = size_t{1} << r;
    Matrix m(f, d, d);
    for (uint32_t b = 0; b < d; ++b)
        for (int i : indices(b))
            if (!t[static_cast<size_t>(i)].is_zero()) {
                Scalar c = t[static_cast<size_t>(i)];
                if (sign_below(b, i) < 0) c = -c;
                m(b ^ (1u << i), b) += c;
            }
    return m;
}

Matrix exterior_wedge(const Field& f, int r, const Vec& v)
{
    const size_t d = size_t{1} << r;
    Matrix m(f, d, d);
    for (uint32_t b = 0; b < d; ++b)
        for (int i = 0; i < r; ++i) {
            if (b >> i & 1 || v[static_cast<size_t>(i)].is_zero()) continue;
            Scalar c = v[static_cast<size_t>(i)];
            if (sign_below(b, i) < 0) c = -c;
            m(b | (1u << i), b) += c;
        }
    return m;
}

HyperbolicModel hyperbolic_model(const Field& f, int r)
{
    if (r < 1) throw DomainError("hyperbolic model needs r >= 1");
    if (r > 3) throw BoundExceeded("hyperbolic model is limited to r <= 3 (C_0 of dimension 32)");
    const size_t n = 2 * static_cast<size_t>(r), full = size_t{1} << r, m = full / 2;
    HyperbolicModel hm;
    hm.r = r;
    auto dg = diagonalize(hyperbolic(f, r));
    hm.diagonal = dg.form;
    hm.basis = dg.basis;

    // gamma on the coordinate basis t_1..t_r, v_1..v_r
    std::vector<Matrix> gamma_u;
    for (int i = 0; i < r; ++i) gamma_u.push_back(exterior_contraction(f, r, unit_vec(f, static_cast<size_t>(r), static_cast<size_t>(i))));
    for (int i = 0; i < r; ++i) gamma_u.push_back(exterior_wedge(f, r, unit_vec(f, static_cast<size_t>(r), static_cast<size_t>(i))));
    std::vector<Matrix> gamma;
    for (size_t k = 0; k < n; ++k) {
        Matrix g(f, full, full);
        for (size_t a = 0; a < n; ++a)
            if (!dg.basis(a, k).is_zero()) g = g + gamma_u[a].scaled(dg.basis(a, k));
        if (!(g * g == Matrix::identity(f, full).scaled(dg.form.entries[k])))
            throw VerificationFailure("exterior operators violate the Clifford relation");
        gamma.push_back(std::move(g));
    }
    auto phi = [&](uint32_t s) {
        Matrix acc = Matrix::identity(f, full);
        for (int i : indices(s)) acc = acc * gamma[static_cast<size_t>(i)];
        return acc;
    };

    hm.c0 = even_clifford(hm.diagonal);
    hm.c1 = clifford_bimodule(hm.diagonal);
    std::vector<uint32_t> plus, minus;
    for (uint32_t b = 0; b < full; ++b) (popcount(b) % 2 ? minus : plus).push_back(b);

    hm.target = product(matrix_algebra(f, m), matrix_algebra(f, m));
    const size_t td = 2 * m * m;
    Matrix p0(f, td, hm.c0.dim());
    std::vector<Matrix> full0, full1;
    for (size_t col = 0; col < hm.c0.dim(); ++col) {
        Matrix g = phi(hm.c0.subsets[col]);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                if (!g(plus[i], minus[j]).is_zero() || !g(minus[i], plus[j]).is_zero())
                    throw VerificationFailure("even element does not preserve the grading");
                p0(i * m + j, col) = g(plus[i], plus[j]);
                p0(m * m + i * m + j, col) = g(minus[i], minus[j]);
            }
        full0.push_back(std::move(g));
    }
    Matrix p1(f, td, hm.c1.dim());
    for (size_t col = 0; col < hm.c1.dim(); ++col) {
        Matrix g = phi(hm.c1.subsets[col]);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                p1(i * m + j, col) = g(minus[i], plus[j]);
                p1(m * m + i * m + j, col) = g(plus[i], minus[j]);
            }
        full1.push_back(std::move(g));
    }
    hm.phi0 = AlgebraMorphism{hm.c0.algebra, hm.target, p0};
    hm.phi1 = p1;
    hm.phi0_homomorphism = hm.phi0.preserves_unit() && hm.phi0.is_multiplicative();
    hm.phi0_bijective = hm.phi0.is_bijective();
    hm.phi1_bijective = p1.rank() == hm.c1.dim() && hm.c1.dim() == td;

    auto combo1 = [&](const Vec& x) {
        Matrix acc(f, full, full);
        for (size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) acc = acc + full1[i].scaled(x[i]);
        return acc;
    };
    bool eq = true;
    for (size_t a = 0; a < hm.c0.dim() && eq; ++a)
        for (size_t b = 0; b < hm.c1.dim() && eq; ++b) {
            Vec ca = unit_vec(f, hm.c0.dim(), a), xb = unit_vec(f, hm.c1.dim(), b);
            eq = combo1(hm.c1.left(hm.c0, ca, xb)) == full0[a] * full1[b] &&
                 combo1(hm.c1.right(hm.c0, xb, ca)) == full1[b] * full0[a];
        }
    hm.phi1_equivariant = eq;

    Vec one_plus = zero_vec(f, td), one_minus = zero_vec(f, td);
    for (size_t i = 0; i < m; ++i) {
        one_plus[i * m + i] = Scalar::one(f);
        one_minus[m * m + i * m + i] = Scalar::one(f);
    }
    auto ip = p0.solve(one_plus), im = p0.solve(one_minus);
    if (!ip || !im) throw VerificationFailure("component idempotents have no preimage");
    hm.idempotent_plus = *ip;
    hm.idempotent_minus = *im;
    return hm;
}

// ------------------------------------------------------------------ sums

SumIsomorphism sum_isomorphism(const DiagonalForm& q, const DiagonalForm& qp)
{
    if (!(q.field == qp.field)) throw DomainError("sum isomorphism over different fields");
    const Field& f = q.field;
    const size_t n = q.rank(), np = qp.rank();
    if (n == 0 || np == 0) throw DomainError("sum isomorphism needs nonzero ranks");
    auto c0 = even_clifford(q), c0p = even_clifford(qp);
    auto c1 = clifford_bimodule(q), c1p = clifford_bimodule(qp);
    const size_t d0 = c0.dim(), d0p = c0p.dim(), d1 = c1.dim(), d1p = c1p.dim();
    const size_t ee = d0 * d0p, dim = ee + d1 * d1p;

    auto tensor_ee = [&](const Vec& x, const Vec& y) {
        Vec r = zero_vec(f, dim);
        for (size_t i = 0; i < d0; ++i)
            if (!x[i].is_zero())
                for (size_t j = 0; j < d0p; ++j)
                    if (!y[j].is_zero()) r[i * d0p + j] = x[i] * y[j];
        return r;
    };
    auto tensor_oo = [&](const Vec& x, const Vec& y) {
        Vec r = zero_vec(f, dim);
        for (size_t i = 0; i < d1; ++i)
            if (!x[i].is_zero())
                for (size_t j = 0; j < d1p; ++j)
                    if (!y[j].is_zero()) r[ee + i * d1p + j] = x[i] * y[j];
        return r;
    };

    std::vector<std::string> labels;
    for (size_t i = 0; i < d0; ++i)
        for (size_t j = 0; j < d0p; ++j)
            labels.push_back(CliffordMonomials::label(c0.subsets[i]) + "⊗" + CliffordMonomials::label(c0p.subsets[j]));
    for (size_t i = 0; i < d1; ++i)
        for (size_t j = 0; j < d1p; ++j)
            labels.push_back(CliffordMonomials::label(c1.subsets[i]) + "⊗" + CliffordMonomials::label(c1p.subsets[j]));

    // basis element b of the target as a pair of factor vectors
    struct Pair {
        bool odd;
        Vec x, y;
    };
    std::vector<Pair> pairs;
    for (size_t i = 0; i < d0; ++i)
        for (size_t j = 0; j < d0p; ++j) pairs.push_back({false, unit_vec(f, d0, i), unit_vec(f, d0p, j)});
    for (size_t i = 0; i < d1; ++i)
        for (size_t j = 0; j < d1p; ++j) pairs.push_back({true, unit_vec(f, d1, i), unit_vec(f, d1p, j)});

    std::vector<std::vector<Term>> table(dim * dim);
    for (size_t a = 0; a < dim; ++a)
        for (size_t b = 0; b < dim; ++b) {
            const Pair& u = pairs[a];
            const Pair& v = pairs[b];
            Vec r;
            if (!u.odd && !v.odd)
                r = tensor_ee(c0.algebra.multiply(u.x, v.x), c0p.algebra.multiply(u.y, v.y));
            else if (!u.odd && v.odd)
                r = tensor_oo(c1.left(c0, u.x, v.x), c1p.left(c0p, u.y, v.y));
            else if (u.odd && !v.odd)
                r = tensor_oo(c1.right(c0, u.x, v.x), c1p.right(c0p, u.y, v.y));
            else // odd (x) odd: the second factors pass each other
                r = scale(-Scalar::one(f), tensor_ee(bimodule_mult(c0, c1, u.x, v.x), bimodule_mult(c0p, c1p, u.y, v.y)));
            for (size_t k = 0; k < dim; ++k)
                if (!r[k].is_zero()) table[a * dim + b].push_back({k, r[k]});
        }
    StructureAlgebra target(f, std::move(labels), std::move(table), tensor_ee(c0.algebra.unit(), c0p.algebra.unit()));

    auto src = even_clifford(orthogonal_sum(q, qp));
    if (src.dim() != dim) throw VerificationFailure("dimension mismatch in the sum isomorphism");
    // images of the generators e_i e_j, i < j
    auto gen_image = [&](size_t i, size_t j) {
        if (j < n) return tensor_ee(c0.generator(i, j), c0p.algebra.unit());
        if (i >= n) return tensor_ee(c0.algebra.unit(), c0p.generator(i - n, j - n));
        return tensor_oo(c1.embed(i), c1p.embed(j - n));
    };
    Matrix map(f, dim, dim);
    for (size_t col = 0; col < dim; ++col) {
        auto idx = indices(src.subsets[col]);
        Vec img = target.unit();
        for (size_t k = 0; k < idx.size(); k += 2)
            img = target.multiply(img, gen_image(static_cast<size_t>(idx[k]), static_cast<size_t>(idx[k + 1])));
        for (size_t i = 0; i < dim; ++i) map(i, col) = img[i];
    }
    SumIsomorphism out{src, target, AlgebraMorphism{src.algebra, target, map}};
    out.unit_preserving = out.morphism.preserves_unit();
    out.homomorphism = out.unit_preserving && out.morphism.is_multiplicative();
    out.bijective = out.morphism.is_bijective();
    return out;
}

// ------------------------------------------------------------------ base change

DiagonalForm base_change(const DiagonalForm& q, const Field& target, const std::function<Scalar(const Scalar&)>& map)
{
    std::vector<Scalar> e;
    for (const auto& a : q.entries) {
        Scalar b = map(a);
        if (b.is_zero()) throw DomainError("base change sends the entry " + a.to_string() + " to zero");
        e.push_back(b);
    }
    return DiagonalForm(target, std::move(e));
}

DiagonalForm base_change(const DiagonalForm& q, const ReductionMap& map)
{
    return base_change(q, map.target(), [&](const Scalar& x) { return map(x); });
}

} // namespace clifq
