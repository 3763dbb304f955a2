#include "clifq/exceptional.hpp"

#include "clifq/clifford.hpp"
#include "clifq/errors.hpp"
#include "clifq/invariants.hpp"

#include <random>

namespace clifq {

namespace {

void require_nonzero(std::initializer_list<const Scalar*> xs)
{
    for (const Scalar* x : xs)
        if (x->is_zero()) throw DomainError("quaternion parameters must be nonzero");
}

} // namespace

NormFormData reduced_norm_form(const Scalar& a, const Scalar& b)
{
    require_nonzero({&a, &b});
    const Field& f = a.field();
    return {a, b, DiagonalForm(f, {Scalar::one(f), -a, -b, a * b})};
}

bool norm_multiplicativity_check(const NormFormData& n, int samples, unsigned long seed)
{
    const Field& f = n.a.field();
    auto h = quaternion(n.a, n.b);
    auto q = n.form.to_form();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> d(-9, 9);
    auto rnd = [&] {
        Vec v;
        for (int i = 0; i < 4; ++i) v.push_back(Scalar::from_int(f, d(rng)));
        return v;
    };
    for (int k = 0; k < samples; ++k) {
        Vec x = rnd(), p = rnd();
        if (!(q.value(h.multiply(x, p)) == q.value(x) * q.value(p))) return false;
    }
    return true;
}

bool norm_roundtrip_check(const Scalar& a, const Scalar& b)
{
    auto n = reduced_norm_form(a, b);
    const Field& f = a.field();
    if (f.kind() != Field::Kind::Rational && f.kind() != Field::Kind::PrimeField)
        throw Unsupported("norm round trip over Q and F_p only");
    auto sc = split_components(n.form);
    BrauerClass2 expected;
    if (f.kind() == Field::Kind::Rational) expected = class_of_quaternion(a.rational(), b.rational());
    return class_of_algebra(sc.plus.algebra) == expected && class_of_algebra(sc.minus.algebra) == expected;
}

AlbertFormData albert_form(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d)
{
    require_nonzero({&a, &b, &c, &d});
    return {a, b, c, d, DiagonalForm(a.field(), {a, b, -(a * b), -c, -d, c * d})};
}

PfaffianSpaceData pfaffian_space(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d)
{
    require_nonzero({&a, &b, &c, &d});
    const Field& f = a.field();
    auto q1 = quaternion(a, b), q2 = quaternion(c, d);
    PfaffianSpaceData out;
    out.ambient = tensor(q1, q2);
    const StructureAlgebra& A = out.ambient;
    const size_t n = A.dim();
    const Matrix& sigma = *A.involution();

    // reduced trace form and its dual basis
    Scalar quarter = Scalar::one(f) / Scalar::from_int(f, 4);
    Matrix t(f, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t(i, j) = A.trace(A.multiply(A.basis(i), A.basis(j))) * quarter;
    auto tinv = t.inverse();
    if (!tinv) throw VerificationFailure("reduced trace form is degenerate");
    std::vector<Vec> dual;
    for (size_t i = 0; i < n; ++i) dual.push_back(tinv->col(i));

    out.psi = Matrix(f, n, n);
    for (size_t m = 0; m < n; ++m) {
        Vec acc = zero_vec(f, n);
        for (size_t i = 0; i < n; ++i)
            acc = add(acc, A.multiply(A.multiply(A.basis(i), A.basis(m)), sigma.apply(dual[i])));
        for (size_t r = 0; r < n; ++r) out.psi(r, m) = acc[r];
    }
    out.psi_involutory = out.psi * out.psi == Matrix::identity(f, n);
    out.psi_is_sigma = out.psi == sigma;

    Matrix img = Matrix::identity(f, n) - out.psi;
    std::vector<Vec> cols;
    for (size_t j = 0; j < n; ++j) cols.push_back(img.col(j));
    for (size_t j : independent_subset(f, cols)) out.alternating.push_back(cols[j]);
    if (out.alternating.size() != 6)
        throw VerificationFailure("im(id - psi) has dimension " + std::to_string(out.alternating.size()));

    // rho = conjugation on the first factor only
    Matrix rho(f, n, n);
    const Matrix& c1 = *q1.involution();
    for (size_t i1 = 0; i1 < 4; ++i1)
        for (size_t i2 = 0; i2 < 4; ++i2)
            for (size_t j = 0; j < 4; ++j) rho(i1 * 4 + j, i2 * 4 + j) = c1(i1, i2);
    auto value = [&](const Vec& x) {
        auto s = A.as_scalar(A.multiply(x, rho.apply(x)));
        if (!s) throw VerificationFailure("pfaffian value is not a scalar");
        return -*s;
    };
    Matrix gram(f, 6, 6);
    Scalar half = Scalar::one(f) / Scalar::from_int(f, 2);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            const Vec& x = out.alternating[i];
            const Vec& y = out.alternating[j];
            gram(i, j) = (value(add(x, y)) - value(x) - value(y)) * half;
        }
    out.form = diagonal_of(QuadraticForm(gram));
    if (f.kind() == Field::Kind::Rational || f.kind() == Field::Kind::PrimeField)
        out.similar_to_albert = is_isometric(out.form, albert_form(a, b, c, d).form);
    return out;
}

PfaffianRoundtrip pfaffian_roundtrip(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d)
{
    if (a.field().kind() != Field::Kind::Rational) throw Unsupported("pfaffian round trip over Q only");
    auto alb = albert_form(a, b, c, d);
    PfaffianRoundtrip r;
    auto sc = split_components(alb.form);
    r.component_dim = sc.plus.algebra.dim();
    r.albert_class = e2(alb.form);
    r.expected = add(class_of_quaternion(a.rational(), b.rational()), class_of_quaternion(c.rational(), d.rational()));
    r.holds = r.component_dim == 16 && sc.minus.algebra.dim() == 16 && r.albert_class == r.expected;
    return r;
}

bool pfaffian_roundtrip_check(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d)
{
    return pfaffian_roundtrip(a, b, c, d).holds;
}

int pfaffian_invariant_field(const StructureAlgebra& a)
{
    if (a.dim() != 16) throw DomainError("pfaffian invariant needs a degree-4 algebra");
    return 0;
}

} // namespace clifq
