#include "clifq/invariants.hpp"

#include "clifq/clifford.hpp"
#include "clifq/errors.hpp"

#include <set>

namespace clifq {

// ------------------------------------------------------------------ total Witt

TotalWittElement TotalWittElement::of(const DiagonalForm& q, const std::string& label)
{
    TotalWittElement w(q.field);
    w.components.emplace(label, q);
    return w;
}

TotalWittElement TotalWittElement::operator+(const TotalWittElement& o) const
{
    if (!(field == o.field)) throw DomainError("total Witt elements over different fields");
    TotalWittElement r = *this;
    for (const auto& [label, q] : o.components) {
        auto it = r.components.find(label);
        if (it == r.components.end())
            r.components.emplace(label, q);
        else
            it->second = orthogonal_sum(it->second, q);
    }
    return r;
}

TotalWittElement TotalWittElement::operator-() const
{
    TotalWittElement r(field);
    for (const auto& [label, q] : components) r.components.emplace(label, twist(q, -Scalar::one(field)));
    return r;
}

// ------------------------------------------------------------------ e0, e1, e2

int e0(const DiagonalForm& q) { return static_cast<int>(q.rank() % 2); }

int e0(const TotalWittElement& w)
{
    int r = 0;
    for (const auto& [label, q] : w.components) r ^= e0(q);
    return r;
}

SquareClass e1(const DiagonalForm& q)
{
    if (q.rank() % 2) throw DomainError("e1 needs even rank, got " + q.to_string());
    return signed_discriminant(q);
}

SquareClass e1(const TotalWittElement& w)
{
    SquareClass r = square_class(Scalar::one(w.field));
    for (const auto& [label, q] : w.components) r = r * e1(q);
    return r;
}

BrauerClass2 e2(const DiagonalForm& q)
{
    if (q.rank() % 2) throw DomainError("e2 needs even rank, got " + q.to_string());
    const Field& f = q.field;
    if (f.kind() != Field::Kind::Rational && f.kind() != Field::Kind::PrimeField)
        throw Unsupported("e2 is implemented over Q and F_p only");
    if (!signed_discriminant(q).is_trivial())
        throw DomainError("e2 needs trivial signed discriminant, got " + q.to_string());
    if (f.kind() == Field::Kind::PrimeField) {
        BrauerClass2 c;
        c.finite_field = true;
        return c;
    }
    if (q.rank() <= 2) return BrauerClass2{};
    if (q.rank() == 4) return class_of_algebra(split_components(q).plus.algebra);
    auto kernel = witt_decompose(q).anisotropic_kernel;
    if (kernel.rank() <= 4) return e2(kernel);
    // definite kernel: <a1, a2, a3, x> + <-x, a4, ...> with x = a1 a2 a3
    const auto& e = kernel.entries;
    Scalar x(f, nt::squarefree_class((e[0] * e[1] * e[2]).rational()));
    DiagonalForm head(f, {e[0], e[1], e[2], x});
    std::vector<Scalar> tail{-x};
    tail.insert(tail.end(), e.begin() + 3, e.end());
    return add(e2(head), e2(DiagonalForm(f, tail)));
}

BrauerClass2 e2(const TotalWittElement& w)
{
    BrauerClass2 r;
    r.finite_field = w.field.kind() == Field::Kind::PrimeField;
    for (const auto& [label, q] : w.components) r = add(r, e2(q));
    return r;
}

bool e2_additivity_check(const DiagonalForm& q, const DiagonalForm& qp)
{
    return e2(orthogonal_sum(q, qp)) == add(e2(q), e2(qp));
}

DiagonalForm construct_preimage(const BrauerClass2& c)
{
    auto [a, b] = quaternion_from_class(c);
    auto q = DiagonalForm::of_rationals({Rational(1), Rational(-a), Rational(-b), Rational(a * b)});
    if (!(e2(q) == c)) throw VerificationFailure("norm form does not realize " + c.to_string());
    return q;
}

// ------------------------------------------------------------------ residues

namespace {

int poly_valuation(Poly f, const Poly& pi)
{
    int v = 0;
    for (;;) {
        auto [quo, rem] = f.divmod(pi);
        if (!rem.is_zero()) return v;
        f = quo;
        ++v;
    }
}

Poly strip(Poly f, const Poly& pi, int v)
{
    for (int i = 0; i < v; ++i) f = f / pi;
    return f;
}

Poly inverse_mod(const Poly& a, const Poly& pi)
{
    Poly r0 = pi, r1 = a % pi;
    Poly s0(pi.characteristic()), s1 = Poly::constant(Rational(1), pi.characteristic());
    while (!r1.is_zero()) {
        auto [quo, rem] = r0.divmod(r1);
        r0 = r1;
        r1 = rem;
        Poly s2 = s0 - quo * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() != 0) throw DomainError("element is not invertible modulo " + pi.to_string());
    return (s0 % pi).scaled(pi.inv(r0.coeff(0)));
}

Rational trace_mod(const Poly& x, const Poly& pi)
{
    Rational tr = 0;
    Poly basis = Poly::constant(Rational(1), pi.characteristic());
    for (int i = 0; i < pi.degree(); ++i) {
        tr += ((x * basis) % pi).coeff(i);
        basis = (basis * Poly::t(pi.characteristic())) % pi;
    }
    return pi.norm(tr);
}

} // namespace

Field constant_field(const Field& f)
{
    if (f.kind() != Field::Kind::FunctionField) throw DomainError(f.name() + " is not a rational function field");
    return f.characteristic() ? Field::prime_field(f.characteristic()) : Field::rationals();
}

ResidueData second_residue(const DiagonalForm& q, const std::optional<Poly>& pi)
{
    const Field base = constant_field(q.field);
    const long p = q.field.characteristic();
    ResidueData r{base, pi, {}};
    if (pi) {
        if (pi->characteristic() != p) throw DomainError("place over the wrong characteristic");
        if (!(pi->monic() == *pi) || !is_irreducible(*pi))
            throw DomainError(pi->to_string() + " is not monic irreducible");
    }
    for (const auto& a : q.entries) {
        const RatFunc& rf = a.ratfunc();
        if (pi) {
            int vn = poly_valuation(rf.num, *pi), vd = poly_valuation(rf.den, *pi);
            if ((vn - vd) % 2 == 0) continue;
            Poly u = strip(rf.num, *pi, vn) * inverse_mod(strip(rf.den, *pi, vd), *pi);
            r.entries.push_back(u % *pi);
        } else {
            if ((rf.den.degree() - rf.num.degree()) % 2 == 0) continue;
            r.entries.push_back(Poly::constant(rf.num.lc() * rf.num.inv(rf.den.lc()), p));
        }
    }
    return r;
}

DiagonalForm transfer(const ResidueData& r)
{
    const Field& f = r.base;
    std::vector<Scalar> out;
    if (r.at_infinity()) {
        for (const auto& u : r.entries) out.push_back(-Scalar(f, u.coeff(0)));
        return DiagonalForm(f, std::move(out));
    }
    const Poly& pi = *r.pi;
    const int d = pi.degree();
    Poly dinv = inverse_mod(pi.derivative(), pi);
    DiagonalForm total(f, {});
    for (const auto& u : r.entries) {
        Poly w = (u * dinv) % pi;
        std::vector<Poly> powers{Poly::constant(Rational(1), pi.characteristic())};
        for (int i = 1; i < 2 * d - 1; ++i) powers.push_back((powers.back() * Poly::t(pi.characteristic())) % pi);
        Matrix g(f, static_cast<size_t>(d), static_cast<size_t>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                g(static_cast<size_t>(i), static_cast<size_t>(j)) = Scalar(f, trace_mod(w * powers[static_cast<size_t>(i + j)], pi));
        total = orthogonal_sum(total, diagonal_of(QuadraticForm(g)));
    }
    return total;
}

ReciprocityReport milnor_reciprocity(const DiagonalForm& q)
{
    const Field base = constant_field(q.field);
    std::set<Poly> places;
    for (const auto& a : q.entries)
        for (const Poly* part : {&a.ratfunc().num, &a.ratfunc().den})
            if (!part->is_constant())
                for (const auto& [g, e] : factor_poly(*part).factors) places.insert(g);
    ReciprocityReport rep{{}, DiagonalForm(base, {}), false};
    auto visit = [&](const std::optional<Poly>& pi) {
        auto r = second_residue(q, pi);
        if (r.is_zero()) return;
        rep.total = orthogonal_sum(rep.total, transfer(r));
        rep.residues.push_back(std::move(r));
    };
    for (const auto& pi : places) visit(pi);
    visit(std::nullopt);
    rep.holds = rep.total.rank() == 0 || is_witt_trivial(rep.total);
    return rep;
}

bool milnor_reciprocity_check(const DiagonalForm& q) { return milnor_reciprocity(q).holds; }

std::optional<DiagonalForm> constant_witt_lift(const DiagonalForm& q)
{
    const Field base = constant_field(q.field);
    const long p = q.field.characteristic();
    std::map<std::string, std::vector<Scalar>> groups;
    for (const auto& e : q.entries) {
        if (e.is_zero()) throw DomainError("zero diagonal entry");
        const auto& rf = e.ratfunc();
        Poly nd = rf.num * rf.den;
        Poly kernel = Poly::constant(1, p);
        for (const auto& [g, m] : squarefree_decomposition(nd.monic()))
            if (m % 2) kernel = kernel * g;
        groups[kernel.is_constant() ? std::string() : kernel.to_string()].push_back(Scalar(base, nd.lc()));
    }
    DiagonalForm constant(base, {});
    for (const auto& [key, coeffs] : groups) {
        DiagonalForm c(base, coeffs);
        if (key.empty()) constant = c;
        else if (!is_witt_trivial(c)) return std::nullopt;
    }
    return constant;
}

} // namespace clifq
