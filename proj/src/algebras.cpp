#include "clifq/algebras.hpp"

#include "clifq/errors.hpp"
#include "clifq/forms.hpp"

#include <sstream>

namespace clifq {

StructureAlgebra::StructureAlgebra(Field f, std::vector<std::string> labels, std::vector<std::vector<Term>> table,
                                   Vec unit)
    : field_(std::move(f)), dim_(labels.size()), labels_(std::move(labels)), table_(std::move(table)),
      unit_(std::move(unit))
{
    if (dim_ == 0) throw DomainError("algebra of dimension 0");
    if (dim_ > max_dim) throw BoundExceeded("algebra dimension " + std::to_string(dim_) + " exceeds 64");
    if (table_.size() != dim_ * dim_) throw DomainError("structure table has the wrong size");
    if (unit_.size() != dim_) throw DomainError("unit vector has the wrong length");
    for (auto& cell : table_) {
        std::vector<Term> kept;
        for (auto& t : cell) {
            if (t.index >= dim_) throw DomainError("structure constant index out of range");
            if (!t.coeff.is_zero()) kept.push_back(std::move(t));
        }
        cell = std::move(kept);
    }
}

StructureAlgebra StructureAlgebra::from_dense(Field f, std::vector<std::string> labels,
                                              const std::vector<Scalar>& table, Vec unit)
{
    const size_t n = labels.size();
    if (table.size() != n * n * n) throw DomainError("dense structure table must have dim^3 entries");
    std::vector<std::vector<Term>> sparse(n * n);
    for (size_t ij = 0; ij < n * n; ++ij)
        for (size_t k = 0; k < n; ++k)
            if (!table[ij * n + k].is_zero()) sparse[ij].push_back({k, table[ij * n + k]});
    return StructureAlgebra(std::move(f), std::move(labels), std::move(sparse), std::move(unit));
}

std::vector<Scalar> StructureAlgebra::dense_table() const
{
    std::vector<Scalar> out(dim_ * dim_ * dim_, Scalar::zero(field_));
    for (size_t ij = 0; ij < dim_ * dim_; ++ij)
        for (const auto& t : table_[ij]) out[ij * dim_ + t.index] = t.coeff;
    return out;
}

Vec StructureAlgebra::multiply(const Vec& x, const Vec& y) const
{
    if (x.size() != dim_ || y.size() != dim_) throw DomainError("element of the wrong dimension");
    Vec r = zero_vec(field_, dim_);
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            const auto& cell = table_[i * dim_ + j];
            if (cell.empty()) continue;
            Scalar xy = x[i] * y[j];
            for (const auto& t : cell) r[t.index] += xy * t.coeff;
        }
    }
    return r;
}

Matrix StructureAlgebra::left_mult(const Vec& x) const
{
    Matrix m(field_, dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) {
        Vec c = multiply(x, basis(j));
        for (size_t i = 0; i < dim_; ++i) m(i, j) = c[i];
    }
    return m;
}

Matrix StructureAlgebra::right_mult(const Vec& x) const
{
    Matrix m(field_, dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) {
        Vec c = multiply(basis(j), x);
        for (size_t i = 0; i < dim_; ++i) m(i, j) = c[i];
    }
    return m;
}

Scalar StructureAlgebra::trace(const Vec& x) const
{
    Scalar s = Scalar::zero(field_);
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim_; ++j)
            for (const auto& t : table_[i * dim_ + j])
                if (t.index == j) s += x[i] * t.coeff;
    }
    return s;
}

std::optional<Scalar> StructureAlgebra::as_scalar(const Vec& x) const
{
    size_t k = 0;
    while (k < dim_ && unit_[k].is_zero()) ++k;
    Scalar c = x[k] / unit_[k];
    if (scale(c, unit_) == x) return c;
    return std::nullopt;
}

std::string StructureAlgebra::element_to_string(const Vec& x) const
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (x[i].is_one())
            os << labels_[i];
        else
            os << "(" << x[i].to_string() << ")*" << labels_[i];
    }
    return first ? "0" : os.str();
}

bool StructureAlgebra::operator==(const StructureAlgebra& o) const
{
    return field_ == o.field_ && dim_ == o.dim_ && unit_ == o.unit_ && dense_table() == o.dense_table();
}

// ------------------------------------------------------------------ checks

AssociativityReport check_associative(const StructureAlgebra& a)
{
    const size_t n = a.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec ij = a.multiply(a.basis(i), a.basis(j));
            for (size_t k = 0; k < n; ++k) {
                Vec left = a.multiply(ij, a.basis(k));
                Vec right = a.multiply(a.basis(i), a.multiply(a.basis(j), a.basis(k)));
                if (!(left == right)) return {false, std::array<size_t, 3>{i, j, k}};
            }
        }
    return {};
}

bool check_unit(const StructureAlgebra& a)
{
    for (size_t i = 0; i < a.dim(); ++i) {
        Vec e = a.basis(i);
        if (!(a.multiply(a.unit(), e) == e) || !(a.multiply(e, a.unit()) == e)) return false;
    }
    return true;
}

bool is_involution(const StructureAlgebra& a, const Matrix& m)
{
    if (!(m * m == Matrix::identity(a.field(), a.dim()))) return false;
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            Vec lhs = m.apply(a.multiply(a.basis(i), a.basis(j)));
            Vec rhs = a.multiply(m.col(j), m.col(i));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

std::vector<Vec> center(const StructureAlgebra& a)
{
    const size_t n = a.dim();
    std::vector<Vec> gens = a.generators();
    if (gens.empty())
        for (size_t i = 0; i < n; ++i) gens.push_back(a.basis(i));
    Matrix sys(a.field(), gens.size() * n, n);
    for (size_t g = 0; g < gens.size(); ++g) {
        Matrix d = a.right_mult(gens[g]) - a.left_mult(gens[g]);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) sys(g * n + i, j) = d(i, j);
    }
    return sys.nullspace();
}

std::vector<Vec> central_idempotents(const StructureAlgebra& a)
{
    const Field& f = a.field();
    auto z = center(a);
    std::vector<Vec> out{zero_vec(f, a.dim()), a.unit()};
    if (z.size() == 1) return out;
    if (z.size() > 2) throw Unsupported("central idempotents need a center of dimension <= 2");
    Vec w = a.as_scalar(z[0]) ? z[1] : z[0];
    // w^2 = alpha w + beta
    Vec w2 = a.multiply(w, w);
    Matrix cols(f, a.dim(), 2);
    for (size_t i = 0; i < a.dim(); ++i) {
        cols(i, 0) = w[i];
        cols(i, 1) = a.unit()[i];
    }
    auto ab = cols.solve(w2);
    if (!ab) throw VerificationFailure("center is not a quadratic algebra");
    Scalar two = Scalar::from_int(f, 2);
    Scalar alpha = (*ab)[0], beta = (*ab)[1];
    Vec shifted = sub(w, a.scalar(alpha / two));
    Scalar delta = beta + alpha * alpha / (two * two);
    auto s = delta.sqrt();
    if (!s || s->is_zero()) return out;
    Vec half_unit = a.scalar(Scalar::one(f) / two);
    Vec part = scale(Scalar::one(f) / (two * *s), shifted);
    out.push_back(add(half_unit, part));
    out.push_back(sub(half_unit, part));
    return out;
}

// ------------------------------------------------------------------ constructions

StructureAlgebra tensor(const StructureAlgebra& a, const StructureAlgebra& b)
{
    if (!(a.field() == b.field())) throw DomainError("tensor product over different fields");
    const size_t n = a.dim(), m = b.dim();
    if (n * m > StructureAlgebra::max_dim) throw BoundExceeded("tensor product dimension exceeds 64");
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) labels.push_back(a.labels()[i] + "⊗" + b.labels()[j]);
    std::vector<std::vector<Term>> table(n * m * n * m);
    for (size_t i1 = 0; i1 < n; ++i1)
        for (size_t j1 = 0; j1 < m; ++j1)
            for (size_t i2 = 0; i2 < n; ++i2)
                for (size_t j2 = 0; j2 < m; ++j2) {
                    auto& cell = table[(i1 * m + j1) * n * m + (i2 * m + j2)];
                    for (const auto& s : a.product(i1, i2))
                        for (const auto& t : b.product(j1, j2)) cell.push_back({s.index * m + t.index, s.coeff * t.coeff});
                }
    Vec unit = zero_vec(a.field(), n * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) unit[i * m + j] = a.unit()[i] * b.unit()[j];
    StructureAlgebra r(a.field(), std::move(labels), std::move(table), std::move(unit));
    if (a.involution() && b.involution()) {
        Matrix inv(a.field(), n * m, n * m);
        for (size_t i1 = 0; i1 < n; ++i1)
            for (size_t j1 = 0; j1 < m; ++j1)
                for (size_t i2 = 0; i2 < n; ++i2)
                    for (size_t j2 = 0; j2 < m; ++j2)
                        inv(i1 * m + j1, i2 * m + j2) = (*a.involution())(i1, i2) * (*b.involution())(j1, j2);
        r.set_involution(std::move(inv));
    }
    return r;
}

StructureAlgebra opposite(const StructureAlgebra& a)
{
    const size_t n = a.dim();
    std::vector<std::vector<Term>> table(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) table[i * n + j] = a.product(j, i);
    StructureAlgebra r(a.field(), a.labels(), std::move(table), a.unit());
    if (a.involution()) r.set_involution(*a.involution());
    return r;
}

StructureAlgebra matrix_algebra(const Field& f, size_t n)
{
    if (n == 0) throw DomainError("matrix algebra of size 0");
    const size_t d = n * n;
    if (d > StructureAlgebra::max_dim) throw BoundExceeded("matrix algebra dimension exceeds 64");
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
    std::vector<std::vector<Term>> table(d * d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) table[(i * n + j) * d + (j * n + k)].push_back({i * n + k, Scalar::one(f)});
    Vec unit = zero_vec(f, d);
    for (size_t i = 0; i < n; ++i) unit[i * n + i] = Scalar::one(f);
    StructureAlgebra r(f, std::move(labels), std::move(table), std::move(unit));
    // transpose
    Matrix t(f, d, d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t(j * n + i, i * n + j) = Scalar::one(f);
    r.set_involution(std::move(t));
    return r;
}

StructureAlgebra product(const StructureAlgebra& a, const StructureAlgebra& b)
{
    if (!(a.field() == b.field())) throw DomainError("product over different fields");
    const size_t n = a.dim(), m = b.dim(), d = n + m;
    std::vector<std::string> labels;
    for (const auto& l : a.labels()) labels.push_back(l + "@1");
    for (const auto& l : b.labels()) labels.push_back(l + "@2");
    std::vector<std::vector<Term>> table(d * d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) table[i * d + j] = a.product(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            auto& cell = table[(n + i) * d + (n + j)];
            for (const auto& t : b.product(i, j)) cell.push_back({n + t.index, t.coeff});
        }
    Vec unit = a.unit();
    unit.insert(unit.end(), b.unit().begin(), b.unit().end());
    return StructureAlgebra(a.field(), std::move(labels), std::move(table), std::move(unit));
}

StructureAlgebra quaternion(const Scalar& a, const Scalar& b)
{
    if (a.is_zero() || b.is_zero()) throw DomainError("quaternion algebra with a zero parameter");
    if (!(a.field() == b.field())) throw DomainError("quaternion parameters over different fields");
    const Field& f = a.field();
    Scalar one = Scalar::one(f);
    enum { E = 0, I = 1, J = 2, K = 3 };
    std::vector<std::vector<Term>> t(16);
    auto set = [&](int x, int y, int z, const Scalar& c) { t[x * 4 + y] = {{static_cast<size_t>(z), c}}; };
    for (int x = 0; x < 4; ++x) {
        set(E, x, x, one);
        set(x, E, x, one);
    }
    set(I, I, E, a);
    set(J, J, E, b);
    set(K, K, E, -(a * b));
    set(I, J, K, one);
    set(J, I, K, -one);
    set(I, K, J, a);
    set(K, I, J, -a);
    set(J, K, I, -b);
    set(K, J, I, b);
    StructureAlgebra q(f, {"1", "i", "j", "k"}, std::move(t), unit_vec(f, 4, 0));
    Matrix conj = Matrix::identity(f, 4).scaled(-one);
    conj(0, 0) = one;
    q.set_involution(std::move(conj));
    return q;
}

// ------------------------------------------------------------------ subalgebras

namespace {

// Coordinates with respect to the columns of a full-column-rank matrix.
class CoordinateSolver {
public:
    explicit CoordinateSolver(const Matrix& basis) : basis_(basis)
    {
        auto [r, pivots] = basis.transpose().rref();
        rows_ = pivots;
        Matrix sq(basis.field(), rows_.size(), basis.cols());
        for (size_t i = 0; i < rows_.size(); ++i)
            for (size_t j = 0; j < basis.cols(); ++j) sq(i, j) = basis(rows_[i], j);
        auto inv = sq.inverse();
        if (!inv) throw VerificationFailure("basis columns are dependent");
        inv_ = *inv;
    }

    Vec operator()(const Vec& v) const
    {
        Vec sel;
        for (size_t r : rows_) sel.push_back(v[r]);
        Vec c = inv_.apply(sel);
        if (!(basis_.apply(c) == v)) throw VerificationFailure("vector is not in the span");
        return c;
    }

private:
    Matrix basis_;
    std::vector<size_t> rows_;
    Matrix inv_;
};

Matrix columns(const Field& f, const std::vector<Vec>& vs, size_t n)
{
    Matrix m(f, n, vs.size());
    for (size_t j = 0; j < vs.size(); ++j)
        for (size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
    return m;
}

} // namespace

Subalgebra cut_subalgebra(const StructureAlgebra& a, const std::vector<Vec>& span, const Vec& unit)
{
    const Field& f = a.field();
    std::vector<Vec> basis;
    for (size_t i : independent_subset(f, span)) basis.push_back(span[i]);
    if (basis.empty()) throw DomainError("empty subalgebra span");
    const size_t m = basis.size();
    Matrix emb = columns(f, basis, a.dim());
    CoordinateSolver coords(emb);
    std::vector<std::vector<Term>> table(m * m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            Vec c = coords(a.multiply(basis[i], basis[j]));
            for (size_t k = 0; k < m; ++k)
                if (!c[k].is_zero()) table[i * m + j].push_back({k, c[k]});
        }
    std::vector<std::string> labels;
    for (size_t i = 0; i < m; ++i) labels.push_back("b" + std::to_string(i + 1));
    StructureAlgebra sub(f, std::move(labels), std::move(table), coords(unit));
    return {std::move(sub), std::move(emb)};
}

Subalgebra corner(const StructureAlgebra& a, const Vec& e)
{
    std::vector<Vec> span;
    for (size_t i = 0; i < a.dim(); ++i) span.push_back(a.multiply(e, a.basis(i)));
    return cut_subalgebra(a, span, e);
}

StructureAlgebra transport(const StructureAlgebra& a, const Matrix& p)
{
    auto inv = p.inverse();
    if (!inv) throw DomainError("change of basis is not invertible");
    const size_t n = a.dim();
    std::vector<std::vector<Term>> table(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Vec c = inv->apply(a.multiply(p.col(i), p.col(j)));
            for (size_t k = 0; k < n; ++k)
                if (!c[k].is_zero()) table[i * n + j].push_back({k, c[k]});
        }
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i) labels.push_back("f" + std::to_string(i + 1));
    StructureAlgebra r(a.field(), std::move(labels), std::move(table), inv->apply(a.unit()));
    if (a.involution()) r.set_involution(*inv * *a.involution() * p);
    return r;
}

// ------------------------------------------------------------------ quaternions

QuaternionBasis find_quaternion_basis(const StructureAlgebra& a)
{
    const Field& f = a.field();
    if (a.dim() != 4) throw DomainError("quaternion basis extraction needs a 4-dimensional algebra");
    if (center(a).size() != 1) throw DomainError("algebra is not central");
    // Trace-zero part.
    Matrix tr(f, 1, 4);
    for (size_t i = 0; i < 4; ++i) tr(0, i) = a.trace(a.basis(i));
    auto v0 = tr.nullspace();
    if (v0.size() != 3) throw DomainError("algebra has a degenerate trace");
    Scalar half = Scalar::one(f) / Scalar::from_int(f, 2);
    auto sym = [&](const Vec& x, const Vec& y) {
        Vec s = scale(half, add(a.multiply(x, y), a.multiply(y, x)));
        auto c = a.as_scalar(s);
        if (!c) throw DomainError("algebra is not a quaternion algebra (non-scalar anticommutator)");
        return *c;
    };
    Matrix g(f, 3, 3);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) g(i, j) = sym(v0[i], v0[j]);
    QuadraticForm bq(g);
    if (!bq.is_regular()) throw DomainError("algebra is not central simple");
    auto d = diagonalize(bq);
    auto combo = [&](size_t col) {
        Vec x = zero_vec(f, 4);
        for (size_t i = 0; i < 3; ++i) x = add(x, scale(d.basis(i, col), v0[i]));
        return x;
    };
    Vec x = combo(0), y = combo(1);
    Scalar qa = d.form.entries[0], qb = d.form.entries[1];
    if (f.kind() == Field::Kind::Rational) {
        // rescale so that x^2, y^2 are squarefree integers
        auto shrink = [&](Vec& v, Scalar& s) {
            Rational r = s.rational();
            Integer c = nt::squarefree_class(r);
            Rational k = *nt::rational_sqrt(r / Rational(c));
            v = scale(Scalar(f, 1 / k), v);
            s = Scalar(f, Rational(c));
        };
        shrink(x, qa);
        shrink(y, qb);
    }
    Vec xy = a.multiply(x, y);
    Matrix change = columns(f, {a.unit(), x, y, xy}, 4);
    if (change.determinant().is_zero()) throw VerificationFailure("quaternion basis is degenerate");
    if (!(a.multiply(x, x) == a.scalar(qa)) || !(a.multiply(y, y) == a.scalar(qb)) ||
        !(a.multiply(y, x) == scale(-Scalar::one(f), xy)))
        throw VerificationFailure("quaternion basis relations failed");
    return {qa, qb, change};
}

bool is_split_quaternion(const StructureAlgebra& a)
{
    auto qb = find_quaternion_basis(a);
    const Field& f = a.field();
    DiagonalForm norm(f, {Scalar::one(f), -qb.a, -qb.b, qb.a * qb.b});
    return is_isotropic(norm);
}

// ------------------------------------------------------------------ morphisms

bool AlgebraMorphism::preserves_unit() const { return map.apply(source.unit()) == target.unit(); }

bool AlgebraMorphism::is_multiplicative() const
{
    const size_t n = source.dim();
    std::vector<Vec> img;
    for (size_t i = 0; i < n; ++i) img.push_back(map.col(i));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!(map.apply(source.multiply(source.basis(i), source.basis(j))) == target.multiply(img[i], img[j])))
                return false;
    return true;
}

bool AlgebraMorphism::is_bijective() const
{
    return source.dim() == target.dim() && map.rank() == source.dim();
}

Matrix trace_form(const StructureAlgebra& a)
{
    const size_t n = a.dim();
    Matrix g(a.field(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            g(i, j) = a.trace(a.multiply(a.basis(i), a.basis(j)));
            g(j, i) = g(i, j);
        }
    return g;
}

} // namespace clifq
