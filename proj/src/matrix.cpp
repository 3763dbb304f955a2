#include "clifq/matrix.hpp"

#include "clifq/errors.hpp"

namespace clifq {

Vec zero_vec(const Field& f, size_t n) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(const Field& f, size_t n, size_t i)
{
    Vec v = zero_vec(f, n);
    v[i] = Scalar::one(f);
    return v;
}

Vec add(const Vec& x, const Vec& y)
{
    if (x.size() != y.size()) throw DomainError("vector length mismatch");
    Vec r(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

Vec sub(const Vec& x, const Vec& y)
{
    if (x.size() != y.size()) throw DomainError("vector length mismatch");
    Vec r(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

Vec scale(const Scalar& c, const Vec& x)
{
    Vec r(x);
    for (auto& v : r) v = c * v;
    return r;
}

bool is_zero(const Vec& x)
{
    for (const auto& v : x)
        if (!v.is_zero()) return false;
    return true;
}

Matrix::Matrix(Field f, size_t rows, size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f))
{
}

Matrix Matrix::identity(const Field& f, size_t n)
{
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows, size_t cols)
{
    Matrix m(f, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DomainError("row length mismatch");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::row(size_t i) const
{
    return Vec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vec Matrix::col(size_t j) const
{
    Vec v;
    v.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch in product");
    Matrix r(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch in sum");
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(-Scalar::one(field_)); }

Matrix Matrix::scaled(const Scalar& c) const
{
    Matrix r = *this;
    for (auto& x : r.data_) x = c * x;
    return r;
}

Vec Matrix::apply(const Vec& x) const
{
    if (x.size() != cols_) throw DomainError("matrix-vector shape mismatch");
    Vec r = zero_vec(field_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!x[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * x[j];
    return r;
}

Matrix Matrix::transpose() const
{
    Matrix r(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const
{
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_symmetric() const
{
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i + 1; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
}

std::pair<Matrix, std::vector<size_t>> Matrix::rref() const
{
    Matrix m = *this;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t piv = rows_;
        for (size_t i = r; i < rows_; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows_) continue;
        if (piv != r)
            for (size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(r, j));
        Scalar inv = m(r, c).inverse();
        for (size_t j = c; j < cols_; ++j)
            if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (size_t j = c; j < cols_; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {m, pivots};
}

Scalar Matrix::determinant() const
{
    if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
    Matrix m = *this;
    Scalar det = Scalar::one(field_);
    for (size_t c = 0; c < cols_; ++c) {
        size_t piv = rows_;
        for (size_t i = c; i < rows_; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows_) return Scalar::zero(field_);
        if (piv != c) {
            for (size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        Scalar inv = m(c, c).inverse();
        for (size_t i = c + 1; i < rows_; ++i) {
            if (m(i, c).is_zero()) continue;
            Scalar f = m(i, c) * inv;
            for (size_t j = c; j < cols_; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

size_t Matrix::rank() const { return rref().second.size(); }

std::vector<Vec> Matrix::nullspace() const
{
    auto [m, pivots] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(field_, cols_);
        v[free] = Scalar::one(field_);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> Matrix::solve(const Vec& b) const
{
    if (b.size() != rows_) throw DomainError("right-hand side length mismatch");
    Matrix aug(field_, rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_) = b[i];
    }
    auto [m, pivots] = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    Vec x = zero_vec(field_, cols_);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m(r, cols_);
    return x;
}

std::optional<Matrix> Matrix::inverse() const
{
    if (rows_ != cols_) throw DomainError("inverse of a non-square matrix");
    const size_t n = rows_;
    Matrix aug(field_, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = Scalar::one(field_);
    }
    auto [m, pivots] = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(field_, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
    return inv;
}

std::vector<size_t> independent_subset(const Field& f, const std::vector<Vec>& vectors)
{
    std::vector<size_t> chosen;
    if (vectors.empty()) return chosen;
    const size_t n = vectors[0].size();
    // Incremental echelon basis: rows reduced against previous pivots.
    std::vector<Vec> basis;
    std::vector<size_t> pivot_col;
    for (size_t idx = 0; idx < vectors.size(); ++idx) {
        Vec v = vectors[idx];
        for (size_t b = 0; b < basis.size(); ++b) {
            const Scalar& c = v[pivot_col[b]];
            if (!c.is_zero()) v = sub(v, scale(c, basis[b]));
        }
        size_t p = n;
        for (size_t j = 0; j < n; ++j)
            if (!v[j].is_zero()) {
                p = j;
                break;
            }
        if (p == n) continue;
        v = scale(v[p].inverse(), v);
        for (auto& bv : basis) {
            const Scalar c = bv[p];
            if (!c.is_zero()) bv = sub(bv, scale(c, v));
        }
        basis.push_back(std::move(v));
        pivot_col.push_back(p);
        chosen.push_back(idx);
    }
    (void)f;
    return chosen;
}

} // namespace clifq
