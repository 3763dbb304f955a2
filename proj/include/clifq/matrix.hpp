#pragma once

#include "clifq/scalar.hpp"

#include <optional>
#include <vector>

namespace clifq {

using Vec = std::vector<Scalar>;

Vec zero_vec(const Field& f, size_t n);
Vec unit_vec(const Field& f, size_t n, size_t i);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Scalar& c, const Vec& x);
bool is_zero(const Vec& x);

/// Dense row-major matrix of exact scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, size_t rows, size_t cols);
    static Matrix identity(const Field& f, size_t n);
    /// Matrix whose rows are the given vectors.
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, size_t cols);

    const Field& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
    Vec row(size_t i) const;
    Vec col(size_t j) const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Vec apply(const Vec& x) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const;
    bool is_symmetric() const;
    bool is_square() const { return rows_ == cols_; }

    Scalar determinant() const;
    size_t rank() const;
    /// Reduced row echelon form and pivot columns.
    std::pair<Matrix, std::vector<size_t>> rref() const;
    /// Basis of the right kernel {x : M x = 0}.
    std::vector<Vec> nullspace() const;
    /// Some solution of M x = b.
    std::optional<Vec> solve(const Vec& b) const;
    std::optional<Matrix> inverse() const;

    /// Entrywise image under a field homomorphism.
    template <class Map>
    Matrix mapped(const Field& target, Map&& f) const
    {
        Matrix r(target, rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = f(data_[i]);
        return r;
    }

private:
    Field field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

/// Indices of a maximal linearly independent subset, chosen greedily in order.
std::vector<size_t> independent_subset(const Field& f, const std::vector<Vec>& vectors);

} // namespace clifq
