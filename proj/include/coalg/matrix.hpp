#pragma once

// Dense exact matrices and the row-reduction kernel that every graded
// construction reduces to: rref, kernels, images, canonical complements,
// quotient coordinates.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coalg/error.hpp"
#include "coalg/field.hpp"

namespace coalg {

template <ExactField K>
class Matrix {
public:
    using field_type = K;
    using value_type = typename K::value_type;
    using Vector = std::vector<value_type>;

    Matrix(K field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    static Matrix identity(K field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = field.one();
        return m;
    }

    /// Row-major integer literal, mostly for tests and fixtures.
    static Matrix from_ints(K field, std::size_t rows, std::size_t cols, std::initializer_list<long> entries) {
        if (entries.size() != rows * cols) throw DimensionError("from_ints: entry count does not match shape");
        Matrix m(field, rows, cols);
        std::size_t k = 0;
        for (long v : entries) m.data_[k++] = field.from_int(v);
        return m;
    }

    static Matrix column(K field, const Vector& v) {
        Matrix m(field, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i];
        return m;
    }

    const K& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [this](const value_type& v) { return field_.is_zero(v); });
    }

    Vector col(std::size_t c) const {
        Vector v;
        v.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
        return v;
    }

    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix m(field_, rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
        return m;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix m(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
        return m;
    }

    Matrix transpose() const {
        Matrix m(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        check_field(o);
        if (cols_ != o.rows_)
            throw DimensionError("matrix product of " + shape() + " and " + o.shape());
        Matrix m(field_, rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const value_type& a = (*this)(r, k);
                if (field_.is_zero(a)) continue;
                for (std::size_t c = 0; c < o.cols_; ++c) {
                    const value_type& b = o(k, c);
                    if (!field_.is_zero(b)) m(r, c) = field_.add(m(r, c), field_.mul(a, b));
                }
            }
        return m;
    }

    Vector operator*(const Vector& v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector product: length mismatch");
        Vector out(rows_, field_.zero());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!field_.is_zero((*this)(r, c)) && !field_.is_zero(v[c]))
                    out[r] = field_.add(out[r], field_.mul((*this)(r, c), v[c]));
        return out;
    }

    Matrix operator+(const Matrix& o) const { return combine(o, [this](const auto& a, const auto& b) { return field_.add(a, b); }); }
    Matrix operator-(const Matrix& o) const { return combine(o, [this](const auto& a, const auto& b) { return field_.sub(a, b); }); }
    Matrix operator-() const {
        Matrix m(*this);
        for (auto& v : m.data_) v = field_.neg(v);
        return m;
    }
    Matrix scaled(const value_type& s) const {
        Matrix m(*this);
        for (auto& v : m.data_) v = field_.mul(v, s);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
        return true;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t r = 0; r < rows_; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << field_.format((*this)(r, c));
            os << "]";
        }
        os << "]";
        return os.str();
    }

    void check_field(const Matrix& o) const {
        if (!(field_ == o.field_)) throw FieldMismatch();
    }

private:
    template <class Op>
    Matrix combine(const Matrix& o, Op op) const {
        check_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("elementwise op on " + shape() + " and " + o.shape());
        Matrix m(field_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = op(data_[i], o.data_[i]);
        return m;
    }

    K field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

/// [a | b]
template <ExactField K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
    a.check_field(b);
    if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
    Matrix<K> m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

template <ExactField K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
    a.check_field(b);
    if (a.cols() != b.cols()) throw DimensionError("vstack: column counts differ");
    Matrix<K> m(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        for (std::size_t r = 0; r < a.rows(); ++r) m(r, c) = a(r, c);
        for (std::size_t r = 0; r < b.rows(); ++r) m(a.rows() + r, c) = b(r, c);
    }
    return m;
}

template <ExactField K>
struct RowEchelon {
    Matrix<K> reduced;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
template <ExactField K>
RowEchelon<K> rref(Matrix<K> m) {
    const K& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && f.is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        auto inv = f.inv(m(row, col));
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || f.is_zero(m(r, col))) continue;
            auto factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!f.is_zero(m(row, c))) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <ExactField K>
std::size_t rank(const Matrix<K>& m) {
    return rref(m).pivots.size();
}

/// Columns form a basis of the null space: one vector per free column, with
/// a 1 in that column and zeros in the other free columns.
template <ExactField K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
    const K& f = m.field();
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix<K> k(f, m.cols(), free.size());
    for (std::size_t j = 0; j < free.size(); ++j) {
        k(free[j], j) = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], j) = f.neg(r(i, free[j]));
    }
    return k;
}

template <ExactField K>
struct ImageBasis {
    Matrix<K> basis;
    std::vector<std::size_t> pivots;
};

/// The pivot columns of m, a basis of its column space.
template <ExactField K>
ImageBasis<K> image_basis(const Matrix<K>& m) {
    auto pivots = rref(m).pivots;
    return {m.select_columns(pivots), pivots};
}

/// Indices of standard basis vectors that complete the column space of `sub`
/// to the whole ambient space: the pivots of rref([sub | I]) that fall in the
/// identity block.
template <ExactField K>
std::vector<std::size_t> complement_indices(const Matrix<K>& sub) {
    auto ech = rref(hstack(sub, Matrix<K>::identity(sub.field(), sub.rows())));
    std::vector<std::size_t> out;
    for (auto p : ech.pivots)
        if (p >= sub.cols()) out.push_back(p - sub.cols());
    return out;
}

template <ExactField K>
Matrix<K> inverse(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of non-square " + m.shape());
    const std::size_t n = m.rows();
    auto ech = rref(hstack(m, Matrix<K>::identity(m.field(), n)));
    if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1))
        throw DomainError("inverse of singular matrix");
    std::vector<std::size_t> right(n);
    for (std::size_t i = 0; i < n; ++i) right[i] = n + i;
    return ech.reduced.select_columns(right);
}

/// For independent columns C, rows L with L*C = I, extended to the ambient
/// space by sending the canonical complement of span(C) to zero.
template <ExactField K>
Matrix<K> coordinate_rows(const Matrix<K>& independent) {
    auto comp = complement_indices(independent);
    if (independent.cols() + comp.size() != independent.rows())
        throw DimensionError("coordinate_rows: columns are not independent");
    Matrix<K> e(independent.field(), independent.rows(), comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) e(comp[j], j) = independent.field().one();
    auto inv = inverse(hstack(independent, e));
    std::vector<std::size_t> top(independent.cols());
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
    return inv.select_rows(top);
}

/// Canonical complement of a subspace together with the linear map sending a
/// vector to the coordinates of its class in that complement.
template <ExactField K>
struct QuotientData {
    std::vector<std::size_t> complement;  ///< standard basis vectors spanning the complement
    Matrix<K> projection;                 ///< complement.size() x ambient
};

template <ExactField K>
QuotientData<K> quotient_data(const Matrix<K>& sub) {
    const K& f = sub.field();
    auto basis = image_basis(sub).basis;
    auto comp = complement_indices(sub);
    Matrix<K> e(f, sub.rows(), comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) e(comp[j], j) = f.one();
    auto inv = inverse(hstack(basis, e));
    std::vector<std::size_t> bottom(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) bottom[i] = basis.cols() + i;
    return {comp, inv.select_rows(bottom)};
}

template <ExactField K>
typename Matrix<K>::Vector quotient_coordinates(const Matrix<K>& sub, const typename Matrix<K>::Vector& v) {
    if (v.size() != sub.rows())
        throw DimensionError("quotient_coordinates: vector length " + std::to_string(v.size()) +
                             " vs ambient dimension " + std::to_string(sub.rows()));
    return quotient_data(sub).projection * v;
}

/// Some x with a*x = b, if one exists.
template <ExactField K>
std::optional<typename Matrix<K>::Vector> solve(const Matrix<K>& a, const typename Matrix<K>::Vector& b) {
    if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
    const K& f = a.field();
    auto ech = rref(hstack(a, Matrix<K>::column(f, b)));
    if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
    typename Matrix<K>::Vector x(a.cols(), f.zero());
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = ech.reduced(i, a.cols());
    return x;
}

}  // namespace coalg
