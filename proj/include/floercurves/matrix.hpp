// Small dense matrices over an exact field (or any ring with +, *, ==).

#pragma once

#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace floer {

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}
    Matrix(size_t r, size_t c, const T& fill) : rows_(r), cols_(c), a_(r * c, fill) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T::one();
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const T& operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix: size mismatch");
        Matrix r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const T& x = (*this)(i, k);
                if (x == T::zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }
    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: size mismatch");
        Matrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Matrix operator-(const Matrix& o) const { return *this + (-o); }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!(x == T::zero())) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        return *this == identity(rows_);
    }

    void swap_rows(size_t i, size_t j) {
        for (size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(size_t i, size_t j) {
        for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    // row i += c * row j
    void add_row(size_t i, size_t j, const T& c) {
        for (size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
    }
    // col i += c * col j
    void add_col(size_t i, size_t j, const T& c) {
        for (size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
    }
    void scale_row(size_t i, const T& c) {
        for (size_t k = 0; k < cols_; ++k) (*this)(i, k) = c * (*this)(i, k);
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < rows_; ++i) {
            os << "[";
            for (size_t j = 0; j < cols_; ++j) {
                os << (*this)(i, j);
                if (j + 1 < cols_) os << ",";
            }
            os << "]";
            if (i + 1 < rows_) os << ",";
        }
        os << "]";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.str(); }

private:
    size_t rows_, cols_;
    std::vector<T> a_;
};

// Rank over a field, by Gaussian elimination on a copy.
template <class K>
inline size_t rank(Matrix<K> m) {
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t pivot = r;
        while (pivot < m.rows() && m(pivot, c) == K::zero()) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(r, pivot);
        K inv = m(r, c).inverse();
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == K::zero()) continue;
            m.add_row(i, r, -(m(i, c) * inv));
        }
        ++r;
    }
    return r;
}

// Inverse over a field; throws on singular input.
template <class K>
inline Matrix<K> inverse(Matrix<K> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    size_t n = m.rows();
    Matrix<K> inv = Matrix<K>::identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t pivot = c;
        while (pivot < n && m(pivot, c) == K::zero()) ++pivot;
        if (pivot == n) throw std::domain_error("inverse: singular matrix");
        m.swap_rows(c, pivot);
        inv.swap_rows(c, pivot);
        K s = m(c, c).inverse();
        m.scale_row(c, s);
        inv.scale_row(c, s);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == K::zero()) continue;
            K f = -m(i, c);
            m.add_row(i, c, f);
            inv.add_row(i, c, f);
        }
    }
    return inv;
}

template <class K>
inline bool is_invertible(const Matrix<K>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Basis of the kernel of a matrix over a field, as columns.
template <class K>
inline Matrix<K> kernel_basis(Matrix<K> m) {
    size_t rows = m.rows(), cols = m.cols();
    std::vector<long long> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m(p, c) == K::zero()) ++p;
        if (p == rows) continue;
        m.swap_rows(r, p);
        K inv = m(r, c).inverse();
        m.scale_row(r, inv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == K::zero()) continue;
            m.add_row(i, r, -m(i, c));
        }
        pivot_of_col[c] = static_cast<long long>(r);
        ++r;
    }
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] < 0) free_cols.push_back(c);
    Matrix<K> ker(cols, free_cols.size());
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        size_t fc = free_cols[fi];
        ker(fc, fi) = K::one();
        for (size_t c = 0; c < cols; ++c) {
            long long pr = pivot_of_col[c];
            if (pr >= 0) ker(c, fi) = -m(static_cast<size_t>(pr), fc);
        }
    }
    return ker;
}

} // namespace floer
