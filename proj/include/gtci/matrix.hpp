// Dense matrices over arbitrary-precision integers. Sizes in this project
// never exceed a handful of rows/columns, so the representation is a plain
// row-major vector with bounds-checked access.
#pragma once

#include <gtci/integer.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gtci {

class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("IntMat: negative dimension");
    }
    IntMat(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("IntMat: ragged initializer");
            for (std::int64_t v : r) a_.emplace_back(v);
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) {
        check(i, j);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const Int& at(int i, int j) const {
        check(i, j);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    IntMat transpose() const {
        IntMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMat operator*(const IntMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("IntMat: size mismatch in product");
        IntMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    std::vector<Int> operator*(const std::vector<Int>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("IntMat: size mismatch in apply");
        std::vector<Int> r(rows_, Int(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * x[j];
        return r;
    }

    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const Int& v : a_)
            if (v != 0) return false;
        return true;
    }

    std::vector<Int> row(int i) const {
        std::vector<Int> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }
    std::vector<Int> col(int j) const {
        std::vector<Int> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
    }
    // row[i] += c * row[j]
    void add_row(int i, int j, const Int& c) {
        for (int k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
    }
    // col[i] += c * col[j]
    void add_col(int i, int j, const Int& c) {
        for (int k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
    }
    void negate_row(int i) {
        for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
    }
    void negate_col(int j) {
        for (int k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMat& m) {
        os << "[";
        for (int i = 0; i < m.rows_; ++i) {
            if (i) os << "; ";
            for (int j = 0; j < m.cols_; ++j) {
                if (j) os << " ";
                os << m.at(i, j).get_str();
            }
        }
        os << "]";
        return os;
    }

private:
    void check(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("IntMat: index out of range");
    }

    int rows_, cols_;
    std::vector<Int> a_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    int n = m.rows();
    if (n == 0) return Int(1);
    IntMat a = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return Int(0);
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a.at(i, j) = t;
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

}  // namespace gtci
