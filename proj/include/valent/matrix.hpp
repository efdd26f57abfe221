#pragma once

#include <valent/field.hpp>

#include <stdexcept>
#include <vector>

namespace valent {

/// Dense matrix over the chosen field. Row-major, all entries share one
/// descriptor. Indices are 0-based internally; the subset machinery converts
/// from the 1-based convention used on external surfaces.
class Matrix {
public:
    Matrix(const FieldDescriptor& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, field_zero(f)) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
    }

    static Matrix identity(const FieldDescriptor& f, int d) {
        Matrix m(f, d, d);
        for (int i = 0; i < d; ++i) m.at(i, i) = field_one(f);
        return m;
    }

    const FieldDescriptor& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FieldElement& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const FieldElement& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix r(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }

    std::vector<FieldElement> apply(const std::vector<FieldElement>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<FieldElement> y(static_cast<std::size_t>(rows_), field_zero(field_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    Matrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        Matrix s(field_, static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
        return s;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_) return false;
        for (std::size_t k = 0; k < a.e_.size(); ++k)
            if (a.e_[k] != b.e_[k]) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// Exact determinant by Gaussian elimination with minimum-valuation
    /// pivoting (keeps intermediate entries small in the discrete case).
    FieldElement determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
        Matrix m = *this;
        FieldElement det = field_one(field_);
        bool negate = false;
        for (int j = 0; j < cols_; ++j) {
            int pivot = -1;
            Val best = Val::infinity();
            for (int i = j; i < rows_; ++i) {
                if (m.at(i, j).is_zero()) continue;
                Val v = m.at(i, j).valuation();
                if (pivot < 0 || v < best) {
                    pivot = i;
                    best = v;
                }
            }
            if (pivot < 0) return field_zero(field_);
            if (pivot != j) {
                for (int c = j; c < cols_; ++c) std::swap(m.at(j, c), m.at(pivot, c));
                negate = !negate;
            }
            for (int i = j + 1; i < rows_; ++i) {
                if (m.at(i, j).is_zero()) continue;
                FieldElement f = m.at(i, j) / m.at(j, j);
                for (int c = j; c < cols_; ++c) m.at(i, c) = m.at(i, c) - f * m.at(j, c);
            }
            det = det * m.at(j, j);
        }
        return negate ? -det : det;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
        Matrix m = *this;
        Matrix inv = identity(field_, rows_);
        for (int j = 0; j < cols_; ++j) {
            int pivot = -1;
            Val best = Val::infinity();
            for (int i = j; i < rows_; ++i) {
                if (m.at(i, j).is_zero()) continue;
                Val v = m.at(i, j).valuation();
                if (pivot < 0 || v < best) {
                    pivot = i;
                    best = v;
                }
            }
            if (pivot < 0) throw std::domain_error("matrix is singular");
            if (pivot != j)
                for (int c = 0; c < cols_; ++c) {
                    std::swap(m.at(j, c), m.at(pivot, c));
                    std::swap(inv.at(j, c), inv.at(pivot, c));
                }
            FieldElement d = m.at(j, j);
            for (int c = 0; c < cols_; ++c) {
                m.at(j, c) = m.at(j, c) / d;
                inv.at(j, c) = inv.at(j, c) / d;
            }
            for (int i = 0; i < rows_; ++i) {
                if (i == j || m.at(i, j).is_zero()) continue;
                FieldElement f = m.at(i, j);
                for (int c = 0; c < cols_; ++c) {
                    m.at(i, c) = m.at(i, c) - f * m.at(j, c);
                    inv.at(i, c) = inv.at(i, c) - f * inv.at(j, c);
                }
            }
        }
        return inv;
    }

    /// True when every entry lies in the valuation ring O.
    bool is_integral() const {
        for (const auto& x : e_)
            if (x.valuation() < Val(0)) return false;
        return true;
    }

private:
    FieldDescriptor field_;
    int rows_, cols_;
    std::vector<FieldElement> e_;
};

}  // namespace valent
