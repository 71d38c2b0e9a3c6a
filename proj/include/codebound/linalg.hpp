// Dense matrix kernels used across the solver: row-major matrices, cyclic
// Jacobi eigendecomposition, plain and diagonally-pivoted Cholesky.
// Everything is deterministic: fixed loop orders, no randomized pivoting.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace codebound {

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    double* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        check_same(a, b);
        Mat r = a;
        for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        check_same(a, b);
        Mat r = a;
        for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }
    friend Mat operator*(double s, const Mat& a) {
        Mat r = a;
        for (double& v : r.data_) v *= s;
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
        Mat r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            double* ri = r.row(i);
            for (int k = 0; k < a.cols_; ++k) {
                double aik = a(i, k);
                if (aik == 0.0) continue;
                const double* bk = b.row(k);
                for (int j = 0; j < b.cols_; ++j) ri[j] += aik * bk[j];
            }
        }
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (double v : data_) s = std::max(s, std::fabs(v));
        return s;
    }

    void symmetrize() {
        if (!square()) throw std::invalid_argument("Mat: symmetrize needs square");
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j) {
                double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = v;
                (*this)(j, i) = v;
            }
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;

    static void check_same(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Mat: shape mismatch");
    }
};

inline std::vector<double> mat_vec(const Mat& a, const std::vector<double>& x) {
    if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("mat_vec: shape");
    std::vector<double> y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double* r = a.row(i);
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Mat vectors;                 // columns are eigenvectors, M = Q diag Q^T
};

namespace detail {

inline double off_diagonal_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// Cyclic Jacobi. Stops when off(A) <= 1e-14 * ||A0||_F.
inline void jacobi_core(Mat& a, Mat* q) {
    const int n = a.rows();
    if (q) *q = Mat::identity(n);
    const double norm0 = a.frobenius_norm();
    if (norm0 == 0.0) return;
    const double stop = 1e-14 * norm0;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int r = p + 1; r < n; ++r) {
                double apq = a(p, r);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (a(r, r) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                // rotate rows/cols p and r
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akr = a(k, r);
                    a(k, p) = c * akp - s * akr;
                    a(k, r) = s * akp + c * akr;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), ark = a(r, k);
                    a(p, k) = c * apk - s * ark;
                    a(r, k) = s * apk + c * ark;
                }
                if (q) {
                    for (int k = 0; k < n; ++k) {
                        double qkp = (*q)(k, p), qkr = (*q)(k, r);
                        (*q)(k, p) = c * qkp - s * qkr;
                        (*q)(k, r) = s * qkp + c * qkr;
                    }
                }
            }
        }
    }
}

}  // namespace detail

inline std::vector<double> jacobi_eigenvalues(const Mat& m) {
    if (!m.square()) throw std::invalid_argument("jacobi: matrix not square");
    Mat a = m;
    detail::jacobi_core(a, nullptr);
    std::vector<double> vals(m.rows());
    for (int i = 0; i < m.rows(); ++i) vals[i] = a(i, i);
    std::sort(vals.begin(), vals.end());
    return vals;
}

inline EigenDecomposition jacobi_eigen(const Mat& m) {
    if (!m.square()) throw std::invalid_argument("jacobi: matrix not square");
    Mat a = m, q;
    detail::jacobi_core(a, &q);
    const int n = m.rows();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return diag[x] < diag[y]; });
    EigenDecomposition e;
    e.values.resize(n);
    e.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        e.values[j] = diag[order[j]];
        for (int i = 0; i < n; ++i) e.vectors(i, j) = q(i, order[j]);
    }
    return e;
}

// Rebuild f(M) = Q f(diag) Q^T from a decomposition.
inline Mat eigen_apply(const EigenDecomposition& e, double (*f)(double)) {
    const int n = static_cast<int>(e.values.size());
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += e.vectors(i, k) * f(e.values[k]) * e.vectors(j, k);
            r(i, j) = s;
            r(j, i) = s;
        }
    return r;
}

// Plain lower Cholesky; returns false on nonpositive pivot.
inline bool cholesky(const Mat& a, Mat& l) {
    const int n = a.rows();
    if (!a.square()) throw std::invalid_argument("cholesky: matrix not square");
    l = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            const double* li = l.row(i);
            const double* lj = l.row(j);
            for (int k = 0; k < j; ++k) s -= li[k] * lj[k];
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return true;
}

inline std::vector<double> forward_solve(const Mat& l, const std::vector<double>& b) {
    const int n = l.rows();
    std::vector<double> x(b);
    for (int i = 0; i < n; ++i) {
        const double* li = l.row(i);
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= li[k] * x[k];
        x[i] = s / li[i];
    }
    return x;
}

inline std::vector<double> backward_solve_transposed(const Mat& l, const std::vector<double>& b) {
    const int n = l.rows();
    std::vector<double> x(b);
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

// Cholesky with symmetric diagonal pivoting. Rank-revealing: stops once the
// largest remaining diagonal drops below rel_tol * (largest initial diagonal).
class PivotedCholesky {
public:
    bool factor(const Mat& a, double rel_tol = 1e-13) {
        if (!a.square()) throw std::invalid_argument("pivoted cholesky: not square");
        n_ = a.rows();
        work_ = a;
        perm_.resize(n_);
        std::iota(perm_.begin(), perm_.end(), 0);
        double max0 = 0.0;
        for (int i = 0; i < n_; ++i) max0 = std::max(max0, work_(i, i));
        const double tol = std::max(rel_tol * max0, 0.0);
        rank_ = n_;
        for (int j = 0; j < n_; ++j) {
            int piv = j;
            double best = work_(j, j);
            for (int i = j + 1; i < n_; ++i)
                if (work_(i, i) > best) {
                    best = work_(i, i);
                    piv = i;
                }
            if (best <= tol || !std::isfinite(best)) {
                rank_ = j;
                break;
            }
            if (piv != j) swap_lower(j, piv);
            double d = std::sqrt(work_(j, j));
            work_(j, j) = d;
            col_.resize(n_);
            for (int i = j + 1; i < n_; ++i) {
                work_(i, j) /= d;
                col_[i] = work_(i, j);
            }
            for (int i = j + 1; i < n_; ++i) {
                double lij = col_[i];
                if (lij == 0.0) continue;
                double* wi = work_.row(i);
                const double* c = col_.data();
                for (int k = j + 1; k <= i; ++k) wi[k] -= lij * c[k];
            }
        }
        return rank_ == n_;
    }

    int rank() const { return rank_; }
    const std::vector<int>& permutation() const { return perm_; }

    // Solves A x = b for full-rank factorizations; for rank-deficient ones the
    // null components (in pivot order) are set to zero.
    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> pb(n_);
        for (int i = 0; i < n_; ++i) pb[i] = b[perm_[i]];
        std::vector<double> y(n_, 0.0);
        for (int i = 0; i < rank_; ++i) {
            double s = pb[i];
            const double* wi = work_.row(i);
            for (int k = 0; k < i; ++k) s -= wi[k] * y[k];
            y[i] = s / wi[i];
        }
        std::vector<double> x(n_, 0.0);
        for (int i = rank_ - 1; i >= 0; --i) {
            double s = y[i];
            for (int k = i + 1; k < rank_; ++k) s -= work_(k, i) * x[k];
            x[i] = s / work_(i, i);
        }
        std::vector<double> out(n_);
        for (int i = 0; i < n_; ++i) out[perm_[i]] = x[i];
        return out;
    }

private:
    int n_ = 0, rank_ = 0;
    Mat work_;
    std::vector<int> perm_;
    std::vector<double> col_;

    // symmetric swap expressed on the lower triangle only (a < b)
    void swap_lower(int a, int b) {
        std::swap(perm_[a], perm_[b]);
        for (int k = 0; k < a; ++k) std::swap(work_(a, k), work_(b, k));
        for (int k = a + 1; k < b; ++k) std::swap(work_(k, a), work_(b, k));
        for (int k = b + 1; k < n_; ++k) std::swap(work_(k, a), work_(k, b));
        std::swap(work_(a, a), work_(b, b));
    }
};

}  // namespace codebound
