#include "qclt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qclt/errors.hpp"

namespace qclt::linalg {

namespace {

bool finite(cd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void require_finite(const std::vector<cd>& data) {
    for (std::size_t k = 0; k < data.size(); ++k)
        if (!finite(data[k])) {
            std::ostringstream os;
            os << "non-finite matrix entry at flat index " << k;
            throw std::invalid_argument(os.str());
        }
}

}  // namespace

// ---- ComplexMatrix -----------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cd{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("matrix data size does not match its shape");
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("ragged matrix initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cd{1.0, 0.0};
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
    return m;
}

cd ComplexMatrix::trace() const {
    if (!square()) throw std::invalid_argument("trace requires a square matrix");
    cd t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double worst = 0.0;
    for (const auto& v : data_) worst = std::max(worst, std::abs(v));
    return worst;
}

double ComplexMatrix::max_abs_imag() const {
    double worst = 0.0;
    for (const auto& v : data_) worst = std::max(worst, std::abs(v.imag()));
    return worst;
}

double ComplexMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    if (!square()) throw std::invalid_argument("hermiticity defect requires a square matrix");
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cd aik = a(i, k);
            if (aik == cd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    ComplexMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
    return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference shape mismatch");
    ComplexMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
    return m;
}

ComplexMatrix operator*(cd s, const ComplexMatrix& a) {
    ComplexMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
    return m;
}

// ---- Hermitian eigensystem ---------------------------------------------

namespace {

constexpr double kOffDiagThreshold = 1e-14;  // relative to ||A||_F
constexpr int kMaxSweeps = 100;

double off_diagonal_frobenius(const ComplexMatrix& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

// One two-sided rotation eliminating h(p, q). h is kept exactly Hermitian;
// q_acc accumulates the eigenvector basis (columns).
void rotate(ComplexMatrix& h, ComplexMatrix& q_acc, std::size_t p, std::size_t q) {
    const cd hpq = h(p, q);
    const double apq = std::abs(hpq);
    if (apq == 0.0) return;
    const double app = h(p, p).real();
    const double aqq = h(q, q).real();
    const cd phase = hpq / apq;  // e^{i phi}

    double t;
    if (app == aqq) {
        t = 1.0;
    } else {
        const double tau = (app - aqq) / (2.0 * apq);
        t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = h.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const cd hkp = h(k, p);
        const cd hkq = h(k, q);
        const cd nkp = hkp * c + hkq * (s * std::conj(phase));
        const cd nkq = hkq * c - hkp * (s * phase);
        h(k, p) = nkp;
        h(p, k) = std::conj(nkp);
        h(k, q) = nkq;
        h(q, k) = std::conj(nkq);
    }
    const double npp = c * c * app + 2.0 * s * c * apq + s * s * aqq;
    const double nqq = c * c * aqq - 2.0 * s * c * apq + s * s * app;
    h(p, p) = cd{npp, 0.0};
    h(q, q) = cd{nqq, 0.0};
    h(p, q) = cd{0.0, 0.0};
    h(q, p) = cd{0.0, 0.0};

    for (std::size_t k = 0; k < n; ++k) {
        const cd qkp = q_acc(k, p);
        const cd qkq = q_acc(k, q);
        q_acc(k, p) = qkp * c + qkq * (s * std::conj(phase));
        q_acc(k, q) = qkq * c - qkp * (s * phase);
    }
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& a, double hermiticity_tol) {
    if (!a.square()) throw std::invalid_argument("eigensystem requires a square matrix");
    const std::size_t n = a.rows();

    // locate the worst Hermiticity defect so the rejection can name it
    double defect = 0.0;
    std::size_t di = 0, dj = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = std::abs(a(i, j) - std::conj(a(j, i)));
            if (v > defect) {
                defect = v;
                di = i;
                dj = j;
            }
        }
    if (defect > hermiticity_tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian: |A_ij - conj(A_ji)| = " << defect << " at (" << di
           << ", " << dj << ")";
        throw std::invalid_argument(os.str());
    }

    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMatrix q = ComplexMatrix::identity(n);
    const double scale = std::max(h.frobenius(), 1e-300);
    int sweep = 0;
    while (off_diagonal_frobenius(h) > kOffDiagThreshold * scale) {
        if (++sweep > kMaxSweeps)
            throw numeric_error("Jacobi eigensystem did not converge within 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t qq = p + 1; qq < n; ++qq) rotate(h, q, p, qq);
    }

    // canonical phase per column: largest-magnitude component real positive
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = std::abs(q(i, k));
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        cd pivot = q(arg, k);
        if (std::abs(pivot) > 0.0) {
            cd rot = std::conj(pivot) / std::abs(pivot);
            for (std::size_t i = 0; i < n; ++i) q(i, k) *= rot;
            q(arg, k) = cd{q(arg, k).real(), 0.0};
        }
    }

    // descending eigenvalues; ties broken by the first differing component
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        double wx = h(x, x).real();
        double wy = h(y, y).real();
        if (wx != wy) return wx > wy;
        for (std::size_t i = 0; i < n; ++i) {
            const cd vx = q(i, x);
            const cd vy = q(i, y);
            if (vx.real() != vy.real()) return vx.real() < vy.real();
            if (vx.imag() != vy.imag()) return vx.imag() < vy.imag();
        }
        return false;
    });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = q(i, order[k]);
    }
    return out;
}

// ---- Shifted determinant -----------------------------------------------

cd det_shifted(const ComplexMatrix& a, double s) {
    if (!a.square()) throw std::invalid_argument("det_shifted requires a square matrix");
    if (s == 0.0) return cd{1.0, 0.0};
    const std::size_t n = a.rows();

    ComplexMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b(i, j) = (i == j ? cd{1.0, 0.0} : cd{0.0, 0.0}) + s * a(i, j);

    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(b(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(b(i, k)) > best) {
                best = std::abs(b(i, k));
                pivot = i;
            }
        if (best == 0.0) return cd{0.0, 0.0};
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(b(k, j), b(pivot, j));
            sign = -sign;
        }
        const cd inv = cd{1.0, 0.0} / b(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cd f = b(i, k) * inv;
            if (f == cd{0.0, 0.0}) continue;
            for (std::size_t j = k; j < n; ++j) b(i, j) -= f * b(k, j);
        }
    }
    cd det{sign, 0.0};
    for (std::size_t k = 0; k < n; ++k) det *= b(k, k);
    return det;
}

}  // namespace qclt::linalg
