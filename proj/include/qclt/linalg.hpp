#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qclt::linalg {

using cd = std::complex<double>;

// ---- Dense complex matrix ----------------------------------------------

// Row-major storage. Constructors that accept values reject NaN/Inf, so
// non-finite entries never enter downstream algorithms.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);                       // zero-filled
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> data); // validated
    ComplexMatrix(std::initializer_list<std::initializer_list<cd>> rows);    // validated

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cd>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cd trace() const;
    double max_abs() const;
    double max_abs_imag() const;
    double frobenius() const;

    // Largest |A_ij - conj(A_ji)|; zero for an exactly Hermitian matrix.
    double hermiticity_defect() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cd s, const ComplexMatrix& a);

// ---- Eigensystem -------------------------------------------------------

// Eigenvalues in descending order; eigenvectors are the matching columns,
// each phase-fixed so its largest-magnitude component is real positive.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic complex Jacobi rotations. The input must satisfy
// hermiticity_defect() <= hermiticity_tol; it is then symmetrized to
// (A + A^dagger)/2 before iterating. Sweeps stop once the off-diagonal
// Frobenius norm falls below 1e-14 relative to ||A||_F (hard cap 100 sweeps).
HermitianEigen eig_hermitian(const ComplexMatrix& a, double hermiticity_tol = 1e-12);

// det(I + s A) by LU with partial pivoting; s = 0 returns exactly 1.
cd det_shifted(const ComplexMatrix& a, double s);

}  // namespace qclt::linalg
