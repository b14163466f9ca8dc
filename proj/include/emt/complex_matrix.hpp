// Dense square complex matrix, the linear-algebra carrier for density
// matrices and kernels. Row-major storage, value semantics.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace emt {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, cplx{0.0, 0.0}) {}
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    cplx trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    // max |H(i,j) - conj(H(j,i))|
    double hermiticity_defect() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(double s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= s; }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace emt
