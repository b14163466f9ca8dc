#include "emt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace emt {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiThreshold = 1e-15;
constexpr double kJacobiLoose = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kPsdClamp = -1e-10;
// eigenvalues below this (relative) scale are round-off shadows of exact
// zeros; square-rooting them would inject sqrt(eps)-sized noise
constexpr double kSpectralFloor = 1e-13;

double offdiag_norm(const ComplexMatrix& h) {
    double s = 0.0;
    const std::size_t n = h.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += std::norm(h(i, j));
    return std::sqrt(2.0 * s);
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix& h) {
    const std::size_t n = h.dim();
    if (n == 0) throw std::invalid_argument("eigh: empty matrix");
    if (h.hermiticity_defect() > kHermitianTol)
        throw std::invalid_argument("eigh: matrix is not Hermitian");

    // Work on the Hermitized copy so round-off asymmetry cannot bias sweeps.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double threshold = kJacobiThreshold * scale;

    int sweep = 0;
    double off = offdiag_norm(a);
    while (off > threshold) {
        if (++sweep > kMaxSweeps) throw numerical_error("eigh: Jacobi sweeps did not converge");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= threshold / static_cast<double>(n * n)) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / mag;  // e^{i phi}

                const double tau = (app - aqq) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Plane rotation R: R(p,p)=c, R(p,q)=-s*phase, R(q,p)=s*conj(phase), R(q,q)=c.
                // a <- R^dag a R, v <- v R.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk + s * phase * aqk;
                    a(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        const double new_off = offdiag_norm(a);
        if (new_off >= off && off <= kJacobiLoose * scale) break;  // round-off floor reached
        off = new_off;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t c2 = 0; c2 < n; ++c2) {
        out.eigenvalues[c2] = a(order[c2], order[c2]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c2) = v(r, order[c2]);
    }
    return out;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& rho) {
    const HermitianEigen eig = eigh(rho);
    const std::size_t n = rho.dim();
    const double scale = std::max(1.0, rho.frobenius_norm());
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = eig.eigenvalues[i];
        if (lam < kPsdClamp) throw not_psd_error("sqrtm_psd: matrix is not PSD");
        if (lam < kSpectralFloor * scale) lam = 0.0;
        roots[i] = std::sqrt(lam);
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                s += roots[k] * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    return out;
}

double fidelity_with_sqrt(const ComplexMatrix& sqrt_rho, const ComplexMatrix& sigma) {
    if (sqrt_rho.dim() != sigma.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const ComplexMatrix m = sqrt_rho * sigma * sqrt_rho;
    const HermitianEigen eig = eigh(m);
    const double floor = kSpectralFloor * std::max(1.0, m.frobenius_norm());
    double root_sum = 0.0;
    for (double lam : eig.eigenvalues)
        if (lam > floor) root_sum += std::sqrt(lam);
    double f = root_sum * root_sum;
    if (f < -1e-10 || f > 1.0 + 1e-10) throw numerical_error("fidelity: value outside [0, 1]");
    return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    return fidelity_with_sqrt(sqrtm_psd(rho.matrix()), sigma.matrix());
}

}  // namespace emt
