#include "emt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emt/linalg.hpp"

namespace emt {

namespace {

constexpr double kClampTol = 1e-12;

// inputs in [-1e-12, 1+1e-12] clamp to [0, 1]; anything else is rejected
double clamp_unit(double x, const char* who) {
    if (x < -kClampTol || x > 1.0 + kClampTol)
        throw std::domain_error(std::string(who) + ": argument outside [0, 1]");
    return std::clamp(x, 0.0, 1.0);
}

// sqrt(1 - x^2) with the radicand clamped against round-off at x ~ 1
double root_complement(double x) {
    double r = 1.0 - x * x;
    if (r < 0.0) r = 0.0;
    return std::sqrt(r);
}

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::pair<double, double> eig2(const ComplexMatrix& m) {
    const double a = m(0, 0).real();
    const double b = m(1, 1).real();
    const double disc = std::sqrt((a - b) * (a - b) + 4.0 * std::norm(m(0, 1)));
    const double tr = a + b;
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

}  // namespace

Alpha::Alpha(double v) : value(v) {
    if (!(v >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
}

Concurrence::Concurrence(double v) : value(clamp_unit(v, "concurrence")) {}

double b_func(double x) {
    x = clamp_unit(x, "b_func");
    return 2.0 - 2.0 * std::sqrt((1.0 + root_complement(x)) / 2.0);
}

double g_func(double x) {
    x = clamp_unit(x, "g_func");
    return (1.0 - root_complement(x)) / 2.0;
}

double measure_func(double x, MeasureKind kind) {
    return kind == MeasureKind::bures ? b_func(x) : g_func(x);
}

Concurrence concurrence_pure(const PureState& psi, const Bipartition& part) {
    const ComplexMatrix rho_a = reduced_qubit(psi, part.a_qubit);
    const auto [lo, hi] = eig2(rho_a);
    const double prod = std::max(0.0, lo) * hi;
    return Concurrence(2.0 * std::sqrt(std::max(0.0, prod)));
}

Concurrence concurrence_wootters(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2)
        throw std::invalid_argument("concurrence_wootters: needs exactly 2 qubits");
    const ComplexMatrix& m = rho.matrix();

    // rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y); entrywise,
    // the spin flip maps index i to 3 - i with sign (-1)^popcount(i).
    auto sign = [](std::size_t i) { return (i == 1 || i == 2) ? -1.0 : 1.0; };
    ComplexMatrix flipped(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            flipped(i, j) = sign(i) * sign(j) * std::conj(m(3 - i, 3 - j));

    const ComplexMatrix root = sqrtm_psd(m);
    const ComplexMatrix prod = root * flipped * root;  // Hermitian PSD
    HermitianEigen eig = eigh(prod);

    // round-off shadows of exact zeros would inject sqrt(eps) noise
    const double floor = 1e-13 * std::max(1.0, prod.frobenius_norm());
    double mu[4];
    for (int i = 0; i < 4; ++i) {
        const double lam = eig.eigenvalues[3 - i];
        mu[i] = lam > floor ? std::sqrt(lam) : 0.0;
    }
    return Concurrence(std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]));
}

double fs_pure(const PureState& psi, const Bipartition& part) {
    const ComplexMatrix rho_a = reduced_qubit(psi, part.a_qubit);
    return eig2(rho_a).second;
}

double fs_upper_bound(const Concurrence& c) {
    return (1.0 + root_complement(c.value)) / 2.0;
}

double entanglement_two_qubit(const DensityMatrix& rho, MeasureKind kind) {
    if (rho.n_qubits() != 2)
        throw std::invalid_argument("entanglement_two_qubit: needs exactly 2 qubits");
    return measure_func(concurrence_wootters(rho).value, kind);
}

double entanglement_pure_bipartition(const PureState& psi, const Bipartition& part,
                                     MeasureKind kind) {
    const double fs = fs_pure(psi, part);
    return kind == MeasureKind::bures ? 2.0 - 2.0 * std::sqrt(fs) : 1.0 - fs;
}

}  // namespace emt
