#include "emt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emt {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng CounterRng::stream(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(mix64(seed) ^ mix64(index * 0xd1342543de82ef95ULL + 1));
}

std::uint64_t CounterRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double CounterRng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

cplx CounterRng::complex_gaussian() {
    const double re = gaussian();
    return {re, gaussian()};
}

PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed, std::size_t max_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits)
        throw std::invalid_argument("haar_random_pure: n_qubits out of range");
    CounterRng rng(seed);
    const std::size_t d = std::size_t{1} << n_qubits;
    std::vector<cplx> amps(d);
    double norm2 = 0.0;
    for (cplx& a : amps) {
        a = rng.complex_gaussian();
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amps) a *= inv;
    return PureState(n_qubits, std::move(amps));
}

DensityMatrix ginibre_random_mixed(std::size_t n_qubits, std::size_t rank, std::uint64_t seed,
                                   std::size_t max_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits)
        throw std::invalid_argument("ginibre_random_mixed: n_qubits out of range");
    const std::size_t d = std::size_t{1} << n_qubits;
    if (rank < 1 || rank > d)
        throw std::invalid_argument("ginibre_random_mixed: rank must be in [1, 2^n]");
    CounterRng rng(seed);
    std::vector<cplx> g(d * rank);
    for (cplx& e : g) e = rng.complex_gaussian();

    // rho = G G^dag / tr(G G^dag)
    ComplexMatrix m(d);
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < rank; ++k) s += g[i * rank + k] * std::conj(g[j * rank + k]);
            m(i, j) = s;
            m(j, i) = std::conj(s);
            if (i == j) tr += s.real();
        }
    m *= 1.0 / tr;
    // force an exactly unit trace after the division round-off
    cplx t = m.trace();
    m(d - 1, d - 1) += 1.0 - t.real();
    return DensityMatrix(n_qubits, std::move(m));
}

}  // namespace emt
