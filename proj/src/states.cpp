#include "emt/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emt {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kEigFloor = -1e-10;

std::size_t checked_pow2(std::size_t n_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("state needs at least 1 qubit");
    return std::size_t{1} << n_qubits;
}

}  // namespace

PureState::PureState(std::size_t n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != checked_pow2(n_qubits))
        throw std::invalid_argument("PureState: amplitude count is not 2^n_qubits");
    double norm2 = 0.0;
    for (const cplx& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("PureState: non-finite amplitude");
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kNormTol)
        throw std::invalid_argument("PureState: amplitudes not normalized");
}

DensityMatrix::DensityMatrix(std::size_t n_qubits, ComplexMatrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    if (matrix_.dim() != checked_pow2(n_qubits))
        throw std::invalid_argument("DensityMatrix: dim is not 2^n_qubits");
    if (!matrix_.all_finite())
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (matrix_.hermiticity_defect() > kHermTol)
        throw std::invalid_argument("DensityMatrix: matrix not Hermitian");
    const cplx t = matrix_.trace();
    if (std::abs(t - cplx{1.0, 0.0}) > kNormTol)
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    // Eigenvalue positivity (within kEigFloor) is checked where it is
    // consumed; Gershgorin-scale negative diagonals are caught here.
    for (std::size_t i = 0; i < matrix_.dim(); ++i)
        if (matrix_(i, i).real() < kEigFloor)
            throw std::invalid_argument("DensityMatrix: negative diagonal entry");
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : n_qubits_(psi.n_qubits()), matrix_(psi.dim()) {
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j)
            matrix_(i, j) = psi[i] * std::conj(psi[j]);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    const std::size_t n = rho.n_qubits();
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    for (std::size_t q : keep)
        if (q >= n) throw std::invalid_argument("partial_trace: qubit index out of range");
    if (!std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument("partial_trace: keep must be sorted and distinct");

    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q)
        if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);

    const std::size_t nk = keep.size(), nt = traced.size();
    const std::size_t dk = std::size_t{1} << nk, dt = std::size_t{1} << nt;

    // Scatter a keep-index/traced-index pair into a full basis index.
    auto full_index = [&](std::size_t a, std::size_t t) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < nk; ++k)
            if ((a >> (nk - 1 - k)) & 1) idx |= std::size_t{1} << (n - 1 - keep[k]);
        for (std::size_t k = 0; k < nt; ++k)
            if ((t >> (nt - 1 - k)) & 1) idx |= std::size_t{1} << (n - 1 - traced[k]);
        return idx;
    };

    ComplexMatrix out(dk);
    const ComplexMatrix& m = rho.matrix();
    for (std::size_t a = 0; a < dk; ++a)
        for (std::size_t b = 0; b < dk; ++b) {
            cplx s{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) s += m(full_index(a, t), full_index(b, t));
            out(a, b) = s;
        }
    return DensityMatrix(nk, std::move(out));
}

ComplexMatrix reduced_qubit(const PureState& psi, std::size_t qubit) {
    const std::size_t n = psi.n_qubits();
    if (qubit >= n) throw std::invalid_argument("reduced_qubit: index out of range");
    const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
    const std::size_t d = psi.dim();
    ComplexMatrix rho(2);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t s = (i & bit) ? 1 : 0;
        const std::size_t base = i & ~bit;
        // pair i with the index differing only in this qubit
        rho(s, s) += psi[i] * std::conj(psi[i]);
        if (s == 0) {
            const cplx cross = psi[base] * std::conj(psi[base | bit]);
            rho(0, 1) += cross;
            rho(1, 0) += std::conj(cross);
        }
    }
    return rho;
}

PureState ghz_state(std::size_t n_qubits) {
    const std::size_t d = checked_pow2(n_qubits);
    std::vector<cplx> amps(d, cplx{0.0, 0.0});
    amps[0] = amps[d - 1] = 1.0 / std::sqrt(2.0);
    return PureState(n_qubits, std::move(amps));
}

PureState w_state(std::size_t n_qubits) {
    const std::size_t d = checked_pow2(n_qubits);
    std::vector<cplx> amps(d, cplx{0.0, 0.0});
    const double a = 1.0 / std::sqrt(static_cast<double>(n_qubits));
    for (std::size_t k = 0; k < n_qubits; ++k) amps[std::size_t{1} << k] = a;
    return PureState(n_qubits, std::move(amps));
}

PureState bell_state() {
    const double a = 1.0 / std::sqrt(2.0);
    return PureState(2, {a, 0.0, 0.0, a});
}

DensityMatrix werner_state(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner: p must be in [0, 1]");
    ComplexMatrix m(4);
    const double off = p / 2.0;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = (1.0 - p) / 4.0;
    m(0, 0) += off;
    m(3, 3) += off;
    m(0, 3) = m(3, 0) = off;
    return DensityMatrix(2, std::move(m));
}

PureState product_state(const std::vector<std::vector<cplx>>& single_qubit_factors) {
    if (single_qubit_factors.empty())
        throw std::invalid_argument("product_state: need at least one factor");
    std::vector<cplx> amps{1.0};
    for (const auto& f : single_qubit_factors) {
        if (f.size() != 2) throw std::invalid_argument("product_state: factors must be qubits");
        std::vector<cplx> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * f[0];
            next[2 * i + 1] = amps[i] * f[1];
        }
        amps = std::move(next);
    }
    double norm2 = 0.0;
    for (const cplx& a : amps) norm2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amps) a *= inv;
    return PureState(single_qubit_factors.size(), std::move(amps));
}

State named_state(const std::string& family_spec) {
    std::string name = family_spec;
    std::string arg;
    if (auto pos = family_spec.find(':'); pos != std::string::npos) {
        name = family_spec.substr(0, pos);
        arg = family_spec.substr(pos + 1);
    }
    auto int_arg = [&](std::size_t fallback_needed) -> std::size_t {
        if (arg.empty()) throw std::invalid_argument("state family '" + name + "' needs a size, e.g. " + name + ":" + std::to_string(fallback_needed));
        std::size_t pos = 0;
        const long v = std::stol(arg, &pos);
        if (pos != arg.size() || v < 1) throw std::invalid_argument("invalid size for state family '" + name + "'");
        return static_cast<std::size_t>(v);
    };
    if (name == "ghz") return ghz_state(int_arg(3));
    if (name == "w") return w_state(int_arg(3));
    if (name == "bell") return bell_state();
    if (name == "werner") {
        if (arg.empty()) throw std::invalid_argument("werner needs a parameter, e.g. werner:0.5");
        std::size_t pos = 0;
        const double p = std::stod(arg, &pos);
        if (pos != arg.size()) throw std::invalid_argument("invalid werner parameter");
        return werner_state(p);
    }
    if (name == "product") {
        // product:a0,a1;b0,b1;... with real amplitudes per qubit factor
        if (arg.empty()) throw std::invalid_argument("product needs factors, e.g. product:1,0;0.6,0.8");
        std::vector<std::vector<cplx>> factors;
        std::size_t start = 0;
        while (start <= arg.size()) {
            std::size_t end = arg.find(';', start);
            const std::string tok = arg.substr(start, end == std::string::npos ? std::string::npos : end - start);
            const std::size_t comma = tok.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("product factor needs two amplitudes");
            factors.push_back({std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))});
            if (end == std::string::npos) break;
            start = end + 1;
        }
        return product_state(factors);
    }
    throw std::invalid_argument("unknown state family '" + name + "'");
}

}  // namespace emt
