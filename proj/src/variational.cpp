#include "emt/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "emt/linalg.hpp"
#include "emt/rng.hpp"

namespace emt {

namespace {

constexpr double kInitialStep = 0.5;
constexpr double kRankTol = 1e-10;

void outer_accumulate(ComplexMatrix& sigma, double weight, const std::vector<cplx>& a,
                      const std::vector<cplx>& b) {
    const std::size_t da = a.size(), db = b.size();
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < db; ++k) {
            const cplx left = a[i] * b[k];
            for (std::size_t j = 0; j < da; ++j)
                for (std::size_t l = 0; l < db; ++l)
                    sigma(i * db + k, j * db + l) += weight * left * std::conj(a[j] * b[l]);
        }
}

// Unit complex vector of dimension d from 2(d-1) real parameters
// (hyperspherical angles and relative phases).
std::vector<cplx> unit_vector(const double* params, std::size_t d) {
    std::vector<cplx> v(d);
    if (d == 1) {
        v[0] = 1.0;
        return v;
    }
    double prefix = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double mag = (k + 1 < d) ? prefix * std::cos(params[k]) : prefix;
        if (k == 0) {
            v[0] = mag;
        } else {
            const double phi = params[(d - 1) + (k - 1)];
            v[k] = mag * cplx{std::cos(phi), std::sin(phi)};
        }
        if (k + 1 < d) prefix *= std::sin(params[k]);
    }
    return v;
}

// Original basis index for a (s, t) pair after moving `a_qubit` to the
// front, with qubit 0 as the most significant bit.
std::size_t unpermuted_index(std::size_t n, std::size_t a_qubit, std::size_t s, std::size_t t) {
    std::size_t idx = 0;
    if (s) idx |= std::size_t{1} << (n - 1 - a_qubit);
    std::size_t tq = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == a_qubit) continue;
        if ((t >> (n - 2 - tq)) & 1) idx |= std::size_t{1} << (n - 1 - j);
        ++tq;
    }
    return idx;
}

// Amplitudes as a 2 x d matrix across the A|rest split (row = A basis).
std::vector<cplx> bipartite_matrix(const PureState& psi, std::size_t a_qubit) {
    const std::size_t n = psi.n_qubits();
    const std::size_t db = psi.dim() / 2;
    std::vector<cplx> m(2 * db);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < db; ++t)
            m[s * db + t] = psi[unpermuted_index(n, a_qubit, s, t)];
    return m;
}

ComplexMatrix permuted_density(const DensityMatrix& rho, std::size_t a_qubit) {
    const std::size_t n = rho.n_qubits();
    const std::size_t d = rho.dim();
    const std::size_t db = d / 2;
    std::vector<std::size_t> old_index(d);
    for (std::size_t k = 0; k < d; ++k)
        old_index[k] = unpermuted_index(n, a_qubit, k / db, k % db);
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out(i, j) = rho.matrix()(old_index[i], old_index[j]);
    return out;
}

struct SearchOutcome {
    std::vector<double> params;
    double value = 0.0;
    bool converged = false;
};

// Greedy pattern search: sweep coordinates with +/- step probes, halve
// the step when a full sweep brings no improvement, stop when the step
// falls below the tolerance.
SearchOutcome coordinate_maximize(const std::function<double(const std::vector<double>&)>& f,
                                  std::vector<double> params, const OptimizerConfig& config) {
    double best = f(params);
    double step = kInitialStep;
    bool converged = false;
    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        bool improved = false;
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double original = params[i];
            for (double dir : {step, -step}) {
                params[i] = original + dir;
                const double val = f(params);
                if (val > best) {
                    best = val;
                    improved = true;
                    break;
                }
                params[i] = original;
            }
        }
        if (!improved) {
            step *= 0.5;
            if (step < config.step_tolerance) {
                converged = true;
                break;
            }
        }
    }
    return {std::move(params), best, converged};
}

void validate_part(const Bipartition& part, std::size_t n) {
    if (part.a_qubit >= n) throw std::invalid_argument("bipartition: a_qubit out of range");
    if (n < 2) throw std::invalid_argument("bipartition: rest side is empty");
}

}  // namespace

void OptimizerConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("optimizer: restarts must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("optimizer: max_iterations must be >= 1");
    if (!(step_tolerance > 0.0))
        throw std::invalid_argument("optimizer: step_tolerance must be > 0");
}

ComplexMatrix SeparableEnsemble::to_density(std::size_t dim_b) const {
    ComplexMatrix sigma(2 * dim_b);
    for (std::size_t i = 0; i < terms(); ++i)
        outer_accumulate(sigma, weights[i], a_factors[i], b_factors[i]);
    return sigma;
}

OracleResult max_product_fidelity_pure(const PureState& psi, const Bipartition& part,
                                       const OptimizerConfig& config) {
    config.validate();
    validate_part(part, psi.n_qubits());
    const std::size_t db = psi.dim() / 2;
    const std::vector<cplx> m = bipartite_matrix(psi, part.a_qubit);

    OracleResult result;
    result.value = -1.0;
    std::size_t converged_count = 0;

    for (std::size_t r = 0; r < config.restarts; ++r) {
        CounterRng rng = CounterRng::stream(config.seed, r);
        std::vector<cplx> a(2);
        double norm2 = 0.0;
        for (cplx& e : a) {
            e = rng.complex_gaussian();
            norm2 += std::norm(e);
        }
        for (cplx& e : a) e /= std::sqrt(norm2);

        std::vector<cplx> b(db);
        double value = 0.0;
        bool converged = false;
        for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
            // optimal |b> for fixed |a> is the normalized contraction <a|psi>
            double bn = 0.0;
            for (std::size_t t = 0; t < db; ++t) {
                b[t] = std::conj(a[0]) * m[t] + std::conj(a[1]) * m[db + t];
                bn += std::norm(b[t]);
            }
            bn = std::sqrt(bn);
            if (bn == 0.0) break;
            for (cplx& e : b) e /= bn;
            // and symmetrically for |a>
            std::vector<cplx> a_next(2, cplx{0.0, 0.0});
            for (std::size_t t = 0; t < db; ++t) {
                a_next[0] += m[t] * std::conj(b[t]);
                a_next[1] += m[db + t] * std::conj(b[t]);
            }
            const double an = std::sqrt(std::norm(a_next[0]) + std::norm(a_next[1]));
            if (an == 0.0) break;
            for (cplx& e : a_next) e /= an;

            // compare up to global phase
            cplx overlap = std::conj(a[0]) * a_next[0] + std::conj(a[1]) * a_next[1];
            const double drift = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(overlap)));
            a = std::move(a_next);
            value = an * an;  // ||<a|psi>||^2 at the current iterate
            if (drift < config.step_tolerance) {
                converged = true;
                break;
            }
        }
        if (converged) ++converged_count;
        if (value > result.value) {
            result.value = value;
            result.certificate = SeparableEnsemble{{1.0}, {a}, {b}};
        }
    }
    result.value = std::clamp(result.value, 0.0, 1.0);
    result.converged_fraction =
        static_cast<double>(converged_count) / static_cast<double>(config.restarts);
    return result;
}

OracleResult max_separable_fidelity_mixed(const DensityMatrix& rho, const Bipartition& part,
                                          std::size_t m, const OptimizerConfig& config) {
    config.validate();
    validate_part(part, rho.n_qubits());
    if (m < 1) throw std::invalid_argument("max_separable_fidelity_mixed: m must be >= 1");

    const std::size_t db = rho.dim() / 2;
    const ComplexMatrix sqrt_rho = sqrtm_psd(permuted_density(rho, part.a_qubit));

    // parameter layout per term: [raw weight][2 A angles][2(db-1) B params]
    const std::size_t per_a = 2;
    const std::size_t per_b = 2 * (db - 1);
    const std::size_t per_term = 1 + per_a + per_b;

    auto decode = [&](const std::vector<double>& p) {
        SeparableEnsemble ens;
        ens.weights.resize(m);
        double wsum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double* base = p.data() + i * per_term;
            ens.weights[i] = base[0] * base[0];
            wsum += ens.weights[i];
            ens.a_factors.push_back(unit_vector(base + 1, 2));
            ens.b_factors.push_back(unit_vector(base + 1 + per_a, db));
        }
        if (wsum <= 0.0) wsum = 1.0;
        for (double& w : ens.weights) w /= wsum;
        return ens;
    };
    auto objective = [&](const std::vector<double>& p) {
        return fidelity_with_sqrt(sqrt_rho, decode(p).to_density(db));
    };

    OracleResult result;
    result.value = -1.0;
    std::size_t converged_count = 0;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        CounterRng rng = CounterRng::stream(config.seed, r);
        std::vector<double> p(m * per_term);
        for (std::size_t i = 0; i < m; ++i) {
            double* base = p.data() + i * per_term;
            base[0] = rng.uniform(0.3, 1.0);
            for (std::size_t k = 0; k < per_a + per_b; ++k)
                base[1 + k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        const SearchOutcome out = coordinate_maximize(objective, std::move(p), config);
        if (out.converged) ++converged_count;
        if (out.value > result.value) {
            result.value = out.value;
            result.best_parameters = out.params;
            result.certificate = decode(out.params);
        }
    }
    result.converged_fraction =
        static_cast<double>(converged_count) / static_cast<double>(config.restarts);
    return result;
}

OracleResult convex_roof_concurrence_upper(const DensityMatrix& rho, const Bipartition& part,
                                           std::size_t m, const OptimizerConfig& config) {
    config.validate();
    validate_part(part, rho.n_qubits());

    const std::size_t d = rho.dim();
    const std::size_t db = d / 2;
    const HermitianEigen eig = eigh(permuted_density(rho, part.a_qubit));

    // scaled eigenvectors sqrt(lambda_k) |e_k> spanning the support
    std::vector<std::vector<cplx>> support;
    for (std::size_t k = 0; k < d; ++k) {
        const double lam = eig.eigenvalues[d - 1 - k];
        if (lam <= kRankTol) break;
        std::vector<cplx> col(d);
        const double root = std::sqrt(lam);
        for (std::size_t i = 0; i < d; ++i) col[i] = root * eig.eigenvectors(i, d - 1 - k);
        support.push_back(std::move(col));
    }
    const std::size_t rank = support.size();
    if (m < rank)
        throw std::invalid_argument("convex_roof_concurrence_upper: m must be >= rank(rho)");

    // m x rank isometry from Givens rotations with phases plus column
    // phases (Schrodinger-HJW mixing; covers every m-term decomposition)
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    const std::size_t n_params = 2 * pairs.size() + rank;

    auto mixing = [&](const std::vector<double>& p) {
        std::vector<cplx> u(m * m, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < m; ++i) u[i * m + i] = 1.0;
        for (std::size_t g = 0; g < pairs.size(); ++g) {
            const auto [a, b] = pairs[g];
            const double c = std::cos(p[2 * g]);
            const double s = std::sin(p[2 * g]);
            const cplx ph{std::cos(p[2 * g + 1]), std::sin(p[2 * g + 1])};
            for (std::size_t j = 0; j < m; ++j) {
                const cplx ua = u[a * m + j];
                const cplx ub = u[b * m + j];
                u[a * m + j] = c * ua + s * ph * ub;
                u[b * m + j] = -s * std::conj(ph) * ua + c * ub;
            }
        }
        for (std::size_t k = 0; k < rank; ++k) {
            const double phi = p[2 * pairs.size() + k];
            const cplx ph{std::cos(phi), std::sin(phi)};
            for (std::size_t j = 0; j < m; ++j) u[j * m + k] *= ph;
        }
        return u;
    };

    // average concurrence sum_j p_j C(psi_j) = sum_j 2 sqrt(det of the
    // subnormalized A-reduction of v_j)
    std::vector<cplx> v(d);
    auto objective = [&](const std::vector<double>& p) {
        const std::vector<cplx> u = mixing(p);
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            std::fill(v.begin(), v.end(), cplx{0.0, 0.0});
            for (std::size_t k = 0; k < rank; ++k) {
                const cplx w = u[j * m + k];
                if (w == cplx{0.0, 0.0}) continue;
                for (std::size_t i = 0; i < d; ++i) v[i] += w * support[k][i];
            }
            double r00 = 0.0, r11 = 0.0;
            cplx r01{0.0, 0.0};
            for (std::size_t t = 0; t < db; ++t) {
                r00 += std::norm(v[t]);
                r11 += std::norm(v[db + t]);
                r01 += v[t] * std::conj(v[db + t]);
            }
            // p_j C(psi_j) with the norm factors cancelling
            total += 2.0 * std::sqrt(std::max(0.0, r00 * r11 - std::norm(r01)));
        }
        return total;
    };

    OracleResult result;
    result.value = 2.0;  // above any attainable average concurrence
    std::size_t converged_count = 0;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        CounterRng rng = CounterRng::stream(config.seed, r);
        std::vector<double> p(n_params);
        for (double& x : p) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const SearchOutcome out = coordinate_maximize(
            [&](const std::vector<double>& q) { return -objective(q); }, std::move(p), config);
        if (out.converged) ++converged_count;
        if (-out.value < result.value) {
            result.value = -out.value;
            result.best_parameters = out.params;
        }
    }
    result.converged_fraction =
        static_cast<double>(converged_count) / static_cast<double>(config.restarts);
    return result;
}

}  // namespace emt
