// Variational oracles that cross-check the closed forms from the other
// side: separable-fidelity maximization (a certified lower bound on F_s)
// and convex-roof concurrence minimization (an upper bound on C).

#pragma once

#include <cstdint>
#include <vector>

#include "emt/states.hpp"

namespace emt {

struct OptimizerConfig {
    std::size_t restarts = 16;
    std::size_t max_iterations = 2000;
    double step_tolerance = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

// Weighted mixture of product pure states sigma = sum_i p_i |a_i><a_i| (x) |b_i><b_i|
// across the 2 (x) d split given by a Bipartition.
struct SeparableEnsemble {
    std::vector<double> weights;                  // >= 0, sum 1
    std::vector<std::vector<cplx>> a_factors;     // unit vectors, dim 2
    std::vector<std::vector<cplx>> b_factors;     // unit vectors, dim d

    std::size_t terms() const { return weights.size(); }
    // density matrix in the (A, rest) qubit ordering of the bipartition
    ComplexMatrix to_density(std::size_t dim_b) const;
};

struct OracleResult {
    double value = 0.0;
    SeparableEnsemble certificate;        // best ensemble (fidelity oracles)
    std::vector<double> best_parameters;  // raw parameter vector of the best restart
    double converged_fraction = 0.0;      // restarts that met the step tolerance
};

// Best found max of |<psi|a (x) b>|^2 over product pure states, by
// alternating closest-factor updates with multi-start. Lower-bounds
// fs_pure(psi, part) up to round-off.
OracleResult max_product_fidelity_pure(const PureState& psi, const Bipartition& part,
                                       const OptimizerConfig& config);

// Best found F(rho, sigma) over m-term separable ensembles, by
// gradient-free coordinate search with multi-start. Lower-bounds F_s(rho).
OracleResult max_separable_fidelity_mixed(const DensityMatrix& rho, const Bipartition& part,
                                          std::size_t m, const OptimizerConfig& config);

// Best found average pure-state concurrence over m-term decompositions of
// rho, parametrized by isometric mixings of the eigendecomposition.
// Upper-bounds the convex-roof concurrence.
OracleResult convex_roof_concurrence_upper(const DensityMatrix& rho, const Bipartition& part,
                                           std::size_t m, const OptimizerConfig& config);

}  // namespace emt
