// Monogamy inequality checkers and randomized verification campaigns.
//
// Every checker returns residual = lhs - sum(rhs_terms); the inequality
// under test holds when the residual is nonnegative up to round-off.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emt/measures.hpp"
#include "emt/states.hpp"

namespace emt {

struct MonogamyReport {
    MeasureKind measure = MeasureKind::bures;
    double alpha = 1.0;
    double lhs = 0.0;
    std::vector<double> rhs_terms;  // one per B_i
    double residual = 0.0;
    std::string state_id;
};

enum class StateClass { haar_pure, ginibre, named };

struct CampaignConfig {
    std::size_t n_samples = 100;
    std::size_t n_qubits = 3;
    std::vector<double> alphas = {1.0, 1.5, 2.0, 3.0};
    std::vector<MeasureKind> measures = {MeasureKind::bures, MeasureKind::geometric};
    StateClass state_class = StateClass::haar_pure;
    std::size_t ginibre_rank = 2;     // for StateClass::ginibre
    std::string named_family;         // for StateClass::named
    std::uint64_t seed = 0;
    std::size_t a_qubit = 0;
    bool sweep_a_qubit = false;       // run every choice of A per sample
    std::size_t max_qubits = kDefaultMaxQubits;

    void validate() const;
};

struct CampaignSummary {
    std::size_t total_checks = 0;
    std::size_t violations = 0;  // residual < -1e-9
    double min_residual = 0.0;
    double residual_quantiles[3] = {0.0, 0.0, 0.0};  // 5%, 50%, 95%
    double runtime_seconds = 0.0;
};

inline constexpr double kViolationThreshold = -1e-9;

// F^alpha(sqrt(x^2+y^2)) - F^alpha(x) - F^alpha(y), F = B or G.
// Requires x, y >= 0 and x^2 + y^2 <= 1.
double check_scalar_lemma(double x, double y, const Alpha& alpha, MeasureKind kind);

// C^2 across A|rest minus the pairwise two-qubit C^2 sum.
double check_ckw_pure(const PureState& psi, std::size_t a_qubit);

// alpha-power monogamy of the fidelity-based measure on a pure state:
// lhs = E^alpha(A|rest), rhs terms E^alpha(rho_{A B_i}).
MonogamyReport check_theorem_pure(const PureState& psi, std::size_t a_qubit, const Alpha& alpha,
                                  MeasureKind kind);

// Computable tail of the mixed-state proof chain:
// lhs = F^alpha(sqrt(sum_i C^2(rho_{A B_i}))), rhs terms F^alpha(C(rho_{A B_i})).
MonogamyReport check_chain_mixed(const DensityMatrix& rho, std::size_t a_qubit,
                                 const Alpha& alpha, MeasureKind kind);

struct CampaignOutput {
    CampaignSummary summary;
    std::vector<MonogamyReport> reports;  // ordered by (sample, a, alpha, measure)
};

CampaignOutput run_campaign(const CampaignConfig& config);

}  // namespace emt
