#include "emt/monogamy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "emt/rng.hpp"

namespace emt {

namespace {

constexpr double kDomainTol = 1e-12;

void require_multipartite(std::size_t n) {
    if (n < 3) throw std::invalid_argument("monogamy check: needs at least 3 qubits");
}

void require_a_qubit(std::size_t a, std::size_t n) {
    if (a >= n) throw std::invalid_argument("monogamy check: a_qubit out of range");
}

std::vector<std::size_t> partners(std::size_t n, std::size_t a) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n; ++q)
        if (q != a) out.push_back(q);
    return out;
}

DensityMatrix pair_marginal(const DensityMatrix& rho, std::size_t a, std::size_t b) {
    std::vector<std::size_t> keep{std::min(a, b), std::max(a, b)};
    return partial_trace(rho, keep);
}

MonogamyReport assemble(MeasureKind kind, const Alpha& alpha, double lhs,
                        std::vector<double> rhs_terms, std::string state_id) {
    MonogamyReport rep;
    rep.measure = kind;
    rep.alpha = alpha.value;
    rep.lhs = lhs;
    rep.rhs_terms = std::move(rhs_terms);
    rep.residual = lhs;
    for (double t : rep.rhs_terms) rep.residual -= t;
    rep.state_id = std::move(state_id);
    return rep;
}

}  // namespace

double check_scalar_lemma(double x, double y, const Alpha& alpha, MeasureKind kind) {
    if (x < 0.0 || y < 0.0)
        throw std::domain_error("check_scalar_lemma: x, y must be nonnegative");
    const double ss = x * x + y * y;
    if (ss > 1.0 + kDomainTol)
        throw std::domain_error("check_scalar_lemma: x^2 + y^2 exceeds 1");
    const double z = std::sqrt(std::min(ss, 1.0));
    const double a = alpha.value;
    return std::pow(measure_func(z, kind), a) - std::pow(measure_func(x, kind), a) -
           std::pow(measure_func(y, kind), a);
}

double check_ckw_pure(const PureState& psi, std::size_t a_qubit) {
    require_multipartite(psi.n_qubits());
    require_a_qubit(a_qubit, psi.n_qubits());
    const double c_global = concurrence_pure(psi, Bipartition{a_qubit}).value;
    double residual = c_global * c_global;
    const DensityMatrix rho(psi);
    for (std::size_t b : partners(psi.n_qubits(), a_qubit)) {
        const double c = concurrence_wootters(pair_marginal(rho, a_qubit, b)).value;
        residual -= c * c;
    }
    return residual;
}

MonogamyReport check_theorem_pure(const PureState& psi, std::size_t a_qubit, const Alpha& alpha,
                                  MeasureKind kind) {
    require_multipartite(psi.n_qubits());
    require_a_qubit(a_qubit, psi.n_qubits());
    const double lhs =
        std::pow(entanglement_pure_bipartition(psi, Bipartition{a_qubit}, kind), alpha.value);
    const DensityMatrix rho(psi);
    std::vector<double> rhs;
    for (std::size_t b : partners(psi.n_qubits(), a_qubit))
        rhs.push_back(
            std::pow(entanglement_two_qubit(pair_marginal(rho, a_qubit, b), kind), alpha.value));
    return assemble(kind, alpha, lhs, std::move(rhs), "");
}

MonogamyReport check_chain_mixed(const DensityMatrix& rho, std::size_t a_qubit,
                                 const Alpha& alpha, MeasureKind kind) {
    require_multipartite(rho.n_qubits());
    require_a_qubit(a_qubit, rho.n_qubits());
    std::vector<double> pair_c;
    double c2_sum = 0.0;
    for (std::size_t b : partners(rho.n_qubits(), a_qubit)) {
        const double c = concurrence_wootters(pair_marginal(rho, a_qubit, b)).value;
        pair_c.push_back(c);
        c2_sum += c * c;
    }
    // sum_i C^2 <= 1 for qubit systems; trim accumulated round-off
    const double z = std::sqrt(std::min(c2_sum, 1.0));
    const double lhs = std::pow(measure_func(z, kind), alpha.value);
    std::vector<double> rhs;
    for (double c : pair_c) rhs.push_back(std::pow(measure_func(c, kind), alpha.value));
    return assemble(kind, alpha, lhs, std::move(rhs), "");
}

void CampaignConfig::validate() const {
    if (n_samples < 1) throw std::invalid_argument("campaign: n_samples must be >= 1");
    if (n_qubits < 3) throw std::invalid_argument("campaign: n_qubits must be >= 3");
    if (n_qubits > max_qubits) throw std::invalid_argument("campaign: n_qubits above size cap");
    if (alphas.empty()) throw std::invalid_argument("campaign: no alphas given");
    for (double a : alphas)
        if (!(a >= 1.0)) throw std::invalid_argument("campaign: alpha must be >= 1");
    if (measures.empty()) throw std::invalid_argument("campaign: no measures given");
    if (a_qubit >= n_qubits) throw std::invalid_argument("campaign: a_qubit out of range");
    if (state_class == StateClass::ginibre &&
        (ginibre_rank < 1 || ginibre_rank > (std::size_t{1} << n_qubits)))
        throw std::invalid_argument("campaign: ginibre rank out of range");
    if (state_class == StateClass::named && named_family.empty())
        throw std::invalid_argument("campaign: named class needs a family");
}

CampaignOutput run_campaign(const CampaignConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    CampaignOutput out;
    std::vector<double> residuals;

    for (std::size_t sample = 0; sample < config.n_samples; ++sample) {
        const std::uint64_t state_seed = mix64(config.seed) ^ mix64(sample + 1);

        std::optional<PureState> psi;
        std::optional<DensityMatrix> rho;
        std::string id;
        switch (config.state_class) {
            case StateClass::haar_pure:
                psi = haar_random_pure(config.n_qubits, state_seed, config.max_qubits);
                id = "haar:" + std::to_string(config.n_qubits) + ":" + std::to_string(sample);
                break;
            case StateClass::ginibre:
                rho = ginibre_random_mixed(config.n_qubits, config.ginibre_rank, state_seed,
                                           config.max_qubits);
                id = "ginibre:" + std::to_string(config.n_qubits) + ":r" +
                     std::to_string(config.ginibre_rank) + ":" + std::to_string(sample);
                break;
            case StateClass::named: {
                State s = named_state(config.named_family);
                if (auto* p = std::get_if<PureState>(&s))
                    psi = std::move(*p);
                else
                    rho = std::move(std::get<DensityMatrix>(s));
                id = config.named_family + ":" + std::to_string(sample);
                const std::size_t n = psi ? psi->n_qubits() : rho->n_qubits();
                if (n < 3)
                    throw std::invalid_argument("campaign: named family must have >= 3 qubits");
                break;
            }
        }

        std::vector<std::size_t> a_choices;
        if (config.sweep_a_qubit) {
            const std::size_t n = psi ? psi->n_qubits() : rho->n_qubits();
            for (std::size_t a = 0; a < n; ++a) a_choices.push_back(a);
        } else {
            a_choices.push_back(config.a_qubit);
        }

        for (std::size_t a : a_choices)
            for (double alpha : config.alphas)
                for (MeasureKind kind : config.measures) {
                    MonogamyReport rep =
                        psi ? check_theorem_pure(*psi, a, Alpha(alpha), kind)
                            : check_chain_mixed(*rho, a, Alpha(alpha), kind);
                    rep.state_id = id + (config.sweep_a_qubit ? ":a" + std::to_string(a) : "");
                    residuals.push_back(rep.residual);
                    out.reports.push_back(std::move(rep));
                }
    }

    CampaignSummary& sum = out.summary;
    sum.total_checks = residuals.size();
    sum.violations = static_cast<std::size_t>(
        std::count_if(residuals.begin(), residuals.end(),
                      [](double r) { return r < kViolationThreshold; }));
    std::sort(residuals.begin(), residuals.end());
    sum.min_residual = residuals.front();
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(residuals.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, residuals.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return residuals[lo] * (1.0 - frac) + residuals[hi] * frac;
    };
    sum.residual_quantiles[0] = quantile(0.05);
    sum.residual_quantiles[1] = quantile(0.50);
    sum.residual_quantiles[2] = quantile(0.95);
    sum.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace emt
