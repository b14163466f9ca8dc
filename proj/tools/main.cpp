// monogamy-tool: entanglement measures, variational oracles and monogamy
// inequality verification for multiqubit states.
//
// Exit codes: 0 success / no violations, 1 violation found,
//             2 input or config error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emt/linalg.hpp"
#include "emt/measures.hpp"
#include "emt/monogamy.hpp"
#include "emt/report_io.hpp"
#include "emt/rng.hpp"
#include "emt/state_io.hpp"
#include "emt/variational.hpp"

namespace {

using emt::Alpha;
using emt::Bipartition;
using emt::DensityMatrix;
using emt::MeasureKind;
using emt::PureState;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

std::size_t max_qubits_cap() {
    if (const char* env = std::getenv("MONOGAMY_MAX_QUBITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::invalid_argument("MONOGAMY_MAX_QUBITS must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return emt::kDefaultMaxQubits;
}

void check_cap(std::size_t n_qubits) {
    if (n_qubits > max_qubits_cap())
        throw std::invalid_argument("state exceeds the qubit cap (set MONOGAMY_MAX_QUBITS)");
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int cmd_measure(const std::string& state_spec, std::size_t a_qubit, const std::string& kind_name,
                double alpha_value) {
    const MeasureKind kind = emt::measure_from_name(kind_name);
    const Alpha alpha(alpha_value);
    const emt::State state = emt::load_state(state_spec);

    json out;
    out["measure"] = kind_name;
    out["alpha"] = alpha.value;
    if (const auto* psi = std::get_if<PureState>(&state)) {
        check_cap(psi->n_qubits());
        if (a_qubit >= psi->n_qubits())
            throw std::invalid_argument("--a-qubit out of range for this state");
        out["mode"] = "pure";
        const double c = emt::concurrence_pure(*psi, Bipartition{a_qubit}).value;
        out["concurrence"] = c;
        out["lhs"] = std::pow(emt::entanglement_pure_bipartition(*psi, Bipartition{a_qubit}, kind),
                              alpha.value);
        if (psi->n_qubits() >= 3) {
            const emt::MonogamyReport rep = emt::check_theorem_pure(*psi, a_qubit, alpha, kind);
            out["rhs_terms"] = rep.rhs_terms;
            out["residual"] = rep.residual;
            std::vector<double> pair_c;
            const DensityMatrix rho(*psi);
            for (std::size_t b = 0; b < psi->n_qubits(); ++b) {
                if (b == a_qubit) continue;
                std::vector<std::size_t> keep{std::min(a_qubit, b), std::max(a_qubit, b)};
                pair_c.push_back(
                    emt::concurrence_wootters(emt::partial_trace(rho, keep)).value);
            }
            out["pair_concurrences"] = pair_c;
        }
    } else {
        const auto& rho = std::get<DensityMatrix>(state);
        check_cap(rho.n_qubits());
        if (a_qubit >= rho.n_qubits())
            throw std::invalid_argument("--a-qubit out of range for this state");
        if (rho.n_qubits() == 2) {
            out["mode"] = "two_qubit";
            const double c = emt::concurrence_wootters(rho).value;
            out["concurrence"] = c;
            out["lhs"] = std::pow(emt::entanglement_two_qubit(rho, kind), alpha.value);
        } else {
            // no exact mixed-state measure beyond two qubits; report the
            // computable chain quantities instead
            out["mode"] = "chain";
            const emt::MonogamyReport rep = emt::check_chain_mixed(rho, a_qubit, alpha, kind);
            out["lhs"] = rep.lhs;
            out["rhs_terms"] = rep.rhs_terms;
            out["residual"] = rep.residual;
            std::vector<double> pair_c;
            for (std::size_t b = 0; b < rho.n_qubits(); ++b) {
                if (b == a_qubit) continue;
                std::vector<std::size_t> keep{std::min(a_qubit, b), std::max(a_qubit, b)};
                pair_c.push_back(
                    emt::concurrence_wootters(emt::partial_trace(rho, keep)).value);
            }
            out["pair_concurrences"] = pair_c;
        }
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_verify(const emt::CampaignConfig& config, const std::string& report_path) {
    const emt::CampaignOutput out = emt::run_campaign(config);
    if (!report_path.empty()) {
        std::ofstream rf(report_path);
        if (!rf) throw std::invalid_argument("cannot open report file '" + report_path + "'");
        emt::write_reports_jsonl(rf, out.reports);
    }
    std::cout << emt::summary_to_json(out.summary) << "\n";
    return out.summary.violations == 0 ? kExitOk : kExitViolation;
}

int cmd_oracle(const std::string& state_spec, const std::string& mode, std::size_t a_qubit,
               std::size_t m, const emt::OptimizerConfig& opt) {
    const emt::State state = emt::load_state(state_spec);

    json out;
    out["mode"] = mode;
    emt::OracleResult res;
    std::optional<double> closed_form;

    if (mode == "product-pure") {
        const auto* psi = std::get_if<PureState>(&state);
        if (!psi) throw std::invalid_argument("product-pure mode needs a pure state");
        check_cap(psi->n_qubits());
        res = emt::max_product_fidelity_pure(*psi, Bipartition{a_qubit}, opt);
        closed_form = emt::fs_pure(*psi, Bipartition{a_qubit});
    } else if (mode == "separable-mixed") {
        DensityMatrix rho = std::holds_alternative<PureState>(state)
                                ? DensityMatrix(std::get<PureState>(state))
                                : std::get<DensityMatrix>(state);
        check_cap(rho.n_qubits());
        if (m == 0) m = rho.dim() * rho.dim() / 4;  // d^2 for the 2 (x) d split
        res = emt::max_separable_fidelity_mixed(rho, Bipartition{a_qubit}, m, opt);
        if (rho.n_qubits() == 2)
            closed_form = emt::fs_upper_bound(emt::concurrence_wootters(rho));
        else if (const auto* psi = std::get_if<PureState>(&state))
            closed_form = emt::fs_pure(*psi, Bipartition{a_qubit});
    } else if (mode == "convex-roof") {
        DensityMatrix rho = std::holds_alternative<PureState>(state)
                                ? DensityMatrix(std::get<PureState>(state))
                                : std::get<DensityMatrix>(state);
        check_cap(rho.n_qubits());
        if (m == 0) m = rho.dim();
        res = emt::convex_roof_concurrence_upper(rho, Bipartition{a_qubit}, m, opt);
        if (rho.n_qubits() == 2)
            closed_form = emt::concurrence_wootters(rho).value;
        else if (const auto* psi = std::get_if<PureState>(&state))
            closed_form = emt::concurrence_pure(*psi, Bipartition{a_qubit}).value;
    } else {
        throw std::invalid_argument("unknown oracle mode '" + mode + "'");
    }

    out["value"] = res.value;
    out["converged_fraction"] = res.converged_fraction;
    out["m"] = m;
    out["restarts"] = opt.restarts;
    if (closed_form) {
        out["closed_form"] = *closed_form;
        out["gap"] = std::abs(res.value - *closed_form);
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_scalar_sweep(double step, const std::vector<double>& alphas,
                     const std::string& kind_name) {
    if (!(step > 0.0) || step > 0.5)
        throw std::invalid_argument("--step must be in (0, 0.5]");
    const MeasureKind kind = emt::measure_from_name(kind_name);
    bool violation = false;
    std::cout << "x,y,alpha,residual\n";
    const auto n_steps = static_cast<std::size_t>(1.0 / step + 1e-9);
    for (std::size_t i = 0; i <= n_steps; ++i)
        for (std::size_t j = 0; j <= n_steps; ++j) {
            const double x = static_cast<double>(i) * step;
            const double y = static_cast<double>(j) * step;
            if (x * x + y * y > 1.0 + 1e-12) continue;
            for (double a : alphas) {
                const double r = emt::check_scalar_lemma(x, y, Alpha(a), kind);
                if (r < -1e-12) violation = true;
                std::cout << fmt17(x) << "," << fmt17(y) << "," << fmt17(a) << "," << fmt17(r)
                          << "\n";
            }
        }
    return violation ? kExitViolation : kExitOk;
}

int cmd_report(const std::string& jsonl_path) {
    std::ifstream in(jsonl_path);
    if (!in) throw std::invalid_argument("cannot open '" + jsonl_path + "'");

    struct Bucket {
        std::size_t count = 0;
        std::size_t violations = 0;
        double min_residual = 1e300;
    };
    std::map<std::pair<std::string, double>, Bucket> table;
    std::vector<double> residuals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        emt::MonogamyReport rep;
        try {
            rep = emt::report_from_json(line);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
        Bucket& b = table[{emt::measure_name(rep.measure), rep.alpha}];
        ++b.count;
        if (rep.residual < emt::kViolationThreshold) ++b.violations;
        b.min_residual = std::min(b.min_residual, rep.residual);
        residuals.push_back(rep.residual);
    }
    if (residuals.empty()) {
        std::cout << "no records\n";
        return kExitOk;
    }

    std::cout << "measure    alpha   checks  violations  min_residual\n";
    bool any_violation = false;
    for (const auto& [key, b] : table) {
        any_violation = any_violation || b.violations > 0;
        std::printf("%-10s %-7g %-7zu %-11zu %.6e%s\n", key.first.c_str(), key.second, b.count,
                    b.violations, b.min_residual, b.violations > 0 ? "  <-- VIOLATION" : "");
    }

    const auto [mn_it, mx_it] = std::minmax_element(residuals.begin(), residuals.end());
    const double mn = *mn_it, mx = *mx_it;
    const int n_bins = 10;
    std::vector<std::size_t> bins(n_bins, 0);
    const double width = (mx > mn) ? (mx - mn) / n_bins : 1.0;
    for (double r : residuals) {
        int k = static_cast<int>((r - mn) / width);
        bins[std::clamp(k, 0, n_bins - 1)]++;
    }
    const std::size_t peak = *std::max_element(bins.begin(), bins.end());
    std::cout << "\nresidual histogram\n";
    for (int k = 0; k < n_bins; ++k) {
        const double lo = mn + k * width;
        const int bar = peak ? static_cast<int>(40.0 * static_cast<double>(bins[k]) /
                                                static_cast<double>(peak))
                             : 0;
        std::printf("[%+.3e, %+.3e) %6zu %s\n", lo, lo + width, bins[k],
                    std::string(static_cast<std::size_t>(bar), '#').c_str());
    }
    return any_violation ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fidelity-based entanglement measures and monogamy verification for "
                 "multiqubit states"};
    app.require_subcommand(1);

    // measure
    auto* measure = app.add_subcommand("measure", "evaluate measures of a state");
    std::string m_state, m_kind = "bures";
    std::size_t m_a = 0;
    double m_alpha = 1.0;
    measure->add_option("--state", m_state, "state file or family (ghz:3, w:3, bell, werner:0.5)")
        ->required();
    measure->add_option("--a-qubit", m_a, "index of qubit A");
    measure->add_option("--measure", m_kind, "bures or geometric");
    measure->add_option("--alpha", m_alpha, "power exponent, >= 1");

    // verify
    auto* verify = app.add_subcommand("verify", "run a monogamy verification campaign");
    emt::CampaignConfig vc;
    std::string v_class = "haar_pure";
    std::string v_report;
    verify->add_option("--n", vc.n_qubits, "number of qubits (>= 3)");
    verify->add_option("--samples", vc.n_samples, "number of sampled states");
    verify->add_option("--seed", vc.seed, "campaign seed");
    verify->add_option("--alpha", vc.alphas, "alpha grid (each >= 1)");
    std::vector<std::string> v_measures;
    verify->add_option("--measure", v_measures, "bures and/or geometric");
    verify->add_option("--class", v_class, "haar_pure, ginibre or named");
    verify->add_option("--rank", vc.ginibre_rank, "rank for the ginibre class");
    verify->add_option("--family", vc.named_family, "family for the named class");
    verify->add_option("--a-qubit", vc.a_qubit, "index of qubit A");
    verify->add_flag("--sweep-a", vc.sweep_a_qubit, "check every choice of qubit A");
    verify->add_option("--report-file", v_report, "write per-check reports (JSON lines)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "run a variational oracle");
    std::string o_state, o_mode = "product-pure";
    std::size_t o_a = 0, o_m = 0;
    emt::OptimizerConfig oc;
    oracle->add_option("--state", o_state, "state file or family")->required();
    oracle->add_option("--mode", o_mode, "product-pure, separable-mixed or convex-roof");
    oracle->add_option("--a-qubit", o_a, "index of qubit A");
    oracle->add_option("--m", o_m, "ensemble / decomposition size (0 = default)");
    oracle->add_option("--restarts", oc.restarts, "multi-start count");
    oracle->add_option("--max-iterations", oc.max_iterations, "iteration cap per restart");
    oracle->add_option("--step-tolerance", oc.step_tolerance, "convergence step tolerance");
    oracle->add_option("--seed", oc.seed, "optimizer seed");

    // scalar-sweep
    auto* sweep = app.add_subcommand("scalar-sweep", "grid-check the scalar power inequalities");
    double s_step = 0.05;
    std::vector<double> s_alphas = {1.0, 1.5, 2.0, 5.0};
    std::string s_kind = "bures";
    sweep->add_option("--step", s_step, "grid step in (0, 0.5]");
    sweep->add_option("--alpha", s_alphas, "alpha grid");
    sweep->add_option("--kind", s_kind, "bures or geometric");

    // report
    auto* report = app.add_subcommand("report", "summarize a JSONL report file");
    std::string r_path;
    report->add_option("path", r_path, "JSON-lines report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*measure) return cmd_measure(m_state, m_a, m_kind, m_alpha);
        if (*verify) {
            vc.max_qubits = max_qubits_cap();
            if (!v_measures.empty()) {
                vc.measures.clear();
                for (const std::string& name : v_measures)
                    vc.measures.push_back(emt::measure_from_name(name));
            }
            return cmd_verify(vc, v_report);
        }
        if (*oracle) return cmd_oracle(o_state, o_mode, o_a, o_m, oc);
        if (*sweep) return cmd_scalar_sweep(s_step, s_alphas, s_kind);
        if (*report) return cmd_report(r_path);
    } catch (const emt::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}
