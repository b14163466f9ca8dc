// Closed-form entanglement measures for the qubit-A bipartitions:
// concurrence, fidelity of separability, and the Bures / geometric
// measures expressed through B(x) and G(x).

#pragma once

#include "emt/states.hpp"

namespace emt {

enum class MeasureKind { bures, geometric };

// Exponent alpha >= 1 for the power inequalities.
struct Alpha {
    double value;
    explicit Alpha(double v);
};

// Concurrence value, clamped into [0, 1].
struct Concurrence {
    double value;
    explicit Concurrence(double v);
};

// B(x) = 2 - 2 sqrt((1 + sqrt(1 - x^2)) / 2), increasing on [0, 1],
// range [0, 2 - sqrt(2)].
double b_func(double x);

// G(x) = (1 - sqrt(1 - x^2)) / 2, increasing on [0, 1], range [0, 1/2].
double g_func(double x);

double measure_func(double x, MeasureKind kind);

// C = 2 sqrt(lambda1 lambda2) over the reduced-state eigenvalues of
// qubit A.
Concurrence concurrence_pure(const PureState& psi, const Bipartition& part);

// Two-qubit mixed-state concurrence via the spin-flip spectrum:
// C = max(0, mu1 - mu2 - mu3 - mu4), mu_i the decreasing square roots of
// the eigenvalues of sqrt(rho) rho~ sqrt(rho).
Concurrence concurrence_wootters(const DensityMatrix& rho);

// Fidelity of separability of a pure state across A|rest: the largest
// reduced-state eigenvalue of qubit A. Always in [1/2, 1].
double fs_pure(const PureState& psi, const Bipartition& part);

// Upper bound (1 + sqrt(1 - C^2)) / 2 on the fidelity of separability;
// tight for pure states.
double fs_upper_bound(const Concurrence& c);

double entanglement_two_qubit(const DensityMatrix& rho, MeasureKind kind);

double entanglement_pure_bipartition(const PureState& psi, const Bipartition& part,
                                     MeasureKind kind);

}  // namespace emt
