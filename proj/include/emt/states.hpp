// Multiqubit pure states and density matrices.
//
// Qubit indexing convention: qubit 0 is the leftmost (most significant)
// tensor factor, so basis index i addresses qubit k through bit
// (i >> (n - 1 - k)) & 1.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "emt/complex_matrix.hpp"

namespace emt {

inline constexpr std::size_t kDefaultMaxQubits = 10;

class PureState {
public:
    PureState(std::size_t n_qubits, std::vector<cplx> amplitudes);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }
    const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

private:
    std::size_t n_qubits_;
    std::vector<cplx> amplitudes_;
};

class DensityMatrix {
public:
    DensityMatrix(std::size_t n_qubits, ComplexMatrix matrix);
    explicit DensityMatrix(const PureState& psi);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return matrix_.dim(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    std::size_t n_qubits_;
    ComplexMatrix matrix_;
};

// The A|rest split used by all measures: A is a single qubit.
struct Bipartition {
    std::size_t a_qubit = 0;

    static Bipartition of_qubit(std::size_t a) { return Bipartition{a}; }
};

// Trace out all qubits not in `keep`; `keep` must be a nonempty, sorted
// set of distinct in-range indices.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

// 2x2 reduced density matrix of a single qubit of a pure state, built
// directly from the amplitudes.
ComplexMatrix reduced_qubit(const PureState& psi, std::size_t qubit);

using State = std::variant<PureState, DensityMatrix>;

PureState ghz_state(std::size_t n_qubits);
PureState w_state(std::size_t n_qubits);
PureState bell_state();  // |Phi+>
DensityMatrix werner_state(double p);
PureState product_state(const std::vector<std::vector<cplx>>& single_qubit_factors);

// Parses a family spec like "ghz:3", "w:4", "bell", "werner:0.5".
State named_state(const std::string& family_spec);

}  // namespace emt
