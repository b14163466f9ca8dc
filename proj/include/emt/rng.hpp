// Counter-based seeded RNG and random state ensembles.
//
// Per-sample streams derive from hash(seed, index) so sampled states are
// identical regardless of execution order or worker count.

#pragma once

#include <cstdint>

#include "emt/states.hpp"

namespace emt {

// splitmix64 step; also the stream-derivation hash.
std::uint64_t mix64(std::uint64_t x);

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : state_(mix64(seed ^ 0x9e3779b97f4a7c15ULL)) {}

    // Sub-stream for sample `index`, independent of draw order elsewhere.
    static CounterRng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    double uniform();            // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();           // standard normal, Box-Muller
    cplx complex_gaussian();     // independent N(0,1) real and imaginary parts

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed,
                           std::size_t max_qubits = kDefaultMaxQubits);

DensityMatrix ginibre_random_mixed(std::size_t n_qubits, std::size_t rank, std::uint64_t seed,
                                   std::size_t max_qubits = kDefaultMaxQubits);

}  // namespace emt
