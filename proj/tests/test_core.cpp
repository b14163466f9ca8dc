#include <doctest.h>

#include <cmath>
#include <complex>

#include "emt/linalg.hpp"
#include "emt/rng.hpp"
#include "emt/state_io.hpp"
#include "emt/states.hpp"

#include <sstream>

using namespace emt;

namespace {

ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng) {
    ComplexMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < dim; ++j) {
            h(i, j) = rng.complex_gaussian();
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

}  // namespace

TEST_CASE("kron basics") {
    ComplexMatrix a(1), b(1);
    a(0, 0) = 2.0;
    b(0, 0) = 3.0;
    CHECK(kron(a, b)(0, 0).real() == doctest::Approx(6.0));

    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i4 = kron(i2, i2);
    CHECK(i4.dim() == 4);
    CHECK((i4 - ComplexMatrix::identity(4)).frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("kron matches the block index formula") {
    CounterRng rng(11);
    ComplexMatrix a(2), b(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.complex_gaussian();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b(i, j) = rng.complex_gaussian();
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.dim() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(std::abs(k(i, j) - a(i / 4, j / 4) * b(i % 4, j % 4)) < 1e-15);
}

TEST_CASE("kron rejects oversized results") {
    const ComplexMatrix big = ComplexMatrix::identity(64);
    CHECK_THROWS_AS(kron(big, ComplexMatrix::identity(32)), std::invalid_argument);
}

TEST_CASE("partial trace of Bell state is maximally mixed") {
    const DensityMatrix rho(bell_state());
    const DensityMatrix a = partial_trace(rho, {0});
    CHECK(a.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(a.matrix()(0, 1)) < 1e-12);
}

TEST_CASE("partial trace of a product state recovers each factor") {
    const PureState psi = product_state({{cplx{0.6, 0.0}, cplx{0.0, 0.8}}, {1.0, 0.0}, {0.6, 0.8}});
    const DensityMatrix rho(psi);
    const DensityMatrix a = partial_trace(rho, {0});
    CHECK(a.matrix()(0, 0).real() == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(a.matrix()(1, 1).real() == doctest::Approx(0.64).epsilon(1e-12));
    const DensityMatrix bc = partial_trace(rho, {1, 2});
    CHECK(bc.matrix()(0, 0).real() == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(bc.matrix()(1, 1).real() == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("partial trace of GHZ(3) over the first two qubits") {
    const DensityMatrix rho(ghz_state(3));
    const DensityMatrix ab = partial_trace(rho, {0, 1});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double expected = (i == j && (i == 0 || i == 3)) ? 0.5 : 0.0;
            CHECK(std::abs(ab.matrix()(i, j) - cplx{expected, 0.0}) < 1e-12);
        }
}

TEST_CASE("partial trace input validation") {
    const DensityMatrix rho(ghz_state(3));
    CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, {3}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, {1, 1}), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace and positivity on random states") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = ginibre_random_mixed(3, 4, 1000 + s);
        const DensityMatrix ab = partial_trace(rho, {0, 2});
        CHECK(std::abs(ab.matrix().trace() - cplx{1.0, 0.0}) < 1e-12);
        const HermitianEigen eig = eigh(ab.matrix());
        for (double lam : eig.eigenvalues) CHECK(lam > -1e-10);
    }
}

TEST_CASE("eigh on Pauli matrices") {
    const HermitianEigen id = eigh(ComplexMatrix::identity(2));
    CHECK(id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix sz(2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const HermitianEigen ez = eigh(sz);
    CHECK(ez.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ez.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix sx(2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    const HermitianEigen ex = eigh(sx);
    CHECK(ex.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ex.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    // eigenvectors are (|0> -+ |1>)/sqrt(2) up to phase
    for (std::size_t c = 0; c < 2; ++c)
        CHECK(std::abs(std::abs(ex.eigenvectors(0, c)) - 1.0 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("eigh reconstruction and orthonormality on random matrices") {
    CounterRng rng(42);
    for (std::size_t dim : {2, 5, 16, 32}) {
        const ComplexMatrix h = random_hermitian(dim, rng);
        const HermitianEigen eig = eigh(h);
        REQUIRE(eig.eigenvalues.size() == dim);
        CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));

        ComplexMatrix recon(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                cplx s{0.0, 0.0};
                for (std::size_t k = 0; k < dim; ++k)
                    s += eig.eigenvalues[k] * eig.eigenvectors(i, k) *
                         std::conj(eig.eigenvectors(j, k));
                recon(i, j) = s;
            }
        CHECK((recon - h).frobenius_norm() <= 1e-10 * std::max(1.0, h.frobenius_norm()));
        const ComplexMatrix vtv = eig.eigenvectors.adjoint() * eig.eigenvectors;
        CHECK((vtv - ComplexMatrix::identity(dim)).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("eigh rejects non-Hermitian input") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(eigh(m), std::invalid_argument);
}

TEST_CASE("sqrtm_psd basics") {
    const ComplexMatrix r = sqrtm_psd(ComplexMatrix::identity(3));
    CHECK((r - ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);

    ComplexMatrix d(2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const ComplexMatrix rd = sqrtm_psd(d);
    CHECK(rd(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rd(1, 1).real() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("sqrtm_psd squares back to the input") {
    CounterRng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix g = random_hermitian(6, rng);
        const ComplexMatrix p = g * g;  // PSD
        const ComplexMatrix r = sqrtm_psd(p);
        CHECK((r * r - p).frobenius_norm() <= 1e-10 * std::max(1.0, p.frobenius_norm()));
    }
}

TEST_CASE("sqrtm_psd rejects indefinite matrices") {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS(sqrtm_psd(m), not_psd_error);
}

TEST_CASE("fidelity reference points") {
    const DensityMatrix rho = ginibre_random_mixed(2, 3, 5);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

    const DensityMatrix zero(product_state({{1.0, 0.0}}));
    const DensityMatrix one(product_state({{0.0, 1.0}}));
    const double inv = 1.0 / std::sqrt(2.0);
    const DensityMatrix plus(PureState(1, {inv, inv}));
    CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("fidelity symmetry and equality witness") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix a = ginibre_random_mixed(2, 4, 100 + s);
        const DensityMatrix b = ginibre_random_mixed(2, 2, 200 + s);
        CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) <= 1e-10);
        CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(fidelity(ginibre_random_mixed(1, 2, 1), ginibre_random_mixed(2, 2, 1)),
                    std::invalid_argument);
}

TEST_CASE("haar sampling is normalized and deterministic") {
    const PureState a = haar_random_pure(3, 99);
    const PureState b = haar_random_pure(3, 99);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        norm2 += std::norm(a[i]);
        CHECK(a[i] == b[i]);
    }
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
    CHECK_THROWS_AS(haar_random_pure(11, 1), std::invalid_argument);
}

TEST_CASE("haar mean reduced purity matches the analytic value") {
    // E[tr rho_A^2] = (d_A + d_B) / (d_A d_B + 1) = 4/5 for two qubits
    const std::size_t n_samples = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const PureState psi = haar_random_pure(2, mix64(31337) ^ mix64(s));
        const ComplexMatrix ra = reduced_qubit(psi, 0);
        double p = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) p += std::norm(ra(i, j));
        sum += p;
        sum2 += p * p;
    }
    const double mean = sum / n_samples;
    const double se = std::sqrt((sum2 / n_samples - mean * mean) / n_samples);
    CHECK(std::abs(mean - 0.8) < 4.0 * se);
}

TEST_CASE("haar distribution is unitarily invariant") {
    // rotate by a fixed unitary and compare the mean purity within 3 SE
    CounterRng rng(5);
    const ComplexMatrix h = random_hermitian(4, rng);
    const HermitianEigen eig = eigh(h);  // eigenvectors form a fixed unitary
    const std::size_t n_samples = 10000;

    auto mean_purity = [&](bool rotate) {
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t s = 0; s < n_samples; ++s) {
            PureState psi = haar_random_pure(2, mix64(777) ^ mix64(s));
            std::vector<cplx> amps(psi.amplitudes());
            if (rotate) {
                std::vector<cplx> rotated(4, cplx{0.0, 0.0});
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j) rotated[i] += eig.eigenvectors(i, j) * amps[j];
                amps = std::move(rotated);
            }
            double n2 = 0.0;
            for (const cplx& a : amps) n2 += std::norm(a);
            for (cplx& a : amps) a /= std::sqrt(n2);
            const ComplexMatrix ra = reduced_qubit(PureState(2, amps), 0);
            double p = 0.0;
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) p += std::norm(ra(i, j));
            sum += p;
            sum2 += p * p;
        }
        const double mean = sum / n_samples;
        return std::pair{mean, std::sqrt((sum2 / n_samples - mean * mean) / n_samples)};
    };
    const auto [m0, se0] = mean_purity(false);
    const auto [m1, se1] = mean_purity(true);
    CHECK(std::abs(m0 - m1) < 3.0 * std::hypot(se0, se1));
}

TEST_CASE("ginibre sampling") {
    const DensityMatrix pure = ginibre_random_mixed(2, 1, 17);
    CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-10));

    const DensityMatrix full = ginibre_random_mixed(2, 4, 17);
    CHECK(std::abs(full.matrix().trace() - cplx{1.0, 0.0}) < 1e-12);

    const DensityMatrix again = ginibre_random_mixed(2, 4, 17);
    CHECK((full.matrix() - again.matrix()).frobenius_norm() == 0.0);

    CHECK_THROWS_AS(ginibre_random_mixed(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ginibre_random_mixed(2, 5, 1), std::invalid_argument);
}

TEST_CASE("named state constructions") {
    const PureState w3 = w_state(3);
    const double a = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(w3[1] - cplx{a, 0.0}) < 1e-15);
    CHECK(std::abs(w3[2] - cplx{a, 0.0}) < 1e-15);
    CHECK(std::abs(w3[4] - cplx{a, 0.0}) < 1e-15);
    CHECK(std::abs(w3[0]) == 0.0);

    const DensityMatrix w1 = werner_state(1.0);
    const DensityMatrix bell(bell_state());
    CHECK((w1.matrix() - bell.matrix()).frobenius_norm() < 1e-15);
    CHECK_THROWS_AS(werner_state(1.5), std::invalid_argument);

    const PureState ghz4 = ghz_state(4);
    double norm2 = 0.0;
    for (const cplx& amp : ghz4.amplitudes()) norm2 += std::norm(amp);
    CHECK(std::abs(norm2 - 1.0) < 1e-12);

    CHECK_THROWS_AS(named_state("ghz"), std::invalid_argument);
    CHECK_THROWS_AS(named_state("nope:3"), std::invalid_argument);
}

TEST_CASE("state files round-trip") {
    const PureState psi = haar_random_pure(3, 321);
    std::stringstream buf;
    write_state(buf, psi);
    const State back = read_state(buf);
    const auto& psi2 = std::get<PureState>(back);
    for (std::size_t i = 0; i < psi.dim(); ++i) CHECK(std::abs(psi[i] - psi2[i]) <= 1e-15);

    const DensityMatrix rho = ginibre_random_mixed(2, 3, 654);
    std::stringstream buf2;
    write_state(buf2, rho);
    const State back2 = read_state(buf2);
    const auto& rho2 = std::get<DensityMatrix>(back2);
    CHECK((rho.matrix() - rho2.matrix()).frobenius_norm() <= 1e-15 * 16);
}

TEST_CASE("state files reject malformed input") {
    std::stringstream truncated("{\"kind\": \"pure\", \"n_qubits\": 2, \"data\": [[1.0, 0.0]");
    CHECK_THROWS_AS(read_state(truncated), std::invalid_argument);
    std::stringstream wrong_kind("{\"kind\": \"foo\", \"n_qubits\": 1, \"data\": []}");
    CHECK_THROWS_AS(read_state(wrong_kind), std::invalid_argument);
    std::stringstream short_data(
        "{\"kind\": \"pure\", \"n_qubits\": 2, \"data\": [[1.0, 0.0], [0.0, 0.0]]}");
    CHECK_THROWS_AS(read_state(short_data), std::invalid_argument);
}
