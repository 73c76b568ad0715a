#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rabivar/eig.hpp>
#include <rabivar/model.hpp>
#include <rabivar/qops.hpp>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

using namespace rabivar;
using namespace rabivar::model;
using qops::Complex;
using qops::Matrix;
using qops::Vector;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

ModelParams params(double wq, double g, double wc = 1.0) {
    ModelParams p;
    p.omega_c = wc;
    p.omega_q = wq;
    p.g = g;
    return p;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(validate(params(0.0, 0.0)));
    CHECK_THROWS_AS(validate(params(1.0, 1.0, 0.0)), InvalidRegime);
    CHECK_THROWS_AS(validate(params(-1.0, 0.0)), InvalidRegime);
    CHECK_THROWS_AS(validate(params(1.0, -0.5)), InvalidRegime);
}

TEST_CASE("free hamiltonian spectrum") {
    Matrix h = rabi_hamiltonian(params(1.0, 0.0), 2);
    // basis order |+z,0>, |+z,1>, |-z,0>, |-z,1>
    CHECK(std::abs(h(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(h(1, 1).real() - 1.5) < 1e-15);
    CHECK(std::abs(h(2, 2).real() + 0.5) < 1e-15);
    CHECK(std::abs(h(3, 3).real() - 0.5) < 1e-15);
    CHECK(max_abs(h - Matrix(h.diagonal().asDiagonal())) == 0.0);

    auto res = eig::lowest_eigenpairs(rabi_hamiltonian(params(7.0, 0.0), 30), 1);
    CHECK(std::abs(res.values(0) + 3.5) < 1e-12);
}

TEST_CASE("hamiltonian is hermitian") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    for (int t = 0; t < 5; ++t) {
        Matrix h = rabi_hamiltonian(params(u(rng), u(rng)), 35);
        CHECK(max_abs(h - h.adjoint()) < 1e-14);
    }
}

TEST_CASE("total parity commutes with the hamiltonian") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int t = 0; t < 5; ++t) {
        const Eigen::Index dim = 40;
        Matrix h = rabi_hamiltonian(params(u(rng), u(rng)), dim);
        Matrix pt = total_parity(dim);
        CHECK(max_abs(h * pt - pt * h) < 1e-12);
    }
}

TEST_CASE("parity unitary maps to the block frame") {
    const Eigen::Index dim = 60;
    Matrix u = parity_unitary(dim);
    CHECK(max_abs(u * u.adjoint() - Matrix::Identity(2 * dim, 2 * dim)) < 1e-12);

    // even-parity cavity states are untouched
    qops::StateVector even = qops::tensor_state(
        (qops::Qubit() << Complex(0.3, 0.1), Complex(0.8, -0.2)).finished(),
        qops::fock_state(dim, 2));
    CHECK((u * even.amps - even.amps).norm() < 1e-14);

    ModelParams p = params(5.0, 1.0);
    CHECK(max_abs(u * rabi_hamiltonian(p, dim) * u.adjoint() -
                  parity_frame_hamiltonian(p, dim)) < 1e-10);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> draw(0.2, 2.5);
    for (int t = 0; t < 3; ++t) {
        ModelParams q = params(draw(rng), draw(rng));
        CHECK(max_abs(u * rabi_hamiltonian(q, dim) * u.adjoint() -
                      parity_frame_hamiltonian(q, dim)) < 1e-10);
    }
}

TEST_CASE("parity frame blocks") {
    const Eigen::Index dim = 50;
    ModelParams p = params(3.0, 0.8);
    Matrix full = parity_frame_hamiltonian(p, dim);
    Eigen::MatrixXd minus = parity_block(p, dim, -1);
    Eigen::MatrixXd plus = parity_block(p, dim, +1);

    CHECK(max_abs(full.topLeftCorner(dim, dim) - plus.cast<Complex>()) < 1e-12);
    CHECK(max_abs(full.bottomRightCorner(dim, dim) - minus.cast<Complex>()) < 1e-12);
    CHECK(max_abs(full.topRightCorner(dim, dim)) == 0.0);
    CHECK((minus - minus.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // lowest eigenvalue of the minus block is the true ground energy
    auto blk = eig::lowest_eigenpairs_real(minus, 1);
    auto all = eig::lowest_eigenpairs(rabi_hamiltonian(p, dim), 1);
    CHECK(std::abs(blk.values(0) - all.values(0)) < 1e-9);
}

TEST_CASE("minus block ground at zero qubit splitting is coherent") {
    const double g = 1.2;
    const Eigen::Index dim = Eigen::Index(5 * g * g) + 40;
    ModelParams p = params(0.0, g);
    auto res = eig::lowest_eigenpairs_real(parity_block(p, dim, -1), 1);
    Eigen::VectorXd v = res.vectors.col(0);
    Matrix a = qops::annihilation(dim);
    const Complex avg = (v.cast<Complex>().adjoint() * a * v.cast<Complex>())(0);
    CHECK(std::abs(avg.real() + g) < 1e-8);
    CHECK(std::abs(avg.imag()) < 1e-10);
    CHECK(std::abs(res.values(0) + g * g) < 1e-8);
}

TEST_CASE("block states map back to lab-frame parity eigenstates") {
    const Eigen::Index dim = 40;
    ModelParams p = params(4.0, 0.7);
    auto res = eig::lowest_eigenpairs_real(parity_block(p, dim, -1), 2);
    Matrix pt = total_parity(dim);
    for (int k = 0; k < 2; ++k) {
        qops::StateVector lab = lab_state_from_block(res.vectors.col(k), -1);
        CHECK(std::abs(lab.norm() - 1.0) < 1e-12);
        const Complex par = (lab.amps.adjoint() * pt * lab.amps)(0);
        CHECK(std::abs(par.real() - 1.0) < 1e-10);
        // energy is preserved by the frame map
        const double e = energy_expectation(p, lab);
        CHECK(std::abs(e - res.values(k)) < 1e-9);
    }
}

TEST_CASE("polaron transform diagonalizes the zero-splitting model") {
    const double g = 1.0;
    const Eigen::Index dim = 60;
    ModelParams p = params(0.0, g);
    CHECK(max_abs(polaron_unitary(dim, 0.0) - Matrix::Identity(2 * dim, 2 * dim)) < 1e-12);

    // Columns of the polaron unitary over low Fock levels are eigenvectors
    // with the displaced-oscillator energies n - g^2. (Conjugating the full
    // matrix instead would smear truncation damage across every block.)
    Matrix h = rabi_hamiltonian(p, dim);
    Matrix up = polaron_unitary(dim, -g);
    qops::Qubit plus_x, minus_x;
    plus_x << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus_x << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    for (Eigen::Index n = 0; n < 9; ++n) {
        for (const auto& q : {plus_x, minus_x}) {
            qops::Vector v = up * qops::tensor_state(q, qops::fock_state(dim, n)).amps;
            CHECK((h * v - double(n - g * g) * v).norm() < 1e-12);
        }
    }

    // displaced-oscillator spectrum, doubly degenerate
    auto res = eig::lowest_eigenpairs(rabi_hamiltonian(p, dim), 4);
    CHECK(std::abs(res.values(0) + g * g) < 1e-8);
    CHECK(std::abs(res.values(1) + g * g) < 1e-8);
    CHECK(std::abs(res.values(2) - (1.0 - g * g)) < 1e-7);
    CHECK(std::abs(res.values(3) - (1.0 - g * g)) < 1e-7);
}

TEST_CASE("energy expectation without the dense matrix") {
    const Eigen::Index dim = 45;
    ModelParams p = params(2.3, 0.9);
    Matrix h = rabi_hamiltonian(p, dim);
    std::mt19937 rng(41);
    std::normal_distribution<double> n01;
    for (int t = 0; t < 5; ++t) {
        qops::StateVector psi;
        psi.dim_cavity = dim;
        psi.amps.resize(2 * dim);
        for (Eigen::Index i = 0; i < 2 * dim; ++i) psi.amps(i) = Complex(n01(rng), n01(rng));
        psi.normalize();
        const double dense = (psi.amps.adjoint() * h * psi.amps)(0).real();
        CHECK(std::abs(energy_expectation(p, psi) - dense) < 1e-10);
    }
}

// ---------- weak-coupling effective theory ----------

TEST_CASE("schrieffer-wolff generator") {
    const Eigen::Index dim = 40;
    CHECK(max_abs(sw_generator(params(5.0, 0.0), dim)) == 0.0);
    CHECK(max_abs(sw_effective_hamiltonian(params(5.0, 0.0), dim) -
                  rabi_hamiltonian(params(5.0, 0.0), dim)) < 1e-13);

    Matrix a = sw_generator(params(5.0, 0.4), dim);
    CHECK(max_abs(a + a.adjoint()) < 1e-12);

    CHECK_THROWS_AS(sw_generator(params(1.0, 0.3), dim), Resonance);
    CHECK_THROWS_AS(sw_effective_hamiltonian(params(1.0 + 1e-12, 0.3), dim), Resonance);
}

TEST_CASE("rotated hamiltonian matches the effective one at weak coupling") {
    const Eigen::Index dim = 80;
    ModelParams p = params(20.0, 0.2);
    Matrix a = sw_generator(p, dim);
    Matrix rot = a.exp() * rabi_hamiltonian(p, dim) * (-a).exp();
    auto e_rot = eig::lowest_eigenpairs(rot, 1);
    auto e_eff = eig::lowest_eigenpairs(sw_effective_hamiltonian(p, dim), 1);
    // agreement is O(g^3)
    CHECK(std::abs(e_rot.values(0) - e_eff.values(0)) < 1e-3);
}

TEST_CASE("weak-coupling squeeze parameter") {
    CHECK(weak_coupling_squeeze(params(20.0, 0.0)) == 0.0);
    CHECK(std::abs(weak_coupling_squeeze(params(20.0, 1.0)) -
                   0.0559425785262547213) < 1e-15);

    // monotone in g, diverging toward the instability
    const double gs = g_star(1.0, 20.0, GStarForm::exact);
    double prev = 0.0;
    for (double f : {0.3, 0.6, 0.9, 0.999}) {
        const double r = weak_coupling_squeeze(params(20.0, f * gs));
        CHECK(r > prev);
        prev = r;
    }
    CHECK_THROWS_AS(weak_coupling_squeeze(params(20.0, gs)), InvalidRegime);
    CHECK_THROWS_AS(weak_coupling_squeeze(params(0.5, 0.3)), InvalidRegime);
}

TEST_CASE("crossover coupling") {
    CHECK(std::abs(g_star(1.0, 176.0, GStarForm::approximate) -
                   6.63324958071079970) < 1e-14);
    CHECK(std::abs(g_star(1.0, 2.0, GStarForm::exact) -
                   0.612372435695794525) < 1e-15);
    const double ratio = g_star(1.0, 176.0, GStarForm::exact) /
                         g_star(1.0, 176.0, GStarForm::approximate);
    CHECK(std::abs(ratio - std::sqrt(1.0 - 1.0 / (176.0 * 176.0))) < 2e-5);
    CHECK_THROWS_AS(g_star(1.0, 0.9, GStarForm::exact), InvalidRegime);
}
