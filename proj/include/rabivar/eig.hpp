// eig.hpp -- exact diagonalization with automatic truncation control.
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rabivar/model.hpp"
#include "rabivar/qops.hpp"

namespace rabivar::eig {

using qops::Matrix;

// Default Fock truncation for a given coupling: max(50, round(5 (g/omega_c)^2)).
Eigen::Index truncation_dim(const model::ModelParams& p);

struct EigenResult {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // column i pairs with values(i)
};

// Lowest k eigenpairs of a Hermitian matrix (LAPACK zheevr). Eigenvectors are
// phase-fixed so the largest-magnitude amplitude is real positive (first such
// entry on ties). Throws NonHermitian if max|H - H^dag| > 1e-10.
EigenResult lowest_eigenpairs(const Matrix& h, int k);

// Real symmetric variant (LAPACK dsyevr), same ordering and sign convention.
struct EigenResultReal {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};
EigenResultReal lowest_eigenpairs_real(const Eigen::MatrixXd& h, int k);

struct GroundResult {
    Eigen::VectorXd energies;               // ascending up to degeneracy ties
    std::vector<qops::StateVector> states;  // lab-frame, phase-fixed
    Eigen::Index dim_used = 0;
};

// Lowest k joint eigenstates at a fixed truncation. Solves the two
// real-symmetric parity-frame blocks separately and merges; each returned
// state therefore has definite joint parity even when the spectrum is
// numerically degenerate. Cross-block levels that agree to working precision
// (1e-9 relative to the energy scale) order the sigma_z = -1 block first;
// that block holds the uncoupled ground and its bottom level never crosses
// the other block's, so slot 0 is the physical ground even when solver noise
// exceeds the true splitting.
GroundResult rabi_eigenstates(const model::ModelParams& p, Eigen::Index dim, int k = 1);

// rabi_eigenstates with truncation escalation: starts at truncation_dim(p),
// accepts when a 1.25x larger truncation reproduces the ground energy within
// 1e-9 omega_c and the ground state with infidelity below 1e-9. Escalates
// once; throws ConvergenceFailure if still unsettled.
GroundResult converged_ground_state(const model::ModelParams& p, int k = 1);

}  // namespace rabivar::eig
