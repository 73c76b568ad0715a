// model.hpp -- quantum Rabi Hamiltonian, frame transformations, and coupling scales.
//
// The Hamiltonian is
//   H = omega_c a^dag a + g sigma_x (a + a^dag) + (omega_q/2) sigma_z,
// built on the joint space with the qubit as the slow index.
#pragma once

#include <Eigen/Dense>

#include "rabivar/qops.hpp"

namespace rabivar::model {

using qops::Complex;
using qops::Matrix;

struct ModelParams {
    double omega_c = 1.0;
    double omega_q = 1.0;
    double g = 0.0;
};

// Throws InvalidRegime unless omega_c > 0, omega_q >= 0, g >= 0.
void validate(const ModelParams& p);

Matrix rabi_hamiltonian(const ModelParams& p, Eigen::Index dim);

// Conditional qubit flip U that rotates the qubit by pi about y on odd Fock
// levels only. It maps H to the parity frame,
//   U H U^dag = omega_c a^dag a - g sigma_z (a + a^dag) + (omega_q/2) Pi sigma_z,
// which is block diagonal in sigma_z. In this frame sigma_z is conserved while
// the lab-frame symmetry, the joint parity tensor(-sigma_z, Pi), becomes -sigma_z.
Matrix parity_unitary(Eigen::Index dim);
Matrix parity_frame_hamiltonian(const ModelParams& p, Eigen::Index dim);

// Cavity-only blocks of the parity-frame Hamiltonian at fixed sigma_z = -+1:
//   H_-+ = omega_c a^dag a +- g (a + a^dag) -+ (omega_q/2) Pi.
// Both are real symmetric; the ground state lives in the minus block.
Eigen::MatrixXd parity_block(const ModelParams& p, Eigen::Index dim, int sigma_z);

// Map a cavity vector from a parity-frame sigma_z block back to a lab-frame
// joint state (applies U^dag to block tensor |sigma_z>). Exact in the
// truncated space. sigma_z is +1 or -1.
qops::StateVector lab_state_from_block(const Eigen::VectorXd& block, int sigma_z);

// Joint parity tensor(-sigma_z, Pi); commutes with the Hamiltonian.
Matrix total_parity(Eigen::Index dim);

// Qubit-conditional displacement exp(-alpha sigma_x (a^dag - a)):
// |+x> branches displace by +alpha, |-x> branches by -alpha.
Matrix polaron_unitary(Eigen::Index dim, double alpha);

// Energy expectation <psi|H|psi> evaluated without forming H (O(dim)).
double energy_expectation(const ModelParams& p, const qops::StateVector& psi);

// ---- weak-coupling effective theory ----

// Anti-Hermitian generator A of the Schrieffer-Wolff rotation exp(A) that
// removes the coupling term at leading order. Throws Resonance when
// |omega_q - omega_c| < 1e-9.
Matrix sw_generator(const ModelParams& p, Eigen::Index dim);

// Second-order effective Hamiltonian
//   omega_c a^dag a + (g^2 omega_q/(omega_q^2 - omega_c^2)) sigma_z (a+a^dag)^2
//   + (omega_q/2) sigma_z.
Matrix sw_effective_hamiltonian(const ModelParams& p, Eigen::Index dim);

// Squeeze parameter of the effective ground state,
//   r = -(1/4) ln(1 - 4 g^2 omega_q / (omega_c (omega_q^2 - omega_c^2))).
// Requires omega_q > omega_c; throws InvalidRegime when the argument of the
// log is not positive (onset of the quadratic instability).
double weak_coupling_squeeze(const ModelParams& p);

// ---- coupling scale ----

enum class GStarForm { approximate, exact };

// Characteristic coupling separating the weak and strong regimes.
//   approximate: sqrt(omega_c omega_q)/2
//   exact:       (1/2) sqrt(omega_c omega_q (1 - (omega_c/omega_q)^2)),
// the coupling where weak_coupling_squeeze diverges. The exact form requires
// omega_q > omega_c.
double g_star(double omega_c, double omega_q, GStarForm form = GStarForm::approximate);

}  // namespace rabivar::model
