// qops.hpp -- qubit and truncated-cavity operators, plus joint state vectors.
//
// Conventions used throughout the library:
//   * Fock space is truncated to dim levels |0..dim-1>.
//   * Qubit basis: |+z> = (1,0), |-z> = (0,1); sigma_z = diag(1,-1).
//   * Joint states store the qubit as the slow index, idx = s*dim + n.
//   * squeeze(dim, t) = exp((t/2)(a^2 - a^dag^2)); its vacuum x-variance
//     is exp(-2t)/2, i.e. positive t squeezes the x quadrature.
#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "rabivar/errors.hpp"

namespace rabivar::qops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Qubit = Eigen::Vector2cd;

// ---- qubit operators ----

Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// Non-orthogonal pointer pair |+[phi]>, |-[phi]> with <+[phi]|-[phi]> = cos(phi):
//   |+/-[phi]> = cos(phi/2)|+z> +/- sin(phi/2)|-z>.
std::pair<Qubit, Qubit> qubit_pointer(double phi);

// ---- cavity operators ----

Matrix annihilation(Eigen::Index dim);
Matrix creation(Eigen::Index dim);
Matrix number_op(Eigen::Index dim);
Matrix position_op(Eigen::Index dim);  // x = (a + a^dag)/sqrt(2)
Matrix momentum_op(Eigen::Index dim);  // p = i(a^dag - a)/sqrt(2)
Matrix parity_op(Eigen::Index dim);    // diag((-1)^n)

// Unitary displacement D(alpha) = exp(alpha a^dag - conj(alpha) a),
// evaluated by scaling-and-squaring on the truncated generator.
Matrix displacement(Eigen::Index dim, Complex alpha);

// Unitary squeeze S(t) = exp((t/2)(a^2 - a^dag^2)).
Matrix squeeze(Eigen::Index dim, double t);

// Matrix elements <n|D(alpha)|m> for the whole truncated block, built by a
// two-term ladder recurrence in O(dim^2). Agrees with displacement() away
// from the truncation edge and is much faster for repeated evaluation.
Matrix displacement_elements(Eigen::Index dim, Complex alpha);

// ---- cavity states ----

Vector fock_state(Eigen::Index dim, Eigen::Index n);

// Truncated coherent state with amplitudes exp(-|alpha|^2/2) alpha^n/sqrt(n!),
// normalized over the kept levels.
Vector coherent_state(Eigen::Index dim, Complex alpha);

// Displaced squeezed vacuum D(alpha) S(-r) |0> with real alpha, evaluated by
// a stable three-term recurrence (all amplitudes are real). Positive r
// squeezes the p quadrature, so for r > 0 the photon distribution widens.
// Throws TruncationLoss if the kept levels carry less than 1 - 1e-6 of the
// untruncated norm. The returned vector is normalized on the kept levels.
Vector displaced_squeezed_state(Eigen::Index dim, double alpha, double r);

// ---- joint qubit x cavity states ----

struct StateVector {
    Eigen::Index dim_cavity = 0;
    Vector amps;  // length 2*dim_cavity, qubit slow: amps[s*dim + n]

    // Cavity block paired with qubit level s (0 -> |+z>, 1 -> |-z>).
    Vector block(int s) const;
    double norm() const { return amps.norm(); }
    StateVector& normalize();  // throws VanishingNorm below 1e-12
};

StateVector tensor_state(const Qubit& q, const Vector& cavity);

// Inner product <a|b>; cavity blocks are zero-padded to the larger dim.
Complex inner(const StateVector& a, const StateVector& b);

// Kronecker product with the left factor as the slow index.
Matrix tensor(const Matrix& a, const Matrix& b);

}  // namespace rabivar::qops
