// ansatz.hpp -- variational trial states built from squeezed cats on
// non-orthogonal qubit pointers, their Schmidt form, entangled coherent
// states, the five-parameter displaced-squeezed family, and the cavity
// observables (reduced state, purity, Wigner function) used to analyze them.
#pragma once

#include <Eigen/Dense>

#include "rabivar/qops.hpp"

namespace rabivar::ansatz {

using qops::Matrix;
using qops::StateVector;
using qops::Vector;

// ---- parameterizations ----

// Lab-frame family: |psi> ~ sin(phi/2)(|a> + |-a>)|-z> - cos(phi/2)(|a> - |-a>)|+z>
// up to normalization, where |+-a> = displaced_squeezed_state(+-alpha_c, r).
// Equivalently (|-a>|+[phi]> - |a>|-[phi]>)/sqrt(2N) on the non-orthogonal
// pointer pair, N = 1 - w cos(phi). Constraints: alpha_c >= 0, phi in [pi/2, pi].
struct NOQParams {
    double alpha_c = 0.0;
    double r = 0.0;
    double phi = M_PI;
};

// Schmidt-form parameters: branch weight p_minus in [1/2, 1] plus the same
// cavity displacement and squeeze.
struct SchmidtParams {
    double p_minus = 1.0;
    double alpha_c = 0.0;
    double r = 0.0;
};

// Two independent displaced-squeezed branches mixed with weight t.
struct DSSParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double t = 0.5;
};

// Pointer overlap w = <a|-a> = exp(-2 alpha_c^2 exp(-2r)) and derived factors.
double branch_overlap(double alpha_c, double r);

// ---- parameter maps (exact, closed form) ----

// p_minus = 1/2 + (w - cos phi)/(2N), N = 1 - w cos phi.
SchmidtParams schmidt_from_noq(const NOQParams& q);

// Inverse map; throws OutOfRange when p_minus < (1+w)/2 (no pointer angle in
// [pi/2, pi] reaches weights below the orthogonal-pointer value).
NOQParams noq_from_schmidt(const SchmidtParams& s);

// ---- state constructors ----

StateVector noq_ground(const NOQParams& q, Eigen::Index dim);

// Orthogonal partner ~ cos(phi/2)(|a> + |-a>)|+z> - sin(phi/2)(|a> - |-a>)|-z>,
// i.e. (|a>|-[phi]> + |-a>|+[phi]>)/sqrt(2 N1) with N1 = 1 + w cos(phi);
// throws VanishingNorm when N1 < 1e-12.
StateVector noq_excited(const NOQParams& q, Eigen::Index dim);

// Even/odd squeezed cat ~ |alpha_c, r> + sign |-alpha_c, r>, normalized.
// sign is +1 or -1; throws VanishingNorm when 1 + sign*w < 1e-12.
Vector squeezed_cat(Eigen::Index dim, double alpha_c, double r, int sign);

// Schmidt-form constructor: sqrt(p)|cat_+>|-z> - sqrt(1-p)|cat_->|+z>
// (the noq_ground state again, with the branch weight as the parameter).
StateVector noq_ground_schmidt(const SchmidtParams& s, Eigen::Index dim);

// Parity-frame image of noq_ground_schmidt: the whole state collapses onto
// the sigma_z = -1 block, (sqrt(p)|cat_+> - sqrt(1-p)|cat_->) tensor |-z>.
StateVector noq_parity_frame(const SchmidtParams& s, Eigen::Index dim);

// Entangled coherent states on orthogonal pointers |+-x>:
//   ground ~ |alpha>|+x> - |-alpha>|-x>, excited ~ |alpha>|+x> + |-alpha>|-x>,
// each exactly normalized by 1/sqrt(2) for every alpha.
StateVector ecs_ground(Eigen::Index dim, double alpha);
StateVector ecs_excited(Eigen::Index dim, double alpha);

// Five-parameter family
//   (1-t) S(r1)[(|a1> + |-a1>)|-z> + (|a1> - |-a1>)|+z>]
//   +  t  S(r2)[(|a2> + |-a2>)|-z> + (|a2> - |-a2>)|+z>],
// normalized, with S the squeeze() unitary and |a_i> coherent states.
// t in [0, 1]. At a2 = -a1, r2 = r1 the odd part carries weight (1 - 2t) and
// the family collapses onto the NOQ ground family (its mirror for t < 1/2).
StateVector dss_state(const DSSParams& d, Eigen::Index dim);

// ---- observables ----

// rho_cav = Tr_qubit |psi><psi| (dim x dim, Hermitian, unit trace).
Matrix reduced_cavity(const StateVector& psi);

double purity(const Matrix& rho);            // Tr rho^2
double purity_from_weight(double p_minus);   // p^2 + (1-p)^2

// |<a|b>| with cavity blocks zero-padded to the larger truncation; inputs are
// normalized defensively.
double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const Vector& a, const Vector& b);

// ---- Wigner function ----

// W(x, p) = 2 Tr[rho D(alpha) Pi D(-alpha)] on alpha = (x + i p)/sqrt(2);
// normalized so (1/pi) integral W dx dp = 2 Tr rho and W(0,0) = 2 <Pi>.
struct WignerGridSpec {
    double x_min = -5.0, x_max = 5.0;
    int nx = 101;
    double p_min = -5.0, p_max = 5.0;
    int np = 101;
};

struct WignerGrid {
    WignerGridSpec spec;
    Eigen::MatrixXd w;         // w(ip, ix), p increases with row index
    bool truncation_warning = false;  // tail of rho carries weight > 1e-6
};

WignerGrid wigner(const Matrix& rho, const WignerGridSpec& spec, int threads = 1);

// Wigner function of the cavity reduction of a pure joint state. Same result
// as wigner(reduced_cavity(psi), ...) but skips the dense eigendecomposition
// (the reduction has rank at most two).
WignerGrid wigner(const StateVector& psi, const WignerGridSpec& spec, int threads = 1);

}  // namespace rabivar::ansatz
