#include "rabivar/ansatz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace rabivar::ansatz {

using qops::Complex;
using qops::Qubit;

namespace {

void check_noq(const NOQParams& q) {
    if (q.alpha_c < 0.0) throw InvalidRegime("noq: alpha_c must be >= 0");
    if (q.phi < M_PI_2 - 1e-12 || q.phi > M_PI + 1e-12) {
        throw InvalidRegime("noq: phi must lie in [pi/2, pi]");
    }
}

void check_weight(double p) {
    if (p < 0.5 - 1e-12 || p > 1.0 + 1e-12) {
        throw InvalidRegime("noq: p_minus must lie in [1/2, 1]");
    }
}

}  // namespace

double branch_overlap(double alpha_c, double r) {
    return std::exp(-2.0 * alpha_c * alpha_c * std::exp(-2.0 * r));
}

SchmidtParams schmidt_from_noq(const NOQParams& q) {
    check_noq(q);
    const double w = branch_overlap(q.alpha_c, q.r);
    const double c = std::cos(q.phi);
    const double n = 1.0 - w * c;
    const double p = 0.5 + (w - c) / (2.0 * n);
    return {std::clamp(p, 0.5, 1.0), q.alpha_c, q.r};
}

NOQParams noq_from_schmidt(const SchmidtParams& s) {
    check_weight(s.p_minus);
    if (s.alpha_c < 0.0) throw InvalidRegime("noq: alpha_c must be >= 0");
    const double w = branch_overlap(s.alpha_c, s.r);
    const double p = s.p_minus;
    // Invert p = 1/2 + (w - cos phi)/(2(1 - w cos phi)) for cos phi.
    const double c = (1.0 + w - 2.0 * p) / (1.0 + w - 2.0 * p * w);
    if (c > 1e-12) {
        throw OutOfRange("noq_from_schmidt: p_minus below (1+w)/2 has no pointer angle");
    }
    return {s.alpha_c, s.r, std::acos(std::clamp(c, -1.0, 0.0))};
}

StateVector noq_ground(const NOQParams& q, Eigen::Index dim) {
    check_noq(q);
    const Vector plus = qops::displaced_squeezed_state(dim, q.alpha_c, q.r);
    const Vector minus = qops::displaced_squeezed_state(dim, -q.alpha_c, q.r);
    const auto [qp, qm] = qops::qubit_pointer(q.phi);
    StateVector out;
    out.dim_cavity = dim;
    out.amps.resize(2 * dim);
    for (int s = 0; s < 2; ++s) {
        out.amps.segment(s * dim, dim) = qp(s) * minus - qm(s) * plus;
    }
    return out.normalize();
}

StateVector noq_excited(const NOQParams& q, Eigen::Index dim) {
    check_noq(q);
    const double w = branch_overlap(q.alpha_c, q.r);
    if (1.0 + w * std::cos(q.phi) < 1e-12) {
        throw VanishingNorm("noq_excited: normalization vanishes at this (alpha_c, r, phi)");
    }
    const Vector plus = qops::displaced_squeezed_state(dim, q.alpha_c, q.r);
    const Vector minus = qops::displaced_squeezed_state(dim, -q.alpha_c, q.r);
    const auto [qp, qm] = qops::qubit_pointer(q.phi);
    StateVector out;
    out.dim_cavity = dim;
    out.amps.resize(2 * dim);
    for (int s = 0; s < 2; ++s) {
        out.amps.segment(s * dim, dim) = qm(s) * plus + qp(s) * minus;
    }
    return out.normalize();
}

Vector squeezed_cat(Eigen::Index dim, double alpha_c, double r, int sign) {
    if (sign != 1 && sign != -1) throw InvalidRegime("squeezed_cat: sign must be +-1");
    const double w = branch_overlap(std::abs(alpha_c), r);
    if (1.0 + double(sign) * w < 1e-12) {
        throw VanishingNorm("squeezed_cat: odd cat vanishes as alpha_c -> 0");
    }
    Vector v = qops::displaced_squeezed_state(dim, alpha_c, r) +
               double(sign) * qops::displaced_squeezed_state(dim, -alpha_c, r);
    const double nrm = v.norm();
    if (nrm < 1e-12) throw VanishingNorm("squeezed_cat: numerical norm vanished");
    return v / nrm;
}

StateVector noq_ground_schmidt(const SchmidtParams& s, Eigen::Index dim) {
    check_weight(s.p_minus);
    const double p = std::clamp(s.p_minus, 0.5, 1.0);
    const Vector cat_p = squeezed_cat(dim, s.alpha_c, s.r, +1);
    StateVector out;
    out.dim_cavity = dim;
    out.amps = Vector::Zero(2 * dim);
    out.amps.tail(dim) = std::sqrt(p) * cat_p;
    if (1.0 - p > 0.0) {
        const Vector cat_m = squeezed_cat(dim, s.alpha_c, s.r, -1);
        out.amps.head(dim) = -std::sqrt(1.0 - p) * cat_m;
    }
    return out.normalize();
}

StateVector noq_parity_frame(const SchmidtParams& s, Eigen::Index dim) {
    check_weight(s.p_minus);
    const double p = std::clamp(s.p_minus, 0.5, 1.0);
    Vector cav = std::sqrt(p) * squeezed_cat(dim, s.alpha_c, s.r, +1);
    if (1.0 - p > 0.0) {
        cav -= std::sqrt(1.0 - p) * squeezed_cat(dim, s.alpha_c, s.r, -1);
    }
    Qubit down;
    down << 0.0, 1.0;
    StateVector out = qops::tensor_state(down, cav);
    return out.normalize();
}

StateVector ecs_ground(Eigen::Index dim, double alpha) {
    const Vector cp = qops::coherent_state(dim, alpha);
    const Vector cm = qops::coherent_state(dim, -alpha);
    const double rt = 1.0 / std::sqrt(2.0);
    Qubit px, mx;
    px << rt, rt;
    mx << rt, -rt;
    StateVector out;
    out.dim_cavity = dim;
    out.amps.resize(2 * dim);
    for (int s = 0; s < 2; ++s) {
        out.amps.segment(s * dim, dim) = rt * (px(s) * cp - mx(s) * cm);
    }
    return out.normalize();
}

StateVector ecs_excited(Eigen::Index dim, double alpha) {
    const Vector cp = qops::coherent_state(dim, alpha);
    const Vector cm = qops::coherent_state(dim, -alpha);
    const double rt = 1.0 / std::sqrt(2.0);
    Qubit px, mx;
    px << rt, rt;
    mx << rt, -rt;
    StateVector out;
    out.dim_cavity = dim;
    out.amps.resize(2 * dim);
    for (int s = 0; s < 2; ++s) {
        out.amps.segment(s * dim, dim) = rt * (px(s) * cp + mx(s) * cm);
    }
    return out.normalize();
}

StateVector dss_state(const DSSParams& d, Eigen::Index dim) {
    if (d.t < 0.0 || d.t > 1.0) throw InvalidRegime("dss_state: t must lie in [0, 1]");
    // S(r) D(a) |0> = D(a e^{-r}) S(r) |0>, so each squeezed branch is a
    // displaced squeezed vacuum with scaled displacement.
    const auto branch = [dim](double a, double r) {
        return qops::displaced_squeezed_state(dim, a * std::exp(-r), -r);
    };
    const Vector b1p = branch(d.alpha1, d.r1);
    const Vector b1m = branch(-d.alpha1, d.r1);
    const Vector b2p = branch(d.alpha2, d.r2);
    const Vector b2m = branch(-d.alpha2, d.r2);
    StateVector out;
    out.dim_cavity = dim;
    out.amps.resize(2 * dim);
    out.amps.head(dim) = (1.0 - d.t) * (b1p - b1m) + d.t * (b2p - b2m);
    out.amps.tail(dim) = (1.0 - d.t) * (b1p + b1m) + d.t * (b2p + b2m);
    return out.normalize();
}

Matrix reduced_cavity(const StateVector& psi) {
    const Eigen::Index dim = psi.dim_cavity;
    if (dim < 1 || psi.amps.size() != 2 * dim) {
        throw DimensionMismatch("reduced_cavity: malformed state");
    }
    const Vector u = psi.block(0);
    const Vector v = psi.block(1);
    return u * u.adjoint() + v * v.adjoint();
}

double purity(const Matrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) {
        throw InvalidDimension("purity: rho must be square");
    }
    return (rho * rho).trace().real();
}

double purity_from_weight(double p_minus) {
    check_weight(p_minus);
    return p_minus * p_minus + (1.0 - p_minus) * (1.0 - p_minus);
}

double fidelity(const StateVector& a, const StateVector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na < 1e-12 || nb < 1e-12) throw VanishingNorm("fidelity: zero-norm state");
    return std::abs(qops::inner(a, b)) / (na * nb);
}

double fidelity(const Vector& a, const Vector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na < 1e-12 || nb < 1e-12) throw VanishingNorm("fidelity: zero-norm state");
    const Eigen::Index d = std::min(a.size(), b.size());
    return std::abs(a.head(d).dot(b.head(d))) / (na * nb);
}

namespace {

using Mode = std::pair<double, Vector>;  // (weight, unit vector)

WignerGrid wigner_from_modes(const std::vector<Mode>& modes, Eigen::Index dim,
                             const WignerGridSpec& spec, int threads, bool warn) {
    if (spec.nx < 1 || spec.np < 1) throw InvalidDimension("wigner: grid must be non-empty");
    WignerGrid out;
    out.spec = spec;
    out.truncation_warning = warn;
    out.w.resize(spec.np, spec.nx);

    const auto dx = (spec.nx > 1) ? (spec.x_max - spec.x_min) / double(spec.nx - 1) : 0.0;
    const auto dp = (spec.np > 1) ? (spec.p_max - spec.p_min) / double(spec.np - 1) : 0.0;

    const auto row_job = [&](int ip) {
        const double pv = spec.p_min + dp * double(ip);
        for (int ix = 0; ix < spec.nx; ++ix) {
            const double xv = spec.x_min + dx * double(ix);
            const Complex alpha{xv / std::sqrt(2.0), pv / std::sqrt(2.0)};
            const Matrix dmat = qops::displacement_elements(dim, -alpha);
            double acc = 0.0;
            for (const auto& [lam, vec] : modes) {
                const Vector shifted = dmat * vec;
                double s = 0.0;
                for (Eigen::Index n = 0; n < dim; ++n) {
                    const double a2 = std::norm(shifted(n));
                    s += (n % 2 == 0) ? a2 : -a2;
                }
                acc += lam * s;
            }
            out.w(ip, ix) = 2.0 * acc;
        }
    };

    const int nthreads = std::max(1, std::min(threads, spec.np));
    if (nthreads == 1) {
        for (int ip = 0; ip < spec.np; ++ip) row_job(ip);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (int ip = next.fetch_add(1); ip < spec.np; ip = next.fetch_add(1)) {
                    row_job(ip);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

// Weight stranded near the truncation edge means D(-alpha) pushes amplitude
// out of the kept space and the grid values are unreliable.
bool tail_warning(const std::vector<Mode>& modes, Eigen::Index dim) {
    const Eigen::Index tail = std::min<Eigen::Index>(10, dim);
    double tail_weight = 0.0;
    for (const auto& [lam, vec] : modes) {
        tail_weight += lam * vec.tail(tail).squaredNorm();
    }
    return tail_weight > 1e-6;
}

}  // namespace

WignerGrid wigner(const Matrix& rho, const WignerGridSpec& spec, int threads) {
    const Eigen::Index dim = rho.rows();
    if (dim < 1 || rho.cols() != dim) throw InvalidDimension("wigner: rho must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
        throw NonHermitian("wigner: rho is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
    const double lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<Mode> modes;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double lam = es.eigenvalues()(i);
        if (std::abs(lam) > 1e-13 * std::max(1.0, lam_max)) {
            modes.emplace_back(lam, es.eigenvectors().col(i));
        }
    }
    return wigner_from_modes(modes, dim, spec, threads, tail_warning(modes, dim));
}

WignerGrid wigner(const StateVector& psi, const WignerGridSpec& spec, int threads) {
    const Eigen::Index dim = psi.dim_cavity;
    if (dim < 1 || psi.amps.size() != 2 * dim) throw DimensionMismatch("wigner: malformed state");
    // rho = u u^dag + v v^dag; diagonalize in the 2-dimensional span via the
    // Gram matrix of B = [u v] (eigenpairs of B^dag B give those of B B^dag).
    const Vector u = psi.block(0);
    const Vector v = psi.block(1);
    Eigen::Matrix2cd gram;
    gram << u.dot(u), u.dot(v), v.dot(u), v.dot(v);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
    std::vector<Mode> modes;
    for (int i = 0; i < 2; ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > 1e-13) {
            const Vector m = (u * es.eigenvectors()(0, i) + v * es.eigenvectors()(1, i)) /
                             std::sqrt(lam);
            modes.emplace_back(lam, m);
        }
    }
    return wigner_from_modes(modes, dim, spec, threads, tail_warning(modes, dim));
}

}  // namespace rabivar::ansatz
