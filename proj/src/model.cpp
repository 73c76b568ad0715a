#include "rabivar/model.hpp"

#include <cmath>
#include <string>

namespace rabivar::model {

using qops::Vector;

void validate(const ModelParams& p) {
    if (!(p.omega_c > 0.0)) throw InvalidRegime("model: omega_c must be positive");
    if (p.omega_q < 0.0) throw InvalidRegime("model: omega_q must be non-negative");
    if (p.g < 0.0) throw InvalidRegime("model: g must be non-negative");
}

Matrix rabi_hamiltonian(const ModelParams& p, Eigen::Index dim) {
    validate(p);
    const Matrix a = qops::annihilation(dim);
    const Matrix x = a + a.adjoint();
    const Matrix id = Matrix::Identity(dim, dim);
    return p.omega_c * qops::tensor(Matrix::Identity(2, 2), qops::number_op(dim)) +
           p.g * qops::tensor(qops::sigma_x(), x) +
           0.5 * p.omega_q * qops::tensor(qops::sigma_z(), id);
}

Matrix parity_unitary(Eigen::Index dim) {
    // Identity on even levels; exp(-i (pi/2) sigma_y) = [[0,-1],[1,0]] on odd.
    Matrix u = Matrix::Zero(2 * dim, 2 * dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        if (n % 2 == 0) {
            u(n, n) = 1.0;
            u(dim + n, dim + n) = 1.0;
        } else {
            u(dim + n, n) = 1.0;
            u(n, dim + n) = -1.0;
        }
    }
    return u;
}

Matrix parity_frame_hamiltonian(const ModelParams& p, Eigen::Index dim) {
    validate(p);
    const Matrix a = qops::annihilation(dim);
    const Matrix x = a + a.adjoint();
    return p.omega_c * qops::tensor(Matrix::Identity(2, 2), qops::number_op(dim)) -
           p.g * qops::tensor(qops::sigma_z(), x) +
           0.5 * p.omega_q * qops::tensor(qops::sigma_z(), qops::parity_op(dim));
}

Eigen::MatrixXd parity_block(const ModelParams& p, Eigen::Index dim, int sigma_z) {
    validate(p);
    if (sigma_z != 1 && sigma_z != -1) throw InvalidRegime("parity_block: sigma_z must be +-1");
    if (dim < 1) throw InvalidDimension("parity_block: dim must be >= 1");
    const double s = double(sigma_z);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        h(n, n) = p.omega_c * double(n) + s * 0.5 * p.omega_q * ((n % 2 == 0) ? 1.0 : -1.0);
        if (n + 1 < dim) {
            const double off = -s * p.g * std::sqrt(double(n + 1));
            h(n, n + 1) = off;
            h(n + 1, n) = off;
        }
    }
    return h;
}

qops::StateVector lab_state_from_block(const Eigen::VectorXd& block, int sigma_z) {
    if (sigma_z != 1 && sigma_z != -1) {
        throw InvalidRegime("lab_state_from_block: sigma_z must be +-1");
    }
    const Eigen::Index dim = block.size();
    if (dim < 1) throw InvalidDimension("lab_state_from_block: empty block");
    qops::StateVector out;
    out.dim_cavity = dim;
    out.amps = Vector::Zero(2 * dim);
    // U^dag acts per level: even levels keep the qubit, odd levels map
    // (u, v) -> (v, -u). The block state has u = w, v = 0 for sigma_z = +1
    // and u = 0, v = w for sigma_z = -1.
    for (Eigen::Index n = 0; n < dim; ++n) {
        if (sigma_z == -1) {
            if (n % 2 == 0) {
                out.amps(dim + n) = block(n);
            } else {
                out.amps(n) = block(n);
            }
        } else {
            if (n % 2 == 0) {
                out.amps(n) = block(n);
            } else {
                out.amps(dim + n) = -block(n);
            }
        }
    }
    return out;
}

Matrix total_parity(Eigen::Index dim) {
    return qops::tensor(-qops::sigma_z(), qops::parity_op(dim));
}

Matrix polaron_unitary(Eigen::Index dim, double alpha) {
    const Matrix dp = qops::displacement(dim, alpha);
    const Matrix dm = qops::displacement(dim, -alpha);
    Matrix px = Matrix(2, 2), mx = Matrix(2, 2);
    px << 0.5, 0.5, 0.5, 0.5;
    mx << 0.5, -0.5, -0.5, 0.5;
    return qops::tensor(px, dp) + qops::tensor(mx, dm);
}

double energy_expectation(const ModelParams& p, const qops::StateVector& psi) {
    validate(p);
    const Eigen::Index dim = psi.dim_cavity;
    if (dim < 1 || psi.amps.size() != 2 * dim) {
        throw DimensionMismatch("energy_expectation: malformed state");
    }
    double n_avg = 0.0;
    for (int s = 0; s < 2; ++s) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            n_avg += double(n) * std::norm(psi.amps(s * dim + n));
        }
    }
    const double z_avg = psi.amps.head(dim).squaredNorm() - psi.amps.tail(dim).squaredNorm();
    // sigma_x (a + a^dag) couples the two qubit blocks: 2 Re <u|(a+a^dag)|v>.
    Complex cross = 0.0;
    for (Eigen::Index n = 0; n + 1 < dim; ++n) {
        const double rt = std::sqrt(double(n + 1));
        cross += rt * (std::conj(psi.amps(n)) * psi.amps(dim + n + 1) +
                       std::conj(psi.amps(n + 1)) * psi.amps(dim + n));
    }
    return p.omega_c * n_avg + p.g * 2.0 * cross.real() + 0.5 * p.omega_q * z_avg;
}

Matrix sw_generator(const ModelParams& p, Eigen::Index dim) {
    validate(p);
    if (std::abs(p.omega_q - p.omega_c) < 1e-9) {
        throw Resonance("sw_generator: omega_q too close to omega_c");
    }
    const Matrix a = qops::annihilation(dim);
    const double k = p.g * p.omega_c / (p.omega_q * p.omega_q - p.omega_c * p.omega_c);
    const Complex i{0.0, 1.0};
    return k * (qops::tensor(qops::sigma_x(), a - a.adjoint()) +
                i * (p.omega_q / p.omega_c) * qops::tensor(qops::sigma_y(), a + a.adjoint()));
}

Matrix sw_effective_hamiltonian(const ModelParams& p, Eigen::Index dim) {
    validate(p);
    if (std::abs(p.omega_q - p.omega_c) < 1e-9) {
        throw Resonance("sw_effective_hamiltonian: omega_q too close to omega_c");
    }
    const Matrix a = qops::annihilation(dim);
    const Matrix x = a + a.adjoint();
    const double c2 = p.g * p.g * p.omega_q / (p.omega_q * p.omega_q - p.omega_c * p.omega_c);
    return p.omega_c * qops::tensor(Matrix::Identity(2, 2), qops::number_op(dim)) +
           c2 * qops::tensor(qops::sigma_z(), x * x) +
           0.5 * p.omega_q * qops::tensor(qops::sigma_z(), Matrix::Identity(dim, dim));
}

double weak_coupling_squeeze(const ModelParams& p) {
    validate(p);
    if (p.omega_q <= p.omega_c) {
        throw InvalidRegime("weak_coupling_squeeze: requires omega_q > omega_c");
    }
    const double arg =
        1.0 - 4.0 * p.g * p.g * p.omega_q /
                  (p.omega_c * (p.omega_q * p.omega_q - p.omega_c * p.omega_c));
    if (arg <= 0.0) {
        throw InvalidRegime("weak_coupling_squeeze: coupling at or beyond the instability");
    }
    return -0.25 * std::log(arg);
}

double g_star(double omega_c, double omega_q, GStarForm form) {
    if (!(omega_c > 0.0) || !(omega_q > 0.0)) {
        throw InvalidRegime("g_star: frequencies must be positive");
    }
    if (form == GStarForm::approximate) {
        return 0.5 * std::sqrt(omega_c * omega_q);
    }
    if (omega_q <= omega_c) {
        throw InvalidRegime("g_star: exact form requires omega_q > omega_c");
    }
    const double ratio = omega_c / omega_q;
    return 0.5 * std::sqrt(omega_c * omega_q * (1.0 - ratio * ratio));
}

}  // namespace rabivar::model
