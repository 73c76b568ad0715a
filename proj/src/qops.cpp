#include "rabivar/qops.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace rabivar::qops {

namespace {

void check_dim(Eigen::Index dim, const char* where) {
    if (dim < 1) {
        throw InvalidDimension(std::string(where) + ": dim must be >= 1, got " +
                               std::to_string(dim));
    }
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

// ---- qubit operators ----

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

std::pair<Qubit, Qubit> qubit_pointer(double phi) {
    const double c = std::cos(0.5 * phi);
    const double s = std::sin(0.5 * phi);
    Qubit plus, minus;
    plus << c, s;
    minus << c, -s;
    return {plus, minus};
}

// ---- cavity operators ----

Matrix annihilation(Eigen::Index dim) {
    check_dim(dim, "annihilation");
    Matrix a = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix creation(Eigen::Index dim) { return annihilation(dim).adjoint(); }

Matrix number_op(Eigen::Index dim) {
    check_dim(dim, "number_op");
    Matrix n = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

Matrix position_op(Eigen::Index dim) {
    const Matrix a = annihilation(dim);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

Matrix momentum_op(Eigen::Index dim) {
    const Matrix a = annihilation(dim);
    return kI * (a.adjoint() - a) / std::sqrt(2.0);
}

Matrix parity_op(Eigen::Index dim) {
    check_dim(dim, "parity_op");
    Matrix p = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return p;
}

Matrix displacement(Eigen::Index dim, Complex alpha) {
    const Matrix a = annihilation(dim);
    const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

Matrix squeeze(Eigen::Index dim, double t) {
    const Matrix a = annihilation(dim);
    const Matrix a2 = a * a;
    const Matrix gen = 0.5 * t * (a2 - a2.adjoint());
    return gen.exp();
}

Matrix displacement_elements(Eigen::Index dim, Complex alpha) {
    check_dim(dim, "displacement_elements");
    Matrix d(dim, dim);
    // Top row <0|D|m> = exp(-|a|^2/2) (-conj(a))^m / sqrt(m!).
    d(0, 0) = std::exp(-0.5 * std::norm(alpha));
    for (Eigen::Index m = 1; m < dim; ++m) {
        d(0, m) = d(0, m - 1) * (-std::conj(alpha)) / std::sqrt(double(m));
    }
    // a D = D (a + alpha) gives
    // sqrt(n+1) <n+1|D|m> = sqrt(m) <n|D|m-1> + alpha <n|D|m>.
    for (Eigen::Index n = 0; n + 1 < dim; ++n) {
        const double inv = 1.0 / std::sqrt(double(n + 1));
        d(n + 1, 0) = alpha * d(n, 0) * inv;
        for (Eigen::Index m = 1; m < dim; ++m) {
            d(n + 1, m) = (std::sqrt(double(m)) * d(n, m - 1) + alpha * d(n, m)) * inv;
        }
    }
    return d;
}

// ---- cavity states ----

Vector fock_state(Eigen::Index dim, Eigen::Index n) {
    check_dim(dim, "fock_state");
    if (n < 0 || n >= dim) {
        throw InvalidDimension("fock_state: level " + std::to_string(n) +
                               " outside truncation " + std::to_string(dim));
    }
    Vector v = Vector::Zero(dim);
    v(n) = 1.0;
    return v;
}

Vector coherent_state(Eigen::Index dim, Complex alpha) {
    check_dim(dim, "coherent_state");
    Vector v(dim);
    v(0) = 1.0;
    for (Eigen::Index n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(double(n));
    v *= std::exp(-0.5 * std::norm(alpha));
    const double nrm = v.norm();
    if (nrm < 1e-12) throw TruncationLoss("coherent_state: amplitude far exceeds truncation");
    return v / nrm;
}

Vector displaced_squeezed_state(Eigen::Index dim, double alpha, double r) {
    check_dim(dim, "displaced_squeezed_state");
    const double mu = std::cosh(r);
    const double nu = std::sinh(r);
    const double kappa = std::exp(-r);  // mu - nu

    // (mu a - nu a^dag - kappa alpha)|psi> = 0 gives the three-term recurrence
    //   c_{n+1} = (kappa alpha c_n + nu sqrt(n) c_{n-1}) / (mu sqrt(n+1))
    // with all coefficients real relative to c_0 = 1. Amplitudes can overflow
    // long before the physics goes bad, so rescale and track the log.
    Eigen::VectorXd c(dim);
    c(0) = 1.0;
    double log_scale = 0.0;
    for (Eigen::Index n = 0; n + 1 < dim; ++n) {
        double next = kappa * alpha * c(n);
        if (n >= 1) next += nu * std::sqrt(double(n)) * c(n - 1);
        next /= mu * std::sqrt(double(n + 1));
        c(n + 1) = next;
        if (std::abs(next) > 1e200) {
            c.head(n + 2) *= 1e-200;
            log_scale += std::log(1e200);
        }
    }

    // True c_0 in closed form: log c_0 = -log(cosh r)/2 - (alpha^2/2)(1 - tanh r).
    const double log_c0 = -0.5 * std::log(mu) - 0.5 * alpha * alpha * (1.0 - std::tanh(r));
    const double ssq = c.squaredNorm();
    if (!(ssq > 0.0) || !std::isfinite(ssq)) {
        throw TruncationLoss("displaced_squeezed_state: recurrence degenerated");
    }
    const double norm = std::exp(0.5 * std::log(ssq) + log_c0 + log_scale);
    if (std::abs(norm - 1.0) > 1e-6) {
        throw TruncationLoss("displaced_squeezed_state: kept norm " + std::to_string(norm) +
                             " at dim " + std::to_string(dim));
    }
    return (c / std::sqrt(ssq)).cast<Complex>();
}

// ---- joint states ----

Vector StateVector::block(int s) const {
    if (s != 0 && s != 1) throw InvalidDimension("StateVector::block: s must be 0 or 1");
    return amps.segment(s * dim_cavity, dim_cavity);
}

StateVector& StateVector::normalize() {
    const double nrm = amps.norm();
    if (nrm < 1e-12) throw VanishingNorm("StateVector::normalize: norm below 1e-12");
    amps /= nrm;
    return *this;
}

StateVector tensor_state(const Qubit& q, const Vector& cavity) {
    StateVector out;
    out.dim_cavity = cavity.size();
    out.amps.resize(2 * out.dim_cavity);
    out.amps.head(out.dim_cavity) = q(0) * cavity;
    out.amps.tail(out.dim_cavity) = q(1) * cavity;
    return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
    const Eigen::Index d = std::min(a.dim_cavity, b.dim_cavity);
    Complex acc = 0.0;
    for (int s = 0; s < 2; ++s) {
        acc += a.amps.segment(s * a.dim_cavity, d).dot(b.amps.segment(s * b.dim_cavity, d));
    }
    return acc;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace rabivar::qops
