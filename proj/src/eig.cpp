#include "rabivar/eig.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <lapacke.h>

namespace rabivar::eig {

using qops::Complex;

Eigen::Index truncation_dim(const model::ModelParams& p) {
    model::validate(p);
    const double ratio = p.g / p.omega_c;
    return std::max<Eigen::Index>(50, Eigen::Index(std::llround(5.0 * ratio * ratio)));
}

namespace {

void check_square(Eigen::Index rows, Eigen::Index cols, const char* where) {
    if (rows != cols || rows < 1) {
        throw InvalidDimension(std::string(where) + ": matrix must be square and non-empty");
    }
}

int clamp_k(Eigen::Index n, int k, const char* where) {
    if (k < 1) throw InvalidDimension(std::string(where) + ": k must be >= 1");
    return int(std::min<Eigen::Index>(k, n));
}

// First strictly-largest-magnitude entry of a column (first index wins ties).
template <typename Mat>
Eigen::Index pivot_row(const Mat& vecs, Eigen::Index j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
        const double m = std::abs(vecs(i, j));
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    return imax;
}

// Rotate each column so its largest-magnitude entry is real positive.
void fix_phases(Matrix& vecs) {
    for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
        const Complex pivot = vecs(pivot_row(vecs, j), j);
        const double mag = std::abs(pivot);
        if (mag > 0.0) vecs.col(j) *= std::conj(pivot) / mag;
    }
}

void fix_signs(Eigen::MatrixXd& vecs) {
    for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
        if (vecs(pivot_row(vecs, j), j) < 0.0) vecs.col(j) = -vecs.col(j);
    }
}

}  // namespace

EigenResult lowest_eigenpairs(const Matrix& h, int k) {
    check_square(h.rows(), h.cols(), "lowest_eigenpairs");
    const Eigen::Index n = h.rows();
    const double herm_err = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > 1e-10) {
        throw NonHermitian("lowest_eigenpairs: max|H - H^dag| = " + std::to_string(herm_err));
    }
    const int kk = clamp_k(n, k, "lowest_eigenpairs");

    Matrix work = (h + h.adjoint()) / 2.0;  // symmetrize roundoff
    Eigen::VectorXd w(n);
    Matrix z(n, kk);
    std::vector<lapack_int> isuppz(2 * std::max(1, kk));
    lapack_int m = 0;
    const lapack_int info = LAPACKE_zheevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'L', lapack_int(n),
        reinterpret_cast<lapack_complex_double*>(work.data()), lapack_int(n), 0.0, 0.0, 1,
        lapack_int(kk), 0.0, &m, w.data(),
        reinterpret_cast<lapack_complex_double*>(z.data()), lapack_int(n), isuppz.data());
    if (info != 0 || m < kk) {
        throw ConvergenceFailure("lowest_eigenpairs: zheevr info = " + std::to_string(info));
    }
    EigenResult out;
    out.values = w.head(kk);
    out.vectors = z;
    fix_phases(out.vectors);
    return out;
}

EigenResultReal lowest_eigenpairs_real(const Eigen::MatrixXd& h, int k) {
    check_square(h.rows(), h.cols(), "lowest_eigenpairs_real");
    const Eigen::Index n = h.rows();
    const double sym_err = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (sym_err > 1e-10) {
        throw NonHermitian("lowest_eigenpairs_real: max|H - H^T| = " + std::to_string(sym_err));
    }
    const int kk = clamp_k(n, k, "lowest_eigenpairs_real");

    Eigen::MatrixXd work = (h + h.transpose()) / 2.0;
    Eigen::VectorXd w(n);
    Eigen::MatrixXd z(n, kk);
    std::vector<lapack_int> isuppz(2 * std::max(1, kk));
    lapack_int m = 0;
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', lapack_int(n), work.data(),
                       lapack_int(n), 0.0, 0.0, 1, lapack_int(kk), 0.0, &m, w.data(), z.data(),
                       lapack_int(n), isuppz.data());
    if (info != 0 || m < kk) {
        throw ConvergenceFailure("lowest_eigenpairs_real: dsyevr info = " + std::to_string(info));
    }
    EigenResultReal out;
    out.values = w.head(kk);
    out.vectors = z;
    fix_signs(out.vectors);
    return out;
}

GroundResult rabi_eigenstates(const model::ModelParams& p, Eigen::Index dim, int k) {
    if (dim < 2) throw InvalidDimension("rabi_eigenstates: dim must be >= 2");
    const int kk = clamp_k(2 * dim, k, "rabi_eigenstates");
    const int per_block = clamp_k(dim, kk, "rabi_eigenstates");

    struct Entry {
        double e;
        int sigma_z;
        int idx;
    };
    EigenResultReal minus = lowest_eigenpairs_real(model::parity_block(p, dim, -1), per_block);
    EigenResultReal plus = lowest_eigenpairs_real(model::parity_block(p, dim, +1), per_block);

    std::vector<Entry> entries;
    entries.reserve(2 * size_t(per_block));
    for (int i = 0; i < per_block; ++i) entries.push_back({minus.values(i), -1, i});
    for (int i = 0; i < per_block; ++i) entries.push_back({plus.values(i), +1, i});
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.e != b.e) return a.e < b.e;
        return a.sigma_z < b.sigma_z;
    });
    // Opposite-block levels that agree to working precision are ordered by
    // convention: the sigma_z = -1 block, which holds the uncoupled ground,
    // comes first. The two lowest levels never truly cross, so at the bottom
    // of the spectrum this recovers the order the solver noise scrambles.
    for (size_t i = 0; i + 1 < entries.size(); ++i) {
        Entry& a = entries[i];
        Entry& b = entries[i + 1];
        const double tol = 1e-9 * std::max({p.omega_c, std::abs(a.e), std::abs(b.e)});
        if (a.sigma_z == +1 && b.sigma_z == -1 && b.e - a.e <= tol) std::swap(a, b);
    }

    GroundResult out;
    out.dim_used = dim;
    out.energies.resize(kk);
    out.states.reserve(kk);
    for (int i = 0; i < kk; ++i) {
        const Entry& ent = entries[size_t(i)];
        out.energies(i) = ent.e;
        const Eigen::VectorXd& col =
            (ent.sigma_z == -1) ? minus.vectors.col(ent.idx).eval() : plus.vectors.col(ent.idx).eval();
        qops::StateVector lab = model::lab_state_from_block(col, ent.sigma_z);
        // Re-fix the sign in the lab frame (the block map negates odd levels
        // in the sigma_z = +1 branch). All amplitudes stay real.
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < lab.amps.size(); ++i) {
            const double m = std::abs(lab.amps(i));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        if (lab.amps(imax).real() < 0.0) lab.amps = -lab.amps;
        out.states.push_back(std::move(lab));
    }
    return out;
}

namespace {

bool ground_agrees(const GroundResult& a, const GroundResult& b, double omega_c) {
    if (std::abs(a.energies(0) - b.energies(0)) > 1e-9 * omega_c) return false;
    const double fid = std::abs(qops::inner(a.states[0], b.states[0]));
    return fid > 1.0 - 1e-9;
}

}  // namespace

GroundResult converged_ground_state(const model::ModelParams& p, int k) {
    Eigen::Index d = truncation_dim(p);
    GroundResult coarse = rabi_eigenstates(p, d, k);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const Eigen::Index d_next = Eigen::Index(std::ceil(1.25 * double(d)));
        GroundResult fine = rabi_eigenstates(p, d_next, k);
        if (ground_agrees(coarse, fine, p.omega_c)) return coarse;
        d = d_next;
        coarse = std::move(fine);
    }
    throw ConvergenceFailure("converged_ground_state: truncation escalation exhausted");
}

}  // namespace rabivar::eig
