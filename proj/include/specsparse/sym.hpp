#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specsparse/error.hpp"
#include "specsparse/rng.hpp"

namespace specsparse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
// Dense symmetric solver accuracy (relative), double precision with slack.
inline constexpr double eig = 1e-10;
inline constexpr double rel = 1e-9;
inline constexpr double pow_iter = 1e-8;
// Operator-norm separation slack (absolute) and projection slack.
inline constexpr double sep = 1e-7;
inline constexpr double proj = 1e-5;
// Barrier-shift solve (relative) and coloring snap threshold.
inline constexpr double shift = 1e-9;
inline constexpr double tight = 1e-6;
} // namespace tol

/// Real symmetric matrix. Construction symmetrizes as (M + M^T)/2 so the
/// stored entries satisfy a(i,j) == a(j,i) exactly.
class SymMatrix {
public:
    explicit SymMatrix(const Matrix& m) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw InvalidMatrix("SymMatrix: square matrix with dim >= 1 required");
        if (!m.allFinite())
            throw InvalidMatrix("SymMatrix: non-finite entries");
        a_ = 0.5 * (m + m.transpose());
    }

    static SymMatrix identity(int n) { return SymMatrix(Matrix::Identity(n, n)); }
    static SymMatrix zero(int n) { return SymMatrix(Matrix::Zero(n, n)); }

    int dim() const { return static_cast<int>(a_.rows()); }
    const Matrix& mat() const { return a_; }
    double operator()(int i, int j) const { return a_(i, j); }

private:
    Matrix a_;
};

/// Spectral decomposition with eigenvalues sorted descending and
/// orthonormal eigenvector columns in matching order.
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
    }
};

inline EigenDecomposition eig_sym(const SymMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
    if (solver.info() != Eigen::Success)
        throw EigFailure("eig_sym: solver did not converge");
    const int n = a.dim();
    EigenDecomposition d;
    d.eigenvalues = solver.eigenvalues().reverse();
    d.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) d.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    return d;
}

/// |A|: eigenvalues replaced by their absolute values.
inline SymMatrix abs_matrix(const SymMatrix& a) {
    const EigenDecomposition d = eig_sym(a);
    return SymMatrix(d.eigenvectors * d.eigenvalues.cwiseAbs().asDiagonal() *
                     d.eigenvectors.transpose());
}

/// Largest singular value; for symmetric input this is max |eigenvalue|.
inline double op_norm(const SymMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigFailure("op_norm: solver did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

inline void require_psd(const SymMatrix& a, const char* who) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EigFailure("require_psd: solver failed");
    const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
    if (solver.eigenvalues().minCoeff() < -tol::eig * scale)
        throw NotPsd(std::string(who) + ": matrix has a negative eigenvalue");
}

/// Evaluates both sides of tr[A1 B A2 B] <= tr[A1|B|] tr[A2|B|] and returns
/// (lhs, rhs). A1, A2 must be PSD.
inline std::pair<double, double> trace_product_bound_check(const SymMatrix& a1,
                                                           const SymMatrix& a2,
                                                           const SymMatrix& b) {
    if (a1.dim() != b.dim() || a2.dim() != b.dim())
        throw DimensionMismatch("trace_product_bound_check: dimension mismatch");
    require_psd(a1, "trace_product_bound_check(A1)");
    require_psd(a2, "trace_product_bound_check(A2)");
    const Matrix& bm = b.mat();
    const double lhs = (a1.mat() * bm * a2.mat() * bm).trace();
    const Matrix babs = abs_matrix(b).mat();
    const double rhs = (a1.mat() * babs).trace() * (a2.mat() * babs).trace();
    return {lhs, rhs};
}

/// Second-order residual coefficient of the trace-inverse expansion:
///   tr[(A-dB)^-1] = tr[A^-1] + d tr[A^-1 B A^-1] + c d^2 tr[A^-1 B A^-1 B A^-1]
/// with c in [-2, 2] whenever ||d A^-1 B||_op <= 1/2.
inline double taylor_residual(const SymMatrix& a, const SymMatrix& b, double delta) {
    if (a.dim() != b.dim()) throw DimensionMismatch("taylor_residual: dimension mismatch");
    const int n = a.dim();

    Eigen::SelfAdjointEigenSolver<Matrix> ea(a.mat());
    if (ea.info() != Eigen::Success) throw EigFailure("taylor_residual: eig(A) failed");
    const double amax = ea.eigenvalues().cwiseAbs().maxCoeff();
    if (ea.eigenvalues().minCoeff() <= tol::eig * amax)
        throw PreconditionViolated("taylor_residual: A must be positive definite");

    const Matrix ainv = ea.eigenvectors() * ea.eigenvalues().cwiseInverse().asDiagonal() *
                        ea.eigenvectors().transpose();
    const Matrix m = delta * ainv * b.mat();
    // ||M||_op for the (generally nonsymmetric) product via its largest singular value.
    const double m_norm = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
    if (m_norm > 0.5 + tol::rel)
        throw PreconditionViolated("taylor_residual: ||delta A^-1 B||_op exceeds 1/2");

    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat() - delta * b.mat());
    if (es.info() != Eigen::Success) throw EigFailure("taylor_residual: eig(A - dB) failed");
    const double smax = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().cwiseAbs().minCoeff() <= tol::eig * std::max(1.0, smax))
        throw SingularMatrix("taylor_residual: A - delta*B is numerically singular");

    const double tr_shifted = es.eigenvalues().cwiseInverse().sum();
    const double tr_a = ea.eigenvalues().cwiseInverse().sum();
    const double tr_first = (ainv * b.mat() * ainv).trace();
    const Matrix aib = ainv * b.mat();
    const double denom = delta * delta * (aib * aib * ainv).trace();

    const double numer = tr_shifted - tr_a - delta * tr_first;
    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += b.mat()(i, j) * b.mat()(i, j);
    if (std::abs(denom) <= 1e-300 || frob == 0.0) return 0.0;
    return numer / denom;
}

/// Monte-Carlo check of E||sum_i y_i W_i||_F^2 <= sum_i ||W_i||_F^2 for
/// y ~ N(0, X) with X <= I. Returns (estimate, bound). Test support only.
inline std::pair<double, double> subspace_gaussian_frobenius_check(
    const std::vector<Matrix>& ws, const Matrix& cov, int n_samples, CounterRng& rng) {
    const int m = static_cast<int>(ws.size());
    if (cov.rows() != m || cov.cols() != m)
        throw DimensionMismatch("subspace_gaussian_frobenius_check: covariance size");
    Eigen::SelfAdjointEigenSolver<Matrix> ec(cov);
    if (ec.info() != Eigen::Success) throw EigFailure("covariance eig failed");
    const Vector lam = ec.eigenvalues().cwiseMax(0.0);
    const Matrix half = ec.eigenvectors() * lam.cwiseSqrt().asDiagonal();

    double acc = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const Vector y = half * rng.gaussian_vector(m);
        Matrix sum = Matrix::Zero(ws[0].rows(), ws[0].cols());
        for (int i = 0; i < m; ++i) sum += y[i] * ws[i];
        acc += sum.squaredNorm();
    }
    double bound = 0.0;
    for (const auto& w : ws) bound += w.squaredNorm();
    return {acc / n_samples, bound};
}

} // namespace specsparse
