#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specsparse/error.hpp"
#include "specsparse/rng.hpp"
#include "specsparse/sym.hpp"

namespace specsparse {

/// The tuple (A_1, ..., A_m) of symmetric n x n matrices. Members are either
/// dense or rank-1 factored (A_i = w_i w_i^T); rank-1 storage keeps only the
/// factors and computes every trace as w^T M w. Immutable after construction.
class MatrixFamily {
public:
    static MatrixFamily from_dense(std::vector<SymMatrix> members) {
        if (members.empty()) throw InvalidMatrix("MatrixFamily: empty family");
        MatrixFamily f;
        f.n_ = members.front().dim();
        for (const auto& a : members)
            if (a.dim() != f.n_) throw DimensionMismatch("MatrixFamily: mixed dimensions");
        f.rank1_ = false;
        f.dense_ = std::move(members);
        f.psd_.reserve(f.dense_.size());
        f.abs_.reserve(f.dense_.size());
        for (const auto& a : f.dense_) {
            const EigenDecomposition d = eig_sym(a);
            const double scale = std::max(1.0, d.eigenvalues.cwiseAbs().maxCoeff());
            const bool psd = d.eigenvalues.minCoeff() >= -tol::eig * scale;
            f.psd_.push_back(psd);
            f.abs_.emplace_back(psd ? a.mat()
                                    : Matrix(d.eigenvectors *
                                             d.eigenvalues.cwiseAbs().asDiagonal() *
                                             d.eigenvectors.transpose()));
        }
        return f;
    }

    /// rows of `factors` are the vectors w_i.
    static MatrixFamily from_rank1(Matrix factors) {
        if (factors.rows() < 1 || factors.cols() < 1)
            throw InvalidMatrix("MatrixFamily: empty rank-1 family");
        if (!factors.allFinite()) throw InvalidMatrix("MatrixFamily: non-finite factors");
        MatrixFamily f;
        f.rank1_ = true;
        f.n_ = static_cast<int>(factors.cols());
        f.factors_ = std::move(factors);
        f.psd_.assign(static_cast<std::size_t>(f.factors_.rows()), true);
        return f;
    }

    int dim() const { return n_; }
    int count() const {
        return rank1_ ? static_cast<int>(factors_.rows()) : static_cast<int>(dense_.size());
    }
    bool rank1() const { return rank1_; }
    bool psd(int i) const { return psd_[static_cast<std::size_t>(i)]; }
    bool all_psd() const {
        for (bool b : psd_)
            if (!b) return false;
        return true;
    }
    const Matrix& factors() const { return factors_; }
    Vector factor(int i) const { return factors_.row(i).transpose(); }

    Matrix member(int i) const {
        if (rank1_) return factors_.row(i).transpose() * factors_.row(i);
        return dense_[static_cast<std::size_t>(i)].mat();
    }

    /// |A_i|; identical to the member for PSD entries.
    Matrix member_abs(int i) const {
        if (rank1_) return member(i);
        return abs_[static_cast<std::size_t>(i)];
    }

    /// sum_i x_i A_i.
    Matrix weighted_sum(const Vector& x) const {
        if (x.size() != count()) throw DimensionMismatch("weighted_sum: coefficient length");
        if (rank1_) return factors_.transpose() * x.asDiagonal() * factors_;
        Matrix s = Matrix::Zero(n_, n_);
        for (int i = 0; i < count(); ++i) s += x[i] * dense_[static_cast<std::size_t>(i)].mat();
        return s;
    }

    /// sum_i |A_i|.
    Matrix abs_sum() const {
        if (rank1_) return factors_.transpose() * factors_;
        Matrix s = Matrix::Zero(n_, n_);
        for (int i = 0; i < count(); ++i) s += member_abs(i);
        return s;
    }

    /// v^T A_i v.
    double quad_form(int i, const Vector& v) const {
        if (rank1_) {
            const double t = factors_.row(i).dot(v);
            return t * t;
        }
        return v.dot(dense_[static_cast<std::size_t>(i)].mat() * v);
    }

    /// ||sum_i x_i A_i||_op through the dense eigensolver.
    double op_norm_weighted_dense(const Vector& x) const {
        return op_norm(SymMatrix(weighted_sum(x)));
    }

    /// ||sum_i x_i A_i||_op; rank-1 families use a Lanczos extremal-eigenvalue
    /// iteration on the implicit operator with relative tolerance tol::pow_iter
    /// and fall back to the dense path if it stalls.
    double op_norm_weighted(const Vector& x) const {
        if (!rank1_ || n_ <= 8) return op_norm_weighted_dense(x);
        if (x.size() != count()) throw DimensionMismatch("op_norm_weighted: coefficient length");
        double out = 0.0;
        if (lanczos_extremal(x, out)) return out;
        return op_norm_weighted_dense(x);
    }

    /// New family with members s_idx * A_idx for idx in `indices`.
    MatrixFamily subfamily_scaled(const std::vector<int>& indices, const Vector& scales) const {
        if (static_cast<int>(indices.size()) != scales.size())
            throw DimensionMismatch("subfamily_scaled: scale count");
        if (rank1_) {
            Matrix f(static_cast<Eigen::Index>(indices.size()), n_);
            for (std::size_t k = 0; k < indices.size(); ++k) {
                if (scales[static_cast<Eigen::Index>(k)] < 0.0)
                    throw InvalidMatrix("subfamily_scaled: negative scale on rank-1 member");
                f.row(static_cast<Eigen::Index>(k)) =
                    std::sqrt(scales[static_cast<Eigen::Index>(k)]) * factors_.row(indices[k]);
            }
            return from_rank1(std::move(f));
        }
        std::vector<SymMatrix> members;
        members.reserve(indices.size());
        for (std::size_t k = 0; k < indices.size(); ++k)
            members.emplace_back(
                Matrix(scales[static_cast<Eigen::Index>(k)] * member(indices[k])));
        return from_dense(std::move(members));
    }

    /// Uniformly rescaled family c * A_i.
    MatrixFamily scaled(double c) const {
        std::vector<int> idx(static_cast<std::size_t>(count()));
        for (int i = 0; i < count(); ++i) idx[static_cast<std::size_t>(i)] = i;
        return subfamily_scaled(idx, Vector::Constant(count(), c));
    }

private:
    MatrixFamily() = default;

    // Lanczos with full reorthogonalization; extremal Ritz value of the
    // operator v -> W^T diag(x) W v. Returns false on stall.
    bool lanczos_extremal(const Vector& x, double& out) const {
        const int n = n_;
        const int kmax = std::min(n, 120);
        CounterRng rng(0x5eed0ULL); // fixed stream: result must be deterministic
        Vector v = rng.gaussian_vector(n);
        v.normalize();

        Matrix basis(n, kmax);
        std::vector<double> alpha, beta;
        Vector w;
        double theta = 0.0;
        for (int j = 0; j < kmax; ++j) {
            basis.col(j) = v;
            w = factors_.transpose() * (x.cwiseProduct(factors_ * v));
            const double a = v.dot(w);
            alpha.push_back(a);
            w -= a * v;
            if (j > 0) w -= beta.back() * basis.col(j - 1);
            // full reorthogonalization, twice
            for (int pass = 0; pass < 2; ++pass)
                for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
            const double b = w.norm();

            if (j >= 1 || b <= 1e-14) {
                const int k = j + 1;
                Matrix t = Matrix::Zero(k, k);
                for (int i = 0; i < k; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
                for (int i = 0; i + 1 < k; ++i) {
                    t(i, i + 1) = beta[static_cast<std::size_t>(i)];
                    t(i + 1, i) = beta[static_cast<std::size_t>(i)];
                }
                Eigen::SelfAdjointEigenSolver<Matrix> es(t);
                if (es.info() != Eigen::Success) return false;
                Eigen::Index arg = 0;
                es.eigenvalues().cwiseAbs().maxCoeff(&arg);
                theta = es.eigenvalues()[arg];
                const double resid = (b <= 1e-14)
                                         ? 0.0
                                         : std::abs(b * es.eigenvectors()(k - 1, arg));
                if (resid <= tol::pow_iter * std::max(std::abs(theta), 1e-30) || k >= n) {
                    out = std::abs(theta);
                    return true;
                }
            }
            if (b <= 1e-14) {
                out = std::abs(theta);
                return true; // invariant subspace exhausted
            }
            beta.push_back(b);
            v = w / b;
        }
        return false;
    }

    int n_ = 0;
    bool rank1_ = false;
    std::vector<SymMatrix> dense_;
    std::vector<Matrix> abs_;
    Matrix factors_;
    std::vector<bool> psd_;
};

/// Random vectors brought to isotropic position; test/CLI convenience.
inline MatrixFamily random_isotropic_rank1(int n, int m, CounterRng& rng) {
    Matrix w(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = rng.next_gaussian();
    Eigen::SelfAdjointEigenSolver<Matrix> es(w.transpose() * w);
    if (es.info() != Eigen::Success) throw EigFailure("random_isotropic_rank1");
    if (es.eigenvalues().minCoeff() <= 0)
        throw InvalidMatrix("random_isotropic_rank1: degenerate sample (need m >= n)");
    const Matrix p =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
    return MatrixFamily::from_rank1(w * p);
}

} // namespace specsparse
