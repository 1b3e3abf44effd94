#include "lamespec/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/SparseCholesky>

#include "lamespec/errors.hpp"

namespace lamespec {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Sparse = Eigen::SparseMatrix<double>;

constexpr double kDeflationTol = 1e-11;

/// M-orthonormal basis stored column-wise in a preallocated matrix.
class Basis {
public:
    Basis(const Sparse& mass, int capacity) : mass_(mass), v_(mass.rows(), capacity) {}

    int size() const noexcept { return size_; }
    int rows() const noexcept { return static_cast<int>(v_.rows()); }
    auto active() const { return v_.leftCols(size_); }
    auto columns(int first, int count) const { return v_.middleCols(first, count); }

    struct Appended {
        Matrix coeffs;  ///< projections onto the previous basis, size_before x c
        Matrix r;       ///< triangular factor of the new columns, added x c
        int added = 0;
    };

    /// Orthogonalizes the columns of w against the basis (two classical
    /// Gram-Schmidt passes) and appends what remains. Columns that vanish
    /// are replaced by random directions when `replace` is set.
    Appended append(Matrix w, std::mt19937_64& rng, bool replace) {
        const int before = size_;
        const int c = static_cast<int>(w.cols());
        Appended out;
        out.coeffs = Matrix::Zero(before, c);
        Matrix r = Matrix::Zero(c, c);

        Vector original_norm(c);
        {
            const Matrix mw = mass_ * w;
            for (int i = 0; i < c; ++i) original_norm[i] = std::sqrt(std::max(0.0, w.col(i).dot(mw.col(i))));
        }
        if (before > 0) {
            for (int pass = 0; pass < 2; ++pass) {
                const Matrix mw = mass_ * w;
                const Matrix h = v_.leftCols(before).transpose() * mw;
                w.noalias() -= v_.leftCols(before) * h;
                out.coeffs += h;
            }
        }
        for (int i = 0; i < c && size_ < rows(); ++i) {
            Vector col = w.col(i);
            const int added = size_ - before;
            for (int pass = 0; pass < 2 && added > 0; ++pass) {
                const Vector h = v_.middleCols(before, added).transpose() * (mass_ * col);
                col.noalias() -= v_.middleCols(before, added) * h;
                r.col(i).head(added) += h;
            }
            const double norm = m_norm(col);
            if (norm > kDeflationTol * std::max(original_norm[i], 1e-300)) {
                v_.col(size_) = col / norm;
                r(added, i) = norm;
                ++size_;
            } else if (replace) {
                append_random(rng);
            }
        }
        out.added = size_ - before;
        out.r = r.topRows(out.added);
        return out;
    }

    /// Appends one random direction orthogonal to the basis, if there is room.
    void append_random(std::mt19937_64& rng) {
        std::normal_distribution<double> normal;
        for (int attempt = 0; attempt < 5 && size_ < rows(); ++attempt) {
            Vector z(rows());
            for (auto& x : z) x = normal(rng);
            const double start = m_norm(z);
            for (int pass = 0; pass < 2 && size_ > 0; ++pass) {
                const Vector h = active().transpose() * (mass_ * z);
                z.noalias() -= active() * h;
            }
            const double norm = m_norm(z);
            if (norm > 1e-8 * start) {
                v_.col(size_++) = z / norm;
                return;
            }
        }
    }

    void reset(const Matrix& kept, const Matrix& tail) {
        v_.leftCols(kept.cols()) = kept;
        v_.middleCols(kept.cols(), tail.cols()) = tail;
        size_ = static_cast<int>(kept.cols() + tail.cols());
    }

private:
    double m_norm(const Vector& x) const { return std::sqrt(std::max(0.0, x.dot(mass_ * x))); }

    const Sparse& mass_;
    Matrix v_;
    int size_ = 0;
};

Matrix random_block(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix z(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) z(i, j) = normal(rng);
    }
    return z;
}

}  // namespace

EigenPairs shift_invert_lanczos(const Sparse& stiffness, const Sparse& mass, int k, double sigma,
                                const LanczosOptions& options) {
    const int n = static_cast<int>(stiffness.rows());
    if (stiffness.cols() != n || mass.rows() != n || mass.cols() != n) {
        throw Error(ErrorKind::InvalidArgument, "stiffness and mass must be square and of equal size");
    }
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty eigenvalue problem");
    if (k < 1 || k > n) {
        throw Error(ErrorKind::InvalidArgument,
                    "k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
    }
    if (options.block_size < 1 || !(options.ritz_tol > 0.0) || !(options.residual_tol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "invalid Lanczos options");
    }
    if (!std::isfinite(sigma)) throw Error(ErrorKind::InvalidArgument, "shift must be finite");

    const Sparse shifted = stiffness - sigma * mass;
    Eigen::SimplicialLDLT<Sparse> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) {
        throw Error(ErrorKind::FactorizationFailure, "sparse LDL^T factorization of K - sigma M failed");
    }
    {
        const Vector& d = ldlt.vectorD();
        const double dmax = d.cwiseAbs().maxCoeff();
        int negative = 0;
        for (double di : d) {
            if (!std::isfinite(di) || std::abs(di) <= 1e-14 * dmax) {
                throw Error(ErrorKind::FactorizationFailure,
                            "K - sigma M is numerically singular: sigma coincides with an eigenvalue",
                            "move sigma below the lowest eigenvalue");
            }
            if (di < 0.0) ++negative;
        }
        if (negative > 0) {
            throw Error(ErrorKind::InvalidArgument,
                        std::to_string(negative) + " eigenvalues lie below sigma = " + std::to_string(sigma),
                        "choose sigma below the lowest eigenvalue");
        }
    }

    const int b = std::min(options.block_size, n);
    int max_basis = options.max_basis > 0 ? options.max_basis : std::max(2 * k + 4 * b, k + 40);
    max_basis = std::min(std::max(max_basis, k + 2 * b), n);
    const int capacity = std::min(n, max_basis + b);

    std::mt19937_64 rng(options.seed);
    Basis basis(mass, capacity);
    Matrix h = Matrix::Zero(capacity, capacity);
    basis.append(random_block(n, b, rng), rng, true);

    EigenPairs result;
    double ritz_tol = options.ritz_tol;
    int p = 0;  // columns [0, p) have been multiplied by the operator

    for (;;) {
        while (p < basis.size() && (basis.size() < max_basis || basis.size() == n)) {
            const int c = std::min(b, basis.size() - p);
            const Matrix w = ldlt.solve(mass * basis.columns(p, c));
            result.operator_applications += c;
            const int before = basis.size();
            const auto app = basis.append(w, rng, true);
            h.block(0, p, before, c) = app.coeffs;
            h.block(p, 0, c, before) = app.coeffs.transpose();
            const Matrix diag = h.block(p, p, c, c);
            h.block(p, p, c, c) = 0.5 * (diag + diag.transpose());
            if (app.added > 0) {
                h.block(before, p, app.added, c) = app.r;
                h.block(p, before, c, app.added) = app.r.transpose();
            }
            p += c;
        }

        const int j = basis.size();
        Eigen::SelfAdjointEigenSolver<Matrix> ritz(h.topLeftCorner(p, p));
        const Vector& theta = ritz.eigenvalues();
        const Matrix& y = ritz.eigenvectors();
        const Matrix coupling = h.block(p, 0, j - p, p);

        if (p >= k) {
            bool converged = true;
            for (int i = 0; i < k && converged; ++i) {
                const int idx = p - 1 - i;
                const double res = j > p ? (coupling * y.col(idx)).norm() : 0.0;
                converged = res <= ritz_tol * std::abs(theta[idx]);
            }
            if (converged) {
                Matrix yk(p, k);
                for (int i = 0; i < k; ++i) yk.col(i) = y.col(p - 1 - i);
                result.vectors = basis.active().leftCols(p) * yk;
                result.values.resize(static_cast<std::size_t>(k));
                result.residuals.resize(static_cast<std::size_t>(k));
                bool accurate = true;
                for (int i = 0; i < k; ++i) {
                    const double lambda = sigma + 1.0 / theta[p - 1 - i];
                    const Vector x = result.vectors.col(i);
                    const Vector mx = mass * x;
                    const double res =
                        (stiffness * x - lambda * mx).norm() / (std::max(1.0, std::abs(lambda)) * mx.norm());
                    result.values[static_cast<std::size_t>(i)] = lambda;
                    result.residuals[static_cast<std::size_t>(i)] = res;
                    accurate = accurate && res <= options.residual_tol;
                }
                if (accurate) return result;
                ritz_tol *= 1e-2;
                if (ritz_tol < 1e-16) {
                    throw Error(ErrorKind::NonConvergence,
                                "eigenpair residuals stay above " + std::to_string(options.residual_tol),
                                "try a shift closer to the wanted eigenvalues");
                }
            }
        }

        if (p == j) {
            // Invariant subspace found before k vectors: continue from a fresh direction.
            if (j == n) {
                throw Error(ErrorKind::NonConvergence, "Lanczos exhausted the space without converging");
            }
            basis.append_random(rng);
            continue;
        }
        if (j < max_basis) continue;

        if (++result.restarts > options.max_restarts) {
            throw Error(ErrorKind::NonConvergence,
                        "Lanczos did not converge within " + std::to_string(options.max_restarts) + " restarts",
                        "increase the basis size or the restart limit");
        }
        int keep = std::max(k, k + (max_basis - k) / 2);
        keep = std::min({keep, p, max_basis - b - 1});
        keep = std::max(keep, std::min(k, p));
        const Matrix ykeep = y.rightCols(keep);
        const Matrix kept = basis.active().leftCols(p) * ykeep;
        const Matrix tail = basis.columns(p, j - p);
        const Matrix new_coupling = coupling * ykeep;
        basis.reset(kept, tail);
        h.setZero();
        h.diagonal().head(keep) = theta.tail(keep);
        h.block(keep, 0, j - p, keep) = new_coupling;
        h.block(0, keep, keep, j - p) = new_coupling.transpose();
        p = keep;
    }
}

}  // namespace lamespec
