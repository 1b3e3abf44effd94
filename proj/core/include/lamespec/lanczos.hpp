#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lamespec {

struct LanczosOptions {
    int block_size = 3;
    /// Basis size before a thick restart; 0 picks max(2k + 4b, k + 40).
    int max_basis = 0;
    int max_restarts = 300;
    /// Ritz residual threshold relative to the Ritz value of the inverted operator.
    double ritz_tol = 1e-12;
    /// Final check: ||Kx - lambda Mx|| / (max(1, |lambda|) ||Mx||).
    double residual_tol = 1e-8;
    std::uint64_t seed = 42;
};

struct EigenPairs {
    std::vector<double> values;  ///< ascending
    Eigen::MatrixXd vectors;     ///< M-orthonormal columns
    std::vector<double> residuals;
    int restarts = 0;
    int operator_applications = 0;
};

/// The k eigenvalues of K x = lambda M x closest to sigma from above.
///
/// Block Lanczos on (K - sigma M)^{-1} M in the M inner product, with full
/// reorthogonalization and thick restarts that keep the best Ritz vectors.
/// K - sigma M is factored once by sparse LDL^T; its inertia must show no
/// negative pivots, i.e. sigma lies below the whole spectrum.
EigenPairs shift_invert_lanczos(const Eigen::SparseMatrix<double>& stiffness,
                                const Eigen::SparseMatrix<double>& mass, int k, double sigma,
                                const LanczosOptions& options = {});

}  // namespace lamespec
