#pragma once

#include <vector>

#include <Eigen/Sparse>

namespace lamespec {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Symmetric matrix in coordinate form. Only the upper triangle is stored:
/// add() swaps indices so that row <= col, and compress() sorts the
/// triplets and sums duplicates.
class SparseSymmetricMatrix {
public:
    SparseSymmetricMatrix() = default;
    explicit SparseSymmetricMatrix(int dim);

    int dim() const noexcept { return dim_; }
    const std::vector<Triplet>& entries() const noexcept { return entries_; }

    void add(int row, int col, double value);
    void compress();

    /// Full (both triangles) compressed-column copy.
    Eigen::SparseMatrix<double> to_eigen() const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

private:
    int dim_ = 0;
    std::vector<Triplet> entries_;
};

}  // namespace lamespec
