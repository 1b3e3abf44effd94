#include "lamespec/sparse.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "lamespec/errors.hpp"

namespace lamespec {

SparseSymmetricMatrix::SparseSymmetricMatrix(int dim) : dim_(dim) {
    if (dim < 0) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be non-negative");
}

void SparseSymmetricMatrix::add(int row, int col, double value) {
    if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
        throw Error(ErrorKind::InvalidArgument, "entry (" + std::to_string(row) + ", " + std::to_string(col) +
                                                    ") outside a " + std::to_string(dim_) + "x" +
                                                    std::to_string(dim_) + " matrix");
    }
    if (row > col) std::swap(row, col);
    entries_.push_back({row, col, value});
}

void SparseSymmetricMatrix::compress() {
    std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> merged;
    merged.reserve(entries_.size());
    for (const auto& t : entries_) {
        if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
            merged.back().value += t.value;
        } else {
            merged.push_back(t);
        }
    }
    entries_ = std::move(merged);
}

Eigen::SparseMatrix<double> SparseSymmetricMatrix::to_eigen() const {
    std::vector<Eigen::Triplet<double>> full;
    full.reserve(entries_.size() * 2);
    for (const auto& t : entries_) {
        full.emplace_back(t.row, t.col, t.value);
        if (t.row != t.col) full.emplace_back(t.col, t.row, t.value);
    }
    Eigen::SparseMatrix<double> out(dim_, dim_);
    out.setFromTriplets(full.begin(), full.end());
    return out;
}

Eigen::VectorXd SparseSymmetricMatrix::multiply(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw Error(ErrorKind::InvalidArgument, "vector length does not match matrix");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    for (const auto& t : entries_) {
        y[t.row] += t.value * x[t.col];
        if (t.row != t.col) y[t.col] += t.value * x[t.row];
    }
    return y;
}

}  // namespace lamespec
