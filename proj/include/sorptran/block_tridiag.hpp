#pragma once

#include <span>
#include <vector>

namespace sorptran {

/// Direct solver for block-tridiagonal systems (D + c S) x = r, where D is a
/// block diagonal of dense m x m blocks and S couples adjacent blocks with
/// c * Id on the sub- and super-diagonal. This is exactly the structure of
/// the per-step Hessian: dense capacity blocks plus the scalar discrete
/// Laplacian acting componentwise.
class BlockTridiagonalSolver {
public:
    BlockTridiagonalSolver(int nodes, int block_size);

    /// diag_blocks: nodes * m * m, row-major per block. Throws on a singular
    /// pivot block.
    void factor(std::span<const double> diag_blocks, double off_coupling);

    /// In-place: rhs on entry, solution on exit (nodes * m values).
    void solve(std::span<double> rhs) const;

private:
    int n_;
    int m_;
    double off_ = 0.0;
    std::vector<double> inv_;   // inverse of each eliminated pivot block
    mutable std::vector<double> work_;
};

}  // namespace sorptran
