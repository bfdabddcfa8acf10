#include "sorptran/block_tridiag.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sorptran {

namespace {

// In-place Gauss-Jordan inverse with partial pivoting; m is tiny (the number
// of solute components), so no blocking or libraries are warranted.
void invert(double* a, int m, std::vector<double>& scratch) {
    scratch.assign(static_cast<size_t>(m) * m, 0.0);
    double* inv = scratch.data();
    for (int i = 0; i < m; ++i) inv[i * m + i] = 1.0;

    for (int col = 0; col < m; ++col) {
        int pivot = col;
        double best = std::fabs(a[col * m + col]);
        for (int row = col + 1; row < m; ++row) {
            const double v = std::fabs(a[row * m + col]);
            if (v > best) {
                best = v;
                pivot = row;
            }
        }
        if (!(best > 0.0)) {
            throw std::runtime_error("BlockTridiagonalSolver: singular pivot block");
        }
        if (pivot != col) {
            for (int k = 0; k < m; ++k) {
                std::swap(a[pivot * m + k], a[col * m + k]);
                std::swap(inv[pivot * m + k], inv[col * m + k]);
            }
        }
        const double scale = 1.0 / a[col * m + col];
        for (int k = 0; k < m; ++k) {
            a[col * m + k] *= scale;
            inv[col * m + k] *= scale;
        }
        for (int row = 0; row < m; ++row) {
            if (row == col) continue;
            const double factor = a[row * m + col];
            if (factor == 0.0) continue;
            for (int k = 0; k < m; ++k) {
                a[row * m + k] -= factor * a[col * m + k];
                inv[row * m + k] -= factor * inv[col * m + k];
            }
        }
    }
    for (int k = 0; k < m * m; ++k) a[k] = inv[k];
}

void mat_vec(const double* a, const double* x, double* y, int m) {
    for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k) acc += a[j * m + k] * x[k];
        y[j] = acc;
    }
}

}  // namespace

BlockTridiagonalSolver::BlockTridiagonalSolver(int nodes, int block_size)
    : n_(nodes), m_(block_size) {
    if (nodes < 1 || block_size < 1) {
        throw std::invalid_argument("BlockTridiagonalSolver: bad dimensions");
    }
    inv_.resize(static_cast<size_t>(n_) * m_ * m_);
    work_.resize(static_cast<size_t>(n_) * m_ + m_);
}

void BlockTridiagonalSolver::factor(std::span<const double> diag_blocks, double off_coupling) {
    if (diag_blocks.size() != inv_.size()) {
        throw std::invalid_argument("BlockTridiagonalSolver: diagonal block size mismatch");
    }
    off_ = off_coupling;
    const double off2 = off_ * off_;
    const size_t bs = static_cast<size_t>(m_) * m_;
    std::vector<double> scratch;
    std::vector<double> block(bs);

    for (int i = 0; i < n_; ++i) {
        const double* d = diag_blocks.data() + i * bs;
        for (size_t k = 0; k < bs; ++k) block[k] = d[k];
        if (i > 0) {
            // Schur update: T_i = D_i - off^2 * inv(T_{i-1})
            const double* prev = inv_.data() + (i - 1) * bs;
            for (size_t k = 0; k < bs; ++k) block[k] -= off2 * prev[k];
        }
        invert(block.data(), m_, scratch);
        double* dst = inv_.data() + i * bs;
        for (size_t k = 0; k < bs; ++k) dst[k] = block[k];
    }
}

void BlockTridiagonalSolver::solve(std::span<double> rhs) const {
    if (rhs.size() != static_cast<size_t>(n_) * m_) {
        throw std::invalid_argument("BlockTridiagonalSolver: rhs size mismatch");
    }
    const size_t bs = static_cast<size_t>(m_) * m_;
    double* y = work_.data();
    double* tmp = work_.data() + static_cast<size_t>(n_) * m_;

    for (int i = 0; i < n_; ++i) {
        double* yi = y + static_cast<size_t>(i) * m_;
        const double* ri = rhs.data() + static_cast<size_t>(i) * m_;
        for (int k = 0; k < m_; ++k) yi[k] = ri[k];
        if (i > 0) {
            mat_vec(inv_.data() + (i - 1) * bs, y + static_cast<size_t>(i - 1) * m_, tmp, m_);
            for (int k = 0; k < m_; ++k) yi[k] -= off_ * tmp[k];
        }
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double* xi = rhs.data() + static_cast<size_t>(i) * m_;
        const double* yi = y + static_cast<size_t>(i) * m_;
        for (int k = 0; k < m_; ++k) tmp[k] = yi[k];
        if (i + 1 < n_) {
            for (int k = 0; k < m_; ++k) tmp[k] -= off_ * rhs[static_cast<size_t>(i + 1) * m_ + k];
        }
        mat_vec(inv_.data() + i * bs, tmp, xi, m_);
    }
}

}  // namespace sorptran
