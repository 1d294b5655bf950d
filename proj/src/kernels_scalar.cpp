#include "zenosim/kernels.hpp"

namespace zenosim::kernels {

namespace {

void axpy_real_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += a * x[i];
    }
}

void diag_scale_accum_scalar(double* dst_re, double* dst_im,
                             const double* c_re, const double* c_im,
                             const double* src_re, const double* src_im,
                             std::size_t n_blocks, std::size_t block_dim) {
    for (std::size_t k = 0; k < n_blocks; ++k) {
        const double cr = c_re[k];
        const double ci = c_im[k];
        const std::size_t base = k * block_dim;
        for (std::size_t j = 0; j < block_dim; ++j) {
            const double xr = src_re[base + j];
            const double xi = src_im[base + j];
            dst_re[base + j] += cr * xr - ci * xi;
            dst_im[base + j] += cr * xi + ci * xr;
        }
    }
}

void block_matvec_accum_scalar(double* dst_re, double* dst_im,
                               const double* m_re, const double* m_im,
                               const double* src_re, const double* src_im,
                               std::size_t n_blocks, std::size_t block_dim) {
    for (std::size_t k = 0; k < n_blocks; ++k) {
        const std::size_t base = k * block_dim;
        // dst += sum_c column(M, c) * src[c], accumulated column by column so
        // the AVX2 variant can follow the identical association order.
        for (std::size_t c = 0; c < block_dim; ++c) {
            const double xr = src_re[base + c];
            const double xi = src_im[base + c];
            const double* col_re = m_re + c * block_dim;
            const double* col_im = m_im + c * block_dim;
            for (std::size_t r = 0; r < block_dim; ++r) {
                dst_re[base + r] += col_re[r] * xr - col_im[r] * xi;
                dst_im[base + r] += col_re[r] * xi + col_im[r] * xr;
            }
        }
    }
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        "scalar",
        axpy_real_scalar,
        diag_scale_accum_scalar,
        block_matvec_accum_scalar,
    };
    return table;
}

} // namespace zenosim::kernels
