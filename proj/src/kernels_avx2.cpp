// AVX2 variants of the hierarchy kernels. Compiled with -mavx2 -mfma; only
// reached through the runtime dispatch in kernels.cpp.

#include "zenosim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace zenosim::kernels {

namespace {

void axpy_real_avx2(double* y, double a, const double* x, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d xv = _mm256_loadu_pd(x + i);
        yv = _mm256_fmadd_pd(av, xv, yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

void diag_scale_accum_avx2(double* dst_re, double* dst_im,
                           const double* c_re, const double* c_im,
                           const double* src_re, const double* src_im,
                           std::size_t n_blocks, std::size_t block_dim) {
    for (std::size_t k = 0; k < n_blocks; ++k) {
        const __m256d cr = _mm256_set1_pd(c_re[k]);
        const __m256d ci = _mm256_set1_pd(c_im[k]);
        const std::size_t base = k * block_dim;
        std::size_t j = 0;
        for (; j + 4 <= block_dim; j += 4) {
            const __m256d xr = _mm256_loadu_pd(src_re + base + j);
            const __m256d xi = _mm256_loadu_pd(src_im + base + j);
            __m256d dr = _mm256_loadu_pd(dst_re + base + j);
            __m256d di = _mm256_loadu_pd(dst_im + base + j);
            dr = _mm256_fmadd_pd(cr, xr, dr);
            dr = _mm256_fnmadd_pd(ci, xi, dr);
            di = _mm256_fmadd_pd(cr, xi, di);
            di = _mm256_fmadd_pd(ci, xr, di);
            _mm256_storeu_pd(dst_re + base + j, dr);
            _mm256_storeu_pd(dst_im + base + j, di);
        }
        for (; j < block_dim; ++j) {
            const double xr = src_re[base + j];
            const double xi = src_im[base + j];
            dst_re[base + j] += c_re[k] * xr - c_im[k] * xi;
            dst_im[base + j] += c_re[k] * xi + c_im[k] * xr;
        }
    }
}

void block_matvec_accum_avx2(double* dst_re, double* dst_im,
                             const double* m_re, const double* m_im,
                             const double* src_re, const double* src_im,
                             std::size_t n_blocks, std::size_t block_dim) {
    for (std::size_t k = 0; k < n_blocks; ++k) {
        const std::size_t base = k * block_dim;
        for (std::size_t c = 0; c < block_dim; ++c) {
            const __m256d xr = _mm256_set1_pd(src_re[base + c]);
            const __m256d xi = _mm256_set1_pd(src_im[base + c]);
            const double* col_re = m_re + c * block_dim;
            const double* col_im = m_im + c * block_dim;
            std::size_t r = 0;
            for (; r + 4 <= block_dim; r += 4) {
                const __m256d mr = _mm256_loadu_pd(col_re + r);
                const __m256d mi = _mm256_loadu_pd(col_im + r);
                __m256d dr = _mm256_loadu_pd(dst_re + base + r);
                __m256d di = _mm256_loadu_pd(dst_im + base + r);
                dr = _mm256_fmadd_pd(mr, xr, dr);
                dr = _mm256_fnmadd_pd(mi, xi, dr);
                di = _mm256_fmadd_pd(mr, xi, di);
                di = _mm256_fmadd_pd(mi, xr, di);
                _mm256_storeu_pd(dst_re + base + r, dr);
                _mm256_storeu_pd(dst_im + base + r, di);
            }
            for (; r < block_dim; ++r) {
                const double sr = src_re[base + c];
                const double si = src_im[base + c];
                dst_re[base + r] += col_re[r] * sr - col_im[r] * si;
                dst_im[base + r] += col_re[r] * si + col_im[r] * sr;
            }
        }
    }
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{
        "avx2",
        axpy_real_avx2,
        diag_scale_accum_avx2,
        block_matvec_accum_avx2,
    };
    return table;
}

} // namespace zenosim::kernels

#endif // x86_64
