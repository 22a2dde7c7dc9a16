// AVX2+FMA float kernels. This TU is compiled with -mavx2 -mfma; callers must
// gate on cpu_supports_avx2() (the dispatcher does).

#include "avx2_kernels.hpp"

#include <immintrin.h>

namespace dicnet::kernels::avx2 {

namespace {

inline double hsum_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

// Accumulates 8 floats into two double accumulators.
inline void accum_ps_as_pd(__m256 v, __m256d& acc_lo, __m256d& acc_hi) {
    acc_lo = _mm256_add_pd(acc_lo, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
    acc_hi = _mm256_add_pd(acc_hi, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
}

}  // namespace

void gemm_f32(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a,
              int lda, const float* b, int ldb, float beta, float* c, int ldc) {
    for (int i = 0; i < m; ++i) {
        float* crow = c + static_cast<size_t>(i) * ldc;
        if (beta == 0.0f) {
            for (int j = 0; j < n; ++j) crow[j] = 0.0f;
        } else if (beta != 1.0f) {
            for (int j = 0; j < n; ++j) crow[j] *= beta;
        }
    }
    if (!trans_b) {
        // nn / tn: broadcast op(A)[i,p], FMA along contiguous rows of B and C.
        const int n8 = n & ~7;
        for (int i = 0; i < m; ++i) {
            float* crow = c + static_cast<size_t>(i) * ldc;
            for (int p = 0; p < k; ++p) {
                float av = trans_a ? a[static_cast<size_t>(p) * lda + i]
                                   : a[static_cast<size_t>(i) * lda + p];
                av *= alpha;
                if (av == 0.0f) continue;
                const float* brow = b + static_cast<size_t>(p) * ldb;
                __m256 va = _mm256_set1_ps(av);
                int j = 0;
                for (; j < n8; j += 8) {
                    __m256 vc = _mm256_loadu_ps(crow + j);
                    vc = _mm256_fmadd_ps(va, _mm256_loadu_ps(brow + j), vc);
                    _mm256_storeu_ps(crow + j, vc);
                }
                for (; j < n; ++j) crow[j] += av * brow[j];
            }
        }
    } else if (!trans_a) {
        // nt: dot products of contiguous rows of A and B.
        const int k8 = k & ~7;
        for (int i = 0; i < m; ++i) {
            const float* arow = a + static_cast<size_t>(i) * lda;
            float* crow = c + static_cast<size_t>(i) * ldc;
            for (int j = 0; j < n; ++j) {
                const float* brow = b + static_cast<size_t>(j) * ldb;
                __m256 vacc = _mm256_setzero_ps();
                int p = 0;
                for (; p < k8; p += 8) {
                    vacc = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p),
                                           _mm256_loadu_ps(brow + p), vacc);
                }
                __m128 lo = _mm256_castps256_ps128(vacc);
                __m128 hi = _mm256_extractf128_ps(vacc, 1);
                lo = _mm_add_ps(lo, hi);
                lo = _mm_hadd_ps(lo, lo);
                lo = _mm_hadd_ps(lo, lo);
                float acc = _mm_cvtss_f32(lo);
                for (; p < k; ++p) acc += arow[p] * brow[p];
                crow[j] += alpha * acc;
            }
        }
    } else {
        // tt: both strided along k; rare and never hot, plain loops.
        for (int i = 0; i < m; ++i) {
            float* crow = c + static_cast<size_t>(i) * ldc;
            for (int j = 0; j < n; ++j) {
                float acc = 0.0f;
                for (int p = 0; p < k; ++p) {
                    acc += a[static_cast<size_t>(p) * lda + i] *
                           b[static_cast<size_t>(j) * ldb + p];
                }
                crow[j] += alpha * acc;
            }
        }
    }
}

void add_f32(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(out + i,
                         _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_f32(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(out + i,
                         _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void mul_f32(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(out + i,
                         _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_f32(float alpha, const float* x, float* y, size_t n) {
    __m256 va = _mm256_set1_ps(alpha);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vy = _mm256_loadu_ps(y + i);
        vy = _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), vy);
        _mm256_storeu_ps(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_f32(float alpha, float* x, size_t n) {
    __m256 va = _mm256_set1_ps(alpha);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(x + i, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

void relu_f32(const float* x, float* y, size_t n) {
    __m256 vz = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(y + i, _mm256_max_ps(vz, _mm256_loadu_ps(x + i)));
    }
    for (; i < n; ++i) y[i] = x[i] > 0.0f ? x[i] : 0.0f;
}

void relu_backward_f32(const float* x, const float* g, float* gx, size_t n) {
    __m256 vz = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 mask = _mm256_cmp_ps(_mm256_loadu_ps(x + i), vz, _CMP_GT_OQ);
        _mm256_storeu_ps(gx + i, _mm256_and_ps(mask, _mm256_loadu_ps(g + i)));
    }
    for (; i < n; ++i) gx[i] = x[i] > 0.0f ? g[i] : 0.0f;
}

void normalize_apply_f32(const float* x, float mean, float inv_std, float* y, size_t n) {
    __m256 vm = _mm256_set1_ps(mean);
    __m256 vs = _mm256_set1_ps(inv_std);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(y + i,
                         _mm256_mul_ps(_mm256_sub_ps(_mm256_loadu_ps(x + i), vm), vs));
    }
    for (; i < n; ++i) y[i] = (x[i] - mean) * inv_std;
}

double sum_f32(const float* x, size_t n) {
    __m256d acc_lo = _mm256_setzero_pd();
    __m256d acc_hi = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) accum_ps_as_pd(_mm256_loadu_ps(x + i), acc_lo, acc_hi);
    double acc = hsum_pd(_mm256_add_pd(acc_lo, acc_hi));
    for (; i < n; ++i) acc += static_cast<double>(x[i]);
    return acc;
}

double sumsq_f32(const float* x, size_t n) {
    __m256d acc_lo = _mm256_setzero_pd();
    __m256d acc_hi = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256d d0 = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
        __m256d d1 = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
        acc_lo = _mm256_fmadd_pd(d0, d0, acc_lo);
        acc_hi = _mm256_fmadd_pd(d1, d1, acc_hi);
    }
    double acc = hsum_pd(_mm256_add_pd(acc_lo, acc_hi));
    for (; i < n; ++i) {
        double v = static_cast<double>(x[i]);
        acc += v * v;
    }
    return acc;
}

double dot_f32(const float* a, const float* b, size_t n) {
    __m256d acc_lo = _mm256_setzero_pd();
    __m256d acc_hi = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 va = _mm256_loadu_ps(a + i);
        __m256 vb = _mm256_loadu_ps(b + i);
        acc_lo = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                                 _mm256_cvtps_pd(_mm256_castps256_ps128(vb)), acc_lo);
        acc_hi = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                                 _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)), acc_hi);
    }
    double acc = hsum_pd(_mm256_add_pd(acc_lo, acc_hi));
    for (; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return acc;
}

std::pair<double, double> mean_var_f32(const float* x, size_t n) {
    if (n == 0) return {0.0, 0.0};
    double mean = sum_f32(x, n) / static_cast<double>(n);
    __m256d vm = _mm256_set1_pd(mean);
    __m256d acc_lo = _mm256_setzero_pd();
    __m256d acc_hi = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(v)), vm);
        __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)), vm);
        acc_lo = _mm256_fmadd_pd(d0, d0, acc_lo);
        acc_hi = _mm256_fmadd_pd(d1, d1, acc_hi);
    }
    double acc = hsum_pd(_mm256_add_pd(acc_lo, acc_hi));
    for (; i < n; ++i) {
        double d = static_cast<double>(x[i]) - mean;
        acc += d * d;
    }
    return {mean, acc / static_cast<double>(n)};
}

}  // namespace dicnet::kernels::avx2
