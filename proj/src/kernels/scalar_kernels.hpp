#pragma once

// Scalar reference kernels. These are the ground truth the SIMD variants are
// equivalence-tested against, and the only path for double precision.

#include <cstddef>
#include <utility>

namespace dicnet::kernels::scalar {

template <typename T>
void gemm(bool trans_a, bool trans_b, int m, int n, int k, T alpha, const T* a, int lda,
          const T* b, int ldb, T beta, T* c, int ldc) {
    for (int i = 0; i < m; ++i) {
        T* crow = c + static_cast<size_t>(i) * ldc;
        if (beta == T(0)) {
            for (int j = 0; j < n; ++j) crow[j] = T(0);
        } else if (beta != T(1)) {
            for (int j = 0; j < n; ++j) crow[j] *= beta;
        }
    }
    if (!trans_b) {
        // nn / tn: broadcast op(A)[i,p], stream rows of B.
        for (int i = 0; i < m; ++i) {
            T* crow = c + static_cast<size_t>(i) * ldc;
            for (int p = 0; p < k; ++p) {
                T av = trans_a ? a[static_cast<size_t>(p) * lda + i]
                               : a[static_cast<size_t>(i) * lda + p];
                av *= alpha;
                if (av == T(0)) continue;
                const T* brow = b + static_cast<size_t>(p) * ldb;
                for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
            }
        }
    } else {
        // nt / tt: dot products along k.
        for (int i = 0; i < m; ++i) {
            T* crow = c + static_cast<size_t>(i) * ldc;
            for (int j = 0; j < n; ++j) {
                const T* brow = b + static_cast<size_t>(j) * ldb;
                T acc = T(0);
                for (int p = 0; p < k; ++p) {
                    T av = trans_a ? a[static_cast<size_t>(p) * lda + i]
                                   : a[static_cast<size_t>(i) * lda + p];
                    acc += av * brow[p];
                }
                crow[j] += alpha * acc;
            }
        }
    }
}

template <typename T>
void add(const T* a, const T* b, T* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

template <typename T>
void sub(const T* a, const T* b, T* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

template <typename T>
void mul(const T* a, const T* b, T* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

template <typename T>
void axpy(T alpha, const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void scale(T alpha, T* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}

template <typename T>
void relu(const T* x, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

template <typename T>
void relu_backward(const T* x, const T* g, T* gx, size_t n) {
    for (size_t i = 0; i < n; ++i) gx[i] = x[i] > T(0) ? g[i] : T(0);
}

template <typename T>
void normalize_apply(const T* x, T mean, T inv_std, T* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = (x[i] - mean) * inv_std;
}

template <typename T>
double sum(const T* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]);
    return acc;
}

template <typename T>
double sumsq(const T* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double v = static_cast<double>(x[i]);
        acc += v * v;
    }
    return acc;
}

template <typename T>
double dot(const T* a, const T* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return acc;
}

// Two-pass population mean/variance, double accumulation.
template <typename T>
std::pair<double, double> mean_var(const T* x, size_t n) {
    if (n == 0) return {0.0, 0.0};
    double mean = sum(x, n) / static_cast<double>(n);
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double d = static_cast<double>(x[i]) - mean;
        acc += d * d;
    }
    return {mean, acc / static_cast<double>(n)};
}

}  // namespace dicnet::kernels::scalar
