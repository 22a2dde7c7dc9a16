#pragma once

#include <cstddef>
#include <utility>

namespace dicnet::kernels {

// Runtime-selected instruction set for the float kernels. Double-precision
// kernels always run the scalar reference path. Override with
// DICNET_KERNELS=scalar|avx2 in the environment, or set_isa() in tests.
enum class Isa { scalar, avx2 };

bool cpu_supports_avx2();
Isa active_isa();
void set_isa(Isa isa);
const char* isa_name(Isa isa);

// C = alpha * op(A) * op(B) + beta * C, row-major.
// op(A) is m x k, op(B) is k x n; lda/ldb/ldc are leading dimensions of the
// stored (untransposed) matrices.
void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a,
          int lda, const float* b, int ldb, float beta, float* c, int ldc);
void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha, const double* a,
          int lda, const double* b, int ldb, double beta, double* c, int ldc);

void add(const float* a, const float* b, float* out, size_t n);
void add(const double* a, const double* b, double* out, size_t n);

void sub(const float* a, const float* b, float* out, size_t n);
void sub(const double* a, const double* b, double* out, size_t n);

void mul(const float* a, const float* b, float* out, size_t n);
void mul(const double* a, const double* b, double* out, size_t n);

// y += alpha * x
void axpy(float alpha, const float* x, float* y, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);

void scale(float alpha, float* x, size_t n);
void scale(double alpha, double* x, size_t n);

void relu(const float* x, float* y, size_t n);
void relu(const double* x, double* y, size_t n);

// gx = g where x > 0, else 0
void relu_backward(const float* x, const float* g, float* gx, size_t n);
void relu_backward(const double* x, const double* g, double* gx, size_t n);

// y = (x - mean) * inv_std
void normalize_apply(const float* x, float mean, float inv_std, float* y, size_t n);
void normalize_apply(const double* x, double mean, double inv_std, double* y, size_t n);

double sum(const float* x, size_t n);
double sum(const double* x, size_t n);

double sumsq(const float* x, size_t n);
double sumsq(const double* x, size_t n);

double dot(const float* a, const float* b, size_t n);
double dot(const double* a, const double* b, size_t n);

// Population mean and variance, double accumulation in every path.
std::pair<double, double> mean_var(const float* x, size_t n);
std::pair<double, double> mean_var(const double* x, size_t n);

}  // namespace dicnet::kernels
