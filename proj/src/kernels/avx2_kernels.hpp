#pragma once

// Declarations of the AVX2 float kernels. Definitions live in
// kernels_avx2.cpp, the only translation unit built with -mavx2 -mfma.

#include <cstddef>
#include <utility>

namespace dicnet::kernels::avx2 {

void gemm_f32(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a,
              int lda, const float* b, int ldb, float beta, float* c, int ldc);

void add_f32(const float* a, const float* b, float* out, size_t n);
void sub_f32(const float* a, const float* b, float* out, size_t n);
void mul_f32(const float* a, const float* b, float* out, size_t n);
void axpy_f32(float alpha, const float* x, float* y, size_t n);
void scale_f32(float alpha, float* x, size_t n);
void relu_f32(const float* x, float* y, size_t n);
void relu_backward_f32(const float* x, const float* g, float* gx, size_t n);
void normalize_apply_f32(const float* x, float mean, float inv_std, float* y, size_t n);

double sum_f32(const float* x, size_t n);
double sumsq_f32(const float* x, size_t n);
double dot_f32(const float* a, const float* b, size_t n);
std::pair<double, double> mean_var_f32(const float* x, size_t n);

}  // namespace dicnet::kernels::avx2
