// Runtime ISA selection and the public kernel entry points.

#include "dicnet/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "scalar_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DICNET_X86 1
#include "avx2_kernels.hpp"
#else
#define DICNET_X86 0
#endif

namespace dicnet::kernels {

bool cpu_supports_avx2() {
#if DICNET_X86 && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Isa detect_isa() {
    if (const char* env = std::getenv("DICNET_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_supports_avx2()) return Isa::avx2;
    }
    return cpu_supports_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa> g_isa{detect_isa()};

inline bool use_avx2() {
#if DICNET_X86
    return g_isa.load(std::memory_order_relaxed) == Isa::avx2;
#else
    return false;
#endif
}

}  // namespace

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_supports_avx2()) isa = Isa::scalar;
    g_isa.store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if DICNET_X86
#define DISPATCH_F32(fn, ...) \
    do { \
        if (use_avx2()) return avx2::fn##_f32(__VA_ARGS__); \
        return scalar::fn<float>(__VA_ARGS__); \
    } while (0)
#else
#define DISPATCH_F32(fn, ...) return scalar::fn<float>(__VA_ARGS__)
#endif

void gemm(bool ta, bool tb, int m, int n, int k, float alpha, const float* a, int lda,
          const float* b, int ldb, float beta, float* c, int ldc) {
    DISPATCH_F32(gemm, ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
void gemm(bool ta, bool tb, int m, int n, int k, double alpha, const double* a, int lda,
          const double* b, int ldb, double beta, double* c, int ldc) {
    scalar::gemm<double>(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

void add(const float* a, const float* b, float* out, size_t n) { DISPATCH_F32(add, a, b, out, n); }
void add(const double* a, const double* b, double* out, size_t n) { scalar::add(a, b, out, n); }

void sub(const float* a, const float* b, float* out, size_t n) { DISPATCH_F32(sub, a, b, out, n); }
void sub(const double* a, const double* b, double* out, size_t n) { scalar::sub(a, b, out, n); }

void mul(const float* a, const float* b, float* out, size_t n) { DISPATCH_F32(mul, a, b, out, n); }
void mul(const double* a, const double* b, double* out, size_t n) { scalar::mul(a, b, out, n); }

void axpy(float alpha, const float* x, float* y, size_t n) { DISPATCH_F32(axpy, alpha, x, y, n); }
void axpy(double alpha, const double* x, double* y, size_t n) { scalar::axpy(alpha, x, y, n); }

void scale(float alpha, float* x, size_t n) { DISPATCH_F32(scale, alpha, x, n); }
void scale(double alpha, double* x, size_t n) { scalar::scale(alpha, x, n); }

void relu(const float* x, float* y, size_t n) { DISPATCH_F32(relu, x, y, n); }
void relu(const double* x, double* y, size_t n) { scalar::relu(x, y, n); }

void relu_backward(const float* x, const float* g, float* gx, size_t n) {
    DISPATCH_F32(relu_backward, x, g, gx, n);
}
void relu_backward(const double* x, const double* g, double* gx, size_t n) {
    scalar::relu_backward(x, g, gx, n);
}

void normalize_apply(const float* x, float mean, float inv_std, float* y, size_t n) {
    DISPATCH_F32(normalize_apply, x, mean, inv_std, y, n);
}
void normalize_apply(const double* x, double mean, double inv_std, double* y, size_t n) {
    scalar::normalize_apply(x, mean, inv_std, y, n);
}

double sum(const float* x, size_t n) {
#if DICNET_X86
    if (use_avx2()) return avx2::sum_f32(x, n);
#endif
    return scalar::sum(x, n);
}
double sum(const double* x, size_t n) { return scalar::sum(x, n); }

double sumsq(const float* x, size_t n) {
#if DICNET_X86
    if (use_avx2()) return avx2::sumsq_f32(x, n);
#endif
    return scalar::sumsq(x, n);
}
double sumsq(const double* x, size_t n) { return scalar::sumsq(x, n); }

double dot(const float* a, const float* b, size_t n) {
#if DICNET_X86
    if (use_avx2()) return avx2::dot_f32(a, b, n);
#endif
    return scalar::dot(a, b, n);
}
double dot(const double* a, const double* b, size_t n) { return scalar::dot(a, b, n); }

std::pair<double, double> mean_var(const float* x, size_t n) {
#if DICNET_X86
    if (use_avx2()) return avx2::mean_var_f32(x, n);
#endif
    return scalar::mean_var(x, n);
}
std::pair<double, double> mean_var(const double* x, size_t n) { return scalar::mean_var(x, n); }

}  // namespace dicnet::kernels
