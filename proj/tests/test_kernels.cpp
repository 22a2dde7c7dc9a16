#include <doctest.h>

#include <cmath>
#include <vector>

#include "dicnet/kernels.hpp"
#include "dicnet/rng.hpp"

using namespace dicnet;

namespace {

struct IsaGuard {
    kernels::Isa saved;
    explicit IsaGuard(kernels::Isa isa) : saved(kernels::active_isa()) { kernels::set_isa(isa); }
    ~IsaGuard() { kernels::set_isa(saved); }
};

std::vector<float> random_vec(Rng& rng, size_t n, double lo = -2.0, double hi = 2.0) {
    std::vector<float> v(n);
    for (auto& x : v) x = static_cast<float>(rng.uniform(lo, hi));
    return v;
}

std::vector<double> widen(const std::vector<float>& v) {
    return std::vector<double>(v.begin(), v.end());
}

// Max |a-b| / max(1, |b|)
double max_rel_diff(const std::vector<float>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = std::abs(static_cast<double>(a[i]) - b[i]) / std::max(1.0, std::abs(b[i]));
        m = std::max(m, d);
    }
    return m;
}

}  // namespace

TEST_CASE("gemm variants match double reference on both ISAs") {
    Rng rng(42);
    const kernels::Isa isas[] = {kernels::Isa::scalar, kernels::Isa::avx2};
    const int sizes[][3] = {{1, 1, 1}, {3, 7, 5}, {8, 16, 9}, {17, 33, 21}, {5, 64, 40}};

    for (auto [m, n, k] : sizes) {
        for (bool ta : {false, true}) {
            for (bool tb : {false, true}) {
                auto a = random_vec(rng, static_cast<size_t>(m) * k);
                auto b = random_vec(rng, static_cast<size_t>(k) * n);
                auto c0 = random_vec(rng, static_cast<size_t>(m) * n);
                int lda = ta ? m : k;
                int ldb = tb ? k : n;

                std::vector<double> cref = widen(c0);
                kernels::gemm(ta, tb, m, n, k, 1.5, widen(a).data(), lda, widen(b).data(),
                              ldb, 0.5, cref.data(), n);

                for (kernels::Isa isa : isas) {
                    if (isa == kernels::Isa::avx2 && !kernels::cpu_supports_avx2()) continue;
                    IsaGuard guard(isa);
                    std::vector<float> c = c0;
                    kernels::gemm(ta, tb, m, n, k, 1.5f, a.data(), lda, b.data(), ldb, 0.5f,
                                  c.data(), n);
                    CHECK(max_rel_diff(c, cref) < 2e-5);
                }
            }
        }
    }
}

TEST_CASE("gemm beta semantics") {
    // beta=0 must overwrite even if C holds NaN.
    std::vector<float> a = {1.0f, 2.0f};
    std::vector<float> b = {3.0f, 4.0f};
    std::vector<float> c = {std::nanf(""), 0.0f};
    kernels::gemm(false, false, 1, 1, 2, 1.0f, a.data(), 2, b.data(), 1, 0.0f, c.data(), 1);
    CHECK(c[0] == doctest::Approx(11.0f));
}

TEST_CASE("elementwise kernels equivalent across ISAs") {
    if (!kernels::cpu_supports_avx2()) return;
    Rng rng(7);
    for (size_t n : {1ul, 7ul, 8ul, 65ul, 1000ul}) {
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);

        std::vector<float> r_scalar(n), r_avx(n);
        {
            IsaGuard g(kernels::Isa::scalar);
            kernels::add(x.data(), y.data(), r_scalar.data(), n);
        }
        {
            IsaGuard g(kernels::Isa::avx2);
            kernels::add(x.data(), y.data(), r_avx.data(), n);
        }
        CHECK(r_scalar == r_avx);

        {
            IsaGuard g(kernels::Isa::scalar);
            kernels::relu_backward(x.data(), y.data(), r_scalar.data(), n);
        }
        {
            IsaGuard g(kernels::Isa::avx2);
            kernels::relu_backward(x.data(), y.data(), r_avx.data(), n);
        }
        CHECK(r_scalar == r_avx);

        std::vector<float> ax_s = y, ax_v = y;
        {
            IsaGuard g(kernels::Isa::scalar);
            kernels::axpy(0.37f, x.data(), ax_s.data(), n);
        }
        {
            IsaGuard g(kernels::Isa::avx2);
            kernels::axpy(0.37f, x.data(), ax_v.data(), n);
        }
        for (size_t i = 0; i < n; ++i) CHECK(ax_s[i] == doctest::Approx(ax_v[i]).epsilon(1e-6));

        double s1, s2;
        {
            IsaGuard g(kernels::Isa::scalar);
            s1 = kernels::sum(x.data(), n);
        }
        {
            IsaGuard g(kernels::Isa::avx2);
            s2 = kernels::sum(x.data(), n);
        }
        CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));

        {
            IsaGuard g(kernels::Isa::scalar);
            s1 = kernels::dot(x.data(), y.data(), n);
        }
        {
            IsaGuard g(kernels::Isa::avx2);
            s2 = kernels::dot(x.data(), y.data(), n);
        }
        CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));

        auto [m1, v1] = kernels::mean_var(x.data(), n);
        IsaGuard g(kernels::Isa::scalar);
        auto [m2, v2] = kernels::mean_var(x.data(), n);
        CHECK(m1 == doctest::Approx(m2).epsilon(1e-12));
        CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
    }
}

TEST_CASE("mean_var basics") {
    std::vector<float> x = {1.0f, 2.0f, 3.0f, 4.0f};
    auto [m, v] = kernels::mean_var(x.data(), x.size());
    CHECK(m == doctest::Approx(2.5));
    CHECK(v == doctest::Approx(1.25));

    std::vector<float> c(17, 5.0f);
    auto [mc, vc] = kernels::mean_var(c.data(), c.size());
    CHECK(mc == doctest::Approx(5.0));
    CHECK(vc == doctest::Approx(0.0));
}

TEST_CASE("relu clamps negatives") {
    std::vector<float> x = {-1.0f, 0.0f, 2.5f};
    std::vector<float> y(3);
    kernels::relu(x.data(), y.data(), 3);
    CHECK(y[0] == 0.0f);
    CHECK(y[1] == 0.0f);
    CHECK(y[2] == 2.5f);
}
