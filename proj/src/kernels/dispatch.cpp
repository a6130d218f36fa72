#include "glc3d/kernels.hpp"

#include "glc3d/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace glc3d::kernels {

namespace {

// -1: automatic; otherwise the forced Isa value.
std::atomic<int> forced{-1};

Isa detect() noexcept {
    if (const char* env = std::getenv("GLC3D_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
        return Isa::scalar;
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw ContractError(std::string("kernel size mismatch: ") + what);
    }
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(GLC3D_HAVE_AVX2_KERNELS)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept {
    static const Isa detected = detect();
    const int f = forced.load(std::memory_order_relaxed);
    if (f >= 0) {
        const auto isa = static_cast<Isa>(f);
        return isa_supported(isa) ? isa : Isa::scalar;
    }
    return detected;
}

void force_isa(std::optional<Isa> isa) noexcept {
    forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void linear_scores(const ColumnMatrix& x, std::span<const double> coefficients, std::span<double> out) {
    require(coefficients.size() == x.cols(), "coefficients vs columns");
    require(out.size() == x.rows(), "output vs rows");
    const double* cols = x.data().data();
#if defined(GLC3D_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) {
        avx2::linear_scores(cols, x.rows(), x.cols(), coefficients.data(), out.data());
        return;
    }
#endif
    scalar::linear_scores(cols, x.rows(), x.cols(), coefficients.data(), out.data());
}

void box_mask(const ColumnMatrix& x, std::span<const double> lo, std::span<const double> hi,
              std::span<std::uint8_t> mask) {
    require(lo.size() == x.cols() && hi.size() == x.cols(), "bounds vs columns");
    require(mask.size() == x.rows(), "mask vs rows");
    const double* cols = x.data().data();
#if defined(GLC3D_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) {
        avx2::box_mask(cols, x.rows(), x.cols(), lo.data(), hi.data(), mask.data());
        return;
    }
#endif
    scalar::box_mask(cols, x.rows(), x.cols(), lo.data(), hi.data(), mask.data());
}

void threshold_mask(std::span<const double> scores, double threshold, std::span<std::uint8_t> mask) {
    require(mask.size() == scores.size(), "mask vs scores");
#if defined(GLC3D_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) {
        avx2::threshold_mask(scores.data(), scores.size(), threshold, mask.data());
        return;
    }
#endif
    scalar::threshold_mask(scores.data(), scores.size(), threshold, mask.data());
}

}  // namespace glc3d::kernels
