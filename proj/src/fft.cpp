#include "fft.hpp"

#include "omabench/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace omabench::detail {

namespace {

// The FFTW planner is not reentrant; execution on private buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    void* ptr;
};

struct Plan {
    explicit Plan(fftw_plan p) : plan(p) {
        if (!plan) throw NumericalError("FFTW could not create a plan");
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    fftw_plan plan;
};

}  // namespace

Eigen::VectorXcd real_forward(std::span<const double> input) {
    const auto n = static_cast<int>(input.size());
    const int bins = n / 2 + 1;
    FftwBuffer in(sizeof(double) * n);
    FftwBuffer out(sizeof(fftw_complex) * bins);
    auto* in_ptr = static_cast<double*>(in.ptr);
    auto* out_ptr = static_cast<fftw_complex*>(out.ptr);

    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_r2c_1d(n, in_ptr, out_ptr, FFTW_ESTIMATE);
    }
    Plan plan(raw);
    std::copy(input.begin(), input.end(), in_ptr);
    fftw_execute(plan.plan);

    Eigen::VectorXcd result(bins);
    for (int k = 0; k < bins; ++k) {
        result(k) = {out_ptr[k][0], out_ptr[k][1]};
    }
    return result;
}

Eigen::VectorXd real_inverse(const Eigen::VectorXcd& bins, Eigen::Index n) {
    if (bins.size() != n / 2 + 1) {
        throw InvalidInput("bin count does not match the output length");
    }
    FftwBuffer in(sizeof(fftw_complex) * bins.size());
    FftwBuffer out(sizeof(double) * n);
    auto* in_ptr = static_cast<fftw_complex*>(in.ptr);
    auto* out_ptr = static_cast<double*>(out.ptr);

    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_c2r_1d(static_cast<int>(n), in_ptr, out_ptr, FFTW_ESTIMATE);
    }
    Plan plan(raw);
    for (Eigen::Index k = 0; k < bins.size(); ++k) {
        in_ptr[k][0] = bins(k).real();
        in_ptr[k][1] = bins(k).imag();
    }
    fftw_execute(plan.plan);
    return Eigen::Map<const Eigen::VectorXd>(out_ptr, n);
}

}  // namespace omabench::detail
