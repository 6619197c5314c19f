#include "sedres/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace sedres::fft {
namespace {

std::mutex planner_mutex;

// FFTW-allocated buffers keep the SIMD alignment (and hence the codelets and
// rounding) identical from run to run.
template <typename T>
struct Buffer {
    T* data = nullptr;
    explicit Buffer(std::size_t n) : data(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))) {
        if (!data) throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(data); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
};

struct Plan {
    fftw_plan plan = nullptr;
    ~Plan() {
        if (plan) {
            std::lock_guard lock(planner_mutex);
            fftw_destroy_plan(plan);
        }
    }
};

std::vector<std::complex<double>> complex_transform(const std::vector<std::complex<double>>& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    Buffer<fftw_complex> in(n), out(n);
    Plan p;
    {
        std::lock_guard lock(planner_mutex);
        p.plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
    }
    if (!p.plan) throw std::runtime_error("fft: FFTW could not create a plan");
    std::copy(x.begin(), x.end(), reinterpret_cast<std::complex<double>*>(in.data));
    fftw_execute(p.plan);
    const auto* res = reinterpret_cast<const std::complex<double>*>(out.data);
    return {res, res + n};
}

} // namespace

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& x) {
    return complex_transform(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> backward(const std::vector<std::complex<double>>& x) {
    return complex_transform(x, FFTW_BACKWARD);
}

std::vector<std::complex<double>> forward_real(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    const std::size_t m = n / 2 + 1;
    Buffer<double> in(n);
    Buffer<fftw_complex> out(m);
    Plan p;
    {
        std::lock_guard lock(planner_mutex);
        p.plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data, out.data, FFTW_ESTIMATE);
    }
    if (!p.plan) throw std::runtime_error("fft: FFTW could not create a plan");
    std::copy(x.begin(), x.end(), in.data);
    fftw_execute(p.plan);
    const auto* res = reinterpret_cast<const std::complex<double>*>(out.data);
    return {res, res + m};
}

} // namespace sedres::fft
