#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace frlab::detail {
namespace {

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : ptr(fftw_alloc_complex(n == 0 ? 1 : n)) {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* ptr;
};

using PlanKey = std::tuple<std::vector<std::size_t>, std::vector<bool>, int>;

// The FFTW planner is not thread-safe; execution of an existing plan on
// fresh aligned buffers is.
std::mutex planner_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
    static std::map<PlanKey, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(const std::vector<std::size_t>& dims, const std::vector<bool>& axes, FftSign sign) {
    std::lock_guard lock(planner_mutex);
    PlanKey key{dims, axes, static_cast<int>(sign)};
    auto& cache = plan_cache();
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::vector<fftw_iodim> transform;
    std::vector<fftw_iodim> batch;
    std::ptrdiff_t stride = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        fftw_iodim d{static_cast<int>(dims[i]), static_cast<int>(stride), static_cast<int>(stride)};
        (axes[i] ? transform : batch).push_back(d);
        stride *= static_cast<std::ptrdiff_t>(dims[i]);
    }
    const auto total = static_cast<std::size_t>(stride);
    FftwBuffer in(total);
    FftwBuffer out(total);
    fftw_plan plan = fftw_plan_guru_dft(static_cast<int>(transform.size()), transform.data(),
                                        static_cast<int>(batch.size()), batch.data(), in.ptr, out.ptr,
                                        static_cast<int>(sign), FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("FFTW failed to create a plan");
    cache.emplace(std::move(key), plan);
    return plan;
}

}  // namespace

void dft_axes(ComplexVector& data, const std::vector<std::size_t>& dims, const std::vector<bool>& axes, FftSign sign) {
    if (axes.size() != dims.size()) throw std::invalid_argument("dft_axes: axes/dims rank mismatch");
    bool any = false;
    for (bool a : axes) any = any || a;
    if (!any || data.empty()) return;

    fftw_plan plan = get_plan(dims, axes, sign);
    FftwBuffer in(data.size());
    FftwBuffer out(data.size());
    std::memcpy(in.ptr, data.data(), data.size() * sizeof(fftw_complex));
    fftw_execute_dft(plan, in.ptr, out.ptr);
    std::memcpy(static_cast<void*>(data.data()), out.ptr, data.size() * sizeof(fftw_complex));
}

}  // namespace frlab::detail
