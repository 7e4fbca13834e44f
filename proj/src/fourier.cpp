#include "qmoa/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmoa/aligned.hpp"

namespace qmoa {
namespace {

// The FFTW planner is not reentrant; execution of existing plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierPlan::Impl {
    int dims;
    std::size_t n;
    std::size_t total;
    fftw_plan full[2] = {nullptr, nullptr};
    std::vector<std::pair<fftw_plan, fftw_plan>> per_dim;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        for (auto p : full) {
            if (p) fftw_destroy_plan(p);
        }
        for (auto& [f, b] : per_dim) {
            if (f) fftw_destroy_plan(f);
            if (b) fftw_destroy_plan(b);
        }
    }
};

FourierPlan::FourierPlan(int dims, std::size_t points_per_dim) : impl_(std::make_unique<Impl>()) {
    if (dims < 1 || points_per_dim < 1) throw std::invalid_argument("FourierPlan: bad shape");
    std::lock_guard lock(planner_mutex());
    impl_->dims = dims;
    impl_->n = points_per_dim;
    impl_->total = 1;
    for (int d = 0; d < dims; ++d) impl_->total *= points_per_dim;

    // ESTIMATE never touches the buffer and picks the same algorithm every
    // run, so results are reproducible across processes.
    std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>> scratch(impl_->total);
    const unsigned flags = FFTW_ESTIMATE;
    std::vector<int> shape(dims, static_cast<int>(points_per_dim));
    fftw_complex* buf = as_fftw(scratch.data());
    impl_->full[0] = fftw_plan_dft(dims, shape.data(), buf, buf, FFTW_FORWARD, flags);
    impl_->full[1] = fftw_plan_dft(dims, shape.data(), buf, buf, FFTW_BACKWARD, flags);

    const auto N = static_cast<std::ptrdiff_t>(points_per_dim);
    for (int d = 0; d < dims; ++d) {
        std::ptrdiff_t stride = 1;
        for (int e = 0; e < d; ++e) stride *= N;
        const std::ptrdiff_t outer = static_cast<std::ptrdiff_t>(impl_->total) / (stride * N);
        fftw_iodim64 line{N, stride, stride};
        fftw_iodim64 loops[2] = {{outer, stride * N, stride * N}, {stride, 1, 1}};
        fftw_plan f = fftw_plan_guru64_dft(1, &line, 2, loops, buf, buf, FFTW_FORWARD, flags);
        fftw_plan b = fftw_plan_guru64_dft(1, &line, 2, loops, buf, buf, FFTW_BACKWARD, flags);
        impl_->per_dim.emplace_back(f, b);
    }
    for (auto p : impl_->full) {
        if (!p) throw std::runtime_error("FourierPlan: FFTW failed to create a plan");
    }
    for (auto& [f, b] : impl_->per_dim) {
        if (!f || !b) throw std::runtime_error("FourierPlan: FFTW failed to create a plan");
    }
}

FourierPlan::~FourierPlan() = default;
FourierPlan::FourierPlan(FourierPlan&&) noexcept = default;
FourierPlan& FourierPlan::operator=(FourierPlan&&) noexcept = default;

int FourierPlan::dims() const { return impl_->dims; }
std::size_t FourierPlan::points_per_dim() const { return impl_->n; }

void FourierPlan::transform(std::span<std::complex<double>> data, FourierDirection direction) const {
    if (data.size() != impl_->total) throw std::invalid_argument("FourierPlan: buffer size mismatch");
    fftw_plan p = impl_->full[direction == FourierDirection::forward ? 0 : 1];
    fftw_execute_dft(p, as_fftw(data.data()), as_fftw(data.data()));
}

void FourierPlan::transform_dim(std::span<std::complex<double>> data, int dim, FourierDirection direction) const {
    if (data.size() != impl_->total) throw std::invalid_argument("FourierPlan: buffer size mismatch");
    if (dim < 0 || dim >= impl_->dims) throw std::out_of_range("FourierPlan: dimension out of range");
    const auto& [f, b] = impl_->per_dim[dim];
    fftw_execute_dft(direction == FourierDirection::forward ? f : b, as_fftw(data.data()), as_fftw(data.data()));
}

const FourierPlan& fourier_plan(int dims, std::size_t points_per_dim) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::size_t>, std::unique_ptr<FourierPlan>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{dims, points_per_dim}];
    if (!slot) slot = std::make_unique<FourierPlan>(dims, points_per_dim);
    return *slot;
}

}  // namespace qmoa
