#include "amalgam/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "amalgam/errors.hpp"

namespace amalgam::fft {

namespace {

using Key = std::tuple<std::size_t, std::size_t, int>;

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::span<const std::size_t> extents, int sign) {
        Key key{extents[0], extents.size() > 1 ? extents[1] : 0, sign};
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::size_t total = extents.size() > 1 ? extents[0] * extents[1] : extents[0];
        std::vector<std::complex<double>> a(total), b(total);
        int dims[2] = {static_cast<int>(extents[0]), extents.size() > 1 ? static_cast<int>(extents[1]) : 1};
        // FFTW_UNALIGNED keeps the plan valid for arbitrary std::vector storage and
        // rules out alignment-dependent codelet choices.
        fftw_plan plan = fftw_plan_dft(static_cast<int>(extents.size()), dims,
                                       reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw Error("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

} // namespace

void transform(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
               std::span<const std::size_t> extents, Direction direction) {
    if (extents.empty() || extents.size() > 2) throw InvalidParam("FFT rank must be 1 or 2");
    std::size_t total = extents.size() > 1 ? extents[0] * extents[1] : extents[0];
    if (in.size() != total || out.size() != total) throw InvalidParam("FFT buffer size mismatch");
    if (in.data() == out.data()) throw InvalidParam("FFT must be out-of-place");
    fftw_plan plan = cache().get(extents, direction == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD);
    // Out-of-place complex transforms leave the input untouched.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace amalgam::fft
