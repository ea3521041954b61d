#include "displab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace displab {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

std::mutex plan_mutex;

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft on
// caller-owned buffers is. Plans are cached per (rank, size, direction).
fftw_plan get_plan(int rank, int n, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(rank, n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> buf(
        rank == 1 ? static_cast<size_t>(n) : static_cast<size_t>(n) * n);
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan p = rank == 1
                      ? fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE)
                      : fftw_plan_dft_2d(n, n, ptr, ptr, sign, FFTW_ESTIMATE);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, p);
    return p;
}

}  // namespace

void fft_1d(std::vector<std::complex<double>>& data, bool inverse) {
    int n = static_cast<int>(data.size());
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft_1d: size must be a power of two");
    fftw_plan p = get_plan(1, n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

void fft_2d(std::vector<std::complex<double>>& data, int n, bool inverse) {
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft_2d: size must be a power of two");
    if (data.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("fft_2d: data size mismatch");
    fftw_plan p = get_plan(2, n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace displab
