#pragma once

#include <complex>
#include <cstdint>

namespace wsolve {

using cplx = std::complex<double>;

// Counter-based deterministic generator: the draw stream depends only on
// (seed, number of draws so far), never on thread scheduling or platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(finalize(seed)), counter_(0) {}

    std::uint64_t next_u64() {
        return finalize(seed_ + 0x9e3779b97f4a7c15ULL * ++counter_);
    }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Real and imaginary parts independent standard normals.
    cplx normal_complex() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    // e^{i theta}, theta uniform in [0, 2 pi).
    cplx unit_complex() {
        double theta = 2.0 * 3.14159265358979323846 * uniform();
        return {std::cos(theta), std::sin(theta)};
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t finalize(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace wsolve
