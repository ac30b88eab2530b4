#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dwlink {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

// Default numerical tolerance for the floating-point engine.
inline constexpr double kTol = 1e-9;
// Tolerance for "this float must be an integer" assertions.
inline constexpr double kIntTol = 1e-6;

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline cmat kron(const cmat& a, const cmat& b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline bool near_zero(const cmat& m, double tol = kTol) {
    return m.size() == 0 || m.cwiseAbs().maxCoeff() < tol;
}

inline bool near(const cmat& a, const cmat& b, double tol = kTol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return near_zero(a - b, tol);
}

inline long long round_to_int(double x, double tol = kIntTol) {
    double r = std::round(x);
    if (std::abs(x - r) > tol)
        throw numeric_error("value " + std::to_string(x) + " is not an integer within tolerance");
    return static_cast<long long>(r);
}

inline long long round_to_int(cplx z, double tol = kIntTol) {
    if (std::abs(z.imag()) > tol)
        throw numeric_error("value has nonzero imaginary part " + std::to_string(z.imag()));
    return round_to_int(z.real(), tol);
}

// Deterministic RNG. splitmix64 core with an explicit Box-Muller normal, so
// that output does not depend on the standard library's distribution
// implementations.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0,1].
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = next_uniform();
        double v = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx next_cplx_normal() {
        double re = next_normal();
        double im = next_normal();
        return {re, im};
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a, used to derive deterministic sub-seeds from string keys.
inline std::uint64_t hash_key(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace dwlink
