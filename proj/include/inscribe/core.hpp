#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace inscribe {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Eigen::VectorXd;
using MatrixXd = Eigen::MatrixXd;

inline constexpr double kTau = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

// Pairwise distances below this are treated as a collision everywhere.
inline constexpr double kCoincidenceThreshold = 1e-14;

struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct constructibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct rank_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct constraint_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct extraction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Seeded random source.  Uniform doubles come from raw 64-bit draws so the
/// stream is identical across standard libraries for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        // Marsaglia polar method
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    /// Uniform rotation in SO(k).  k=3 uses Shoemake quaternion sampling,
    /// k=2 a uniform angle; other k via QR of a Gaussian matrix with a
    /// determinant fix-up.
    MatrixXd rotation(int k) {
        if (k == 2) {
            const double a = uniform(0.0, kTau);
            MatrixXd r(2, 2);
            r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
            return r;
        }
        if (k == 3) {
            const double u1 = uniform(), u2 = uniform(), u3 = uniform();
            const double x = std::sqrt(1 - u1) * std::sin(kTau * u2);
            const double y = std::sqrt(1 - u1) * std::cos(kTau * u2);
            const double z = std::sqrt(u1) * std::sin(kTau * u3);
            const double w = std::sqrt(u1) * std::cos(kTau * u3);
            return Eigen::Quaterniond(w, x, y, z).toRotationMatrix();
        }
        MatrixXd g(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) g(i, j) = normal();
        Eigen::HouseholderQR<MatrixXd> qr(g);
        MatrixXd q = qr.householderQ();
        VectorXd d = qr.matrixQR().diagonal();
        for (int i = 0; i < k; ++i)
            if (d(i) < 0) q.col(i) = -q.col(i);
        if (q.determinant() < 0) q.col(0) = -q.col(0);
        return q;
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Worker count: INSCRIBE_THREADS if set, else hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("INSCRIBE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1u : hc;
}

/// Chunked parallel loop over [0, n).  Results must be aggregated
/// order-independently by the caller.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(thread_count(), n == 0 ? 1 : n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& t : pool) t.join();
}

inline double wrap_angle(double t) {
    t = std::fmod(t, kTau);
    return t < 0 ? t + kTau : t;
}

}  // namespace inscribe
