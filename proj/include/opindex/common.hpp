#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace opindex {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Default tolerances (overridable via RunConfig where it matters).
struct Tol {
    static constexpr double algebraic = 1e-10;   // algebraic identities
    static constexpr double limit_probe = 1e-8;  // numerical limit probes
    static constexpr double trace_guard = 1e-12; // finite-rank guards
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace opindex
