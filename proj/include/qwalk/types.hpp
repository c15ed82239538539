#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qw {

using cplx = std::complex<double>;
using Vertex = std::size_t;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Invalid input or configuration (maps to exit code 1).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A tolerance was breached during computation (maps to exit code 2).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct VertexPair {
    Vertex source = 0;
    Vertex target = 1;
};

inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kDefaultPstTol = 1e-9;
inline constexpr double kDefaultLambda = 0.9;
inline constexpr std::uint64_t kDefaultSeed = 1;

// max |U^dagger U - I|
inline double unitarity_error(const CMatrix& u) {
    const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

} // namespace qw
