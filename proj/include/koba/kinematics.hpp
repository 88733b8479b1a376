#pragma once

// Momentum configurations in C^{l+1} with the Minkowski pairing of signature
// (-,+,...,+), the map k -> s_ij = k_i.k_j, and explicit scattering solutions.

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "koba/index.hpp"

namespace koba {

/// Raised when a constructor is asked for a configuration it cannot build.
class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MomentumVector = std::vector<cplx>;  ///< (k_0, k_1, ..., k_l)

struct MomentumConfig {
  int N = 0;
  int l = 0;
  /// N vectors, or N-1 when k_N is left implicit (k_N = -sum of the others).
  std::vector<MomentumVector> vectors;

  /// Throws std::invalid_argument if the vector count or lengths are off.
  void validate() const;
};

/// -a0 b0 + sum_m a_m b_m. Bilinear, no conjugation.
cplx minkowski_product(const MomentumVector& a, const MomentumVector& b);

/// s_ij = k_i.k_j over index_set(N). Only k_1..k_{N-1} are used.
SVector momentum_to_s(const MomentumConfig& cfg);

struct KinematicsReport {
  double conservation_residual = 0.0;        ///< Euclidean norm of sum k_i
  std::vector<double> mass_shell_residuals;  ///< |k_i.k_i - 2|
  bool pass = false;
};

/// With N-1 vectors the missing k_N is completed by conservation before the
/// mass-shell check.
KinematicsReport check_kinematics(const MomentumConfig& cfg, double tol);

/// Real solution with t_i = sqrt(2/(N-1)) and mutually orthogonal spatial
/// parts of norm sqrt(2N/(N-1)). Needs 4 <= N <= l+1; throws
/// unsupported_error otherwise.
MomentumConfig build_prop3(int N, int l);

/// l = 2 family with t_i = sqrt(-2)/(N-1), spatial parts of norm
/// sqrt(2N(N-2))/(N-1) at angles 2 pi (i-1)/(N-1), t_N = -sqrt(-2), k_N spatial 0.
MomentumConfig build_equidistributed(int N);

struct UBoxParams {
  int N = 0;
  int l = 0;
  double B = 0.0;
  double C = 0.0;

  /// 0 < B < C < 1/(N-2) and C - B = 1/N (to 1e-12).
  void validate() const;
  /// B = 1/(N(N-2)), C = B + 1/N: the midpoint of the admissible B range.
  static UBoxParams defaults(int N, int l);
};

/// `count` configurations of N-1 vectors drawn uniformly from the open box U.
/// Draw c uses the stream keyed by (seed, c).
std::vector<MomentumConfig> sample_U(const UBoxParams& p, std::uint64_t seed, int count);

enum class Scattering { feasible, outside_domain, on_pole, constraint_violated };
std::string_view to_string(Scattering s);

/// constraint_violated if check_kinematics fails; feasible if the products lie
/// in the box (-2/(N-2), -2/N); otherwise on_pole when a real pole hyperplane
/// with t <= 2N passes within 1e-9, else outside_domain.
Scattering scattering_feasible(const MomentumConfig& cfg, double tol);

}  // namespace koba
