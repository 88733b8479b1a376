#pragma once

// Convergence-domain inequality systems for Koba-Nielsen integrals and the
// candidate pole hyperplanes they generate.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "koba/index.hpp"

namespace koba {

enum class Family { EQ_A, EQ_B, EQ_C, EQ_D, EQ_E };
std::string_view to_string(Family f);

enum class Field { R, C, Qp };
std::string_view to_string(Field f);
Field parse_field(std::string_view s);

/// Integer affine condition  sign * sum_{k in support} Re(s_k) + gamma > 0.
///
/// Every nonzero coefficient has the same sign, and gamma has that sign too;
/// the representation makes any other pattern unrepresentable.
struct AffineForm {
  Family family = Family::EQ_A;
  std::uint32_t subset = 0;            ///< bit (j-2) set <=> label j in J
  int sign = 1;                        ///< +1 or -1
  int gamma = 1;
  std::vector<std::uint32_t> support;  ///< ascending positions in index_set(N)

  [[nodiscard]] int coeff(std::size_t position) const;
  /// sign * sum Re(s_k) + gamma.
  [[nodiscard]] double slack(const SVector& s) const;
  /// sign * sum s_k + gamma, over the complex values.
  [[nodiscard]] cplx evaluate(const SVector& s) const;
  /// Labels j of the subset J, ascending.
  [[nodiscard]] std::vector<int> subset_labels() const;

  [[nodiscard]] std::string to_text(const IndexSet& idx) const;
  [[nodiscard]] std::string to_latex(const IndexSet& idx) const;

  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return a.sign == b.sign && a.gamma == b.gamma && a.support == b.support;
  }
};

struct InequalitySystem {
  int N = 0;
  std::vector<AffineForm> forms;
};

/// Largest N accepted by enumerate_inequalities (2^{N-1} forms).
inline constexpr int kMaxEnumerationN = 26;

/// The 2^{N-1} - N - 1 forms of families EQ_A..EQ_E, in family order and,
/// within a family, ascending subset mask. Throws std::invalid_argument for
/// N < 4 and std::length_error for N > kMaxEnumerationN.
InequalitySystem enumerate_inequalities(int N);

/// Closed-form count 2^{N-1} - N - 1.
[[nodiscard]] constexpr std::uint64_t expected_form_count(int N) {
  return (std::uint64_t{1} << (N - 1)) - static_cast<std::uint64_t>(N) - 1;
}

enum class Membership { inside, outside, boundary };
std::string_view to_string(Membership m);

struct FormSlack {
  std::size_t form_index = 0;
  double slack = 0.0;
};

struct MembershipReport {
  bool inside = false;
  std::vector<FormSlack> violated;  ///< slack < -tol
  std::vector<FormSlack> boundary;  ///< |slack| <= tol

  /// outside dominates boundary.
  [[nodiscard]] Membership status() const;
};

inline constexpr double kDefaultMembershipTol = 1e-12;

/// Evaluates every form on Re(s). Uses the OpenMP kernel for large systems;
/// check_membership_serial is the reference it must agree with exactly.
MembershipReport check_membership(const InequalitySystem& sys, const SVector& s,
                                  double tol = kDefaultMembershipTol);
MembershipReport check_membership_serial(const InequalitySystem& sys, const SVector& s,
                                         double tol = kDefaultMembershipTol);

/// Convenience: membership against enumerate_inequalities(s.N()).
Membership domain_status(const SVector& s, double tol = kDefaultMembershipTol);

/// True iff every Re(s_ij) lies strictly in (-2/(N-2), -2/N).
bool box_contains(int N, const SVector& s);

/// Hyperplanes  sign*sum s_k + gamma + t*step = 0.  For Qp only t = 0 is
/// used and the condition applies to real parts.
struct PoleFamily {
  AffineForm form;
  double step = 1.0;
  bool real_part_only = false;
};

std::vector<PoleFamily> pole_families(int N, Field field);

struct PoleHit {
  std::size_t family_index = 0;
  double t = 0.0;
  double residual = 0.0;
};

/// Every (family, t <= t_max) whose hyperplane passes within tol of s.
/// For R/C, t runs over the multiples of the family step up to t_max.
std::vector<PoleHit> is_on_pole(const SVector& s, Field field, int t_max, double tol);
std::vector<PoleHit> is_on_pole(const std::vector<PoleFamily>& families, const SVector& s,
                                int t_max, double tol);

}  // namespace koba
