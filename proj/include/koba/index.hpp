#pragma once

// Canonical labelling of the exponents s_ij of a Koba-Nielsen integral and the
// SVector container shared by every other module.

#include <complex>
#include <cstddef>
#include <compare>
#include <span>
#include <string>
#include <initializer_list>
#include <vector>

namespace koba {

using cplx = std::complex<double>;

/// Label ij of one exponent. Stored in normalized orientation: (1,j), (N-1,j)
/// with 2 <= j <= N-2, or (i,j) with 2 <= i < j <= N-2.
struct PairIndex {
  int i = 0;
  int j = 0;

  /// Normalizes an unordered pair {a,b} for ambient N; throws
  /// std::invalid_argument when {a,b} is not one of the d labels.
  static PairIndex make(int N, int a, int b);

  [[nodiscard]] bool is_fixed_zero(int /*N*/) const { return i == 1; }
  [[nodiscard]] bool is_fixed_one(int N) const { return i == N - 1; }
  [[nodiscard]] bool is_mobile(int N) const { return i != 1 && i != N - 1; }

  [[nodiscard]] std::string name() const;  // "s12", "s4_10", ...

  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

/// Ordered list of the d = N(N-3)/2 labels for a fixed N >= 4.
///
/// Order is lexicographic in (i,j) under 1 < 2 < ... < N-2 < N-1, so the
/// (1,j) block comes first, then the mobile pairs, then the (N-1,j) block.
class IndexSet {
 public:
  explicit IndexSet(int N);

  [[nodiscard]] int N() const { return N_; }
  /// Number of mobile coordinates x_2..x_{N-2}.
  [[nodiscard]] int n_mobile() const { return N_ - 3; }
  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] std::span<const PairIndex> pairs() const { return pairs_; }
  [[nodiscard]] const PairIndex& operator[](std::size_t k) const { return pairs_[k]; }

  /// Position of {a,b} in the canonical order (either orientation).
  [[nodiscard]] std::size_t position(int a, int b) const;
  [[nodiscard]] std::size_t position(const PairIndex& p) const { return position(p.i, p.j); }

  /// Position of s_{1j}, s_{(N-1)j}, s_{ij} by role; j, i are mobile labels.
  [[nodiscard]] std::size_t pos_zero(int j) const { return static_cast<std::size_t>(j - 2); }
  [[nodiscard]] std::size_t pos_one(int j) const;
  [[nodiscard]] std::size_t pos_mobile(int i, int j) const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.N_ == b.N_; }

 private:
  int N_;
  std::vector<PairIndex> pairs_;
};

/// d = N(N-3)/2.
[[nodiscard]] constexpr std::size_t dimension(int N) {
  return static_cast<std::size_t>(N) * static_cast<std::size_t>(N - 3) / 2;
}

IndexSet index_set(int N);

/// A point of C^d: one complex exponent per label of index_set(N).
class SVector {
 public:
  explicit SVector(int N, cplx fill = {});
  SVector(int N, std::vector<cplx> values);
  SVector(int N, std::initializer_list<cplx> values) : SVector(N, std::vector<cplx>(values)) {}

  [[nodiscard]] int N() const { return index_.N(); }
  [[nodiscard]] const IndexSet& index_set() const { return index_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const cplx> values() const { return values_; }
  [[nodiscard]] std::span<cplx> values() { return values_; }

  /// Lookup by label; (a,b) and (b,a) address the same entry.
  [[nodiscard]] cplx operator()(int a, int b) const { return values_[index_.position(a, b)]; }
  cplx& operator()(int a, int b) { return values_[index_.position(a, b)]; }
  [[nodiscard]] cplx operator[](std::size_t k) const { return values_[k]; }
  cplx& operator[](std::size_t k) { return values_[k]; }

  [[nodiscard]] std::vector<double> real_parts() const;

  /// Exchanges the roles of the fixed points 0 and 1 (labels 1 and N-1).
  [[nodiscard]] SVector swap_fixed_labels() const;

  friend bool operator==(const SVector& a, const SVector& b) {
    return a.index_ == b.index_ && a.values_ == b.values_;
  }

 private:
  IndexSet index_;
  std::vector<cplx> values_;
};

SVector diagonal_svector(int N, cplx s);

}  // namespace koba
