#include "koba/index.hpp"

#include <stdexcept>
#include <utility>

namespace koba {

namespace {

void require_n(int N) {
  if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
}

}  // namespace

PairIndex PairIndex::make(int N, int a, int b) {
  require_n(N);
  auto mobile = [N](int x) { return x >= 2 && x <= N - 2; };
  if (a == 1 && mobile(b)) return {1, b};
  if (b == 1 && mobile(a)) return {1, a};
  if (a == N - 1 && mobile(b)) return {N - 1, b};
  if (b == N - 1 && mobile(a)) return {N - 1, a};
  if (mobile(a) && mobile(b) && a != b) return {std::min(a, b), std::max(a, b)};
  throw std::invalid_argument("no exponent s_" + std::to_string(a) + "_" + std::to_string(b) +
                              " for N=" + std::to_string(N));
}

std::string PairIndex::name() const {
  if (i < 10 && j < 10) return "s" + std::to_string(i) + std::to_string(j);
  return "s" + std::to_string(i) + "_" + std::to_string(j);
}

IndexSet::IndexSet(int N) : N_(N) {
  require_n(N);
  pairs_.reserve(dimension(N));
  for (int j = 2; j <= N - 2; ++j) pairs_.push_back({1, j});
  for (int i = 2; i <= N - 2; ++i)
    for (int j = i + 1; j <= N - 2; ++j) pairs_.push_back({i, j});
  for (int j = 2; j <= N - 2; ++j) pairs_.push_back({N - 1, j});
}

std::size_t IndexSet::pos_one(int j) const {
  const std::size_t n = static_cast<std::size_t>(n_mobile());
  return n + n * (n - 1) / 2 + static_cast<std::size_t>(j - 2);
}

std::size_t IndexSet::pos_mobile(int i, int j) const {
  if (i > j) std::swap(i, j);
  // rank of (i,j) in the strict upper triangle over labels 2..N-2
  const std::size_t n = static_cast<std::size_t>(n_mobile());
  const std::size_t r = static_cast<std::size_t>(i - 2);
  const std::size_t c = static_cast<std::size_t>(j - 2);
  return n + r * n - r * (r + 1) / 2 + (c - r - 1);
}

std::size_t IndexSet::position(int a, int b) const {
  const PairIndex p = PairIndex::make(N_, a, b);
  if (p.i == 1) return pos_zero(p.j);
  if (p.i == N_ - 1) return pos_one(p.j);
  return pos_mobile(p.i, p.j);
}

IndexSet index_set(int N) { return IndexSet(N); }

SVector::SVector(int N, cplx fill) : index_(N), values_(dimension(N), fill) {}

SVector::SVector(int N, std::vector<cplx> values) : index_(N), values_(std::move(values)) {
  if (values_.size() != index_.size())
    throw std::invalid_argument("SVector for N=" + std::to_string(N) + " needs " +
                                std::to_string(index_.size()) + " values, got " +
                                std::to_string(values_.size()));
}

std::vector<double> SVector::real_parts() const {
  std::vector<double> out(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k].real();
  return out;
}

SVector SVector::swap_fixed_labels() const {
  SVector out = *this;
  const int N = index_.N();
  for (int j = 2; j <= N - 2; ++j) {
    out.values_[index_.pos_zero(j)] = values_[index_.pos_one(j)];
    out.values_[index_.pos_one(j)] = values_[index_.pos_zero(j)];
  }
  return out;
}

SVector diagonal_svector(int N, cplx s) { return SVector(N, s); }

}  // namespace koba
