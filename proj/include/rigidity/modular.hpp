#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rigidity {

/// Arithmetic in Z/pZ for primes below 2^62.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit constexpr PrimeField(std::uint64_t p) : p_(p) {}

  constexpr std::uint64_t modulus() const { return p_; }

  Element from_int(long long x) const {
    long long r = x % static_cast<long long>(p_);
    return static_cast<Element>(r < 0 ? r + static_cast<long long>(p_) : r);
  }
  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Element pow(Element a, std::uint64_t e) const {
    Element r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Element inv(Element a) const { return pow(a, p_ - 2); }

 private:
  std::uint64_t p_;
};

/// The two primes used for randomized rank: 2^61 - 1 and the next prime below it.
inline constexpr std::array<std::uint64_t, 2> kRankPrimes = {2305843009213693951ULL,
                                                            2305843009213693921ULL};

/// Row-echelon basis over Z/pZ that grows one row at a time.
class ModularEchelon {
 public:
  ModularEchelon(PrimeField field, int columns) : field_(field), columns_(columns) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  /// Reduces `row` against the basis; keeps it and returns true when it is
  /// independent.
  bool insert(std::vector<PrimeField::Element> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = pivots_[r];
      if (row[c] == 0) continue;
      const auto factor = row[c];
      const auto& basis = rows_[r];
      for (int j = c; j < columns_; ++j) {
        if (basis[j] != 0) row[j] = field_.sub(row[j], field_.mul(factor, basis[j]));
      }
    }
    int pivot = -1;
    for (int j = 0; j < columns_; ++j) {
      if (row[j] != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) return false;
    const auto scale = field_.inv(row[pivot]);
    for (int j = pivot; j < columns_; ++j) row[j] = field_.mul(row[j], scale);
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  PrimeField field_;
  int columns_;
  std::vector<std::vector<PrimeField::Element>> rows_;
  std::vector<int> pivots_;
};

/// Rank of a dense matrix (row-major, `columns` wide) over Z/pZ by Gaussian
/// elimination.
inline int modular_rank(PrimeField field, std::vector<std::vector<PrimeField::Element>> rows,
                        int columns) {
  int rank = 0;
  const int m = static_cast<int>(rows.size());
  for (int c = 0; c < columns && rank < m; ++c) {
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (rows[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    const auto inv = field.inv(rows[rank][c]);
    for (int r = rank + 1; r < m; ++r) {
      if (rows[r][c] == 0) continue;
      const auto factor = field.mul(rows[r][c], inv);
      for (int j = c; j < columns; ++j) {
        rows[r][j] = field.sub(rows[r][j], field.mul(factor, rows[rank][j]));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace rigidity
