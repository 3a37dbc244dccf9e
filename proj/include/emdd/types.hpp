#ifndef EMDD_TYPES_HPP
#define EMDD_TYPES_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "emdd/errors.hpp"

namespace emdd {

// Bins and axes are 1-based everywhere in the public interface; storage is
// 0-based internally.

// A histogram: n nonnegative integer bin counts with total mass s.
class Composition {
  public:
    explicit Composition(std::vector<std::int64_t> bins);
    Composition(std::initializer_list<std::int64_t> bins)
        : Composition(std::vector<std::int64_t>(bins)) {}

    int n() const { return static_cast<int>(bins_.size()); }
    std::int64_t mass() const { return mass_; }
    // Count in bin k, k in [1, n].
    std::int64_t count(int k) const { return bins_[static_cast<std::size_t>(k - 1)]; }
    const std::vector<std::int64_t>& bins() const { return bins_; }

    bool operator==(const Composition&) const = default;

  private:
    std::vector<std::int64_t> bins_;
    std::int64_t mass_ = 0;
};

// The vector of bin counts (n_1, ..., n_d), one per compared distribution.
class BinShape {
  public:
    explicit BinShape(std::vector<int> sizes);
    BinShape(std::initializer_list<int> sizes) : BinShape(std::vector<int>(sizes)) {}
    // The cubical shape (n, n, ..., n) with d axes.
    static BinShape cube(int d, int n);

    int d() const { return static_cast<int>(sizes_.size()); }
    // n_i for axis i in [1, d].
    int size(int axis) const { return sizes_[static_cast<std::size_t>(axis - 1)]; }
    const std::vector<int>& sizes() const { return sizes_; }
    // |n| = n_1 + ... + n_d.
    long long total() const;
    // Product of sizes if it does not exceed cap, otherwise nullopt.
    std::optional<std::int64_t> entry_count(std::int64_t cap) const;

    bool operator==(const BinShape&) const = default;

  private:
    std::vector<int> sizes_;
};

// A position m = (m_1, ..., m_d) in [n_1] x ... x [n_d].
class MultiIndex {
  public:
    explicit MultiIndex(std::vector<int> coords);
    MultiIndex(std::initializer_list<int> coords) : MultiIndex(std::vector<int>(coords)) {}

    int d() const { return static_cast<int>(coords_.size()); }
    // m_i for axis i in [1, d].
    int coord(int axis) const { return coords_[static_cast<std::size_t>(axis - 1)]; }
    const std::vector<int>& coords() const { return coords_; }
    bool in_shape(const BinShape& shape) const;

    bool operator==(const MultiIndex&) const = default;
    // Lexicographic, used for deterministic witness ordering.
    bool operator<(const MultiIndex& other) const { return coords_ < other.coords_; }

  private:
    std::vector<int> coords_;
};

// A dense d-dimensional array of nonnegative integers, row-major with the
// last axis fastest.
class CostArray {
  public:
    CostArray(BinShape shape, std::vector<std::int64_t> entries);

    const BinShape& shape() const { return shape_; }
    std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
    std::int64_t at(const MultiIndex& m) const { return entries_[flat_index(m)]; }
    std::int64_t at_flat(std::int64_t i) const { return entries_[static_cast<std::size_t>(i)]; }
    std::size_t flat_index(const MultiIndex& m) const;
    MultiIndex unflatten(std::int64_t flat) const;
    const std::vector<std::int64_t>& entries() const { return entries_; }

  private:
    BinShape shape_;
    std::vector<std::int64_t> entries_;
};

}  // namespace emdd

#endif
