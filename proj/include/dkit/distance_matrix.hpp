/// @file distance_matrix.hpp
/// @brief Distance matrices over a finite labeled sample and boolean relations
///        on the same label set. The matrix is the universal input of every
///        d-level checker; no symmetry or zero-diagonal assumption is made.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dkit/ext_real.hpp"

namespace dkit::core {

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConstructionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Square matrix of extended reals, entry (i,j) = d(p_i, p_j).
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    ExtReal at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
    void set(std::size_t i, std::size_t j, ExtReal v) { entries_[i * size() + j] = v; }

    /// Raw row-major storage, for kernels.
    const ExtReal* data() const noexcept { return entries_.data(); }
    ExtReal* data() noexcept { return entries_.data(); }

    /// Index of a label; throws InputError if unknown.
    std::size_t index_of(const std::string& label) const;

    bool has_infinite_entry() const noexcept;

    /// CSV round trip: header row of labels, then n rows of n cells, each a
    /// decimal or the literal `inf`.
    static DistanceMatrix load_csv(const std::string& path);
    void save_csv(const std::string& path) const;

  private:
    std::vector<std::string> labels_;
    std::vector<ExtReal> entries_;
};

/// Boolean relation over the label set of a source matrix.
class Relation {
  public:
    Relation() = default;
    explicit Relation(std::vector<std::string> labels)
        : labels_(std::move(labels)), bits_(labels_.size() * labels_.size(), 0) {}

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool at(std::size_t i, std::size_t j) const { return bits_[i * size() + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { bits_[i * size() + j] = v ? 1 : 0; }

    bool contains(const Relation& other) const;
    bool is_reflexive() const;
    bool is_transitive() const;
    bool is_irreflexive() const;
    bool is_antisymmetric() const;
    std::size_t pair_count() const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.labels_ == b.labels_ && a.bits_ == b.bits_;
    }

    /// Edge list (i, j) with relation true, excluding the diagonal.
    std::vector<std::pair<std::size_t, std::size_t>> strict_edges() const;

  private:
    std::vector<std::string> labels_;
    std::vector<std::uint8_t> bits_;
};

}  // namespace dkit::core
