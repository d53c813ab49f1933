#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gcvsa/config.hpp"
#include "gcvsa/tensor.hpp"

namespace gcvsa {

/// Ordered dictionary of labelled vectors. Rows are stored L2-normalized, so
/// readout is one matrix-vector product. Keys are unique; insertion order is
/// preserved and ties in cleanup resolve to the lowest index.
class Codebook {
public:
    explicit Codebook(const GridConfig& cfg);

    const GridConfig& config() const { return cfg_; }
    std::size_t size() const { return keys_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& keys() const { return keys_; }

    /// Adds a row under `key`. Throws on duplicate keys, zero-norm entries,
    /// or a config mismatch.
    void add(const std::string& key, const GcTensor& v);

    std::optional<std::size_t> index_of(const std::string& key) const;

    /// Stored (normalized) row as a tensor.
    GcTensor entry(std::size_t index) const;

    /// Cosine similarity of v against every row, in insertion order.
    std::vector<double> similarities(const GcTensor& v) const;

    /// (key, similarity) pairs in insertion order.
    std::vector<std::pair<std::string, double>> readout(const GcTensor& v) const;

    /// Best-matching key and its similarity. Ties pick the lowest index.
    std::pair<std::string, double> cleanup(const GcTensor& v) const;
    std::size_t cleanup_index(const GcTensor& v) const;

    /// Weighted sum of stored rows; weights may be negative.
    GcTensor superpose(std::span<const double> weights) const;

    /// Binary container round trip. Format: docs/codebook-format.md.
    void save(const std::string& path) const;
    static Codebook load(const std::string& path);

private:
    GridConfig cfg_;
    std::size_t dim_;
    std::vector<std::string> keys_;
    std::vector<double> rows_;  // size() x dim_, row-major, each row unit norm
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace gcvsa
