#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>

#include "taxoeval/embedding.hpp"

namespace taxoeval {

/// Embeddings keyed by (encoder identity, SHA-256 of the preprocessed text).
///
/// With a backing file the cache is append-only. Record layout, all integers
/// little-endian:
///   u32 identity length | identity bytes | 32-byte digest | u32 dimension | dimension x f32
/// Lookups take a shared lock; inserts are serialized. Inserting an existing key
/// keeps the stored vector.
class EmbeddingCache {
public:
    EmbeddingCache() = default;
    explicit EmbeddingCache(std::filesystem::path file);

    EmbeddingCache(const EmbeddingCache&) = delete;
    EmbeddingCache& operator=(const EmbeddingCache&) = delete;

    std::optional<EmbeddingVector> find(std::string_view identity, std::string_view text) const;
    void insert(std::string_view identity, std::string_view text, const EmbeddingVector& v);

    std::size_t size() const;

    /// Raw 32-byte SHA-256 of the preprocessed text.
    static std::string digest(std::string_view text);

private:
    using Key = std::pair<std::string, std::string>;

    void load();

    std::optional<std::filesystem::path> file_;
    mutable std::shared_mutex mutex_;
    std::map<Key, EmbeddingVector> store_;
    std::ofstream out_;
};

/// Serves hits from the cache and forwards misses to the wrapped encoder in one batch.
class CachedEncoder : public Encoder {
public:
    CachedEncoder(const Encoder& inner, EmbeddingCache& cache) : inner_(&inner), cache_(&cache) {}

    std::string identity() const override { return inner_->identity(); }
    std::size_t dimension() const override { return inner_->dimension(); }
    std::vector<EmbeddingVector> encode(const std::vector<std::string>& texts) const override;

private:
    const Encoder* inner_;
    EmbeddingCache* cache_;
};

} // namespace taxoeval
