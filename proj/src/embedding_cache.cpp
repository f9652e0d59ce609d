#include "taxoeval/embedding_cache.hpp"

#include <array>
#include <bit>
#include <limits>
#include <cstring>
#include <mutex>

#include <openssl/evp.h>

#include "taxoeval/error.hpp"

namespace taxoeval {

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

bool read_exact(std::ifstream& in, void* dst, std::size_t n) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in.gcount()) == n;
}

} // namespace

std::string EmbeddingCache::digest(std::string_view text) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
        throw std::runtime_error("SHA-256 failed");
    return std::string(reinterpret_cast<const char*>(md.data()), len);
}

EmbeddingCache::EmbeddingCache(std::filesystem::path file) : file_(std::move(file)) {
    load();
    out_.open(*file_, std::ios::binary | std::ios::app);
    if (!out_) throw ValidationError("cannot open embedding cache " + file_->string());
}

void EmbeddingCache::load() {
    std::ifstream in(*file_, std::ios::binary);
    if (!in) return;
    // A truncated trailing record (interrupted writer) is ignored.
    for (;;) {
        unsigned char word[4];
        if (!read_exact(in, word, 4)) break;
        std::string identity(get_u32(word), '\0');
        if (!read_exact(in, identity.data(), identity.size())) break;
        std::string digest(32, '\0');
        if (!read_exact(in, digest.data(), digest.size())) break;
        if (!read_exact(in, word, 4)) break;
        const std::uint32_t dim = get_u32(word);
        std::vector<unsigned char> raw(std::size_t(dim) * 4);
        if (!read_exact(in, raw.data(), raw.size())) break;
        EmbeddingVector v(dim);
        for (std::uint32_t i = 0; i < dim; ++i) {
            const std::uint32_t bits = get_u32(raw.data() + 4 * i);
            v(i) = std::bit_cast<float>(bits);
        }
        store_.emplace(Key{std::move(identity), std::move(digest)}, std::move(v));
    }
}

std::optional<EmbeddingVector> EmbeddingCache::find(std::string_view identity, std::string_view text) const {
    Key key{std::string(identity), digest(text)};
    std::shared_lock lock(mutex_);
    auto it = store_.find(key);
    if (it == store_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingCache::insert(std::string_view identity, std::string_view text, const EmbeddingVector& v) {
    Key key{std::string(identity), digest(text)};
    std::unique_lock lock(mutex_);
    auto [it, inserted] = store_.emplace(key, v);
    if (!inserted || !out_.is_open()) return;

    std::string record;
    put_u32(record, static_cast<std::uint32_t>(key.first.size()));
    record += key.first;
    record += key.second;
    put_u32(record, static_cast<std::uint32_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) put_u32(record, std::bit_cast<std::uint32_t>(v(i)));
    out_.write(record.data(), static_cast<std::streamsize>(record.size()));
    out_.flush();
}

std::size_t EmbeddingCache::size() const {
    std::shared_lock lock(mutex_);
    return store_.size();
}

std::vector<EmbeddingVector> CachedEncoder::encode(const std::vector<std::string>& texts) const {
    const std::string id = inner_->identity();
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<std::string> missing;
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (auto hit = cache_->find(id, texts[i])) {
            out[i] = std::move(*hit);
        } else {
            missing.push_back(texts[i]);
            slots.push_back(i);
        }
    }
    if (missing.empty()) return out;
    auto fresh = inner_->encode(missing);
    if (fresh.size() != missing.size()) throw ProtocolError("encoder returned the wrong number of vectors");
    for (std::size_t k = 0; k < missing.size(); ++k) {
        cache_->insert(id, missing[k], fresh[k]);
        // Another writer may have stored the key first; serve the stored vector.
        out[slots[k]] = cache_->find(id, missing[k]).value_or(fresh[k]);
    }
    return out;
}

} // namespace taxoeval
