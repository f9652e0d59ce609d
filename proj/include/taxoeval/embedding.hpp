#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace taxoeval {

using EmbeddingVector = Eigen::VectorXf;

/// Trim and collapse internal whitespace runs to one space. Case is kept.
std::string preprocess_text(std::string_view text);

/// Cosine of two vectors clipped below at 0. A zero vector has similarity 0
/// with everything.
template <typename DerivedA, typename DerivedB>
double clipped_cosine(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    const double na = a.template cast<double>().squaredNorm();
    const double nb = b.template cast<double>().squaredNorm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    const double c = a.template cast<double>().dot(b.template cast<double>()) / std::sqrt(na * nb);
    return c < 0.0 ? 0.0 : (c > 1.0 ? 1.0 : c);
}

/// Sentence encoder. Implementations must be deterministic for a fixed identity
/// and safe to call from several threads.
class Encoder {
public:
    virtual ~Encoder() = default;

    virtual std::string identity() const = 0;
    virtual std::size_t dimension() const = 0;

    /// Texts are already preprocessed and non-empty. One vector per text, in order.
    virtual std::vector<EmbeddingVector> encode(const std::vector<std::string>& texts) const = 0;
};

/// Preprocesses, rejects empty text with ValidationError, and encodes.
EmbeddingVector embed(const Encoder& encoder, std::string_view text);
std::vector<EmbeddingVector> embed_batch(const Encoder& encoder,
                                         const std::vector<std::string>& texts);

/// Offline deterministic encoder.
///
/// Each whitespace token is hashed (FNV-1a, mixed with the seed) into the state of
/// a splitmix64 stream; Box-Muller turns the stream into a Gaussian vector which is
/// normalized to a unit direction. A text embeds as the renormalized mean of its
/// token directions, so texts sharing tokens get positive similarity. When the mean
/// vanishes the zero vector is returned.
class HashEncoder : public Encoder {
public:
    static constexpr std::uint64_t kDefaultSeed = 0x5eed'7a40'0000'0001ULL;

    explicit HashEncoder(std::size_t dimension = 128, std::uint64_t seed = kDefaultSeed);

    std::string identity() const override;
    std::size_t dimension() const override { return dimension_; }
    std::vector<EmbeddingVector> encode(const std::vector<std::string>& texts) const override;

    EmbeddingVector token_direction(std::string_view token) const;

private:
    std::size_t dimension_;
    std::uint64_t seed_;
};

/// Fixed text-to-vector table. Vectors are stored as given (not renormalized).
class StaticEncoder : public Encoder {
public:
    StaticEncoder(std::string identity, std::map<std::string, EmbeddingVector> table);

    std::string identity() const override { return identity_; }
    std::size_t dimension() const override { return dimension_; }
    std::vector<EmbeddingVector> encode(const std::vector<std::string>& texts) const override;

private:
    std::string identity_;
    std::size_t dimension_ = 0;
    std::map<std::string, EmbeddingVector> table_;
};

/// Label similarity in [0, 1]; symmetric, with Sim(x, x) = 1.
class Similarity {
public:
    virtual ~Similarity() = default;
    virtual double operator()(std::string_view x, std::string_view y) const = 0;
};

/// max(0, cos(e(x), e(y))) over an encoder. Vectors are memoized per text; texts
/// that are equal after preprocessing have similarity exactly 1.
class EmbeddingSimilarity : public Similarity {
public:
    explicit EmbeddingSimilarity(const Encoder& encoder) : encoder_(&encoder) {}

    double operator()(std::string_view x, std::string_view y) const override;

    /// Encode all unseen texts in one batch.
    void prefetch(const std::vector<std::string>& texts) const;

    const Encoder& encoder() const { return *encoder_; }

private:
    EmbeddingVector lookup(const std::string& text) const;

    const Encoder* encoder_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, EmbeddingVector> vectors_;
};

/// Explicit symmetric table of pairwise similarities; unlisted distinct pairs are 0.
class TableSimilarity : public Similarity {
public:
    void set(std::string x, std::string y, double value);
    double operator()(std::string_view x, std::string_view y) const override;

private:
    std::map<std::pair<std::string, std::string>, double> table_;
};

double sim(std::string_view x, std::string_view y, const Encoder& encoder);
double renaming_cost(std::string_view x, std::string_view y, const Encoder& encoder);
inline double renaming_cost(std::string_view x, std::string_view y, const Similarity& s) {
    return 1.0 - s(x, y);
}

} // namespace taxoeval
