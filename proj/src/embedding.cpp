#include "taxoeval/embedding.hpp"

#include <numbers>
#include <set>

#include "taxoeval/error.hpp"

namespace taxoeval {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in (0, 1].
double unit_open(std::uint64_t& state) { return (static_cast<double>(splitmix64(state) >> 11) + 1.0) * 0x1.0p-53; }

std::vector<std::string_view> tokens(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

} // namespace

std::string preprocess_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::string_view tok : tokens(text)) {
        if (!out.empty()) out.push_back(' ');
        out.append(tok);
    }
    return out;
}

std::vector<EmbeddingVector> embed_batch(const Encoder& encoder, const std::vector<std::string>& texts) {
    std::vector<std::string> clean;
    clean.reserve(texts.size());
    for (const auto& t : texts) {
        std::string p = preprocess_text(t);
        if (p.empty()) throw ValidationError("cannot embed empty text");
        clean.push_back(std::move(p));
    }
    if (clean.empty()) return {};
    auto out = encoder.encode(clean);
    if (out.size() != clean.size())
        throw ProtocolError("encoder returned " + std::to_string(out.size()) + " vectors for " +
                            std::to_string(clean.size()) + " texts");
    return out;
}

EmbeddingVector embed(const Encoder& encoder, std::string_view text) {
    return embed_batch(encoder, {std::string(text)}).front();
}

HashEncoder::HashEncoder(std::size_t dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
    if (dimension_ == 0) throw ValidationError("encoder dimension must be positive");
}

std::string HashEncoder::identity() const {
    if (dimension_ == 128 && seed_ == kDefaultSeed) return "test-hash-v1";
    return "test-hash-v1/d" + std::to_string(dimension_) + "/s" + std::to_string(seed_);
}

EmbeddingVector HashEncoder::token_direction(std::string_view token) const {
    std::uint64_t state = fnv1a(token) ^ seed_;
    Eigen::VectorXd g(static_cast<Eigen::Index>(dimension_));
    for (Eigen::Index i = 0; i < g.size(); i += 2) {
        // Box-Muller
        const double r = std::sqrt(-2.0 * std::log(unit_open(state)));
        const double theta = 2.0 * std::numbers::pi * unit_open(state);
        g(i) = r * std::cos(theta);
        if (i + 1 < g.size()) g(i + 1) = r * std::sin(theta);
    }
    const double n = g.norm();
    if (n == 0.0) return EmbeddingVector::Zero(g.size());
    return (g / n).cast<float>();
}

std::vector<EmbeddingVector> HashEncoder::encode(const std::vector<std::string>& texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        const auto toks = tokens(text);
        if (toks.empty()) throw ValidationError("cannot embed empty text");
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension_));
        for (std::string_view tok : toks) sum += token_direction(tok).cast<double>();
        sum /= static_cast<double>(toks.size());
        const double n = sum.norm();
        if (!(n > 1e-12)) {
            out.push_back(EmbeddingVector::Zero(sum.size()));
        } else {
            out.push_back((sum / n).cast<float>());
        }
    }
    return out;
}

StaticEncoder::StaticEncoder(std::string identity, std::map<std::string, EmbeddingVector> table)
    : identity_(std::move(identity)) {
    for (auto& [text, v] : table) {
        if (dimension_ == 0) dimension_ = static_cast<std::size_t>(v.size());
        if (static_cast<std::size_t>(v.size()) != dimension_ || dimension_ == 0)
            throw ValidationError("static encoder vectors must share a positive dimension");
        if (!v.allFinite()) throw ValidationError("static encoder vector for \"" + text + "\" is not finite");
        table_.emplace(preprocess_text(text), v);
    }
}

std::vector<EmbeddingVector> StaticEncoder::encode(const std::vector<std::string>& texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        auto it = table_.find(t);
        if (it == table_.end()) throw ValidationError("static encoder has no vector for \"" + t + "\"");
        out.push_back(it->second);
    }
    return out;
}

EmbeddingVector EmbeddingSimilarity::lookup(const std::string& text) const {
    {
        std::lock_guard lock(mutex_);
        auto it = vectors_.find(text);
        if (it != vectors_.end()) return it->second;
    }
    EmbeddingVector v = embed(*encoder_, text);
    std::lock_guard lock(mutex_);
    return vectors_.emplace(text, std::move(v)).first->second;
}

void EmbeddingSimilarity::prefetch(const std::vector<std::string>& texts) const {
    std::vector<std::string> missing;
    {
        std::lock_guard lock(mutex_);
        std::set<std::string> queued;
        for (const auto& t : texts) {
            std::string p = preprocess_text(t);
            if (p.empty() || vectors_.count(p) || !queued.insert(p).second) continue;
            missing.push_back(std::move(p));
        }
    }
    if (missing.empty()) return;
    auto vectors = embed_batch(*encoder_, missing);
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < missing.size(); ++i) vectors_.emplace(missing[i], std::move(vectors[i]));
}

double EmbeddingSimilarity::operator()(std::string_view x, std::string_view y) const {
    const std::string px = preprocess_text(x);
    const std::string py = preprocess_text(y);
    if (px.empty() || py.empty()) throw ValidationError("cannot compare empty text");
    if (px == py) return 1.0;
    return clipped_cosine(lookup(px), lookup(py));
}

void TableSimilarity::set(std::string x, std::string y, double value) {
    if (!(value >= 0.0 && value <= 1.0)) throw ValidationError("similarity must lie in [0, 1]");
    if (y < x) std::swap(x, y);
    table_[{std::move(x), std::move(y)}] = value;
}

double TableSimilarity::operator()(std::string_view x, std::string_view y) const {
    if (x == y) return 1.0;
    std::string a(x), b(y);
    if (b < a) std::swap(a, b);
    auto it = table_.find({a, b});
    return it == table_.end() ? 0.0 : it->second;
}

double sim(std::string_view x, std::string_view y, const Encoder& encoder) {
    return EmbeddingSimilarity(encoder)(x, y);
}

double renaming_cost(std::string_view x, std::string_view y, const Encoder& encoder) {
    return 1.0 - sim(x, y, encoder);
}

} // namespace taxoeval
