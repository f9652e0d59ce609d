#include "taxoeval/alignment.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "taxoeval/embedding.hpp"
#include "taxoeval/error.hpp"

namespace taxoeval {

std::string normalize_title(std::string_view raw) {
    if (raw.empty()) return {};

    icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_SUCCESS(status)) {
        icu::UnicodeString normalized = nfc->normalize(text, status);
        if (U_SUCCESS(status)) text = normalized;
    }
    text.toLower(icu::Locale::getRoot());

    std::string out;
    out.reserve(static_cast<std::size_t>(text.length()));
    bool pending_space = false;
    for (int32_t i = 0; i < text.length(); i = text.moveIndex32(i, 1)) {
        const UChar32 c = text.char32At(i);
        const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
        if (!keep) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

bool admissible_match(double score, std::string_view expert_norm, std::string_view model_norm,
                      double threshold) {
    if (score >= 1.0) return true;
    if (score < threshold) return false;
    if (expert_norm.empty() || model_norm.empty()) return false;
    return expert_norm.find(model_norm) != std::string_view::npos ||
           model_norm.find(expert_norm) != std::string_view::npos;
}

namespace {

std::vector<std::string> normalized_unique(const std::vector<std::string>& titles) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& t : titles) {
        std::string n = normalize_title(t);
        if (n.empty() || !seen.insert(n).second) continue;
        out.push_back(std::move(n));
    }
    return out;
}

struct Candidate {
    std::size_t model = 0;
    double score = 0.0;
    std::size_t distance = 0;
};

} // namespace

AlignmentSet align(const std::vector<std::string>& expert, const std::vector<std::string>& model,
                   const Similarity& sim, const AlignmentOptions& options) {
    if (!(options.threshold > 0.0 && options.threshold <= 1.0))
        throw ValidationError("alignment threshold must lie in (0, 1]");

    const std::vector<std::string> e = normalized_unique(expert);
    const std::vector<std::string> m = normalized_unique(model);

    // Admissible candidates per expert paper, best first.
    std::vector<std::vector<Candidate>> candidates(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            const double s = e[i] == m[j] ? 1.0 : sim(e[i], m[j]);
            if (!admissible_match(s, e[i], m[j], options.threshold)) continue;
            candidates[i].push_back({j, s, levenshtein(e[i], m[j])});
        }
        std::sort(candidates[i].begin(), candidates[i].end(), [&](const Candidate& x, const Candidate& y) {
            if (x.score != y.score) return x.score > y.score;
            if (x.distance != y.distance) return x.distance < y.distance;
            return m[x.model] < m[y.model];
        });
    }

    std::vector<std::size_t> order(e.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const bool hx = !candidates[x].empty(), hy = !candidates[y].empty();
        if (hx != hy) return hx;
        if (hx && candidates[x][0].score != candidates[y][0].score)
            return candidates[x][0].score > candidates[y][0].score;
        return e[x] < e[y];
    });

    AlignmentSet out;
    std::vector<char> claimed(m.size(), 0);
    std::vector<char> matched(e.size(), 0);
    for (std::size_t i : order) {
        for (const Candidate& c : candidates[i]) {
            if (claimed[c.model]) continue;
            claimed[c.model] = 1;
            matched[i] = 1;
            out.pairs.push_back({e[i], m[c.model], c.score});
            break;
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const AlignedPair& x, const AlignedPair& y) { return x.expert < y.expert; });
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!matched[i]) out.unmatched_expert.push_back(e[i]);
    for (std::size_t j = 0; j < m.size(); ++j)
        if (!claimed[j]) out.unmatched_model.push_back(m[j]);
    return out;
}

RetrievalScores retrieval_scores(const AlignmentSet& a, std::size_t n_expert, std::size_t n_model) {
    RetrievalScores r;
    const double hits = static_cast<double>(a.size());
    if (n_expert > 0) r.recall = hits / static_cast<double>(n_expert);
    if (n_model > 0) r.precision = hits / static_cast<double>(n_model);
    if (r.recall && r.precision) {
        const double sum = *r.recall + *r.precision;
        r.f1 = sum > 0.0 ? 2.0 * *r.recall * *r.precision / sum : 0.0;
    }
    return r;
}

} // namespace taxoeval
