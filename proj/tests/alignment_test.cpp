#include <random>
#include <set>

#include <gtest/gtest.h>

#include "taxoeval/alignment.hpp"
#include "taxoeval/embedding.hpp"
#include "taxoeval/error.hpp"

using namespace taxoeval;

namespace {

std::vector<std::string> random_titles(std::mt19937_64& rng, std::size_t n) {
    static const std::vector<std::string> words = {"graph", "neural", "survey", "of", "retrieval", "agents", "llm",
                                                   "a", "the", "models", "memory", "study"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string t;
        const std::size_t len = 1 + rng() % 4;
        for (std::size_t k = 0; k < len; ++k) t += (k ? " " : "") + words[rng() % words.size()];
        if (rng() % 3 == 0) t[0] = static_cast<char>(std::toupper(t[0]));
        if (rng() % 4 == 0) t += "!";
        out.push_back(t);
    }
    return out;
}

} // namespace

TEST(NormalizeTitle, Examples) {
    EXPECT_EQ(normalize_title("  The  Title!  "), "the title");
    EXPECT_EQ(normalize_title("GPT-4o: A Study"), "gpt 4o a study");
    EXPECT_EQ(normalize_title(""), "");
    EXPECT_EQ(normalize_title("?!"), "");
}

TEST(NormalizeTitle, UnicodeComposition) {
    // Decomposed and precomposed forms normalize alike; accented letters fall outside [a-z0-9].
    EXPECT_EQ(normalize_title("Caf\xC3\xA9 Models"), normalize_title("Cafe\xCC\x81 Models"));
    EXPECT_EQ(normalize_title("Caf\xC3\x89 Models"), "caf models");
}

TEST(Levenshtein, Basics) {
    EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
    EXPECT_EQ(levenshtein("", "abc"), 3u);
    EXPECT_EQ(levenshtein("same", "same"), 0u);
}

TEST(Align, ThreeRuleBranches) {
    TableSimilarity s;
    s.set("attention survey", "attention survey extended", 0.7);
    s.set("graph models", "neural graph networks", 0.7);
    const AlignmentSet a = align({"Attention Survey", "Graph Models", "Exact Match"},
                                 {"attention survey extended", "neural graph networks", "exact   match!"}, s);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a.pairs[0].expert, "attention survey");
    EXPECT_EQ(a.pairs[0].model, "attention survey extended");
    EXPECT_DOUBLE_EQ(a.pairs[0].score, 0.7);
    EXPECT_EQ(a.pairs[1].expert, "exact match");
    EXPECT_EQ(a.pairs[1].score, 1.0);
    EXPECT_EQ(a.unmatched_expert, std::vector<std::string>{"graph models"});
    EXPECT_EQ(a.unmatched_model, std::vector<std::string>{"neural graph networks"});
}

TEST(Align, ScoreOneNeedsNoContainment) {
    TableSimilarity s;
    s.set("alpha", "beta", 1.0);
    EXPECT_EQ(align({"alpha"}, {"beta"}, s).size(), 1u);
}

TEST(Align, BelowThresholdRejected) {
    TableSimilarity s;
    s.set("deep nets", "deep nets survey", 0.59);
    EXPECT_TRUE(align({"deep nets"}, {"deep nets survey"}, s).empty());
    EXPECT_EQ(align({"deep nets"}, {"deep nets survey"}, s, {0.5}).size(), 1u);
    EXPECT_THROW(align({"a"}, {"a"}, s, {0.0}), ValidationError);
}

TEST(Align, TieBreaks) {
    TableSimilarity s;
    s.set("deep nets", "deep nets ab", 0.8);
    s.set("deep nets", "deep nets b", 0.8);
    s.set("deep nets", "deep nets a", 0.8);
    // Equal scores: smaller edit distance, then lexicographic.
    const AlignmentSet a = align({"deep nets"}, {"deep nets ab", "deep nets b", "deep nets a"}, s);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a.pairs[0].model, "deep nets a");

    // Higher score wins over smaller distance.
    s.set("deep nets", "deep nets ab", 0.9);
    EXPECT_EQ(align({"deep nets"}, {"deep nets ab", "deep nets b"}, s).pairs[0].model, "deep nets ab");
}

TEST(Align, GreedyByBestScore) {
    // Both experts prefer the same model paper; the higher-scoring expert claims it.
    TableSimilarity s;
    s.set("memory", "memory agents", 0.7);
    s.set("memory agents survey", "memory agents", 0.9);
    s.set("memory", "memory study", 0.65);
    const AlignmentSet a = align({"memory", "memory agents survey"}, {"memory agents", "memory study"}, s);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a.pairs[0].expert, "memory");
    EXPECT_EQ(a.pairs[0].model, "memory study");
    EXPECT_EQ(a.pairs[1].model, "memory agents");
}

TEST(Align, DuplicatesCollapse) {
    HashEncoder enc;
    EmbeddingSimilarity s(enc);
    const AlignmentSet a = align({"A Study", "a study!", "Other"}, {"A STUDY"}, s);
    EXPECT_EQ(a.size(), 1u);
    EXPECT_EQ(a.unmatched_expert, std::vector<std::string>{"other"});
}

TEST(Align, PropertiesOnRandomTitles) {
    HashEncoder enc;
    EmbeddingSimilarity s(enc);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto expert = random_titles(rng, 1 + rng() % 8);
        auto model = random_titles(rng, 1 + rng() % 8);
        const AlignmentSet a = align(expert, model, s);

        std::set<std::string> es, ms;
        for (const auto& p : a.pairs) {
            EXPECT_TRUE(es.insert(p.expert).second);
            EXPECT_TRUE(ms.insert(p.model).second);
            EXPECT_TRUE(admissible_match(p.score, p.expert, p.model, 0.6));
            EXPECT_DOUBLE_EQ(s(p.expert, p.model), s(p.model, p.expert));
        }

        // Dropping a model paper never grows the alignment.
        for (std::size_t drop = 0; drop < model.size(); ++drop) {
            auto fewer = model;
            fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
            EXPECT_LE(align(expert, fewer, s).size(), a.size());
        }
    }
}

TEST(RetrievalScores, Examples) {
    AlignmentSet five;
    for (int i = 0; i < 5; ++i) five.pairs.push_back({std::to_string(i), std::to_string(i), 1.0});
    const auto perfect = retrieval_scores(five, 5, 5);
    EXPECT_EQ(*perfect.recall, 1.0);
    EXPECT_EQ(*perfect.precision, 1.0);
    EXPECT_EQ(*perfect.f1, 1.0);

    const auto disjoint = retrieval_scores(AlignmentSet{}, 3, 4);
    EXPECT_EQ(*disjoint.recall, 0.0);
    EXPECT_EQ(*disjoint.precision, 0.0);
    EXPECT_EQ(*disjoint.f1, 0.0);

    AlignmentSet one;
    one.pairs.push_back({"a", "a", 1.0});
    const auto half = retrieval_scores(one, 2, 2);
    EXPECT_DOUBLE_EQ(*half.recall, 0.5);
    EXPECT_DOUBLE_EQ(*half.precision, 0.5);
    EXPECT_DOUBLE_EQ(*half.f1, 0.5);

    const auto none = retrieval_scores(AlignmentSet{}, 0, 0);
    EXPECT_FALSE(none.recall.has_value());
    EXPECT_FALSE(none.precision.has_value());
    EXPECT_FALSE(none.f1.has_value());
}

TEST(RetrievalScores, F1BetweenRecallAndPrecision) {
    for (std::size_t hits = 1; hits <= 6; ++hits)
        for (std::size_t ne = hits; ne <= 8; ++ne)
            for (std::size_t nm = hits; nm <= 8; ++nm) {
                AlignmentSet a;
                a.pairs.resize(hits);
                const auto r = retrieval_scores(a, ne, nm);
                EXPECT_LE(*r.f1, std::max(*r.recall, *r.precision) + 1e-12);
                EXPECT_GE(*r.f1, std::min(*r.recall, *r.precision) - 1e-12);
                EXPECT_LE(*r.recall, 1.0);
                EXPECT_LE(*r.precision, 1.0);
            }
}
