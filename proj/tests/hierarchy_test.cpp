#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "taxoeval/assignment.hpp"
#include "taxoeval/hierarchy.hpp"

using namespace taxoeval;

namespace {

CategoryNode leaf(std::string label) { return {std::move(label), {}, {}}; }
CategoryNode node(std::string label, std::vector<CategoryNode> children) { return {std::move(label), std::move(children), {}}; }

CategoryHierarchy h(CategoryNode root) { return {std::move(root)}; }

// Every label gets its own basis vector, so distinct labels have similarity 0.
StaticEncoder orthogonal(const std::vector<std::string>& labels) {
    std::map<std::string, EmbeddingVector> table;
    for (std::size_t i = 0; i < labels.size(); ++i)
        table.emplace(labels[i], EmbeddingVector::Unit(Eigen::Index(labels.size()), Eigen::Index(i)));
    return StaticEncoder("orthogonal", table);
}

Taxonomy with_paper(LabelPath path, const std::string& paper) {
    Taxonomy t;
    t.root.label = path.front();
    CategoryNode* cur = &t.root;
    for (std::size_t i = 1; i < path.size(); ++i) {
        cur->children.push_back(leaf(path[i]));
        cur = &cur->children.back();
    }
    cur->papers.push_back(paper);
    return t;
}

AlignmentSet self_alignment(const std::string& paper) {
    AlignmentSet a;
    a.pairs.push_back({paper, paper, 1.0});
    return a;
}

} // namespace

TEST(MinCostAssignment, SmallCases) {
    Eigen::Matrix3d c;
    c << 4, 1, 3, 2, 0, 5, 3, 2, 2;
    const auto r = min_cost_assignment(c);
    EXPECT_EQ(r.cost, 5.0);
    EXPECT_EQ(r.col_of_row, (std::vector<Eigen::Index>{1, 0, 2}));
    EXPECT_EQ(min_cost_assignment(Eigen::MatrixXd(0, 0)).cost, 0.0);
    EXPECT_THROW(min_cost_assignment(Eigen::MatrixXd(2, 3)), std::invalid_argument);

    Eigen::Matrix<int, 2, 2> ci;
    ci << 1, 2, 3, 4;
    EXPECT_EQ(min_cost_assignment(ci).cost, 5);
}

TEST(MinCostAssignment, MatchesPermutationBruteForce) {
    gen::Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const Eigen::Index k = Eigen::Index(gen::random_size(rng, 1, 6));
        // Integer matrices provoke ties.
        const Eigen::MatrixXd c = trial % 2 ? gen::random_matrix(rng, k, k) : gen::random_integer_matrix(rng, k, k);
        EXPECT_NEAR(min_cost_assignment(c).cost, oracle::permutation_min(c), 1e-9);
    }
}

TEST(MatchCost, Examples) {
    const std::vector<CategoryNode> a = {leaf("x"), leaf("y")};
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
    zero(0, 1) = zero(1, 0) = 2.0;
    EXPECT_EQ(match_cost(a, a, zero), 0.0);

    const std::vector<CategoryNode> sized = {leaf("x"), node("y", {leaf("z"), leaf("w")})};
    EXPECT_EQ(match_cost(sized, {}, Eigen::MatrixXd(2, 0)), 4.0);
    EXPECT_EQ(match_cost({}, sized, Eigen::MatrixXd(0, 2)), 4.0);
    EXPECT_EQ(match_cost({}, {}, Eigen::MatrixXd(0, 0)), 0.0);
}

TEST(MatchCost, PaddingLayout) {
    const std::vector<CategoryNode> a = {leaf("x"), node("y", {leaf("z")})};
    const std::vector<CategoryNode> b = {leaf("q")};
    Eigen::MatrixXd pairwise(2, 1);
    pairwise << 0.5, 1.5;
    const Eigen::MatrixXd c = padded_cost_matrix(a, b, pairwise);
    Eigen::MatrixXd expected(2, 2);
    expected << 0.5, 1, 1.5, 2;
    EXPECT_EQ(c, expected);
    EXPECT_THROW(padded_cost_matrix(a, b, Eigen::MatrixXd(1, 1)), std::invalid_argument);
}

TEST(MatchCost, MatchesPartialMatchingBruteForce) {
    gen::Rng rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = gen::random_size(rng, 0, 6), n = gen::random_size(rng, 0, 6);
        std::vector<CategoryNode> a, b;
        for (std::size_t i = 0; i < m; ++i) a.push_back(gen::random_tree(rng, gen::random_size(rng, 1, 4)));
        for (std::size_t j = 0; j < n; ++j) b.push_back(gen::random_tree(rng, gen::random_size(rng, 1, 4)));
        Eigen::MatrixXd pairwise = gen::random_matrix(rng, Eigen::Index(m), Eigen::Index(n), 6.0);
        std::vector<double> del, ins;
        for (const auto& x : a) del.push_back(double(subtree_size(x)));
        for (const auto& y : b) ins.push_back(double(subtree_size(y)));
        gen::cap_by_edit_bound(pairwise, del, ins);
        const double expected = oracle::partial_matching_min(
            m, n, [&](std::size_t i, std::size_t j) { return pairwise(Eigen::Index(i), Eigen::Index(j)); }, del, ins);
        EXPECT_NEAR(match_cost(a, b, pairwise), expected, 1e-9);
    }
}

TEST(UsTed, IdenticalIsZero) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    const auto t = node("R", {node("A", {leaf("B"), leaf("C")}), leaf("D")});
    const auto r = us_ted(h(t), h(t), sim);
    EXPECT_EQ(r.us_ted, 0.0);
    EXPECT_EQ(r.us_nted, 0.0);
    EXPECT_EQ(r.expert_nodes, 5u);
}

TEST(UsTed, ShuffledCopyIsZero) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    gen::Rng rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const CategoryNode t = gen::random_tree(rng, gen::random_size(rng, 1, 25));
        CategoryNode s = t;
        gen::shuffle_recursive(s, rng);
        EXPECT_NEAR(us_ted(h(t), h(s), sim).us_ted, 0.0, 1e-9);
    }
}

TEST(UsTed, MatchesRecursiveOracle) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    gen::Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const CategoryNode a = gen::random_tree(rng, gen::random_size(rng, 3, 5));
        const CategoryNode b = gen::random_tree(rng, gen::random_size(rng, 3, 5));
        EXPECT_NEAR(us_ted(h(a), h(b), sim).us_ted, oracle::tree_distance(a, b, sim), 1e-9);
    }
}

TEST(UsTed, DisjointOrthogonalTrees) {
    const auto small = node("a", {leaf("b"), leaf("c")});
    const auto large = node("d", {node("e", {leaf("f")}), node("g", {leaf("h")})});
    const StaticEncoder enc = orthogonal({"a", "b", "c", "d", "e", "f", "g", "h"});
    EmbeddingSimilarity sim(enc);
    const double expected = oracle::tree_distance(small, large, sim);
    EXPECT_EQ(expected, 5.0);
    const auto r = us_ted(h(small), h(large), sim);
    EXPECT_NEAR(r.us_ted, expected, 1e-12);
    EXPECT_NEAR(r.us_nted, expected / 8.0, 1e-12);
}

TEST(UsTed, SymmetricAndBounded) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    gen::Rng rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        const CategoryNode a = gen::random_tree(rng, gen::random_size(rng, 1, 15));
        const CategoryNode b = gen::random_tree(rng, gen::random_size(rng, 1, 15));
        const auto ab = us_ted(h(a), h(b), sim);
        const auto ba = us_ted(h(b), h(a), sim);
        EXPECT_NEAR(ab.us_ted, ba.us_ted, 1e-9);
        EXPECT_GE(ab.us_ted, 0.0);
        EXPECT_LE(ab.us_ted, double(ab.expert_nodes + ab.model_nodes));
        EXPECT_GE(ab.us_nted, 0.0);
        EXPECT_LE(ab.us_nted, 1.0);
    }
}

TEST(UsTed, WitnessCoversMatchedNodes) {
    const auto a = node("R", {node("A", {leaf("B"), leaf("C")}), node("D", {leaf("E"), leaf("F")})});
    const auto b = node("R", {node("D", {leaf("F")}), node("A", {leaf("C"), leaf("B")})});
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    const auto r = us_ted(h(a), h(b), sim, true);
    EXPECT_EQ(r.us_ted, 1.0);  // E is deleted
    ASSERT_EQ(r.witness.size(), 6u);
    double renames = 0.0;
    for (const auto& m : r.witness) {
        renames += m.rename_cost;
        EXPECT_EQ(m.expert_path, m.model_path);
    }
    EXPECT_EQ(renames, 0.0);
    EXPECT_TRUE(us_ted(h(a), h(b), sim).witness.empty());
}

TEST(UsNted, RejectsEmpty) { EXPECT_THROW(us_nted(0.0, 0, 0), ValidationError); }

TEST(SemPathCost, Examples) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    EXPECT_EQ(sem_path_cost({"R", "A", "B"}, {"R", "A", "B"}, 1.0, sim), 0.0);
    EXPECT_EQ(sem_path_cost({"A"}, {"A", "B"}, 1.0, sim), 1.0);
    EXPECT_EQ(sem_path_cost({"A", "B"}, {"A"}, 1.0, sim), 1.0);
    EXPECT_EQ(sem_path_cost({"A"}, {"A", "B"}, 2.5, sim), 2.5);
    EXPECT_THROW(sem_path_cost({}, {"A"}, 1.0, sim), ValidationError);
    EXPECT_THROW(sem_path_cost({"A"}, {"A"}, -1.0, sim), ValidationError);
}

TEST(SemPathCost, MatchesSubsequenceBruteForce) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    gen::Rng rng(36);
    for (int trial = 0; trial < 500; ++trial) {
        LabelPath s, t;
        for (std::size_t i = gen::random_size(rng, 1, 6); i > 0; --i) s.push_back(gen::random_label(rng));
        for (std::size_t i = gen::random_size(rng, 1, 6); i > 0; --i) t.push_back(gen::random_label(rng));
        const double lambda = double(rng() % 5) * 0.5;
        EXPECT_NEAR(sem_path_cost(s, t, lambda, sim), oracle::path_cost(s, t, lambda, sim), 1e-9);
        EXPECT_NEAR(sem_path_cost(s, t, lambda, sim), sem_path_cost(t, s, lambda, sim), 1e-12);
    }
}

TEST(SemPathCost, StrictlyIncreasingInLambda) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    gen::Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        LabelPath s, t;
        const std::size_t m = gen::random_size(rng, 1, 4);
        for (std::size_t i = 0; i < m; ++i) s.push_back(gen::random_label(rng));
        for (std::size_t i = m + gen::random_size(rng, 1, 3); i > 0; --i) t.push_back(gen::random_label(rng));
        double prev = sem_path_cost(s, t, 0.0, sim);
        for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double cur = sem_path_cost(s, t, lambda, sim);
            EXPECT_GT(cur, prev);
            prev = cur;
        }
    }
}

TEST(SemPath, Examples) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);

    const Taxonomy same = with_paper({"R", "A", "B"}, "p1");
    const auto self = sem_path(same, same, self_alignment("p1"), 1.0, sim);
    EXPECT_EQ(*self.sem_path, 1.0);

    const auto deeper = sem_path(with_paper({"R", "A"}, "p1"), with_paper({"R", "A", "X"}, "p1"), self_alignment("p1"), 1.0, sim);
    EXPECT_EQ(deeper.per_paper_costs.at("p1"), 1.0);
    EXPECT_EQ(*deeper.sem_path, 0.5);

    const LabelPath ep = {"R", "graph learning", "models"}, mp = {"R", "neural", "graph models", "survey"};
    const double j = oracle::path_cost(ep, mp, 1.0, sim);
    const auto single = sem_path(with_paper(ep, "p1"), with_paper(mp, "p1"), self_alignment("p1"), 1.0, sim);
    EXPECT_NEAR(*single.sem_path, 1.0 / (1.0 + j), 1e-12);

    EXPECT_FALSE(sem_path(same, same, AlignmentSet{}, 1.0, sim).sem_path.has_value());
}

TEST(SemPath, MultiplePlacementsTakeBestPair) {
    HashEncoder enc;
    EmbeddingSimilarity sim(enc);
    Taxonomy expert;
    expert.root = node("R", {leaf("A"), leaf("B")});
    expert.root.children[0].papers = {"p1"};
    expert.root.children[1].papers = {"p1"};
    const Taxonomy model = with_paper({"R", "B"}, "p1");
    const auto r = sem_path(expert, model, self_alignment("p1"), 1.0, sim);
    EXPECT_EQ(r.per_paper_costs.at("p1"), 0.0);
    EXPECT_EQ(*r.sem_path, 1.0);
}
