#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "taxoeval/taxonomy.hpp"
#include "taxoeval/taxonomy_io.hpp"

using namespace taxoeval;

namespace {

const char* kMinimal = R"({"name":"R","subtopics":[{"name":"A","papers":["p1"]}]})";

std::size_t count_edges(const CategoryNode& n) {
    std::size_t e = n.children.size();
    for (const auto& c : n.children) e += count_edges(c);
    return e;
}

bool same_shape(const CategoryNode& a, const CategoryNode& b) {
    if (a.label != b.label || a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!same_shape(a.children[i], b.children[i])) return false;
    return true;
}

} // namespace

TEST(ParseTaxonomy, MinimalShape) {
    const Taxonomy t = parse_taxonomy(kMinimal, ParseMode::strict);
    EXPECT_EQ(subtree_size(t.root), 2u);
    ASSERT_EQ(t.root.children.size(), 1u);
    EXPECT_EQ(t.root.children[0].label, "A");
    EXPECT_EQ(t.root.children[0].papers, std::vector<std::string>{"p1"});
    EXPECT_TRUE(t.warnings.empty());
}

TEST(ParseTaxonomy, DualRoleStrictIsError) {
    const char* text = R"({"name":"R","papers":["x"],"subtopics":[{"name":"A","papers":["p1"]}]})";
    EXPECT_THROW(parse_taxonomy(text, ParseMode::strict), ValidationError);
}

TEST(ParseTaxonomy, DualRoleLenientMovesPapersToMisc) {
    const char* text = R"({"name":"R","papers":["x"],"subtopics":[{"name":"A","papers":["p1"]}]})";
    const Taxonomy t = parse_taxonomy(text, ParseMode::lenient);
    ASSERT_EQ(t.root.children.size(), 2u);
    EXPECT_EQ(t.root.children[1].label, "R (misc)");
    EXPECT_EQ(t.root.children[1].papers, std::vector<std::string>{"x"});
    EXPECT_TRUE(t.root.papers.empty());
    EXPECT_EQ(t.warnings.size(), 1u);
}

TEST(ParseTaxonomy, DuplicateLenientKeepsFirst) {
    const char* text = R"({"name":"R","subtopics":[{"name":"A","papers":["p1"]},{"name":"B","papers":["P1!"]}]})";
    const Taxonomy t = parse_taxonomy(text, ParseMode::lenient);
    EXPECT_EQ(t.root.children[0].papers.size(), 1u);
    EXPECT_TRUE(t.root.children[1].papers.empty());
    ASSERT_EQ(t.warnings.size(), 1u);
    EXPECT_NE(t.warnings[0].find("duplicate"), std::string::npos);
    EXPECT_EQ(ancestor_paths(t, "p1"), (std::vector<LabelPath>{{"R", "A"}}));
}

TEST(ParseTaxonomy, DuplicateStrictIsError) {
    const char* text = R"({"name":"R","subtopics":[{"name":"A","papers":["p1"]},{"name":"B","papers":["p1"]}]})";
    try {
        parse_taxonomy(text, ParseMode::strict);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.diagnostics().size(), 1u);
    }
}

TEST(ParseTaxonomy, TopLevelArray) {
    const char* text = R"([{"name":"A","papers":["p1"]},{"name":"B","papers":["p2"]}])";
    EXPECT_THROW(parse_taxonomy(text, ParseMode::strict), ValidationError);
    const Taxonomy t = parse_taxonomy(text, ParseMode::lenient, "s01");
    EXPECT_EQ(t.root.label, "s01");
    EXPECT_EQ(t.root.children.size(), 2u);

    const Taxonomy single = parse_taxonomy(R"([{"name":"A","papers":["p1"]}])", ParseMode::lenient);
    EXPECT_EQ(single.root.label, "A");
}

TEST(ParseTaxonomy, EmptyLabelRejectedInBothModes) {
    const char* text = R"({"name":"R","subtopics":[{"name":"  ","papers":["p1"]}]})";
    EXPECT_THROW(parse_taxonomy(text, ParseMode::strict), ValidationError);
    EXPECT_THROW(parse_taxonomy(text, ParseMode::lenient), ValidationError);
}

TEST(ParseTaxonomy, MalformedJson) {
    EXPECT_THROW(parse_taxonomy("{\"name\":", ParseMode::lenient), ValidationError);
    EXPECT_THROW(parse_taxonomy(R"({"name":"R","papers":[3]})", ParseMode::lenient), ValidationError);
}

TEST(ParseTaxonomy, UnknownFieldsWarned) {
    const Taxonomy t = parse_taxonomy(R"({"name":"R","papers":["p"],"meta":{"k":1}})", ParseMode::strict);
    ASSERT_EQ(t.warnings.size(), 1u);
    EXPECT_NE(t.warnings[0].find("meta"), std::string::npos);
}

TEST(Validate, Diagnostics) {
    EXPECT_TRUE(validate_taxonomy(kMinimal).empty());

    const auto dup = validate_taxonomy(R"({"name":"R","subtopics":[{"name":"A","papers":["p1"]},{"name":"B","papers":["p1"]}]})");
    ASSERT_EQ(dup.size(), 1u);
    EXPECT_NE(dup[0].message.find("R/A"), std::string::npos);
    EXPECT_EQ(dup[0].path, "R/B");

    const auto dual = validate_taxonomy(R"({"name":"R","papers":["x"],"subtopics":[{"name":"A","papers":["p1"]}]})");
    EXPECT_EQ(dual.size(), 1u);

    EXPECT_EQ(validate_taxonomy("not json").size(), 1u);
}

TEST(Hierarchy, DropsPapersKeepsNodes) {
    const Taxonomy t = parse_taxonomy(kMinimal, ParseMode::strict);
    const CategoryHierarchy h = hierarchy_of(t);
    EXPECT_EQ(subtree_size(h.root), 2u);
    EXPECT_TRUE(h.root.children[0].papers.empty());

    const Taxonomy flat = parse_taxonomy(R"({"name":"R","papers":["a","b"]})", ParseMode::strict);
    const CategoryHierarchy hf = hierarchy_of(flat);
    EXPECT_EQ(hf.root.label, "R");
    EXPECT_TRUE(hf.root.papers.empty());
    EXPECT_TRUE(hf.root.children.empty());
}

TEST(Hierarchy, IdempotentAndEdgePreserving) {
    gen::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Taxonomy t;
        t.root = gen::random_tree(rng, gen::random_size(rng, 1, 12));
        std::size_t next = 0;
        gen::attach_papers(t.root, 2, next);
        const CategoryHierarchy h = hierarchy_of(t);
        EXPECT_TRUE(same_shape(h.root, t.root));
        EXPECT_EQ(count_edges(h.root), count_edges(t.root));
        EXPECT_TRUE(same_shape(hierarchy_of(as_taxonomy(h)).root, h.root));
        EXPECT_EQ(assignment_of(t).size(), next);
    }
}

TEST(Assignment, Examples) {
    const Taxonomy t = parse_taxonomy(kMinimal, ParseMode::strict);
    const PaperAssignment a = assignment_of(t);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a.at("p1"), 1u);

    const Taxonomy empty = parse_taxonomy(R"({"name":"R","papers":[]})", ParseMode::strict);
    EXPECT_EQ(assignment_of(empty).size(), 0u);

    const Taxonomy three =
        parse_taxonomy(R"({"name":"R","subtopics":[{"name":"A","papers":["p1","p2"]},{"name":"B","papers":["p3"]}]})",
                       ParseMode::strict);
    const PaperAssignment a3 = assignment_of(three);
    EXPECT_EQ(a3.size(), 3u);
    std::set<CategoryId> ids;
    for (const auto& [k, v] : a3.entries) ids.insert(v);
    EXPECT_EQ(ids.size(), 2u);
    EXPECT_THROW(a3.at("missing"), ValidationError);
}

TEST(AncestorPaths, Examples) {
    const Taxonomy t = parse_taxonomy(kMinimal, ParseMode::strict);
    EXPECT_EQ(ancestor_paths(t, "p1"), (std::vector<LabelPath>{{"R", "A"}}));
    EXPECT_EQ(ancestor_paths(t, " P1 "), (std::vector<LabelPath>{{"R", "A"}}));
    EXPECT_TRUE(ancestor_paths(t, "absent").empty());
    for (const auto& path : ancestor_paths(t, "p1"))
        for (const auto& label : path) EXPECT_NE(label, "p1");
}

TEST(SubtreeSize, Examples) {
    CategoryNode leaf{"x", {}, {}};
    EXPECT_EQ(subtree_size(leaf), 1u);
    CategoryNode root{"r", {leaf, leaf}, {}};
    EXPECT_EQ(subtree_size(root), 3u);
    CategoryNode chain{"a", {{"b", {{"c", {{"d", {}, {}}}, {}}}, {}}}, {}};
    EXPECT_EQ(subtree_size(chain), 4u);
}

TEST(TaxonomyIo, DirectoryLayoutMatchesJson) {
    const auto dir = std::filesystem::temp_directory_path() / "taxoeval_dir_layout";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir / "survey" / "A");
    std::filesystem::create_directories(dir / "survey" / "B");
    std::ofstream(dir / "survey" / "A" / "Paper One.txt") << "";
    std::ofstream(dir / "survey" / "B" / "Paper Two.pdf") << "";
    std::ofstream(dir / "survey" / ".hidden") << "";

    const Taxonomy t = load_taxonomy(dir / "survey", ParseMode::strict);
    EXPECT_EQ(t.survey_id, "survey");
    EXPECT_EQ(t.root.label, "survey");
    ASSERT_EQ(t.root.children.size(), 2u);
    EXPECT_EQ(t.root.children[0].papers, std::vector<std::string>{"Paper One"});
    EXPECT_EQ(t.root.children[1].papers, std::vector<std::string>{"Paper Two"});
    EXPECT_TRUE(validate_taxonomy_path(dir / "survey").empty());

    const auto file = dir / "copy.json";
    write_taxonomy_file(t, file);
    const Taxonomy back = load_taxonomy(file, ParseMode::strict);
    EXPECT_EQ(to_json_text(back), to_json_text(t));
    EXPECT_EQ(back.survey_id, "copy");
    std::filesystem::remove_all(dir);
}
