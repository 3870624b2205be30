#include <gtest/gtest.h>

#include <filesystem>

#include "invlim/error.hpp"
#include "invlim/text_format.hpp"

using namespace invlim;

namespace {

std::string error_message(const std::string& text, ErrorKind* kind = nullptr) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    if (kind) *kind = e.kind();
    return e.message();
  }
  return "";
}

const char* kSample = R"(# comment line
poset wedge
  elements: a b c
  covers: c < a, c < b   # trailing comment

system two over wedge
  set a: { 0 1 }
  set b: { 0 1 }
  set c: { 0 1 }
  map a -> c: 0 -> 0, 1 -> 1
  map b -> c: 0 -> 1, 1 -> 0

tower t horizon 5
  set all: { 0 1 2 }
  map all: clipdec
  map 3 -> 2: 0 -> 0, 1 -> 1, 2 -> 2

group z2 gens 1 relations [[2]]
hom proj z2 -> z2 matrix [[1]]

absystem A over wedge
  at a: z2
  at b: gens 0
  at c: gens 2 relations [[2,0]]
  bond a -> c matrix [[1],[0]]
  bond b -> c matrix []

sequence s: A -> A -> A
  u a matrix [[1]]
)";

}  // namespace

TEST(TextFormat, ParsesAllBlockKinds) {
  auto doc = parse_document(kSample);
  ASSERT_EQ(doc.posets.size(), 1u);
  EXPECT_EQ(doc.posets[0].poset.size(), 3u);
  ASSERT_EQ(doc.systems.size(), 1u);
  EXPECT_EQ(doc.systems[0].over, "wedge");
  ASSERT_EQ(doc.towers.size(), 1u);
  auto tower = doc.towers[0].build();
  EXPECT_EQ(tower.horizon(), 5u);
  EXPECT_EQ(doc.groups.size(), 1u);
  EXPECT_EQ(doc.homs.size(), 1u);
  ASSERT_EQ(doc.absystems.size(), 1u);
  EXPECT_EQ(group_invariants(doc.absystems[0].system.group(doc.posets[0].poset.id("c"))).to_string(),
            "free rank 1, torsion [2]");
  ASSERT_EQ(doc.sequences.size(), 1u);
  auto seq = doc.sequence(doc.sequences[0]);
  EXPECT_EQ(seq.a, doc.find_absystem("A"));
}

TEST(TextFormat, PrintIsAFixpoint) {
  auto once = print_document(parse_document(kSample));
  auto twice = print_document(parse_document(once));
  EXPECT_EQ(once, twice);
}

TEST(TextFormat, TowerHorizonCanMove) {
  auto doc = parse_document("tower t horizon 3\n  set all: { 0 1 }\n  map all: identity\n");
  EXPECT_EQ(doc.towers[0].build(8).horizon(), 8u);
  auto explicit_only = parse_document("tower t horizon 1\n  set 0: { 0 }\n  set 1: { 0 }\n  map 1 -> 0: 0 -> 0\n");
  EXPECT_THROW(explicit_only.towers[0].build(4), Error);
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  ErrorKind kind{};
  auto msg = error_message("poset p\n  elements: a b\n  covers: a < z\n", &kind);
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  msg = error_message("poset p\n  elements: a b\n  frobnicate\n", &kind);
  EXPECT_EQ(kind, ErrorKind::ParseError);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  msg = error_message("\n\nwidget w\n", &kind);
  EXPECT_EQ(kind, ErrorKind::ParseError);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  msg = error_message("group g gens 2 relations [[1,2,3]]\n", &kind);
  EXPECT_EQ(kind, ErrorKind::DimensionMismatch);
}

TEST(TextFormat, BuilderErrorsKeepTheirKind) {
  ErrorKind kind{};
  error_message("poset p\n  elements: a b\n  covers: a < b, b < a\n", &kind);
  EXPECT_EQ(kind, ErrorKind::CycleDetected);
  error_message(
      "poset p\n  elements: a b\n  covers: a < b\nsystem s over p\n  set a: { 0 }\n  set b: { 0 }\n"
      "  map b -> a: 0 -> 7\n",
      &kind);
  EXPECT_EQ(kind, ErrorKind::NotFunction);
}

TEST(TextFormat, MatrixLiterals) {
  EXPECT_EQ(parse_matrix("[[1,0],[2,3]]"), (IntMatrix{{1, 0}, {2, 3}}));
  EXPECT_EQ(parse_matrix("[ [ -4 , 5 ] ]"), (IntMatrix{{-4, 5}}));
  EXPECT_EQ(parse_matrix("[]", 3).cols(), 3u);
  EXPECT_THROW(parse_matrix("[[1,2],[3]]"), Error);
  EXPECT_THROW(parse_matrix("[[1,x]]"), Error);
}

TEST(TextFormat, RepositoryDataFilesRoundTrip) {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(INVLIM_DATA_DIR)) {
    if (!entry.is_regular_file()) continue;
    ++files;
    SCOPED_TRACE(entry.path().string());
    auto doc = read_document_file(entry.path().string());
    auto once = print_document(doc);
    EXPECT_EQ(print_document(parse_document(once)), once);
  }
  EXPECT_GE(files, 5u);
}
