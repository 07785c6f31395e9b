#include <gtest/gtest.h>

#include <fstream>

#include "numeracy/bundle.hpp"
#include "test_util.hpp"

using namespace numeracy;
using numeracy::test::code_of;
using numeracy::test::TempDir;

namespace {

void write_raw(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

std::string meta_json(int vocab_size, int dim) {
  return R"({"format":"neb-1","model":"tiny","vocab_size":)" + std::to_string(vocab_size) +
         R"(,"dim":)" + std::to_string(dim) + R"(,"dtype":"f32le","order":"row-major","extra":1})";
}

void make_raw_bundle(const std::filesystem::path& dir, const std::string& meta, const std::string& vocab,
                     std::size_t n_bytes) {
  write_raw(dir / "meta.json", meta);
  write_raw(dir / "vocab.txt", vocab);
  write_raw(dir / "embeddings.bin", std::string(n_bytes, '\0'));
}

EmbeddingBundle seven_bundle(std::vector<std::string> vocab) {
  std::vector<float> m(vocab.size() * 2, 0.5f);
  return EmbeddingBundle("t", std::move(vocab), std::move(m), 2);
}

}  // namespace

TEST(Bundle, LoadsSmallestConsistentBundle) {
  TempDir dir("bundle");
  make_raw_bundle(dir.path(), meta_json(3, 2), "a\nb\nc\n", 24);
  const auto b = load_bundle(dir.path());
  EXPECT_EQ(b.vocab_size(), 3u);
  EXPECT_EQ(b.dim(), 2u);
  EXPECT_EQ(b.matrix().size(), 6u);
  EXPECT_EQ(b.model_name(), "tiny");
}

TEST(Bundle, ShortEmbeddingFileIsMetaMismatch) {
  TempDir dir("bundle");
  make_raw_bundle(dir.path(), meta_json(3, 2), "a\nb\nc\n", 23);
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MetaMismatch);
}

TEST(Bundle, VocabLineCountMismatch) {
  TempDir dir("bundle");
  make_raw_bundle(dir.path(), meta_json(3, 2), "a\nb\nc\nd\n", 24);
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MetaMismatch);
}

TEST(Bundle, VocabWithoutTrailingNewline) {
  TempDir dir("bundle");
  make_raw_bundle(dir.path(), meta_json(3, 2), "a\nb\nc", 24);
  EXPECT_EQ(load_bundle(dir.path()).vocab(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Bundle, MissingFileAndMalformedMeta) {
  TempDir dir("bundle");
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MissingFile);

  make_raw_bundle(dir.path(), "{not json", "a\n", 4);
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MalformedMeta);

  write_raw(dir / "meta.json", R"({"format":"neb-2","model":"x","vocab_size":1,"dim":1,"dtype":"f32le","order":"row-major"})");
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MalformedMeta);

  write_raw(dir / "meta.json", R"({"format":"neb-1","model":"x","vocab_size":1,"dtype":"f32le","order":"row-major"})");
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MalformedMeta);

  write_raw(dir / "meta.json", R"({"format":"neb-1","model":"x","vocab_size":1,"dim":1,"dtype":"f16","order":"row-major"})");
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::MalformedMeta);
}

TEST(Bundle, NonFiniteEntryRejectedAtLoad) {
  TempDir dir("bundle");
  const EmbeddingBundle b("m", {"x"}, {1.0f, 2.0f}, 2);
  write_bundle(b, dir.path());
  // Overwrite the second float with a quiet NaN (0x7FC00000, little-endian).
  std::fstream f(dir / "embeddings.bin", std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(4);
  const char nan_bytes[4] = {0x00, 0x00, static_cast<char>(0xC0), 0x7F};
  f.write(nan_bytes, 4);
  f.close();
  EXPECT_EQ(code_of([&] { load_bundle(dir.path()); }), ErrorCode::NonFiniteEntry);
}

TEST(Bundle, EmptyTokenRejected) {
  EXPECT_EQ(code_of([] { EmbeddingBundle("m", {"a", ""}, {1, 2}, 1); }), ErrorCode::InvalidBundle);
}

TEST(Bundle, LittleEndianLayoutIsExact) {
  TempDir dir("bundle");
  const EmbeddingBundle b("m", {"x"}, {1.0f, -2.5f}, 2);
  write_bundle(b, dir.path());
  std::ifstream in(dir / "embeddings.bin", std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(bytes.size(), 8u);
  // 1.0f = 0x3F800000, -2.5f = 0xC0200000
  const unsigned char expected[8] = {0x00, 0x00, 0x80, 0x3F, 0x00, 0x00, 0x20, 0xC0};
  for (int i = 0; i < 8; ++i) EXPECT_EQ(static_cast<unsigned char>(bytes[i]), expected[i]) << i;
}

TEST(Bundle, RoundTripIsIdentityOnRandomBundles) {
  numeracy::test::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = gen.index(1, 30);
    const auto d = gen.index(1, 12);
    std::vector<std::string> vocab;
    for (std::size_t i = 0; i < n; ++i) vocab.push_back("tok" + std::to_string(gen.index(0, 5)));  // duplicates allowed
    std::vector<float> m(n * d);
    for (auto& x : m) x = static_cast<float>(gen.normal() * 1e3);
    const EmbeddingBundle b("model-" + std::to_string(trial), vocab, m, d);

    TempDir dir("roundtrip");
    write_bundle(b, dir.path());
    const auto back = load_bundle(dir.path());
    EXPECT_EQ(back, b);

    TempDir dir2("roundtrip");
    write_bundle(back, dir2.path());
    std::ifstream a(dir / "embeddings.bin", std::ios::binary), c(dir2 / "embeddings.bin", std::ios::binary);
    EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(c), {}));
  }
}

TEST(Bundle, RoundTripPreservesVocabOrder) {
  TempDir dir("bundle");
  const EmbeddingBundle b("m", {"a", "b", "c"}, {1, 2, 3}, 1);
  write_bundle(b, dir.path());
  EXPECT_EQ(load_bundle(dir.path()).vocab(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Bundle, WriteToUnwritablePathIsIoFailure) {
  TempDir dir("bundle");
  write_raw(dir / "plainfile", "x");
  const EmbeddingBundle b("m", {"a"}, {1}, 1);
  EXPECT_EQ(code_of([&] { write_bundle(b, dir / "plainfile" / "sub"); }), ErrorCode::IoFailure);
}

TEST(Lookup, WordBoundaryFallback) {
  const auto b = seven_bundle({"\xE2\x96\x81seven", "7"});
  EXPECT_EQ(lookup_token(b, "seven", {}), std::optional<std::size_t>(0));
  EXPECT_EQ(lookup_token(b, "7", {}), std::optional<std::size_t>(1));
}

TEST(Lookup, ExactWins) {
  const auto b = seven_bundle({"seven", "\xE2\x96\x81seven"});
  EXPECT_EQ(lookup_token(b, "seven", {}), std::optional<std::size_t>(0));
}

TEST(Lookup, VocabularyIsNotCaseFolded) {
  const auto b = seven_bundle({"\xE2\x96\x81Seven"});
  EXPECT_EQ(lookup_token(b, "seven", {}), std::nullopt);
}

TEST(Lookup, LowercaseQueryFallback) {
  const auto b = seven_bundle({"x", "\xE2\x96\x81seven"});
  EXPECT_EQ(lookup_token(b, "Seven", {}), std::optional<std::size_t>(1));
  LookupPolicy no_lower;
  no_lower.try_lowercase = false;
  EXPECT_EQ(lookup_token(b, "Seven", no_lower), std::nullopt);
}

TEST(Lookup, DuplicatesResolveToLowestIndex) {
  const auto b = seven_bundle({"x", "seven", "seven"});
  EXPECT_EQ(lookup_token(b, "seven", {}), std::optional<std::size_t>(1));
}

TEST(Lookup, PolicyMustEnableACandidate) {
  const auto b = seven_bundle({"x"});
  LookupPolicy none{false, false, false, false};
  EXPECT_EQ(code_of([&] { lookup_token(b, "x", none); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { lookup_token(b, "", {}); }), ErrorCode::InvalidArgument);
}

TEST(Lookup, DeterministicAcrossCalls) {
  const auto b = seven_bundle({"\xE2\x96\x81one", "one", "ONE", "\xE2\x96\x81two"});
  for (const char* s : {"one", "ONE", "two", "Two", "three"}) {
    const auto first = lookup_token(b, s, {});
    for (int i = 0; i < 5; ++i) EXPECT_EQ(lookup_token(b, s, {}), first);
  }
}
