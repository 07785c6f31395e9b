#pragma once

// Numeracy Embedding Bundle (NEB): a directory holding
//   meta.json       {"format":"neb-1","model":...,"vocab_size":N,"dim":D,
//                    "dtype":"f32le","order":"row-major"}
//   vocab.txt       UTF-8, one token per line, line i = row i
//   embeddings.bin  N*D little-endian float32, row-major, no header

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "numeracy/error.hpp"

namespace numeracy {

/// SentencePiece word-boundary marker, U+2581.
inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";

inline constexpr std::string_view kNebFormat = "neb-1";

/// Immutable vocabulary + float32 embedding table. Every constructor path
/// validates the invariants, so a live object is always consistent.
class EmbeddingBundle {
 public:
  EmbeddingBundle(std::string model_name, std::vector<std::string> vocab, std::vector<float> matrix,
                  std::size_t dim)
      : model_name_(std::move(model_name)),
        vocab_(std::move(vocab)),
        matrix_(std::move(matrix)),
        dim_(dim) {
    if (dim_ == 0) throw Error(ErrorCode::InvalidBundle, "dim must be positive");
    if (vocab_.empty()) throw Error(ErrorCode::InvalidBundle, "vocabulary is empty");
    if (matrix_.size() != vocab_.size() * dim_) {
      throw Error(ErrorCode::MetaMismatch, "matrix holds " + std::to_string(matrix_.size()) +
                                               " values, expected " +
                                               std::to_string(vocab_.size() * dim_));
    }
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      const auto& tok = vocab_[i];
      if (tok.empty()) {
        throw Error(ErrorCode::InvalidBundle, "empty token at row " + std::to_string(i));
      }
      if (tok.find('\n') != std::string::npos) {
        throw Error(ErrorCode::InvalidBundle, "token with newline at row " + std::to_string(i));
      }
      index_.try_emplace(tok, i);  // first occurrence wins
    }
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
      if (!std::isfinite(matrix_[i])) {
        throw Error(ErrorCode::NonFiniteEntry, "non-finite value at row " + std::to_string(i / dim_) +
                                                   ", column " + std::to_string(i % dim_));
      }
    }
  }

  const std::string& model_name() const noexcept { return model_name_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const float> matrix() const noexcept { return matrix_; }
  std::span<const float> row(std::size_t r) const { return {matrix_.data() + r * dim_, dim_}; }

  /// Lowest row whose token equals `token` exactly.
  std::optional<std::size_t> find_exact(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const EmbeddingBundle& a, const EmbeddingBundle& b) {
    return a.model_name_ == b.model_name_ && a.vocab_ == b.vocab_ && a.dim_ == b.dim_ &&
           std::equal(a.matrix_.begin(), a.matrix_.end(), b.matrix_.begin(), b.matrix_.end(),
                      [](float x, float y) {
                        return std::bit_cast<std::uint32_t>(x) == std::bit_cast<std::uint32_t>(y);
                      });
  }

 private:
  std::string model_name_;
  std::vector<std::string> vocab_;
  std::vector<float> matrix_;
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LookupPolicy {
  bool try_exact = true;
  bool try_word_boundary_prefix = true;
  bool try_lowercase = true;
  bool allow_missing = false;

  void validate() const {
    if (!try_exact && !try_word_boundary_prefix && !try_lowercase) {
      throw Error(ErrorCode::InvalidArgument, "lookup policy enables no candidate");
    }
  }
};

namespace detail {

inline std::string ascii_lower(std::string s) {
  for (auto& ch : s) {
    const auto u = static_cast<unsigned char>(ch);
    if (u < 0x80) ch = static_cast<char>(std::tolower(u));
  }
  return s;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline std::uint32_t load_le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void store_le32(std::uint32_t v, char* p) {
  p[0] = static_cast<char>(v & 0xFF);
  p[1] = static_cast<char>((v >> 8) & 0xFF);
  p[2] = static_cast<char>((v >> 16) & 0xFF);
  p[3] = static_cast<char>((v >> 24) & 0xFF);
}

inline std::size_t positive_meta_int(const nlohmann::json& meta, const char* key) {
  auto it = meta.find(key);
  if (it == meta.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::MalformedMeta, std::string("missing integer key '") + key + "'");
  }
  const auto v = it->get<std::int64_t>();
  if (v <= 0) throw Error(ErrorCode::MalformedMeta, std::string(key) + " must be positive");
  return static_cast<std::size_t>(v);
}

inline std::string meta_string(const nlohmann::json& meta, const char* key) {
  auto it = meta.find(key);
  if (it == meta.end() || !it->is_string()) {
    throw Error(ErrorCode::MalformedMeta, std::string("missing string key '") + key + "'");
  }
  return it->get<std::string>();
}

inline std::vector<std::string> split_vocab(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace detail

inline EmbeddingBundle load_bundle(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  for (const char* name : {"meta.json", "vocab.txt", "embeddings.bin"}) {
    if (!fs::is_regular_file(dir / name)) {
      throw Error(ErrorCode::MissingFile, (dir / name).string() + " not found");
    }
  }

  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(detail::read_file(dir / "meta.json"));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedMeta, e.what());
  }
  if (!meta.is_object()) throw Error(ErrorCode::MalformedMeta, "meta.json is not an object");
  if (detail::meta_string(meta, "format") != kNebFormat) {
    throw Error(ErrorCode::MalformedMeta, "unsupported format, expected neb-1");
  }
  if (detail::meta_string(meta, "dtype") != "f32le") {
    throw Error(ErrorCode::MalformedMeta, "unsupported dtype, expected f32le");
  }
  if (detail::meta_string(meta, "order") != "row-major") {
    throw Error(ErrorCode::MalformedMeta, "unsupported order, expected row-major");
  }
  auto model = detail::meta_string(meta, "model");
  const auto vocab_size = detail::positive_meta_int(meta, "vocab_size");
  const auto dim = detail::positive_meta_int(meta, "dim");

  auto vocab = detail::split_vocab(detail::read_file(dir / "vocab.txt"));
  if (vocab.size() != vocab_size) {
    throw Error(ErrorCode::MetaMismatch, "vocab.txt has " + std::to_string(vocab.size()) +
                                             " lines, meta declares " + std::to_string(vocab_size));
  }

  const auto bytes = detail::read_file(dir / "embeddings.bin");
  const auto expected = vocab_size * dim * sizeof(float);
  if (bytes.size() != expected) {
    throw Error(ErrorCode::MetaMismatch, "embeddings.bin has " + std::to_string(bytes.size()) +
                                             " bytes, expected " + std::to_string(expected));
  }
  std::vector<float> matrix(vocab_size * dim);
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    matrix[i] = std::bit_cast<float>(detail::load_le32(raw + 4 * i));
  }

  return EmbeddingBundle(std::move(model), std::move(vocab), std::move(matrix), dim);
}

inline void write_bundle(const EmbeddingBundle& bundle, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::IoFailure, "cannot create directory " + dir.string());
  }

  auto write = [&](const char* name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + (dir / name).string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "short write to " + (dir / name).string());
  };

  nlohmann::ordered_json meta;
  meta["format"] = kNebFormat;
  meta["model"] = bundle.model_name();
  meta["vocab_size"] = bundle.vocab_size();
  meta["dim"] = bundle.dim();
  meta["dtype"] = "f32le";
  meta["order"] = "row-major";
  write("meta.json", meta.dump(2) + "\n");

  std::string vocab;
  for (const auto& tok : bundle.vocab()) {
    vocab += tok;
    vocab += '\n';
  }
  write("vocab.txt", vocab);

  const auto m = bundle.matrix();
  std::string bytes(m.size() * sizeof(float), '\0');
  for (std::size_t i = 0; i < m.size(); ++i) {
    detail::store_le32(std::bit_cast<std::uint32_t>(m[i]), bytes.data() + 4 * i);
  }
  write("embeddings.bin", bytes);
}

/// Candidate order: exact, "▁"+surface, lowercase, "▁"+lowercase. Only the
/// query is lowercased (ASCII); vocabulary entries are compared verbatim.
inline std::optional<std::size_t> lookup_token(const EmbeddingBundle& bundle,
                                               const std::string& surface,
                                               const LookupPolicy& policy) {
  if (surface.empty()) throw Error(ErrorCode::InvalidArgument, "empty surface form");
  policy.validate();

  const std::string prefix(kWordBoundary);
  if (policy.try_exact) {
    if (auto r = bundle.find_exact(surface)) return r;
  }
  if (policy.try_word_boundary_prefix) {
    if (auto r = bundle.find_exact(prefix + surface)) return r;
  }
  if (policy.try_lowercase) {
    const auto lower = detail::ascii_lower(surface);
    if (auto r = bundle.find_exact(lower)) return r;
    if (policy.try_word_boundary_prefix) {
      if (auto r = bundle.find_exact(prefix + lower)) return r;
    }
  }
  return std::nullopt;
}

}  // namespace numeracy
