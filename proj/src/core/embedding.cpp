#include "core/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace xlt {
namespace {

bool parse_float(std::string_view field, float& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

EmbeddingTable EmbeddingTable::load(const std::string& path, std::size_t limit) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open vector file: " + path);

  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::parse, path + ":1: empty vector file");

  std::size_t declared_count = 0, dim = 0;
  {
    std::size_t space = line.find(' ');
    bool ok = space != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(line.data(), line.data() + space, declared_count);
      auto r2 = std::from_chars(line.data() + space + 1, line.data() + line.size(), dim);
      ok = r1.ec == std::errc() && r2.ec == std::errc() && dim > 0;
    }
    if (!ok) {
      fail(ErrorCode::parse, path + ":1: header must be '<count> <dimension>'");
    }
  }

  EmbeddingTable table;
  table.dim_ = dim;
  std::size_t reserve = limit > 0 ? std::min(limit, declared_count) : declared_count;
  table.tokens_.reserve(reserve);
  table.data_.reserve(reserve * dim);

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (limit > 0 && table.tokens_.size() >= limit) break;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::size_t sep = line.find(' ');
    if (sep == std::string::npos || sep == 0) {
      fail(ErrorCode::parse,
           path + ":" + std::to_string(line_no) + ": expected token and " +
               std::to_string(dim) + " values");
    }
    std::string token = line.substr(0, sep);

    std::size_t row_start = table.data_.size();
    std::size_t pos = sep + 1;
    std::size_t count = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(' ', pos);
      std::size_t end = next == std::string::npos ? line.size() : next;
      if (end > pos) {
        float v;
        if (!parse_float({line.data() + pos, end - pos}, v)) {
          fail(ErrorCode::parse, path + ":" + std::to_string(line_no) +
                                     ": bad float in row for token '" + token + "'");
        }
        table.data_.push_back(v);
        ++count;
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (count != dim) {
      fail(ErrorCode::parse, path + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(dim) + " values, got " +
                                 std::to_string(count));
    }
    // duplicate tokens: first occurrence wins
    if (!table.index_.emplace(token, table.tokens_.size()).second) {
      table.data_.resize(row_start);
      continue;
    }
    table.tokens_.push_back(std::move(token));
  }
  return table;
}

EmbeddingTable EmbeddingTable::from_entries(
    std::size_t dimension,
    const std::vector<std::pair<std::string, std::vector<float>>>& entries) {
  if (dimension == 0) fail(ErrorCode::invalid_argument, "embedding dimension must be positive");
  EmbeddingTable table;
  table.dim_ = dimension;
  for (const auto& [token, vec] : entries) {
    if (vec.size() != dimension) {
      fail(ErrorCode::invalid_argument,
           "vector for '" + token + "' has wrong dimension");
    }
    if (!table.index_.emplace(token, table.tokens_.size()).second) {
      fail(ErrorCode::invalid_argument, "duplicate token '" + token + "'");
    }
    table.tokens_.push_back(token);
    table.data_.insert(table.data_.end(), vec.begin(), vec.end());
  }
  return table;
}

const float* EmbeddingTable::vector_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return nullptr;
  return data_.data() + it->second * dim_;
}

EmbeddingTable EmbeddingTable::l2_normalized() const {
  EmbeddingTable out = *this;
  for (std::size_t i = 0; i < out.tokens_.size(); ++i) {
    float* row = out.data_.data() + i * dim_;
    double sq = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) sq += static_cast<double>(row[d]) * row[d];
    if (sq == 0.0) {
      fail(ErrorCode::invalid_argument,
           "cannot normalize zero vector for token '" + out.tokens_[i] + "'");
    }
    double inv = 1.0 / std::sqrt(sq);
    for (std::size_t d = 0; d < dim_; ++d) {
      row[d] = static_cast<float>(row[d] * inv);
    }
  }
  out.normalized_ = true;
  return out;
}

EmbeddingTable EmbeddingTable::sample(std::size_t target_size, std::uint64_t seed) const {
  if (target_size > size()) {
    fail(ErrorCode::invalid_argument,
         "sample size " + std::to_string(target_size) + " exceeds table size " +
             std::to_string(size()));
  }
  // Partial Fisher-Yates over the index array, then restore file order.
  std::vector<std::size_t> idx(size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < target_size; ++i) {
    std::size_t j = i + uniform_below(rng, idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(target_size);
  std::sort(idx.begin(), idx.end());

  EmbeddingTable out;
  out.dim_ = dim_;
  out.normalized_ = normalized_;
  out.tokens_.reserve(target_size);
  out.data_.reserve(target_size * dim_);
  for (std::size_t i : idx) {
    out.index_.emplace(tokens_[i], out.tokens_.size());
    out.tokens_.push_back(tokens_[i]);
    const float* row = data_.data() + i * dim_;
    out.data_.insert(out.data_.end(), row, row + dim_);
  }
  return out;
}

double EmbeddingTable::term_similarity(const std::string& a, const std::string& b) const {
  if (!normalized_) {
    fail(ErrorCode::invalid_argument, "term similarity requires a normalized table");
  }
  const float* va = vector_of(a);
  const float* vb = vector_of(b);
  if (!va || !vb) return a == b ? 1.0 : 0.0;
  double dot = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) dot += static_cast<double>(va[d]) * vb[d];
  return std::clamp(dot, -1.0, 1.0);
}

std::vector<double> EmbeddingTable::doc_embedding(const DocVector& doc,
                                                  const Vocabulary& vocab) const {
  if (!normalized_) {
    fail(ErrorCode::invalid_argument, "document embedding requires a normalized table");
  }
  std::vector<double> acc(dim_, 0.0);
  for (const auto& [idx, weight] : doc.entries) {
    const float* vec = vector_of(vocab.term_at(idx));
    if (!vec) continue;
    for (std::size_t d = 0; d < dim_; ++d) acc[d] += weight * vec[d];
  }
  return acc;
}

}  // namespace xlt
