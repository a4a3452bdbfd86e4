// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/vsm.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "retrorank/errors.h"

namespace retrorank::vsm {

TermVector::TermVector(std::vector<std::pair<TermId, double>> entries) : entries_(std::move(entries)) {
  std::erase_if(entries_, [](const auto& e) { return e.second == 0.0; });
  std::sort(entries_.begin(), entries_.end());
  for (const auto& [id, w] : entries_) {
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("term weight must be finite and >= 0");
  }
}

double TermVector::weight(TermId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const auto& e, TermId key) { return e.first < key; });
  return (it != entries_.end() && it->first == id) ? it->second : 0.0;
}

double TermVector::norm() const {
  double sum = 0.0;
  for (const auto& [id, w] : entries_) sum += w * w;
  return std::sqrt(sum);
}

TermVector TermVector::scaled(double k) const {
  auto copy = entries_;
  for (auto& e : copy) e.second *= k;
  return TermVector(std::move(copy));
}

namespace {

// Merge-join over sorted ids, accumulated in ascending id order.
double dot(const TermVector& a, const TermVector& b) {
  auto ea = a.entries();
  auto eb = b.entries();
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first) {
      ++i;
    } else if (eb[j].first < ea[i].first) {
      ++j;
    } else {
      sum += ea[i].second * eb[j].second;
      ++i;
      ++j;
    }
  }
  return sum;
}

double cosine_with_norms(const TermVector& a, double na, const TermVector& b, double nb) {
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double s = dot(a, b) / (na * nb);
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace

double cosine_similarity(const TermVector& a, const TermVector& b) {
  return cosine_with_norms(a, a.norm(), b, b.norm());
}

std::optional<TfIdfScheme> parse_scheme(std::string_view name) {
  if (name == "raw") return TfIdfScheme::kRawCount;
  if (name == "sublinear") return TfIdfScheme::kSublinear;
  return std::nullopt;
}

double TfIdfIndex::tf_weight(std::size_t count) const {
  if (count == 0) return 0.0;
  if (scheme_ == TfIdfScheme::kSublinear) return 1.0 + std::log(static_cast<double>(count));
  return static_cast<double>(count);
}

double TfIdfIndex::idf(TermId id) const {
  return std::log(static_cast<double>(doc_count()) / static_cast<double>(df_[id]));
}

std::optional<TermId> TfIdfIndex::term_id(const std::string& term) const {
  auto it = term_ids_.find(term);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

TermVector TfIdfIndex::vectorize(const textprep::TermList& terms) const {
  std::map<TermId, std::size_t> counts;
  for (const auto& t : terms) {
    if (auto id = term_id(t)) ++counts[*id];
  }
  std::vector<std::pair<TermId, double>> entries;
  entries.reserve(counts.size());
  for (const auto& [id, count] : counts) {
    const double w = tf_weight(count) * idf(id);
    if (w > 0.0) entries.emplace_back(id, w);
  }
  return TermVector(std::move(entries));
}

void TfIdfIndex::finalize() {
  term_ids_.clear();
  for (TermId id = 0; id < terms_.size(); ++id) term_ids_.emplace(terms_[id], id);
  positions_.clear();
  for (std::size_t i = 0; i < refs_.size(); ++i) positions_.emplace(refs_[i], i);
  norms_.clear();
  norms_.reserve(vectors_.size());
  for (const auto& v : vectors_) norms_.push_back(v.norm());
}

TfIdfIndex TfIdfIndex::build(std::span<const Document> documents, TfIdfScheme scheme) {
  if (documents.empty()) throw IndexError("cannot build an index from an empty comment stream");

  std::vector<const Document*> docs;
  docs.reserve(documents.size());
  for (const auto& d : documents) docs.push_back(&d);
  std::sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) { return a->ref < b->ref; });
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i]->ref == docs[i - 1]->ref) {
      throw IndexError("duplicate document " + docs[i]->ref.to_string());
    }
  }

  // Term ids follow lexicographic term order so vectors and any dense
  // re-computation accumulate in the same order.
  std::map<std::string, std::size_t> df;
  for (const Document* d : docs) {
    std::vector<std::string> distinct(d->terms.begin(), d->terms.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto& t : distinct) ++df[t];
  }

  TfIdfIndex index;
  index.scheme_ = scheme;
  index.terms_.reserve(df.size());
  index.df_.reserve(df.size());
  for (auto& [term, count] : df) {
    index.terms_.push_back(term);
    index.df_.push_back(count);
  }
  for (const Document* d : docs) index.refs_.push_back(d->ref);
  index.finalize();

  index.vectors_.reserve(docs.size());
  for (const Document* d : docs) index.vectors_.push_back(index.vectorize(d->terms));
  index.norms_.clear();
  for (const auto& v : index.vectors_) index.norms_.push_back(v.norm());
  return index;
}

const TermVector* TfIdfIndex::vector(const CommentRef& ref) const {
  auto it = positions_.find(ref);
  return it == positions_.end() ? nullptr : &vectors_[it->second];
}

RankOutcome TfIdfIndex::rank(const textprep::TermList& query) const {
  RankOutcome outcome;
  const TermVector q = vectorize(query);
  if (q.empty()) {
    outcome.no_match = true;
    return outcome;
  }
  const double qn = q.norm();
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    const double s = cosine_with_norms(vectors_[i], norms_[i], q, qn);
    if (s > 0.0) outcome.results.push_back({refs_[i], s});
  }
  std::sort(outcome.results.begin(), outcome.results.end(), [](const ScoredRef& a, const ScoredRef& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.ref < b.ref;
  });
  return outcome;
}

// index.bin, little-endian:
//   magic "RRTFIDF\0" | u32 version | u32 scheme
//   u64 term_count, then per term: u32 len, bytes, u64 df
//   u64 doc_count, then per doc: u32 len, project bytes, i64 bug_id,
//     i64 comment_id, u32 nnz, nnz x (u32 term_id, f64 weight)
namespace {

constexpr char kMagic[8] = {'R', 'R', 'T', 'F', 'I', 'D', 'F', '\0'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "index serialization assumes a little-endian host");

class Writer {
 public:
  explicit Writer(std::ofstream& out) : out_(out) {}
  template <typename T>
  void pod(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void str(const std::string& s) {
    pod<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ofstream& out_;
};

class Reader {
 public:
  explicit Reader(std::ifstream& in) : in_(in) {}
  template <typename T>
  T pod() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) throw StorageError("truncated index file");
    return v;
  }
  std::string str() {
    const auto n = pod<std::uint32_t>();
    if (n > (1u << 24)) throw StorageError("corrupt index file (string length)");
    std::string s(n, '\0');
    in_.read(s.data(), n);
    if (!in_) throw StorageError("truncated index file");
    return s;
  }

 private:
  std::ifstream& in_;
};

}  // namespace

void TfIdfIndex::save(const std::filesystem::path& path) const {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  Writer w(out);
  out.write(kMagic, sizeof(kMagic));
  w.pod<std::uint32_t>(kVersion);
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(scheme_));
  w.pod<std::uint64_t>(terms_.size());
  for (TermId id = 0; id < terms_.size(); ++id) {
    w.str(terms_[id]);
    w.pod<std::uint64_t>(df_[id]);
  }
  w.pod<std::uint64_t>(refs_.size());
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    w.str(refs_[i].project);
    w.pod<std::int64_t>(refs_[i].bug_id);
    w.pod<std::int64_t>(refs_[i].comment_id);
    const auto entries = vectors_[i].entries();
    w.pod<std::uint32_t>(static_cast<std::uint32_t>(entries.size()));
    for (const auto& [id, weight] : entries) {
      w.pod<std::uint32_t>(id);
      w.pod<double>(weight);
    }
  }
  if (!out) throw StorageError("write failed for " + path.string());
}

TfIdfIndex TfIdfIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw StorageError(path.string() + " is not a RetroRank index");
  }
  Reader r(in);
  const auto version = r.pod<std::uint32_t>();
  if (version != kVersion) {
    throw StorageError("unsupported index version " + std::to_string(version));
  }
  TfIdfIndex index;
  const auto scheme = r.pod<std::uint32_t>();
  if (scheme > 1) throw StorageError("unknown tf-idf scheme in index");
  index.scheme_ = static_cast<TfIdfScheme>(scheme);
  const auto nterms = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < nterms; ++i) {
    index.terms_.push_back(r.str());
    index.df_.push_back(static_cast<std::size_t>(r.pod<std::uint64_t>()));
  }
  const auto ndocs = r.pod<std::uint64_t>();
  for (std::uint64_t i = 0; i < ndocs; ++i) {
    CommentRef ref;
    ref.project = r.str();
    ref.bug_id = r.pod<std::int64_t>();
    ref.comment_id = r.pod<std::int64_t>();
    index.refs_.push_back(std::move(ref));
    const auto nnz = r.pod<std::uint32_t>();
    std::vector<std::pair<TermId, double>> entries;
    entries.reserve(nnz);
    for (std::uint32_t k = 0; k < nnz; ++k) {
      const auto id = r.pod<std::uint32_t>();
      const auto weight = r.pod<double>();
      if (id >= nterms) throw StorageError("corrupt index file (term id)");
      entries.emplace_back(id, weight);
    }
    index.vectors_.emplace_back(std::move(entries));
  }
  index.finalize();
  return index;
}

}  // namespace retrorank::vsm
