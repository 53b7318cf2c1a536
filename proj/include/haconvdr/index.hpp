#pragma once

// Exact top-k dense retrieval: an exhaustive scan over the frozen passage
// embedding matrix. Ties break by ascending passage id so ranked lists are
// reproducible bit for bit.
//
// TREC run format: `<qid> Q0 <docid> <rank> <score> <tag>`, rank 1-based,
// score printed with 6 decimal places.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "haconvdr/embedding_io.hpp"
#include "haconvdr/encode.hpp"
#include "haconvdr/error.hpp"
#include "haconvdr/types.hpp"
#include "haconvdr/util.hpp"

namespace haconvdr {

struct ScoredDoc {
  std::string passage_id;
  double score = 0.0;
};

struct RankedList {
  std::string query_id;
  std::vector<ScoredDoc> hits;  // descending score, ties by ascending id
};

class DenseIndex {
 public:
  DenseIndex() = default;

  static DenseIndex build(const Collection& collection,
                          const PassageEncoder& encoder) {
    if (collection.empty())
      throw ValidationError("index build: empty collection");
    DenseIndex idx;
    idx.d_emb_ = encoder.d_emb();
    idx.ids_.reserve(collection.size());
    for (const auto& [id, p] : collection) idx.ids_.push_back(id);  // ascending
    idx.matrix_.resize(idx.ids_.size() * static_cast<std::size_t>(idx.d_emb_));
    for (std::size_t i = 0; i < idx.ids_.size(); ++i) {
      EmbeddingVector v = encoder.encode(collection.at(idx.ids_[i]).text);
      std::copy(v.begin(), v.end(), idx.matrix_.begin() + i * idx.d_emb_);
    }
    idx.build_lookup();
    return idx;
  }

  // Assembles an index from precomputed rows; ids must be strictly ascending.
  static DenseIndex from_rows(std::vector<std::string> ids,
                              std::vector<double> matrix, int d_emb) {
    DenseIndex idx;
    idx.d_emb_ = d_emb;
    idx.ids_ = std::move(ids);
    idx.matrix_ = std::move(matrix);
    if (idx.matrix_.size() != idx.ids_.size() * static_cast<std::size_t>(d_emb))
      throw ValidationError("index: matrix shape mismatch");
    for (std::size_t i = 1; i < idx.ids_.size(); ++i) {
      if (!(idx.ids_[i - 1] < idx.ids_[i]))
        throw ValidationError("index: ids not strictly ascending at " +
                              idx.ids_[i]);
    }
    idx.build_lookup();
    return idx;
  }

  std::size_t size() const { return ids_.size(); }
  int d_emb() const { return d_emb_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<double>& matrix() const { return matrix_; }

  const double* row(std::size_t i) const { return &matrix_[i * d_emb_]; }

  bool contains(const std::string& id) const { return lookup_.count(id) > 0; }

  EmbeddingVector embedding_of(const std::string& id) const {
    auto it = lookup_.find(id);
    if (it == lookup_.end())
      throw ValidationError("index: unknown passage id " + id);
    const double* r = row(it->second);
    return EmbeddingVector(r, r + d_emb_);
  }

  RankedList search(const EmbeddingVector& qvec, std::size_t k,
                    const std::string& query_id = "") const {
    if (static_cast<int>(qvec.size()) != d_emb_)
      throw ValidationError("search: query dimension mismatch");
    if (k < 1) throw ValidationError("search: k must be >= 1");
    std::vector<double> scores(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      const double* r = row(i);
      double s = 0.0;
      for (int d = 0; d < d_emb_; ++d) s += qvec[d] * r[d];
      scores[i] = s;
    }
    std::vector<std::size_t> order(ids_.size());
    std::iota(order.begin(), order.end(), 0);
    auto better = [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return ids_[a] < ids_[b];
    };
    std::size_t take = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + take, order.end(), better);
    RankedList out;
    out.query_id = query_id;
    out.hits.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
      out.hits.push_back({ids_[order[i]], scores[order[i]]});
    return out;
  }

  // Persistence shares the embedding-file layout; row order is the id order.
  void save(const std::string& path) const {
    EmbeddingFile emb;
    emb.d_emb = d_emb_;
    emb.ids = ids_;
    emb.values = matrix_;
    write_embeddings_binary(path, emb);
  }

  static DenseIndex load(const std::string& path) {
    EmbeddingFile emb = read_embeddings_binary(path);
    return from_rows(std::move(emb.ids), std::move(emb.values), emb.d_emb);
  }

 private:
  void build_lookup() {
    lookup_.clear();
    lookup_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) lookup_[ids_[i]] = i;
  }

  int d_emb_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> matrix_;  // row-major size() x d_emb
  std::unordered_map<std::string, std::size_t> lookup_;
};

inline void write_run(const std::vector<RankedList>& lists,
                      const std::string& tag, const std::string& path) {
  std::string out;
  char buf[64];
  for (const auto& list : lists) {
    int rank = 1;
    for (const auto& hit : list.hits) {
      std::snprintf(buf, sizeof(buf), "%.6f", hit.score);
      out += list.query_id;
      out += " Q0 ";
      out += hit.passage_id;
      out += ' ';
      out += std::to_string(rank++);
      out += ' ';
      out += buf;
      out += ' ';
      out += tag;
      out += '\n';
    }
  }
  write_file(path, out);
}

inline std::vector<RankedList> read_run(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingArtifactError("run file not found: " + path);
  std::vector<RankedList> lists;
  std::unordered_map<std::string, std::size_t> by_qid;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream iss(line);
    std::string qid, q0, docid, tag;
    long rank;
    double score;
    if (!(iss >> qid >> q0 >> docid >> rank >> score >> tag) || q0 != "Q0")
      throw ParseError(path, lineno, "expected: <qid> Q0 <docid> <rank> <score> <tag>");
    auto [it, inserted] = by_qid.emplace(qid, lists.size());
    if (inserted) lists.push_back(RankedList{qid, {}});
    RankedList& list = lists[it->second];
    long expected = static_cast<long>(list.hits.size()) + 1;
    if (rank != expected)
      throw ParseError(path, lineno,
                       "rank " + std::to_string(rank) + " for query " + qid +
                           ", expected " + std::to_string(expected));
    if (!list.hits.empty() && score > list.hits.back().score)
      throw ParseError(path, lineno, "scores increase within query " + qid);
    for (const auto& h : list.hits) {
      if (h.passage_id == docid)
        throw ParseError(path, lineno, "duplicate docid " + docid + " in query " + qid);
    }
    list.hits.push_back({docid, score});
  }
  return lists;
}

}  // namespace haconvdr
