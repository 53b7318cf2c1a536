#pragma once

// Ranking metrics: MRR, NDCG@k (linear gain, trec_eval convention), and
// Recall@k. Metrics read ranks only; queries without a relevant passage in
// the qrels are skipped, matching trec_eval.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "haconvdr/error.hpp"
#include "haconvdr/index.hpp"
#include "haconvdr/types.hpp"
#include "haconvdr/util.hpp"

namespace haconvdr {

struct MetricSpec {
  enum class Kind { MRR, NDCG, Recall };
  Kind kind = Kind::MRR;
  int cutoff = 0;  // 0 for MRR means "full run depth"

  std::string name() const {
    switch (kind) {
      case Kind::MRR:
        return cutoff > 0 ? "mrr@" + std::to_string(cutoff) : "mrr";
      case Kind::NDCG:
        return "ndcg@" + std::to_string(cutoff);
      case Kind::Recall:
        return "recall@" + std::to_string(cutoff);
    }
    return "?";
  }

  static MetricSpec parse(const std::string& text) {
    MetricSpec m;
    std::string base = text;
    auto at = text.find('@');
    if (at != std::string::npos) {
      base = text.substr(0, at);
      try {
        m.cutoff = std::stoi(text.substr(at + 1));
      } catch (...) {
        throw ConfigError("bad metric cutoff in '" + text + "'");
      }
      if (m.cutoff < 1) throw ConfigError("metric cutoff must be >= 1");
    }
    if (base == "mrr") {
      m.kind = Kind::MRR;
    } else if (base == "ndcg") {
      m.kind = Kind::NDCG;
      if (m.cutoff == 0) throw ConfigError("ndcg requires a cutoff, e.g. ndcg@3");
    } else if (base == "recall") {
      m.kind = Kind::Recall;
      if (m.cutoff == 0) throw ConfigError("recall requires a cutoff, e.g. recall@10");
    } else {
      throw ConfigError("unknown metric '" + text + "'");
    }
    return m;
  }
};

namespace detail {

inline const std::map<std::string, int>* judged(const Qrels& qrels,
                                                const std::string& qid) {
  auto it = qrels.find(qid);
  if (it == qrels.end()) return nullptr;
  for (const auto& [doc, grade] : it->second) {
    if (grade >= 1) return &it->second;
  }
  return nullptr;  // no relevant passage: skip, do not score 0
}

}  // namespace detail

// Empty optional = skip signal (query absent from qrels or without any
// relevant passage), distinguished from a legitimate score of 0.
inline std::optional<double> reciprocal_rank(const RankedList& list,
                                             const Qrels& qrels,
                                             std::size_t cutoff = 0) {
  const auto* docs = detail::judged(qrels, list.query_id);
  if (!docs) return std::nullopt;
  std::size_t limit = cutoff == 0 ? list.hits.size()
                                  : std::min(cutoff, list.hits.size());
  for (std::size_t i = 0; i < limit; ++i) {
    auto it = docs->find(list.hits[i].passage_id);
    if (it != docs->end() && it->second >= 1)
      return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

inline std::optional<double> ndcg_at(const RankedList& list, const Qrels& qrels,
                                     std::size_t k) {
  if (k < 1) throw ValidationError("ndcg: k must be >= 1");
  const auto* docs = detail::judged(qrels, list.query_id);
  if (!docs) return std::nullopt;
  double dcg = 0.0;
  std::size_t limit = std::min(k, list.hits.size());
  for (std::size_t i = 0; i < limit; ++i) {
    auto it = docs->find(list.hits[i].passage_id);
    if (it != docs->end() && it->second > 0)
      dcg += static_cast<double>(it->second) / std::log2(static_cast<double>(i + 2));
  }
  std::vector<int> grades;
  for (const auto& [doc, grade] : *docs)
    if (grade > 0) grades.push_back(grade);
  std::sort(grades.rbegin(), grades.rend());
  double ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, grades.size()); ++i)
    ideal += static_cast<double>(grades[i]) / std::log2(static_cast<double>(i + 2));
  return dcg / ideal;  // ideal > 0 by the judged() filter
}

inline std::optional<double> recall_at(const RankedList& list, const Qrels& qrels,
                                       std::size_t k) {
  if (k < 1) throw ValidationError("recall: k must be >= 1");
  const auto* docs = detail::judged(qrels, list.query_id);
  if (!docs) return std::nullopt;
  std::size_t n_relevant = 0;
  for (const auto& [doc, grade] : *docs)
    if (grade >= 1) ++n_relevant;
  std::size_t found = 0;
  std::size_t limit = std::min(k, list.hits.size());
  for (std::size_t i = 0; i < limit; ++i) {
    auto it = docs->find(list.hits[i].passage_id);
    if (it != docs->end() && it->second >= 1) ++found;
  }
  return static_cast<double>(found) / static_cast<double>(n_relevant);
}

inline std::optional<double> metric_value(const MetricSpec& m,
                                          const RankedList& list,
                                          const Qrels& qrels) {
  switch (m.kind) {
    case MetricSpec::Kind::MRR:
      return reciprocal_rank(list, qrels, static_cast<std::size_t>(m.cutoff));
    case MetricSpec::Kind::NDCG:
      return ndcg_at(list, qrels, static_cast<std::size_t>(m.cutoff));
    case MetricSpec::Kind::Recall:
      return recall_at(list, qrels, static_cast<std::size_t>(m.cutoff));
  }
  return std::nullopt;
}

struct EvalReport {
  // metric name -> macro average over evaluated queries
  std::map<std::string, double> averages;
  // query id -> (metric name -> value), ascending query id
  std::map<std::string, std::map<std::string, double>> per_query;
  std::vector<std::string> skipped;  // run queries absent from the qrels
  std::size_t evaluated = 0;
};

inline EvalReport evaluate(const std::vector<RankedList>& run, const Qrels& qrels,
                           const std::vector<MetricSpec>& metrics) {
  EvalReport report;
  std::map<std::string, const RankedList*> by_qid;
  for (const auto& list : run) by_qid[list.query_id] = &list;
  for (const auto& [qid, list] : by_qid) {
    if (!detail::judged(qrels, qid)) {
      report.skipped.push_back(qid);
      continue;
    }
    for (const auto& m : metrics) {
      auto v = metric_value(m, *list, qrels);
      report.per_query[qid][m.name()] = *v;
    }
    ++report.evaluated;
  }
  if (report.evaluated == 0)
    throw ValidationError("evaluate: no overlap between run and qrels queries");
  // Aggregate in ascending query-id order (per_query is already sorted).
  for (const auto& m : metrics) {
    double sum = 0.0;
    for (const auto& [qid, values] : report.per_query) sum += values.at(m.name());
    report.averages[m.name()] = sum / static_cast<double>(report.evaluated);
  }
  return report;
}

inline void write_per_query_report(const std::string& path,
                                   const EvalReport& report) {
  std::string out;
  for (const auto& [qid, values] : report.per_query) {
    for (const auto& [metric, value] : values) {
      out += qid;
      out += '\t';
      out += metric;
      out += '\t';
      out += format_double(value);
      out += '\n';
    }
  }
  write_file(path, out);
}

}  // namespace haconvdr
