#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace haconvdr {

struct Passage {
  std::string id;
  std::string text;
};

// Passages keyed by id. std::map keeps iteration in ascending id order,
// which is the canonical order for embedding and indexing.
using Collection = std::map<std::string, Passage>;

struct Turn {
  int turn_index = 0;  // 1-based within the session
  std::string query_text;
  std::optional<std::string> gold_passage_id;
  std::optional<std::string> answer_text;  // carried through ingestion, unused
};

struct Session {
  std::string session_id;
  std::vector<Turn> turns;
};

// qid -> (passage id -> relevance grade). Derived qrels hold exactly one
// grade-1 entry per judged query.
using Qrels = std::map<std::string, std::map<std::string, int>>;

// Query identifier scheme: "<session_id>_<turn_index>".
inline std::string make_query_id(const std::string& session_id, int turn_index) {
  return session_id + "_" + std::to_string(turn_index);
}

// Splits a query id back into (session_id, turn_index). Session ids may
// contain underscores, so the split is at the last one.
inline bool split_query_id(const std::string& qid, std::string* session_id,
                           int* turn_index) {
  auto pos = qid.rfind('_');
  if (pos == std::string::npos || pos + 1 >= qid.size()) return false;
  for (std::size_t i = pos + 1; i < qid.size(); ++i) {
    if (qid[i] < '0' || qid[i] > '9') return false;
  }
  *session_id = qid.substr(0, pos);
  *turn_index = std::stoi(qid.substr(pos + 1));
  return true;
}

}  // namespace haconvdr
