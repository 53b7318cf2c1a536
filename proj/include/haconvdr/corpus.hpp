#pragma once

// Corpus ingestion and validation.
//
// File formats:
//   Collection: JSON lines, one object per line: {"id": "...", "text": "..."}
//   Sessions:   JSON lines, one object per line:
//     {"session_id": "...",
//      "turns": [{"turn_index": 1, "query": "...",
//                 "gold_passage_id": "p1" | null, "answer": "..." | null}]}
//   Qrels:      TREC text format, one judgment per line: <qid> 0 <docid> <grade>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "haconvdr/error.hpp"
#include "haconvdr/types.hpp"

namespace haconvdr {

inline Collection load_collection(const std::string& path,
                                  bool allow_empty_text = false) {
  std::ifstream in(path);
  if (!in) throw MissingArtifactError("collection file not found: " + path);
  Collection out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path, lineno, std::string("bad JSON: ") + e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("text") ||
        !rec["id"].is_string() || !rec["text"].is_string()) {
      throw ParseError(path, lineno, "record must have string fields id, text");
    }
    Passage p{rec["id"].get<std::string>(), rec["text"].get<std::string>()};
    if (p.id.empty()) throw ParseError(path, lineno, "empty passage id");
    if (p.text.empty() && !allow_empty_text)
      throw ParseError(path, lineno, "empty text for passage " + p.id);
    if (!out.emplace(p.id, p).second)
      throw ValidationError(path + ": duplicate passage id " + p.id);
  }
  return out;
}

inline void write_collection(const std::string& path, const Collection& c) {
  std::ostringstream oss;
  for (const auto& [id, p] : c) {
    nlohmann::json rec{{"id", p.id}, {"text", p.text}};
    oss << rec.dump() << "\n";
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write collection: " + path);
  out << oss.str();
}

inline std::vector<Session> load_sessions(const std::string& path,
                                          const Collection& collection) {
  std::ifstream in(path);
  if (!in) throw MissingArtifactError("sessions file not found: " + path);
  std::vector<Session> out;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path, lineno, std::string("bad JSON: ") + e.what());
    }
    if (!rec.contains("session_id") || !rec["session_id"].is_string() ||
        !rec.contains("turns") || !rec["turns"].is_array()) {
      throw ParseError(path, lineno, "record must have session_id and turns[]");
    }
    Session s;
    s.session_id = rec["session_id"].get<std::string>();
    if (s.session_id.empty()) throw ParseError(path, lineno, "empty session_id");
    if (!seen_ids.insert(s.session_id).second)
      throw ValidationError(path + ": duplicate session_id " + s.session_id);
    int expected_index = 1;
    for (const auto& jt : rec["turns"]) {
      Turn t;
      t.turn_index = jt.value("turn_index", -1);
      if (t.turn_index != expected_index) {
        throw ValidationError("session " + s.session_id + ": turn_index " +
                              std::to_string(t.turn_index) +
                              " out of order, expected " +
                              std::to_string(expected_index));
      }
      ++expected_index;
      if (!jt.contains("query") || !jt["query"].is_string() ||
          jt["query"].get<std::string>().empty()) {
        throw ValidationError("session " + s.session_id + " turn " +
                              std::to_string(t.turn_index) +
                              ": missing or empty query");
      }
      t.query_text = jt["query"].get<std::string>();
      if (jt.contains("gold_passage_id") && !jt["gold_passage_id"].is_null()) {
        t.gold_passage_id = jt["gold_passage_id"].get<std::string>();
        if (!collection.count(*t.gold_passage_id)) {
          throw ValidationError("session " + s.session_id + " turn " +
                                std::to_string(t.turn_index) +
                                ": gold_passage_id " + *t.gold_passage_id +
                                " not in collection");
        }
      }
      if (jt.contains("answer") && !jt["answer"].is_null())
        t.answer_text = jt["answer"].get<std::string>();
      s.turns.push_back(std::move(t));
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_sessions(const std::string& path,
                           const std::vector<Session>& sessions) {
  std::ostringstream oss;
  for (const auto& s : sessions) {
    nlohmann::json turns = nlohmann::json::array();
    for (const auto& t : s.turns) {
      nlohmann::json jt{{"turn_index", t.turn_index}, {"query", t.query_text}};
      jt["gold_passage_id"] =
          t.gold_passage_id ? nlohmann::json(*t.gold_passage_id) : nullptr;
      jt["answer"] = t.answer_text ? nlohmann::json(*t.answer_text) : nullptr;
      turns.push_back(std::move(jt));
    }
    nlohmann::json rec{{"session_id", s.session_id}, {"turns", turns}};
    oss << rec.dump() << "\n";
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write sessions: " + path);
  out << oss.str();
}

// One grade-1 qrels entry per turn that carries a gold passage; turns
// without gold ids are omitted (and thereby excluded from evaluation
// and training).
inline Qrels derive_qrels(const std::vector<Session>& sessions) {
  Qrels q;
  for (const auto& s : sessions) {
    for (const auto& t : s.turns) {
      if (!t.gold_passage_id) continue;
      q[make_query_id(s.session_id, t.turn_index)][*t.gold_passage_id] = 1;
    }
  }
  return q;
}

inline void write_qrels(const std::string& path, const Qrels& qrels) {
  std::ostringstream oss;
  for (const auto& [qid, docs] : qrels) {
    for (const auto& [docid, grade] : docs) {
      oss << qid << " 0 " << docid << " " << grade << "\n";
    }
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write qrels: " + path);
  out << oss.str();
}

inline Qrels read_qrels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingArtifactError("qrels file not found: " + path);
  Qrels q;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream iss(line);
    std::string qid, iter, docid;
    int grade;
    if (!(iss >> qid >> iter >> docid >> grade))
      throw ParseError(path, lineno, "expected: <qid> 0 <docid> <grade>");
    if (grade < 0) throw ParseError(path, lineno, "negative relevance grade");
    q[qid][docid] = grade;
  }
  return q;
}

}  // namespace haconvdr
