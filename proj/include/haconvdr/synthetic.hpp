#pragma once

// Synthetic topic-shift conversation generator.
//
// Each topic owns a disjoint content vocabulary; passages additionally draw
// from a shared function-word pool. Passages within a topic are grouped into
// clusters that share a small sub-vocabulary, and a session's turns on a
// given topic take their gold passages from a single cluster, so that turns
// of the same session and topic are about genuinely related passages while
// turns across a topic shift share no content terms at all. Queries sample a
// few content terms from their own gold passage, which makes the raw query
// ambiguous within the cluster and history resolution informative.
//
// Everything is a pure function of (spec, seed); the manifest records the
// ground-truth topic of every passage and turn for analysis only.

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "haconvdr/corpus.hpp"
#include "haconvdr/error.hpp"
#include "haconvdr/rng.hpp"
#include "haconvdr/util.hpp"

namespace haconvdr {

struct SyntheticSpec {
  int n_topics = 5;
  int vocab_per_topic = 60;
  int cluster_vocab = 12;
  int passages_per_topic = 400;
  int cluster_size = 8;
  int passage_len = 30;
  int n_sessions = 50;
  int turns_per_session = 8;
  int shift_every = 2;  // topic changes every this many turns
  int query_content_terms = 2;
  int query_function_terms = 2;
  double function_word_prob = 0.25;
};

inline const std::vector<std::string>& function_word_pool() {
  static const std::vector<std::string> kPool = {
      "the", "of", "and", "a", "to", "in", "is", "on", "for", "with", "as", "by"};
  return kPool;
}

inline void validate_spec(const SyntheticSpec& s) {
  auto fail = [](const std::string& msg) { throw ConfigError("synthetic spec: " + msg); };
  if (s.n_topics < 2) fail("n_topics must be >= 2");
  if (s.vocab_per_topic < 1) fail("vocab_per_topic must be >= 1");
  if (s.cluster_vocab < 1 || s.cluster_vocab > s.vocab_per_topic)
    fail("cluster_vocab must be in [1, vocab_per_topic]");
  if (s.passages_per_topic < 1) fail("passages_per_topic must be >= 1");
  if (s.cluster_size < 1) fail("cluster_size must be >= 1");
  if (s.passage_len < 1) fail("passage_len must be >= 1");
  if (s.n_sessions < 1) fail("n_sessions must be >= 1");
  if (s.turns_per_session < 1) fail("turns_per_session must be >= 1");
  if (s.shift_every < 1) fail("shift_every must be >= 1");
  if (s.query_content_terms < 1) fail("query_content_terms must be >= 1");
  if (s.query_function_terms < 0) fail("query_function_terms must be >= 0");
  if (s.function_word_prob < 0.0 || s.function_word_prob >= 1.0)
    fail("function_word_prob must be in [0,1)");
}

namespace detail {

inline std::string random_word(SplitMix64& rng) {
  std::size_t len = 5 + rng.uniform_int(4);
  std::string w(len, 'a');
  for (auto& c : w) c = static_cast<char>('a' + rng.uniform_int(26));
  return w;
}

inline std::vector<std::string> distinct_content_terms(const std::string& text) {
  std::set<std::string> func(function_word_pool().begin(), function_word_pool().end());
  std::set<std::string> seen;
  std::vector<std::string> out;
  std::istringstream iss(text);
  std::string tok;
  while (iss >> tok) {
    if (func.count(tok)) continue;
    if (seen.insert(tok).second) out.push_back(tok);
  }
  return out;
}

}  // namespace detail

struct SyntheticOutput {
  std::string collection_path;
  std::string sessions_path;
  std::string manifest_path;
};

inline SyntheticOutput generate_synthetic(const SyntheticSpec& spec,
                                          std::uint64_t seed,
                                          const std::string& out_dir) {
  validate_spec(spec);
  std::filesystem::create_directories(out_dir);
  const auto& func_pool = function_word_pool();

  // Disjoint content vocabularies: globally unique random words that never
  // collide with the function pool.
  SplitMix64 vocab_rng = derive_stream(seed, "vocab");
  std::set<std::string> used(func_pool.begin(), func_pool.end());
  std::vector<std::vector<std::string>> topic_vocab(spec.n_topics);
  for (int t = 0; t < spec.n_topics; ++t) {
    while (static_cast<int>(topic_vocab[t].size()) < spec.vocab_per_topic) {
      std::string w = detail::random_word(vocab_rng);
      if (used.insert(w).second) topic_vocab[t].push_back(w);
    }
  }

  const int n_clusters =
      (spec.passages_per_topic + spec.cluster_size - 1) / spec.cluster_size;

  Collection collection;
  nlohmann::json passage_topics = nlohmann::json::object();
  nlohmann::json passage_clusters = nlohmann::json::object();
  // cluster -> passage ids, for session gold selection
  std::vector<std::vector<std::vector<std::string>>> cluster_passages(
      spec.n_topics, std::vector<std::vector<std::string>>(n_clusters));

  int global_index = 0;
  for (int t = 0; t < spec.n_topics; ++t) {
    for (int c = 0; c < n_clusters; ++c) {
      SplitMix64 cl_rng = derive_stream(seed, "cluster", t, c);
      std::vector<std::string> cvocab;
      {
        std::vector<std::string> pool = topic_vocab[t];
        cl_rng.shuffle(pool);
        cvocab.assign(pool.begin(), pool.begin() + spec.cluster_vocab);
      }
      int in_cluster = std::min(spec.cluster_size,
                                spec.passages_per_topic - c * spec.cluster_size);
      for (int p = 0; p < in_cluster; ++p, ++global_index) {
        SplitMix64 p_rng = derive_stream(seed, "passage", global_index);
        std::vector<std::string> tokens;
        tokens.reserve(spec.passage_len);
        for (int k = 0; k < spec.passage_len; ++k) {
          if (p_rng.uniform01() < spec.function_word_prob) {
            tokens.push_back(func_pool[p_rng.uniform_int(func_pool.size())]);
          } else {
            tokens.push_back(cvocab[p_rng.uniform_int(cvocab.size())]);
          }
        }
        // Guarantee enough distinct content terms for query sampling.
        {
          std::set<std::string> have;
          for (const auto& tok : tokens)
            if (std::find(func_pool.begin(), func_pool.end(), tok) == func_pool.end())
              have.insert(tok);
          std::size_t vpos = 0;
          for (std::size_t k = 0;
               k < tokens.size() &&
               have.size() < static_cast<std::size_t>(spec.query_content_terms);
               ++k) {
            bool is_func = std::find(func_pool.begin(), func_pool.end(),
                                     tokens[k]) != func_pool.end();
            if (!is_func) continue;
            while (vpos < cvocab.size() && have.count(cvocab[vpos])) ++vpos;
            if (vpos == cvocab.size()) break;
            tokens[k] = cvocab[vpos];
            have.insert(cvocab[vpos]);
          }
        }
        std::string text;
        for (std::size_t k = 0; k < tokens.size(); ++k) {
          if (k) text += ' ';
          text += tokens[k];
        }
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "p%05d", global_index);
        std::string pid(idbuf);
        collection.emplace(pid, Passage{pid, text});
        cluster_passages[t][c].push_back(pid);
        passage_topics[pid] = t;
        passage_clusters[pid] = t * n_clusters + c;
      }
    }
  }

  std::vector<Session> sessions;
  nlohmann::json turn_topics = nlohmann::json::object();
  for (int s = 0; s < spec.n_sessions; ++s) {
    SplitMix64 s_rng = derive_stream(seed, "session", s);
    char idbuf[16];
    std::snprintf(idbuf, sizeof(idbuf), "s%04d", s);
    Session sess;
    sess.session_id = idbuf;
    std::vector<int> topic_cluster(spec.n_topics, -1);
    std::vector<std::set<std::string>> used_golds(spec.n_topics);
    for (int j = 1; j <= spec.turns_per_session; ++j) {
      int topic = (s + (j - 1) / spec.shift_every) % spec.n_topics;
      if (topic_cluster[topic] < 0)
        topic_cluster[topic] = static_cast<int>(s_rng.uniform_int(n_clusters));
      const auto& pool = cluster_passages[topic][topic_cluster[topic]];
      // Distinct golds within a session while the cluster has unused ones.
      std::vector<std::string> avail;
      for (const auto& pid : pool)
        if (!used_golds[topic].count(pid)) avail.push_back(pid);
      if (avail.empty()) avail = pool;
      const std::string gold = avail[s_rng.uniform_int(avail.size())];
      used_golds[topic].insert(gold);

      auto content = detail::distinct_content_terms(collection.at(gold).text);
      std::vector<std::string> qtokens;
      {
        std::vector<std::string> pool2 = content;
        s_rng.shuffle(pool2);
        int take = std::min<int>(spec.query_content_terms,
                                 static_cast<int>(pool2.size()));
        qtokens.assign(pool2.begin(), pool2.begin() + take);
      }
      for (int k = 0; k < spec.query_function_terms; ++k)
        qtokens.push_back(func_pool[s_rng.uniform_int(func_pool.size())]);
      s_rng.shuffle(qtokens);
      std::string qtext;
      for (std::size_t k = 0; k < qtokens.size(); ++k) {
        if (k) qtext += ' ';
        qtext += qtokens[k];
      }

      Turn turn;
      turn.turn_index = j;
      turn.query_text = qtext;
      turn.gold_passage_id = gold;
      sess.turns.push_back(std::move(turn));
      turn_topics[make_query_id(sess.session_id, j)] = topic;
    }
    sessions.push_back(std::move(sess));
  }

  SyntheticOutput out;
  out.collection_path = out_dir + "/collection.jsonl";
  out.sessions_path = out_dir + "/sessions.jsonl";
  out.manifest_path = out_dir + "/synthetic_manifest.json";
  write_collection(out.collection_path, collection);
  write_sessions(out.sessions_path, sessions);

  nlohmann::json manifest{
      {"seed", seed},
      {"spec",
       {{"n_topics", spec.n_topics},
        {"vocab_per_topic", spec.vocab_per_topic},
        {"cluster_vocab", spec.cluster_vocab},
        {"passages_per_topic", spec.passages_per_topic},
        {"cluster_size", spec.cluster_size},
        {"passage_len", spec.passage_len},
        {"n_sessions", spec.n_sessions},
        {"turns_per_session", spec.turns_per_session},
        {"shift_every", spec.shift_every},
        {"query_content_terms", spec.query_content_terms},
        {"query_function_terms", spec.query_function_terms},
        {"function_word_prob", spec.function_word_prob}}},
      {"passage_topics", passage_topics},
      {"passage_clusters", passage_clusters},
      {"turn_topics", turn_topics}};
  write_file(out.manifest_path, manifest.dump(2) + "\n");
  return out;
}

}  // namespace haconvdr
