#pragma once

// Hashed bag-of-words featurizer.
//
// Tokenization: lowercase ASCII letters, split on every non-alphanumeric
// codepoint (any byte outside [0-9A-Za-z] separates, which covers multi-byte
// UTF-8 sequences as well). Term weight is sublinear tf (1 + ln tf), the
// feature index is FNV-1a 64 of the term modulo d_feat, colliding terms sum
// their weights, and the final vector is L2-normalized. An empty token
// stream yields the all-zero vector.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "haconvdr/error.hpp"
#include "haconvdr/rng.hpp"

namespace haconvdr {

struct FeatureVector {
  int dim = 0;
  // (index, weight) sorted by index; weights > 0 after normalization.
  std::vector<std::pair<std::uint32_t, double>> entries;

  double norm() const {
    double s = 0.0;
    for (const auto& [i, w] : entries) s += w * w;
    return std::sqrt(s);
  }
};

inline FeatureVector featurize(std::string_view text, int d_feat) {
  if (d_feat < 1) throw ConfigError("featurize: d_feat must be >= 1");
  std::map<std::uint32_t, double> tf_by_index;
  std::map<std::string, int> tf;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) {
      ++tf[tok];
      tok.clear();
    }
  };
  for (unsigned char c : text) {
    if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z')) {
      tok.push_back(static_cast<char>(c));
    } else if (c >= 'A' && c <= 'Z') {
      tok.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      flush();
    }
  }
  flush();

  for (const auto& [term, count] : tf) {
    auto idx = static_cast<std::uint32_t>(fnv1a64(term) %
                                          static_cast<std::uint64_t>(d_feat));
    tf_by_index[idx] += 1.0 + std::log(static_cast<double>(count));
  }

  FeatureVector fv;
  fv.dim = d_feat;
  fv.entries.assign(tf_by_index.begin(), tf_by_index.end());
  double n = fv.norm();
  if (n > 0.0) {
    for (auto& [i, w] : fv.entries) w /= n;
  }
  return fv;
}

}  // namespace haconvdr
