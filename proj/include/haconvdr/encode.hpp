#pragma once

// Dual encoders over hashed lexical features.
//
// The passage encoder is frozen: a fixed random projection derived from a
// seed maps feature vectors into the embedding space, followed by L2
// normalization. The query encoder is the only trainable object: a dense
// d_feat x d_emb matrix applied to the same features, not normalized.
// Relevance is the plain dot product of the two embeddings.

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "haconvdr/error.hpp"
#include "haconvdr/featurize.hpp"
#include "haconvdr/rng.hpp"

namespace haconvdr {

using EmbeddingVector = std::vector<double>;

inline double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size())
    throw ValidationError("similarity: dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double similarity(const EmbeddingVector& qv, const EmbeddingVector& pv) {
  return dot(qv, pv);
}

inline double l2_norm(const EmbeddingVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

class PassageEncoder {
 public:
  // Projection entries are i.i.d. uniform in [-1,1), drawn from SplitMix64
  // seeded with projection_seed, row by row in feature-index order.
  PassageEncoder(int d_feat, int d_emb, std::uint64_t projection_seed)
      : d_feat_(d_feat), d_emb_(d_emb), projection_seed_(projection_seed) {
    if (d_feat < 1 || d_emb < 1)
      throw ConfigError("encoder dimensions must be >= 1");
    projection_.resize(static_cast<std::size_t>(d_feat) * d_emb);
    SplitMix64 rng(projection_seed);
    for (auto& x : projection_) x = rng.uniform(-1.0, 1.0);
  }

  // Test hook: explicit projection matrix (row-major d_feat x d_emb).
  static PassageEncoder with_projection(int d_feat, int d_emb,
                                        std::vector<double> projection) {
    PassageEncoder enc(d_feat, d_emb);
    if (projection.size() != static_cast<std::size_t>(d_feat) * d_emb)
      throw ConfigError("projection matrix shape mismatch");
    enc.projection_ = std::move(projection);
    return enc;
  }

  int d_feat() const { return d_feat_; }
  int d_emb() const { return d_emb_; }
  std::uint64_t projection_seed() const { return projection_seed_; }
  const std::vector<double>& projection() const { return projection_; }

  EmbeddingVector encode(std::string_view text) const {
    return encode(featurize(text, d_feat_));
  }

  EmbeddingVector encode(const FeatureVector& fv) const {
    if (fv.dim != d_feat_)
      throw ConfigError("encode_passage: feature dimension mismatch");
    EmbeddingVector out(d_emb_, 0.0);
    for (const auto& [r, w] : fv.entries) {
      const double* row = &projection_[static_cast<std::size_t>(r) * d_emb_];
      for (int k = 0; k < d_emb_; ++k) out[k] += w * row[k];
    }
    double n = l2_norm(out);
    if (n > 0.0) {
      for (auto& x : out) x /= n;
    }
    return out;
  }

 private:
  PassageEncoder(int d_feat, int d_emb)
      : d_feat_(d_feat), d_emb_(d_emb), projection_seed_(0) {}

  int d_feat_;
  int d_emb_;
  std::uint64_t projection_seed_;
  std::vector<double> projection_;  // row-major d_feat x d_emb, frozen
};

struct QueryEncoderParams {
  int d_feat = 0;
  int d_emb = 0;
  std::vector<double> w;  // row-major d_feat x d_emb

  // Shared initialization: W = the frozen passage projection, so the
  // untrained system scores by (approximate) lexical overlap.
  static QueryEncoderParams init_from(const PassageEncoder& enc) {
    QueryEncoderParams p;
    p.d_feat = enc.d_feat();
    p.d_emb = enc.d_emb();
    p.w = enc.projection();
    return p;
  }

  static QueryEncoderParams zeros(int d_feat, int d_emb) {
    QueryEncoderParams p;
    p.d_feat = d_feat;
    p.d_emb = d_emb;
    p.w.assign(static_cast<std::size_t>(d_feat) * d_emb, 0.0);
    return p;
  }
};

inline EmbeddingVector encode_query(const QueryEncoderParams& params,
                                    const FeatureVector& fv) {
  if (fv.dim != params.d_feat)
    throw ConfigError("encode_query: feature dimension mismatch (" +
                      std::to_string(fv.dim) + " vs " +
                      std::to_string(params.d_feat) + ")");
  EmbeddingVector out(params.d_emb, 0.0);
  for (const auto& [r, weight] : fv.entries) {
    const double* row = &params.w[static_cast<std::size_t>(r) * params.d_emb];
    for (int k = 0; k < params.d_emb; ++k) out[k] += weight * row[k];
  }
  return out;  // not normalized; training controls the scale
}

inline EmbeddingVector encode_query(const QueryEncoderParams& params,
                                    std::string_view text) {
  return encode_query(params, featurize(text, params.d_feat));
}

}  // namespace haconvdr
