#pragma once

// Embedding and checkpoint persistence.
//
// Binary embedding file:
//   magic "HCDREMB1" | u32 d_emb | u64 count |
//   count records of: u32 id length | id bytes | d_emb f64 values
// All integers and floats little-endian.
//
// Text embedding file (for external visualization tooling):
//   one line per vector: <id> TAB v1,v2,...,vd  (17 significant digits)
//
// Checkpoint file (query encoder):
//   magic "HCDRCKPT" | u32 d_feat | u32 d_emb | u64 seed | u64 steps |
//   d_feat*d_emb f64 row-major W values, same value encoding as embeddings.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "haconvdr/encode.hpp"
#include "haconvdr/error.hpp"
#include "haconvdr/util.hpp"

namespace haconvdr {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  out.append(reinterpret_cast<const char*>(&v), 4);
}
inline void put_u64(std::string& out, std::uint64_t v) {
  out.append(reinterpret_cast<const char*>(&v), 8);
}
inline void put_f64(std::string& out, double v) {
  out.append(reinterpret_cast<const char*>(&v), 8);
}

class Reader {
 public:
  Reader(const std::string& buf, std::string path)
      : buf_(buf), path_(std::move(path)) {}

  std::uint32_t u32() { return get<std::uint32_t>(); }
  std::uint64_t u64() { return get<std::uint64_t>(); }
  double f64() { return get<double>(); }

  std::string bytes(std::size_t n) {
    need(n);
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void expect_magic(const char* magic) {
    if (bytes(8) != magic)
      throw ValidationError(path_ + ": bad magic, expected " + magic);
  }

  bool done() const { return pos_ == buf_.size(); }

 private:
  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, buf_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void need(std::size_t n) {
    if (pos_ + n > buf_.size())
      throw ValidationError(path_ + ": truncated file");
  }

  const std::string& buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace detail

struct EmbeddingFile {
  int d_emb = 0;
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major count x d_emb

  const double* row(std::size_t i) const {
    return &values[i * static_cast<std::size_t>(d_emb)];
  }
};

inline void write_embeddings_binary(const std::string& path,
                                    const EmbeddingFile& emb) {
  std::string out;
  out += "HCDREMB1";
  detail::put_u32(out, static_cast<std::uint32_t>(emb.d_emb));
  detail::put_u64(out, emb.ids.size());
  for (std::size_t i = 0; i < emb.ids.size(); ++i) {
    detail::put_u32(out, static_cast<std::uint32_t>(emb.ids[i].size()));
    out += emb.ids[i];
    for (int k = 0; k < emb.d_emb; ++k) detail::put_f64(out, emb.row(i)[k]);
  }
  write_file(path, out);
}

inline EmbeddingFile read_embeddings_binary(const std::string& path) {
  std::string buf = read_file(path);
  detail::Reader r(buf, path);
  r.expect_magic("HCDREMB1");
  EmbeddingFile emb;
  emb.d_emb = static_cast<int>(r.u32());
  if (emb.d_emb < 1) throw ValidationError(path + ": invalid d_emb");
  std::uint64_t count = r.u64();
  emb.ids.reserve(count);
  emb.values.reserve(count * emb.d_emb);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t len = r.u32();
    emb.ids.push_back(r.bytes(len));
    for (int k = 0; k < emb.d_emb; ++k) emb.values.push_back(r.f64());
  }
  if (!r.done()) throw ValidationError(path + ": trailing bytes");
  return emb;
}

inline void write_embeddings_text(const std::string& path,
                                  const EmbeddingFile& emb) {
  std::string out;
  for (std::size_t i = 0; i < emb.ids.size(); ++i) {
    out += emb.ids[i];
    out += '\t';
    for (int k = 0; k < emb.d_emb; ++k) {
      if (k) out += ',';
      out += format_double(emb.row(i)[k]);
    }
    out += '\n';
  }
  write_file(path, out);
}

struct Checkpoint {
  QueryEncoderParams params;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
};

inline void write_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::string out;
  out += "HCDRCKPT";
  detail::put_u32(out, static_cast<std::uint32_t>(ckpt.params.d_feat));
  detail::put_u32(out, static_cast<std::uint32_t>(ckpt.params.d_emb));
  detail::put_u64(out, ckpt.seed);
  detail::put_u64(out, ckpt.steps);
  for (double v : ckpt.params.w) detail::put_f64(out, v);
  write_file(path, out);
}

inline Checkpoint read_checkpoint(const std::string& path) {
  std::string buf = read_file(path);
  detail::Reader r(buf, path);
  r.expect_magic("HCDRCKPT");
  Checkpoint ckpt;
  ckpt.params.d_feat = static_cast<int>(r.u32());
  ckpt.params.d_emb = static_cast<int>(r.u32());
  if (ckpt.params.d_feat < 1 || ckpt.params.d_emb < 1)
    throw ValidationError(path + ": invalid dimensions");
  ckpt.seed = r.u64();
  ckpt.steps = r.u64();
  std::size_t n = static_cast<std::size_t>(ckpt.params.d_feat) * ckpt.params.d_emb;
  ckpt.params.w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ckpt.params.w.push_back(r.f64());
  if (!r.done()) throw ValidationError(path + ": trailing bytes");
  return ckpt;
}

}  // namespace haconvdr
