#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kse/errors.hpp"
#include "kse/numeric.hpp"

namespace kse {

using Coord = long long;
using Weight = std::vector<Coord>;

// A weight lives in the direct sum of diagonal tori, one block per vertex.
// Blocks records the block sizes d_0..d_{k-1} and flat offsets into Weight.
struct Blocks {
  std::vector<int> dims;
  std::vector<int> offs;  // offs[i] = start of block i, offs[k] = total

  Blocks() = default;
  explicit Blocks(std::vector<int> d) : dims(std::move(d)) {
    offs.resize(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (dims[i] <= 0) throw ValidationError("block sizes must be positive");
      offs[i + 1] = offs[i] + dims[i];
    }
  }

  int count() const { return static_cast<int>(dims.size()); }
  int total() const { return offs.empty() ? 0 : offs.back(); }
  int off(int b) const { return offs[b]; }

  bool operator==(const Blocks& o) const { return dims == o.dims; }

  // flat index of coordinate j (0-based) in block b
  int at(int b, int j) const { return offs[b] + j; }
};

inline Weight zero_weight(const Blocks& b) { return Weight(b.total(), 0); }

inline Weight unit_weight(int total, int pos, Coord c = 1) {
  Weight w(total, 0);
  w[pos] = c;
  return w;
}

inline Weight add(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Weight sub(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Weight neg(const Weight& a) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline void add_in_place(Weight& a, const Weight& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

inline Coord dot(const std::vector<Coord>& f, const Weight& w) {
  Coord s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += f[i] * w[i];
  return s;
}

inline Coord coord_sum(const Weight& w) {
  Coord s = 0;
  for (Coord c : w) s += c;
  return s;
}

inline bool is_zero(const Weight& w) {
  for (Coord c : w)
    if (c != 0) return false;
  return true;
}

// half-sum normalizer: per block (d-1, d-2, ..., 0)
inline Weight rho(const Blocks& b) {
  Weight r(b.total());
  for (int v = 0; v < b.count(); ++v)
    for (int j = 0; j < b.dims[v]; ++j) r[b.at(v, j)] = b.dims[v] - 1 - j;
  return r;
}

// weakly decreasing within every block
inline bool is_dominant(const Weight& w, const Blocks& b) {
  for (int v = 0; v < b.count(); ++v)
    for (int j = 0; j + 1 < b.dims[v]; ++j)
      if (w[b.at(v, j)] < w[b.at(v, j + 1)]) return false;
  return true;
}

inline std::uint64_t weight_hash(const Weight& w) {
  return fnv1a(w.data(), w.size() * sizeof(Coord));
}

// text form: blocks joined by ';', coordinates by ','  e.g. "1,0;0,-1"
inline std::string format_weight(const Weight& w, const Blocks& b) {
  std::ostringstream os;
  for (int v = 0; v < b.count(); ++v) {
    if (v) os << ';';
    for (int j = 0; j < b.dims[v]; ++j) {
      if (j) os << ',';
      os << w[b.at(v, j)];
    }
  }
  return os.str();
}

inline Weight parse_weight(const std::string& text, const Blocks& b) {
  Weight w;
  w.reserve(b.total());
  std::vector<int> shape;
  std::string cur;
  int in_block = 0;
  auto flush_num = [&]() {
    if (cur.empty()) throw ValidationError("empty coordinate in weight '" + text + "'");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(cur, &pos);
    } catch (const std::exception&) {
      throw ValidationError("bad coordinate '" + cur + "' in weight '" + text + "'");
    }
    if (pos != cur.size())
      throw ValidationError("bad coordinate '" + cur + "' in weight '" + text + "'");
    w.push_back(v);
    ++in_block;
    cur.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t') continue;
    if (c == ',') {
      flush_num();
    } else if (c == ';') {
      flush_num();
      shape.push_back(in_block);
      in_block = 0;
    } else {
      cur.push_back(c);
    }
  }
  flush_num();
  shape.push_back(in_block);
  if (static_cast<int>(shape.size()) != b.count())
    throw ValidationError("weight '" + text + "' has " + std::to_string(shape.size()) +
                          " blocks, expected " + std::to_string(b.count()));
  for (int v = 0; v < b.count(); ++v)
    if (shape[v] != b.dims[v])
      throw ValidationError("weight '" + text + "' block " + std::to_string(v) + " has " +
                            std::to_string(shape[v]) + " coordinates, expected " +
                            std::to_string(b.dims[v]));
  return w;
}

}  // namespace kse
