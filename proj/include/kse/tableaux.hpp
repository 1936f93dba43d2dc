#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "kse/errors.hpp"
#include "kse/poly.hpp"
#include "kse/weights.hpp"

namespace kse {

using Partition = std::vector<int>;  // weakly decreasing positive parts

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i && p[i] > p[i - 1]) return false;
  }
  return true;
}

inline int part_size(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), 0);
}

inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

struct Tableau {
  Partition shape;
  std::vector<std::vector<int>> rows;  // 1-based letters
};

// All fillings with weakly increasing rows, strictly increasing columns and
// the prescribed content, in lexicographic order of the row-major word.
inline std::vector<Tableau> ssyt_enumerate(const Partition& shape,
                                           const std::vector<int>& content) {
  if (!is_partition(shape)) throw ValidationError("shape must be a partition");
  int total = 0;
  for (int c : content) {
    if (c < 0) throw ValidationError("content entries must be >= 0");
    total += c;
  }
  if (total != part_size(shape))
    throw ValidationError("shape size and content size differ");

  const int m = static_cast<int>(content.size());
  std::vector<Tableau> out;
  Tableau t;
  t.shape = shape;
  t.rows.resize(shape.size());
  for (std::size_t r = 0; r < shape.size(); ++r) t.rows[r].assign(shape[r], 0);
  std::vector<int> left(content.begin(), content.end());

  auto rec = [&](auto&& self, int r, int c) -> void {
    if (r == static_cast<int>(shape.size())) {
      out.push_back(t);
      return;
    }
    int nr = r, nc = c + 1;
    if (nc == shape[r]) { nr = r + 1; nc = 0; }
    int lo = (c > 0) ? t.rows[r][c - 1] : 1;
    if (r > 0 && c < shape[r - 1]) lo = std::max(lo, t.rows[r - 1][c] + 1);
    for (int v = lo; v <= m; ++v) {
      if (left[v - 1] == 0) continue;
      --left[v - 1];
      t.rows[r][c] = v;
      self(self, nr, nc);
      ++left[v - 1];
    }
    t.rows[r][c] = 0;
  };
  if (shape.empty()) out.push_back(t);
  else rec(rec, 0, 0);
  return out;
}

// rows bottom to top, each left to right
inline std::vector<int> reading_word(const Tableau& t) {
  std::vector<int> w;
  for (auto it = t.rows.rbegin(); it != t.rows.rend(); ++it)
    w.insert(w.end(), it->begin(), it->end());
  return w;
}

// Standard-subword extraction: repeatedly peel one standard subword, walking
// letters 1,2,3,... from the rightmost 1; each letter is taken from the
// nearest surviving position strictly to the left of the current one, or, if
// none exists, from the rightmost surviving position (a wrap), which raises
// the running index by one. The charge is the sum of all indices assigned.
inline int charge_word(const std::vector<int>& w) {
  const int n = static_cast<int>(w.size());
  int maxletter = 0;
  for (int x : w) {
    if (x < 1) throw ValidationError("word letters must be >= 1");
    maxletter = std::max(maxletter, x);
  }
  std::vector<int> alive_count(maxletter + 1, 0);
  for (int x : w) ++alive_count[x];
  for (int l = 1; l < maxletter; ++l)
    if (alive_count[l] < alive_count[l + 1])
      throw ValidationError("charge needs partition content");

  std::vector<bool> alive(n, true);
  int remaining = n;
  int total = 0;
  while (remaining > 0) {
    int cur = -1;
    for (int p = n - 1; p >= 0; --p)
      if (alive[p] && w[p] == 1) { cur = p; break; }
    if (cur < 0) throw ValidationError("charge needs partition content");
    alive[cur] = false;
    --alive_count[1];
    --remaining;
    int idx = 0;
    for (int l = 2; l <= maxletter && alive_count[l] > 0; ++l) {
      int found = -1;
      for (int p = cur - 1; p >= 0; --p)
        if (alive[p] && w[p] == l) { found = p; break; }
      if (found < 0) {
        for (int p = n - 1; p >= 0; --p)
          if (alive[p] && w[p] == l) { found = p; break; }
        ++idx;  // wrapped
      }
      cur = found;
      alive[cur] = false;
      --alive_count[l];
      --remaining;
      total += idx;
    }
  }
  return total;
}

inline int charge(const Tableau& t) { return charge_word(reading_word(t)); }

// sum over tableaux of q^charge; the content must be a partition
inline Poly kostka_charge(const Partition& lambda, const Partition& mu) {
  if (!is_partition(lambda) || !is_partition(mu))
    throw ValidationError("charge polynomial needs partition inputs");
  Poly out(1);
  for (const auto& t : ssyt_enumerate(lambda, mu))
    out.add_term({charge(t)}, 1);
  return out;
}

inline Int kostka_number(const Partition& lambda, const std::vector<int>& mu) {
  return Int(ssyt_enumerate(lambda, mu).size());
}

// zero-padded single-block weight of rank N
inline Weight pad_partition(const Partition& p, int N) {
  if (static_cast<int>(p.size()) > N)
    throw ValidationError("partition longer than the requested rank");
  Weight w(p.begin(), p.end());
  w.resize(N, 0);
  return w;
}

}  // namespace kse
