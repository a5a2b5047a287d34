#pragma once

// Brute-force references. Each one is written the slow, obvious way and
// shares no code with the implementation it checks.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "plategate/imaging/image.hpp"
#include "plategate/park/fee.hpp"
#include "plategate/plate_grammar.hpp"

namespace oracle {

using plategate::imaging::BinaryImage;
using plategate::imaging::GrayImage;

/// Tries every threshold 0..254 straight from the pixel list and compares
/// between-class variances as exact fractions by cross-multiplication.
/// nullopt when only one intensity is present.
inline std::optional<int> otsu(const GrayImage& img) {
  using i128 = __int128;
  std::optional<int> best;
  i128 best_num = -1, best_den = 1;
  for (int t = 0; t < 255; ++t) {
    i128 n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (std::uint8_t v : img.data()) {
      if (v <= t) {
        ++n0;
        s0 += v;
      } else {
        ++n1;
        s1 += v;
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    // n0 n1 (mu0 - mu1)^2 scaled: (s0 n1 - s1 n0)^2 / (n0 n1)
    const i128 d = s0 * n1 - s1 * n0;
    const i128 num = d * d;
    const i128 den = n0 * n1;
    if (!best || num * best_den > best_num * den) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

/// 8-connected flood fill with an explicit queue, labels in discovery order.
inline std::vector<int> flood_labels(const BinaryImage& bin, int* count = nullptr) {
  const int w = bin.width(), h = bin.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, 0);
  int next = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!bin.at(x, y) || label[y * w + x]) continue;
      ++next;
      std::deque<std::pair<int, int>> q{{x, y}};
      label[y * w + x] = next;
      while (!q.empty()) {
        const auto [cx, cy] = q.front();
        q.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (!bin.at(nx, ny) || label[ny * w + nx]) continue;
            label[ny * w + nx] = next;
            q.emplace_back(nx, ny);
          }
      }
    }
  if (count) *count = next;
  return label;
}

/// Same partition of the pixels: background agrees and the label maps are
/// a bijection.
template <class A, class B>
bool same_partition(const std::vector<A>& a, const std::vector<B>& b) {
  if (a.size() != b.size()) return false;
  std::map<long, long> fwd, back;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (a[i] == 0) continue;
    const auto [f, fnew] = fwd.emplace(a[i], b[i]);
    const auto [r, rnew] = back.emplace(b[i], a[i]);
    if (f->second != static_cast<long>(b[i]) || r->second != static_cast<long>(a[i])) return false;
  }
  return true;
}

/// Walks the stay minute by minute and charges each tier on entry to it.
inline plategate::park::Money fee(std::int64_t duration_min, const plategate::park::RateSchedule& s) {
  if (duration_min <= s.grace_min) return 0;
  plategate::park::Money total = 0;
  bool base_charged = false;
  std::int64_t current_block = -1;
  for (std::int64_t m = 1; m <= duration_min; ++m) {
    if (m <= s.base_min) {
      if (!base_charged) total += s.base_price;
      base_charged = true;
    } else {
      const std::int64_t block = (m - s.base_min - 1) / s.block_min;
      if (block != current_block) total += s.block_price;
      current_block = block;
    }
  }
  return total;
}

inline int sub_cost_halves(char x, char y) {
  if (x == y) return 0;
  return plategate::confusable(x, y) ? 1 : 2;
}

/// Minimum over every alignment by plain recursion. Exponential: keep the
/// strings short.
inline int edit_brute(std::string_view a, std::string_view b) {
  if (a.empty()) return static_cast<int>(2 * b.size());
  if (b.empty()) return static_cast<int>(2 * a.size());
  const int del = 2 + edit_brute(a.substr(1), b);
  const int ins = 2 + edit_brute(a, b.substr(1));
  const int sub = sub_cost_halves(a[0], b[0]) + edit_brute(a.substr(1), b.substr(1));
  return std::min({del, ins, sub});
}

/// Full-table dynamic programme, for lengths the recursion cannot reach.
inline int edit_table(std::string_view a, std::string_view b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(2 * i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(2 * j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 2, d[i][j - 1] + 2, d[i - 1][j - 1] + sub_cost_halves(a[i - 1], b[j - 1])});
  return d[a.size()][b.size()];
}

struct MatchExpectation {
  enum Kind { Exact, Fuzzy, NoMatch, Ambiguous } kind = NoMatch;
  int cost_halves = 0;
  std::string plate;
  std::vector<std::string> tied;
};

/// Scans every registry entry, keeps all minima.
inline MatchExpectation match(const std::string& reading, const std::vector<std::string>& registry) {
  MatchExpectation e;
  for (const auto& p : registry)
    if (p == reading) {
      e.kind = MatchExpectation::Exact;
      e.plate = p;
      return e;
    }
  int best = 1 << 30;
  std::vector<std::string> at_best;
  for (const auto& p : registry) {
    const int c = edit_table(reading, p);
    if (c < best) {
      best = c;
      at_best = {p};
    } else if (c == best) {
      at_best.push_back(p);
    }
  }
  if (at_best.empty() || best > 2) return e;
  e.cost_halves = best;
  if (at_best.size() == 1) {
    e.kind = MatchExpectation::Fuzzy;
    e.plate = at_best[0];
  } else {
    e.kind = MatchExpectation::Ambiguous;
    e.tied = at_best;
  }
  return e;
}

inline GrayImage random_gray(std::mt19937_64& rng, int w, int h) {
  GrayImage img(w, h);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(d(rng));
  return img;
}

inline BinaryImage random_binary(std::mt19937_64& rng, int w, int h, double density) {
  BinaryImage img(w, h);
  std::bernoulli_distribution d(density);
  for (auto& v : img.data()) v = d(rng) ? 1 : 0;
  return img;
}

}  // namespace oracle
