#include "plategate/imaging/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "plategate/simd/kernels.hpp"

namespace plategate::imaging {
namespace {

void check_kernel(int kernel_w, int kernel_h) {
  if (kernel_w < 1 || kernel_h < 1 || kernel_w % 2 == 0 || kernel_h % 2 == 0)
    throw std::invalid_argument("morphology kernel sides must be odd and >= 1");
}

using Combine = void (*)(const std::uint8_t*, const std::uint8_t*, std::uint8_t*, std::size_t);

// Separable rectangular max/min filter with zero padding on both axes.
BinaryImage rank_filter(const BinaryImage& bin, int kernel_w, int kernel_h, Combine combine) {
  check_kernel(kernel_w, kernel_h);
  const int w = bin.width(), h = bin.height();
  const int rx = kernel_w / 2, ry = kernel_h / 2;

  BinaryImage horizontal(w, h);
  std::vector<std::uint8_t> padded(static_cast<std::size_t>(w + 2 * rx), 0);
  for (int y = 0; y < h; ++y) {
    auto src = bin.row(y);
    std::copy(src.begin(), src.end(), padded.begin() + rx);
    auto dst = horizontal.row(y);
    std::copy_n(padded.begin(), w, dst.begin());
    for (int d = 1; d <= 2 * rx; ++d) combine(dst.data(), padded.data() + d, dst.data(), w);
  }

  BinaryImage out(w, h);
  const std::vector<std::uint8_t> zeros(static_cast<std::size_t>(w), 0);
  for (int y = 0; y < h; ++y) {
    auto dst = out.row(y);
    const int first = y - ry;
    const std::uint8_t* seed = first >= 0 ? horizontal.row(first).data() : zeros.data();
    std::copy_n(seed, w, dst.begin());
    for (int yy = first + 1; yy <= y + ry; ++yy) {
      const std::uint8_t* src = (yy >= 0 && yy < h) ? horizontal.row(yy).data() : zeros.data();
      combine(dst.data(), src, dst.data(), w);
    }
  }
  return out;
}

struct DisjointSet {
  std::vector<std::int32_t> parent;

  std::int32_t make() {
    parent.push_back(static_cast<std::int32_t>(parent.size()));
    return parent.back();
  }
  std::int32_t find(std::int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Compares n_a / d_a against n_b / d_b for non-negative 128-bit numerators.
int compare_ratio(unsigned __int128 n_a, unsigned __int128 d_a, unsigned __int128 n_b, unsigned __int128 d_b) {
  const unsigned __int128 q_a = n_a / d_a, q_b = n_b / d_b;
  if (q_a != q_b) return q_a < q_b ? -1 : 1;
  const unsigned __int128 l = (n_a % d_a) * d_b, r = (n_b % d_b) * d_a;
  return l == r ? 0 : (l < r ? -1 : 1);
}

}  // namespace

GrayImage to_grayscale(const Image& img) {
  if (img.channels() != 1 && img.channels() != 3) throw std::invalid_argument("to_grayscale: 1 or 3 channels");
  GrayImage out(img.width(), img.height());
  if (img.channels() == 1) {
    std::copy(img.data().begin(), img.data().end(), out.data().begin());
  } else {
    simd::active_kernels().rgb_to_luma(img.data().data(), out.data().data(), out.size());
  }
  return out;
}

GrayImage sobel_magnitude(const GrayImage& img) {
  GrayImage out(img.width(), img.height());
  if (img.width() < 3 || img.height() < 3) return out;
  const auto& k = simd::active_kernels();
  for (int y = 1; y + 1 < img.height(); ++y) {
    auto dst = out.row(y);
    k.sobel_row(img.row(y - 1).data(), img.row(y).data(), img.row(y + 1).data(), dst.data(),
                static_cast<std::size_t>(img.width()));
    dst.front() = 0;
    dst.back() = 0;
  }
  return out;
}

Histogram histogram(const GrayImage& img) {
  Histogram hist{};
  for (std::uint8_t v : img.data()) ++hist[v];
  return hist;
}

int otsu_level(const Histogram& hist) {
  // sigma_b^2 * N^2 = (s0 * N - S * n0)^2 / (n0 * n1); compared exactly.
  std::uint64_t total = 0, total_sum = 0;
  for (int v = 0; v < 256; ++v) {
    total += hist[v];
    total_sum += hist[v] * static_cast<std::uint64_t>(v);
  }
  if (total == 0) throw std::invalid_argument("otsu: empty image");

  int best = -1;
  unsigned __int128 best_num = 0, best_den = 1;
  std::uint64_t n0 = 0, s0 = 0;
  for (int t = 0; t < 256; ++t) {
    n0 += hist[t];
    s0 += hist[t] * static_cast<std::uint64_t>(t);
    const std::uint64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const __int128 diff = static_cast<__int128>(s0) * total - static_cast<__int128>(total_sum) * n0;
    const unsigned __int128 mag = static_cast<unsigned __int128>(diff < 0 ? -diff : diff);
    const unsigned __int128 num = mag * mag;
    const unsigned __int128 den = static_cast<unsigned __int128>(n0) * n1;
    if (best < 0 || compare_ratio(num, den, best_num, best_den) > 0) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }
  if (best < 0 || best_num == 0) throw DegenerateHistogram();
  return best;
}

BinaryImage threshold_above(const GrayImage& img, int threshold) {
  BinaryImage out(img.width(), img.height());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > threshold ? 1 : 0;
  return out;
}

OtsuResult otsu_threshold(const GrayImage& img) {
  if (img.empty()) throw std::invalid_argument("otsu: empty image");
  const int t = otsu_level(histogram(img));
  return {t, threshold_above(img, t)};
}

BinaryImage invert(const BinaryImage& bin) {
  BinaryImage out(bin.width(), bin.height());
  auto src = bin.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<std::uint8_t>(1 - src[i]);
  return out;
}

BinaryImage dilate(const BinaryImage& bin, int kernel_w, int kernel_h) {
  return rank_filter(bin, kernel_w, kernel_h, simd::active_kernels().max_u8);
}

BinaryImage erode(const BinaryImage& bin, int kernel_w, int kernel_h) {
  return rank_filter(bin, kernel_w, kernel_h, simd::active_kernels().min_u8);
}

BinaryImage morph_close(const BinaryImage& bin, int kernel_w, int kernel_h) {
  return erode(dilate(bin, kernel_w, kernel_h), kernel_w, kernel_h);
}

ComponentLabels connected_components(const BinaryImage& bin) {
  ComponentLabels out;
  out.width = bin.width();
  out.height = bin.height();
  out.labels.assign(bin.size(), 0);
  const int w = bin.width(), h = bin.height();

  // First pass: provisional labels, equivalences through a disjoint set.
  // Provisional label p is stored as p + 1 so that 0 stays background.
  DisjointSet sets;
  auto label_at = [&](int x, int y) -> std::int32_t& { return out.labels[static_cast<std::size_t>(y) * w + x]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!bin.at(x, y)) continue;
      std::int32_t current = 0;
      const int nx[4] = {x - 1, x - 1, x, x + 1};
      const int ny[4] = {y, y - 1, y - 1, y - 1};
      for (int k = 0; k < 4; ++k) {
        if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w) continue;
        const std::int32_t neighbour = label_at(nx[k], ny[k]);
        if (neighbour == 0) continue;
        if (current == 0) {
          current = neighbour;
        } else {
          sets.unite(current - 1, neighbour - 1);
        }
      }
      label_at(x, y) = current != 0 ? current : sets.make() + 1;
    }
  }

  // Second pass: resolve roots and renumber in row-major first-visit order.
  std::vector<std::int32_t> final_label(sets.parent.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int32_t& l = label_at(x, y);
      if (l == 0) continue;
      const std::int32_t root = sets.find(l - 1);
      if (final_label[root] == 0) {
        final_label[root] = ++out.component_count;
        out.components.push_back({BBox{x, y, 1, 1}, 0});
      }
      l = final_label[root];
      ComponentStats& stats = out.components[l - 1];
      BBox& b = stats.bbox;
      const int x0 = std::min(b.x, x), y0 = std::min(b.y, y);
      const int x1 = std::max(b.right(), x + 1), y1 = std::max(b.bottom(), y + 1);
      b = BBox{x0, y0, x1 - x0, y1 - y0};
      ++stats.area;
    }
  }
  return out;
}

BinaryImage clear_border(const BinaryImage& bin) {
  const ComponentLabels cc = connected_components(bin);
  std::vector<bool> touches(static_cast<std::size_t>(cc.component_count) + 1, false);
  for (int i = 0; i < cc.component_count; ++i) {
    const BBox& b = cc.components[i].bbox;
    touches[i + 1] = b.x == 0 || b.y == 0 || b.right() == bin.width() || b.bottom() == bin.height();
  }
  BinaryImage out(bin.width(), bin.height());
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const std::int32_t l = cc.labels[i];
    dst[i] = (l != 0 && !touches[l]) ? 1 : 0;
  }
  return out;
}

double sample_bilinear(const GrayImage& img, double x, double y) noexcept {
  x = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, img.width() - 1), y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = x - x0, fy = y - y0;
  const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
  const double bottom = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

GrayImage crop(const GrayImage& img, const BBox& box) {
  if (!box.within(img.width(), img.height()) || box.w < 1 || box.h < 1)
    throw std::invalid_argument("crop box outside image");
  GrayImage out(box.w, box.h);
  for (int y = 0; y < box.h; ++y) {
    auto src = img.row(box.y + y).subspan(static_cast<std::size_t>(box.x), static_cast<std::size_t>(box.w));
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

}  // namespace plategate::imaging
