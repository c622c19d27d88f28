#include "pfake/dct.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace pfake {

namespace {

struct Basis {
  std::vector<double> forward;  // [i][k] = a(k) cos(pi (2i + 1) k / 2n)
  std::vector<double> inverse;  // [k][i], the transpose
};

std::shared_ptr<const Basis> make_basis(int n) {
  auto b = std::make_shared<Basis>();
  b->forward.resize(static_cast<std::size_t>(n) * n);
  b->inverse.resize(b->forward.size());
  const double a0 = std::sqrt(1.0 / n);
  const double ak = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double scale = k == 0 ? a0 : ak;
    for (int i = 0; i < n; ++i) {
      const double v = scale * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
      b->forward[static_cast<std::size_t>(i) * n + k] = v;
      b->inverse[static_cast<std::size_t>(k) * n + i] = v;
    }
  }
  return b;
}

// Frames in one run share a handful of sizes, so the cache stays tiny.
std::shared_ptr<const Basis> basis_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Basis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = make_basis(n);
  return slot;
}

// out (rows x n) = in (rows x n) * m (n x n). Four rows share each load of
// m; the k-outer order keeps the inner loop a vectorizable axpy.
void multiply_rows(const double* in, double* out, int rows, int n, const double* m) {
  int r = 0;
  for (; r + 4 <= rows; r += 4) {
    const double* a0 = in + static_cast<std::size_t>(r) * n;
    const double* a1 = a0 + n;
    const double* a2 = a1 + n;
    const double* a3 = a2 + n;
    double* c0 = out + static_cast<std::size_t>(r) * n;
    double* c1 = c0 + n;
    double* c2 = c1 + n;
    double* c3 = c2 + n;
    for (int i = 0; i < 4 * n; ++i) c0[i] = 0.0;
    for (int k = 0; k < n; ++k) {
      const double* row = m + static_cast<std::size_t>(k) * n;
      const double s0 = a0[k], s1 = a1[k], s2 = a2[k], s3 = a3[k];
      for (int i = 0; i < n; ++i) {
        const double v = row[i];
        c0[i] += s0 * v;
        c1[i] += s1 * v;
        c2[i] += s2 * v;
        c3[i] += s3 * v;
      }
    }
  }
  for (; r < rows; ++r) {
    const double* a = in + static_cast<std::size_t>(r) * n;
    double* c = out + static_cast<std::size_t>(r) * n;
    for (int i = 0; i < n; ++i) c[i] = 0.0;
    for (int k = 0; k < n; ++k) {
      const double* row = m + static_cast<std::size_t>(k) * n;
      const double s = a[k];
      for (int i = 0; i < n; ++i) c[i] += s * row[i];
    }
  }
}

std::vector<double> transpose(const std::vector<double>& m, int rows, int cols) {
  std::vector<double> t(m.size());
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      t[static_cast<std::size_t>(c) * rows + r] = m[static_cast<std::size_t>(r) * cols + c];
  return t;
}

FloatImage separable_transform(const FloatImage& image, bool inverse) {
  const int h = image.height();
  const int w = image.width();
  const auto bw = basis_for(w);
  const auto bh = basis_for(h);
  const auto& mw = inverse ? bw->inverse : bw->forward;
  const auto& mh = inverse ? bh->inverse : bh->forward;

  std::vector<double> a(image.data().begin(), image.data().end());
  std::vector<double> b(a.size());
  multiply_rows(a.data(), b.data(), h, w, mw.data());
  a = transpose(b, h, w);
  multiply_rows(a.data(), b.data(), w, h, mh.data());
  return FloatImage(h, w, transpose(b, w, h));
}

}  // namespace

FloatImage dct2(const FloatImage& image) { return separable_transform(image, false); }

FloatImage idct2(const FloatImage& coefficients) { return separable_transform(coefficients, true); }

}  // namespace pfake
