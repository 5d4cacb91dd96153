#include "twistlab/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace twistlab {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not agree");
  IntMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const auto aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix shapes do not agree");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
  return c;
}

int rank(IntMatrix m) {
  // Bareiss: every intermediate entry is a minor of the input, so division is exact.
  int r = 0;
  __int128 prev = 1;
  std::vector<__int128> a(m.data.begin(), m.data.end());
  auto at = [&](int i, int j) -> __int128& { return a[static_cast<std::size_t>(i) * m.cols + j]; };
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(at(piv, j), at(r, j));
    for (int i = r + 1; i < m.rows; ++i) {
      for (int j = c + 1; j < m.cols; ++j) at(i, j) = (at(r, c) * at(i, j) - at(i, c) * at(r, j)) / prev;
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

}  // namespace

int rank_mod_p(IntMatrix m, std::int64_t p) {
  for (auto& x : m.data) x = ((x % p) + p) % p;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = inverse_mod(m(r, c), p);
    for (int j = c; j < m.cols; ++j) m(r, j) = m(r, j) * inv % p;
    for (int i = r + 1; i < m.rows; ++i) {
      const auto f = m(i, c);
      if (f == 0) continue;
      for (int j = c; j < m.cols; ++j) m(i, j) = ((m(i, j) - f * m(r, j)) % p + p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace twistlab
