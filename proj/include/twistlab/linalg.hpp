#pragma once

#include <cstdint>
#include <vector>

namespace twistlab {

/// Dense row-major integer matrix.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  static IntMatrix identity(int n);

  std::int64_t& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::int64_t operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

/// Exact rank over Q by fraction-free (Bareiss) elimination.
int rank(IntMatrix m);

/// Rank over F_p. Entries may be any integers; they are reduced mod p first.
int rank_mod_p(IntMatrix m, std::int64_t p);

}  // namespace twistlab
