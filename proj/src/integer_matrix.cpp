#include "pjam/integer_matrix.hpp"

#include <cstdlib>
#include <limits>
#include <utility>

#include "pjam/error.hpp"

namespace pjam {

std::int64_t checkedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
  return r;
}

std::int64_t checkedSub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer subtraction overflow");
  return r;
}

std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
  return r;
}

std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
  if (b == 0) throw InputError("division by zero");
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floorMod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("integer matrix shape mismatch");
  IntMatrix out = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      std::int64_t acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = checkedAdd(acc, checkedMul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  return out;
}

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        __int128 num = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
        __int128 q = num / prev;
        if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min())
          throw OverflowError("determinant overflow");
        a(i, j) = static_cast<std::int64_t>(q);
      }
    prev = a(k, k);
  }
  return checkedMul(sign, a(n - 1, n - 1));
}

namespace {

void addColumnMultiple(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t q) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, dst) = checkedSub(m(r, dst), checkedMul(q, m(r, src)));
}

void addRowMultiple(IntMatrix& m, Eigen::Index dst, Eigen::Index src, std::int64_t q) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) m(dst, c) = checkedSub(m(dst, c), checkedMul(q, m(src, c)));
}

void requireNonsingularSquare(const IntMatrix& s) {
  if (s.rows() != s.cols() || s.rows() == 0) throw InputError("expected a non-empty square integer matrix");
  if (determinant(s) == 0) throw InputError("singular integer matrix");
}

}  // namespace

HermiteForm columnHermiteForm(const IntMatrix& s) {
  requireNonsingularSquare(s);
  const Eigen::Index n = s.rows();
  IntMatrix h = s;
  IntMatrix w = IntMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (;;) {
      Eigen::Index pivot = -1;
      for (Eigen::Index j = i; j < n; ++j)
        if (h(i, j) != 0 && (pivot < 0 || std::llabs(h(i, j)) < std::llabs(h(i, pivot)))) pivot = j;
      if (pivot != i) {
        h.col(i).swap(h.col(pivot));
        w.col(i).swap(w.col(pivot));
      }
      bool clean = true;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (h(i, j) == 0) continue;
        const std::int64_t q = h(i, j) / h(i, i);
        addColumnMultiple(h, j, i, q);
        addColumnMultiple(w, j, i, q);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(i, i) < 0) {
      h.col(i) = -h.col(i);
      w.col(i) = -w.col(i);
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      const std::int64_t q = floorDiv(h(i, j), h(i, i));
      if (q == 0) continue;
      addColumnMultiple(h, j, i, q);
      addColumnMultiple(w, j, i, q);
    }
  }
  return {h, w};
}

SmithForm smithForm(const IntMatrix& s) {
  requireNonsingularSquare(s);
  const Eigen::Index n = s.rows();
  IntMatrix a = s;
  IntMatrix u = IntMatrix::Identity(n, n);
  IntMatrix v = IntMatrix::Identity(n, n);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (;;) {
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index i = t; i < n; ++i)
        for (Eigen::Index j = t; j < n; ++j)
          if (a(i, j) != 0 && (pr < 0 || std::llabs(a(i, j)) < std::llabs(a(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr != t) {
        a.row(t).swap(a.row(pr));
        u.row(t).swap(u.row(pr));
      }
      if (pc != t) {
        a.col(t).swap(a.col(pc));
        v.col(t).swap(v.col(pc));
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        const std::int64_t q = a(i, t) / a(t, t);
        addRowMultiple(a, i, t, q);
        addRowMultiple(u, i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const std::int64_t q = a(t, j) / a(t, t);
        addColumnMultiple(a, j, t, q);
        addColumnMultiple(v, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      Eigen::Index offending = -1;
      for (Eigen::Index i = t + 1; i < n && offending < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
      if (offending < 0) break;
      addRowMultiple(a, t, offending, -1);
      addRowMultiple(u, t, offending, -1);
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }
  return {u, v, a.diagonal()};
}

}  // namespace pjam
