#include <sstream>

#include "regint/errors.hpp"
#include "regint/lattice.hpp"

namespace regint {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows * cols)) {
  if (rows < 0 || cols < 0) throw DomainError("negative matrix size");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = int(rows.size());
  cols_ = rows_ ? int(rows.begin()->size()) : 0;
  for (const auto& row : rows) {
    if (int(row.size()) != cols_) throw DomainError("ragged matrix");
    for (long long x : row) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int r) {
  IntMatrix m(r, r);
  for (int i = 0; i < r; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::parse(const std::string& text) {
  std::vector<std::vector<BigInt>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<BigInt> r;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ',')) {
      const auto b = tok.find_first_not_of(" \t[]"), e = tok.find_last_not_of(" \t[]");
      if (b == std::string::npos) throw DomainError("empty matrix entry");
      r.emplace_back(tok.substr(b, e - b + 1));
    }
    if (!rows.empty() && r.size() != rows[0].size()) throw DomainError("ragged matrix");
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw DomainError("empty matrix");
  IntMatrix m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  return m;
}

BigInt IntMatrix::det() const {
  if (rows_ != cols_) throw DomainError("det of a non-square matrix");
  const int n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::inverse_unimodular() const {
  const BigInt d = det();
  if (d != 1 && d != -1) throw SingularMatrix("not unimodular");
  const int n = rows_;
  std::vector<BigRational> m(std::size_t(n * 2 * n));
  auto at = [&](int i, int j) -> BigRational& { return m[std::size_t(i * 2 * n + j)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = BigRational((*this)(i, j));
    at(i, n + i) = 1;
  }
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (at(piv, k) == 0) ++piv;
    if (piv != k)
      for (int j = 0; j < 2 * n; ++j) std::swap(at(k, j), at(piv, j));
    const BigRational inv = 1 / at(k, k);
    for (int j = 0; j < 2 * n; ++j) at(k, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == k || at(i, k) == 0) continue;
      const BigRational f = at(i, k);
      for (int j = 0; j < 2 * n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  IntMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = numerator(at(i, n + j));
  return out;
}

std::string IntMatrix::to_string() const {
  std::string s;
  for (int i = 0; i < rows_; ++i) {
    if (i) s += ';';
    for (int j = 0; j < cols_; ++j) {
      if (j) s += ',';
      s += (*this)(i, j).str();
    }
  }
  return s;
}

std::vector<std::vector<std::string>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).str());
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix size mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

SmithForm smith_normal_form(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw DomainError("smith_normal_form expects a square matrix");
  if (A.det() == 0) throw SingularMatrix("smith_normal_form of a singular matrix");
  const int n = A.rows();
  IntMatrix D = A, U = IntMatrix::identity(n), V = IntMatrix::identity(n);
  auto row_op = [&](int dst, int src, const BigInt& f) {  // row dst -= f row src
    for (int j = 0; j < n; ++j) {
      D(dst, j) -= f * D(src, j);
      U(dst, j) -= f * U(src, j);
    }
  };
  auto col_op = [&](int dst, int src, const BigInt& f) {
    for (int i = 0; i < n; ++i) {
      D(i, dst) -= f * D(i, src);
      V(i, dst) -= f * V(i, src);
    }
  };
  auto swap_rows = [&](int a, int b) {
    for (int j = 0; j < n; ++j) {
      std::swap(D(a, j), D(b, j));
      std::swap(U(a, j), U(b, j));
    }
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < n; ++i) {
      std::swap(D(i, a), D(i, b));
      std::swap(V(i, a), V(i, b));
    }
  };

  for (int k = 0; k < n; ++k) {
    for (;;) {
      // smallest nonzero entry of the trailing block goes to (k, k)
      int pi = -1, pj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
      swap_rows(k, pi);
      swap_cols(k, pj);
      bool clean = true;
      for (int i = k + 1; i < n; ++i)
        if (D(i, k) != 0) {
          row_op(i, k, D(i, k) / D(k, k));
          if (D(i, k) != 0) clean = false;
        }
      for (int j = k + 1; j < n; ++j)
        if (D(k, j) != 0) {
          col_op(j, k, D(k, j) / D(k, k));
          if (D(k, j) != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility of the rest of the block
      int bad = -1;
      for (int i = k + 1; i < n && bad < 0; ++i)
        for (int j = k + 1; j < n; ++j)
          if (D(i, j) % D(k, k) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(k, bad, -1);  // row k += row bad
    }
    if (D(k, k) < 0)
      for (int j = 0; j < n; ++j) {
        D(k, j) = -D(k, j);
        U(k, j) = -U(k, j);
      }
  }
  return {U, D, V};
}

}  // namespace regint
