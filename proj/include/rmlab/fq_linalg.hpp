#pragma once

// Exact linear algebra with field-element entries, plus packed-digit rank
// kernels for the enumeration-heavy paths. No floating point anywhere.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rmlab/gf.hpp"
#include "rmlab/util.hpp"

namespace rmlab {

// ---------------------------------------------------------------------------
// Dense matrix over the ambient field. Entries restricted to a subfield stay
// in that subfield under elimination, so one class serves F_p, F_q and
// F_{q^n} alike.
// ---------------------------------------------------------------------------

class FqMat {
 public:
  FqMat() = default;
  FqMat(FieldPtr F, int rows, int cols)
      : F_(std::move(F)), r_(rows), c_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0) {}

  static FqMat identity(FieldPtr F, int n) {
    FqMat m(std::move(F), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static FqMat from_rows(FieldPtr F, const std::vector<std::vector<Elem>>& rows) {
    int rc = static_cast<int>(rows.size());
    int cc = rc == 0 ? 0 : static_cast<int>(rows[0].size());
    FqMat m(std::move(F), rc, cc);
    for (int i = 0; i < rc; ++i)
      for (int j = 0; j < cc; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const FieldPtr& field() const { return F_; }

  Elem& at(int r, int c) {
    return a_[static_cast<size_t>(r) * static_cast<size_t>(c_) + static_cast<size_t>(c)];
  }
  Elem at(int r, int c) const {
    return a_[static_cast<size_t>(r) * static_cast<size_t>(c_) + static_cast<size_t>(c)];
  }

  std::vector<Elem> row(int r) const {
    return std::vector<Elem>(a_.begin() + static_cast<long>(r) * c_,
                             a_.begin() + static_cast<long>(r + 1) * c_);
  }

  FqMat mul(const FqMat& o) const {
    FqMat out(F_, r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        Elem v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.c_; ++j)
          out.at(i, j) = F_->add(out.at(i, j), F_->mul(v, o.at(k, j)));
      }
    return out;
  }

  std::vector<Elem> mul_vec(std::span<const Elem> x) const {
    std::vector<Elem> out(static_cast<size_t>(r_), 0);
    for (int i = 0; i < r_; ++i) {
      Elem acc = 0;
      for (int j = 0; j < c_; ++j) {
        Elem v = at(i, j);
        if (v != 0) acc = F_->add(acc, F_->mul(v, x[static_cast<size_t>(j)]));
      }
      out[static_cast<size_t>(i)] = acc;
    }
    return out;
  }

  FqMat transpose() const {
    FqMat out(F_, c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  // In-place reduced row echelon form; returns the pivot columns. The result
  // is the canonical representative of the row space.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int rr = 0;
    for (int col = 0; col < c_ && rr < r_; ++col) {
      int sel = -1;
      for (int r2 = rr; r2 < r_; ++r2)
        if (at(r2, col) != 0) {
          sel = r2;
          break;
        }
      if (sel < 0) continue;
      if (sel != rr)
        for (int j = 0; j < c_; ++j) std::swap(at(sel, j), at(rr, j));
      Elem inv = F_->inv(at(rr, col));
      for (int j = col; j < c_; ++j) at(rr, j) = F_->mul(at(rr, j), inv);
      for (int r2 = 0; r2 < r_; ++r2) {
        if (r2 == rr) continue;
        Elem f = at(r2, col);
        if (f == 0) continue;
        for (int j = col; j < c_; ++j)
          at(r2, j) = F_->sub(at(r2, j), F_->mul(f, at(rr, j)));
      }
      pivots.push_back(col);
      ++rr;
    }
    return pivots;
  }

  int rank() const {
    FqMat copy = *this;
    return static_cast<int>(copy.rref().size());
  }

  // Canonical kernel basis (one row per free column of the rref).
  FqMat kernel() const {
    FqMat red = *this;
    std::vector<int> piv = red.rref();
    std::vector<bool> is_piv(static_cast<size_t>(c_), false);
    for (int pcol : piv) is_piv[static_cast<size_t>(pcol)] = true;
    int nk = c_ - static_cast<int>(piv.size());
    FqMat ker(F_, nk, c_);
    int kr = 0;
    for (int col = 0; col < c_; ++col) {
      if (is_piv[static_cast<size_t>(col)]) continue;
      ker.at(kr, col) = 1;
      for (size_t prow = 0; prow < piv.size(); ++prow)
        ker.at(kr, piv[prow]) = F_->neg(red.at(static_cast<int>(prow), col));
      ++kr;
    }
    return ker;
  }

  FqMat inverse() const {
    if (r_ != c_) throw validation_error("inverse needs a square matrix");
    FqMat aug(F_, r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, c_ + i) = 1;
    }
    auto piv = aug.rref();
    for (int i = 0; i < r_; ++i)
      if (static_cast<int>(piv.size()) <= i || piv[static_cast<size_t>(i)] != i)
        throw validation_error("matrix is singular");
    FqMat out(F_, r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out.at(i, j) = aug.at(i, c_ + j);
    return out;
  }

  bool operator==(const FqMat& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }

 private:
  FieldPtr F_;
  int r_ = 0, c_ = 0;
  std::vector<Elem> a_;
};

// Unique solution of A x = rhs; throws when inconsistent or underdetermined.
inline std::vector<Elem> solve_unique(const FqMat& A,
                                      const std::vector<Elem>& rhs) {
  const FieldPtr& F = A.field();
  FqMat aug(F, A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = rhs[static_cast<size_t>(i)];
  }
  auto piv = aug.rref();
  for (int p : piv)
    if (p == A.cols()) throw validation_error("inconsistent linear system");
  if (static_cast<int>(piv.size()) != A.cols())
    throw validation_error("underdetermined linear system");
  std::vector<Elem> x(static_cast<size_t>(A.cols()), 0);
  for (size_t i = 0; i < piv.size(); ++i)
    x[static_cast<size_t>(piv[i])] = aug.at(static_cast<int>(i), A.cols());
  return x;
}

// Incremental row space over the field, kept in reduced form.
class RowSpan {
 public:
  RowSpan(FieldPtr F, int width) : F_(std::move(F)), w_(width) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return w_; }

  bool contains(std::vector<Elem> v) const {
    reduce(v);
    for (Elem x : v)
      if (x != 0) return false;
    return true;
  }

  // Returns true when the vector enlarged the span.
  bool insert(std::vector<Elem> v) {
    reduce(v);
    int piv = -1;
    for (int j = 0; j < w_; ++j)
      if (v[static_cast<size_t>(j)] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    Elem inv = F_->inv(v[static_cast<size_t>(piv)]);
    for (int j = 0; j < w_; ++j)
      v[static_cast<size_t>(j)] = F_->mul(v[static_cast<size_t>(j)], inv);
    // keep rows ordered by pivot and fully reduced against each other
    for (size_t r = 0; r < rows_.size(); ++r) {
      Elem f = rows_[r][static_cast<size_t>(piv)];
      if (f != 0)
        for (int j = 0; j < w_; ++j)
          rows_[r][static_cast<size_t>(j)] =
              F_->sub(rows_[r][static_cast<size_t>(j)],
                      F_->mul(f, v[static_cast<size_t>(j)]));
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), piv);
    return true;
  }

  const std::vector<std::vector<Elem>>& rows() const { return rows_; }

 private:
  void reduce(std::vector<Elem>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      Elem f = v[static_cast<size_t>(pivots_[r])];
      if (f != 0)
        for (int j = 0; j < w_; ++j)
          v[static_cast<size_t>(j)] = F_->sub(
              v[static_cast<size_t>(j)], F_->mul(f, rows_[r][static_cast<size_t>(j)]));
    }
  }

  FieldPtr F_;
  int w_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<int> pivots_;
};

// ---------------------------------------------------------------------------
// Packed-digit rank kernel. Rows carry base-p digits in 4-bit lanes (width
// <= 16); this is the inner loop of every brute-force weight enumeration.
// ---------------------------------------------------------------------------

struct PackedOps {
  std::uint32_t p;
  std::uint64_t fix, hi;

  explicit PackedOps(std::uint32_t prime) : p(prime) {
    if (p > 7) throw error("packed digit lanes require p <= 7");
    std::uint64_t rep = 0;
    for (int i = 0; i < 16; ++i) rep = (rep << 4) | 1;
    fix = rep * (8 - p);
    hi = rep * 8;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s - ((((s + fix) & hi) >> 3) * p);
  }

  // c * row for 0 <= c < p (p <= 7), via an addition chain.
  std::uint64_t scale(std::uint64_t row, std::uint32_t c) const {
    std::uint64_t acc = 0, base = row;
    while (c > 0) {
      if (c & 1) acc = add(acc, base);
      c >>= 1;
      if (c) base = add(base, base);
    }
    return acc;
  }
};

// Rank of the matrix whose rows are packed digit vectors; entries in F_p.
inline int rank_packed(std::uint64_t* rows, int nrows, int width,
                       const PackedOps& ops) {
  static const std::uint8_t inv2[2] = {0, 1};
  static const std::uint8_t inv3[3] = {0, 1, 2};
  static const std::uint8_t inv5[5] = {0, 1, 3, 2, 4};
  static const std::uint8_t inv7[7] = {0, 1, 4, 5, 2, 3, 6};
  const std::uint8_t* inv = ops.p == 2   ? inv2
                            : ops.p == 3 ? inv3
                            : ops.p == 5 ? inv5
                                         : inv7;
  int rank = 0;
  for (int col = 0; col < width && rank < nrows; ++col) {
    int shift = 4 * col;
    int sel = -1;
    for (int r = rank; r < nrows; ++r)
      if ((rows[r] >> shift) & 0xF) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[sel], rows[rank]);
    std::uint32_t piv = static_cast<std::uint32_t>((rows[rank] >> shift) & 0xF);
    std::uint32_t piv_inv = inv[piv];
    for (int r = rank + 1; r < nrows; ++r) {
      std::uint32_t v = static_cast<std::uint32_t>((rows[r] >> shift) & 0xF);
      if (v == 0) continue;
      std::uint32_t f = (ops.p - v * piv_inv % ops.p) % ops.p;
      rows[r] = ops.add(rows[r], ops.scale(rows[rank], f));
    }
    ++rank;
  }
  return rank;
}

// Plain Gaussian rank of byte rows mod p; the fallback when digit vectors do
// not fit 4-bit lanes.
inline int rank_bytes_mod_p(std::vector<std::vector<std::uint8_t>>& rows, int p) {
  int nrows = static_cast<int>(rows.size());
  int width = nrows == 0 ? 0 : static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < width && rank < nrows; ++col) {
    int sel = -1;
    for (int r = rank; r < nrows; ++r)
      if (rows[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[static_cast<size_t>(sel)], rows[static_cast<size_t>(rank)]);
    int inv = detail::dp_inv_mod_p(
        rows[static_cast<size_t>(rank)][static_cast<size_t>(col)], p);
    for (int r = rank + 1; r < nrows; ++r) {
      int v = rows[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (v == 0) continue;
      int f = static_cast<int>(1LL * v * inv % p);
      for (int c = col; c < width; ++c)
        rows[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            static_cast<std::uint8_t>(
                ((rows[static_cast<size_t>(r)][static_cast<size_t>(c)] -
                  1LL * f * rows[static_cast<size_t>(rank)][static_cast<size_t>(c)]) %
                     p +
                 p) %
                p);
    }
    ++rank;
  }
  return rank;
}

// dim over F_{p^d} of the F_{p^d}-span of the given elements. Works through
// F_p: multiply by an F_p-basis of the subfield and divide the F_p-rank by d.
inline int subfield_span_dim(const Field& F, std::span<const Elem> elems, int d) {
  const auto& S = F.subfield(d);
  int rp = 0;
  if (F.has_packed()) {
    std::vector<std::uint64_t> rows;
    rows.reserve(elems.size() * S.fp_basis.size());
    for (Elem v : elems)
      for (Elem b : S.fp_basis) rows.push_back(F.pack(F.mul(v, b)));
    PackedOps ops(F.p());
    rp = rank_packed(rows.data(), static_cast<int>(rows.size()), F.degree(), ops);
  } else {
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(elems.size() * S.fp_basis.size());
    for (Elem v : elems)
      for (Elem b : S.fp_basis) {
        Elem prod = F.mul(v, b);
        std::vector<std::uint8_t> row(static_cast<size_t>(F.degree()));
        for (int c = 0; c < F.degree(); ++c)
          row[static_cast<size_t>(c)] = static_cast<std::uint8_t>(F.digit(prod, c));
        rows.push_back(std::move(row));
      }
    rp = rank_bytes_mod_p(rows, static_cast<int>(F.p()));
  }
  if (rp % d != 0) throw error("span dimension not divisible by subfield degree");
  return rp / d;
}

// ---------------------------------------------------------------------------
// Exhaustive subspace enumeration in canonical reduced-echelon form: every
// k-dimensional subspace of S^D appears exactly once, S a subfield given by
// its sorted element list. Pivot supports advance lexicographically, free
// entries as an odometer, so the stream order is deterministic.
// ---------------------------------------------------------------------------

template <class Fn>
bool for_each_subspace(const std::vector<Elem>& scalars, int D, int k, Fn&& fn) {
  if (k < 0 || k > D) return true;
  std::vector<int> piv(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<size_t>(i)] = i;
  std::vector<std::vector<Elem>> basis(
      static_cast<size_t>(k), std::vector<Elem>(static_cast<size_t>(D), 0));
  const size_t ns = scalars.size();

  auto next_combination = [&]() -> bool {
    int i = k - 1;
    while (i >= 0 && piv[static_cast<size_t>(i)] == D - k + i) --i;
    if (i < 0) return false;
    ++piv[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      piv[static_cast<size_t>(j)] = piv[static_cast<size_t>(j - 1)] + 1;
    return true;
  };

  while (true) {
    std::vector<bool> is_piv(static_cast<size_t>(D), false);
    for (int i = 0; i < k; ++i) is_piv[static_cast<size_t>(piv[static_cast<size_t>(i)])] = true;
    // free slots: (row i, col j) with j > piv[i] and j not a pivot column
    std::vector<std::pair<int, int>> free_slots;
    for (int i = 0; i < k; ++i)
      for (int j = piv[static_cast<size_t>(i)] + 1; j < D; ++j)
        if (!is_piv[static_cast<size_t>(j)]) free_slots.emplace_back(i, j);

    std::vector<size_t> odo(free_slots.size(), 0);
    while (true) {
      for (auto& row : basis) std::fill(row.begin(), row.end(), 0);
      for (int i = 0; i < k; ++i)
        basis[static_cast<size_t>(i)][static_cast<size_t>(piv[static_cast<size_t>(i)])] = 1;
      for (size_t s = 0; s < free_slots.size(); ++s)
        basis[static_cast<size_t>(free_slots[s].first)]
             [static_cast<size_t>(free_slots[s].second)] = scalars[odo[s]];
      if (!fn(basis, piv)) return false;
      // odometer
      size_t s = 0;
      while (s < odo.size()) {
        if (++odo[s] < ns) break;
        odo[s] = 0;
        ++s;
      }
      if (s == odo.size()) break;
      if (odo.empty()) break;
    }
    if (!next_combination()) break;
  }
  return true;
}

}  // namespace rmlab
