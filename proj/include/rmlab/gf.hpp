#pragma once

// Exact arithmetic in the tower F_p < F_q < F_{q^n}, q = p^h. One arithmetic
// domain: the whole tower lives inside F_{p^{hn}}, subfields are fixed fields
// of Frobenius powers. An element is an integer code in [0, p^{hn}) whose
// base-p digits are its coefficients in the power basis of the modulus root.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "rmlab/moduli.hpp"
#include "rmlab/util.hpp"

namespace rmlab {

using Elem = std::uint32_t;

struct FieldSpec {
  std::uint32_t p = 2;
  int h = 1;
  int n = 1;
  std::vector<int> modulus;  // ascending coefficients, monic, degree hn

  bool operator==(const FieldSpec& o) const {
    return p == o.p && h == o.h && n == o.n && modulus == o.modulus;
  }
};

namespace detail {

inline bool is_prime_u32(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Dense digit polynomials over F_p, used for construction-time checks and as
// the arithmetic fallback when the field is too large for lookup tables.
using DigitPoly = std::vector<int>;

inline void dp_trim(DigitPoly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

inline DigitPoly dp_mul(const DigitPoly& a, const DigitPoly& b, int p) {
  DigitPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<int>((r[i + j] + 1LL * a[i] * b[j]) % p);
  }
  dp_trim(r);
  return r;
}

inline int dp_inv_mod_p(int a, int p) {
  int r = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = static_cast<int>(1LL * r * base % p);
    base = static_cast<int>(1LL * base * base % p);
    e >>= 1;
  }
  return r;
}

// a mod m, m monic-ish (leading coefficient inverted explicitly).
inline DigitPoly dp_mod(DigitPoly a, const DigitPoly& m, int p) {
  int dm = static_cast<int>(m.size()) - 1;
  int lead_inv = dp_inv_mod_p(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm && a.size() > 1) {
    int c = a.back();
    if (c != 0) {
      int f = static_cast<int>(1LL * c * lead_inv % p);
      size_t off = a.size() - 1 - static_cast<size_t>(dm);
      for (int i = 0; i <= dm; ++i)
        a[off + static_cast<size_t>(i)] =
            static_cast<int>(((a[off + static_cast<size_t>(i)] -
                               1LL * f * m[static_cast<size_t>(i)]) %
                                  p +
                              p) %
                             p);
    }
    a.pop_back();
    dp_trim(a);
  }
  return a;
}

inline bool dp_is_zero(const DigitPoly& a) {
  for (int c : a)
    if (c != 0) return false;
  return true;
}

// Trial division by every monic polynomial of degree <= deg/2.
inline bool dp_irreducible(const DigitPoly& m, int p) {
  int d = static_cast<int>(m.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int dd = 1; dd <= d / 2; ++dd) {
    std::uint64_t count = ipow64(static_cast<std::uint64_t>(p),
                                 static_cast<unsigned>(dd));
    for (std::uint64_t v = 0; v < count; ++v) {
      DigitPoly div(static_cast<size_t>(dd) + 1);
      std::uint64_t t = v;
      for (int i = 0; i < dd; ++i) {
        div[static_cast<size_t>(i)] = static_cast<int>(t % p);
        t /= p;
      }
      div[static_cast<size_t>(dd)] = 1;
      if (dp_is_zero(dp_mod(m, div, p))) return false;
    }
  }
  return true;
}

}  // namespace detail

class Field {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 16;

  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    p_ = spec_.p;
    h_ = spec_.h;
    n_ = spec_.n;
    if (!detail::is_prime_u32(p_))
      throw validation_error("p is not prime: " + std::to_string(p_));
    if (h_ < 1 || n_ < 1) throw validation_error("h and n must be positive");
    deg_ = h_ * n_;
    if (deg_ * std::log2(static_cast<double>(p_)) > 30.5)
      throw validation_error("field too large (order must stay below 2^31)");
    order_ = ipow64(p_, static_cast<unsigned>(deg_));
    q_ = ipow64(p_, static_cast<unsigned>(h_));
    if (static_cast<int>(spec_.modulus.size()) != deg_ + 1)
      throw validation_error("modulus degree must equal h*n");
    if (spec_.modulus.back() != 1)
      throw validation_error("modulus must be monic");
    for (int c : spec_.modulus)
      if (c < 0 || static_cast<std::uint32_t>(c) >= p_)
        throw validation_error("modulus coefficient out of range");
    if (!detail::dp_irreducible(spec_.modulus, static_cast<int>(p_)))
      throw validation_error("modulus is reducible over F_p");

    pw_.resize(static_cast<size_t>(deg_) + 1);
    pw_[0] = 1;
    for (int i = 1; i <= deg_; ++i) pw_[static_cast<size_t>(i)] = pw_[i - 1] * p_;

    tables_ = order_ <= kTableLimit;
    if (tables_) build_tables();
    generator_ = find_generator();
    build_frobenius();
    build_subfield_data();

    // The fixed field of the q-Frobenius must be exactly F_q.
    if (static_cast<std::uint64_t>(
            subfield(h_).fp_basis.size()) != static_cast<std::uint64_t>(h_))
      throw validation_error("subfield F_q does not have q elements");
  }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return p_; }
  int h() const { return h_; }
  int n() const { return n_; }
  int degree() const { return deg_; }          // hn
  std::uint64_t order() const { return order_; }
  std::uint64_t q() const { return q_; }
  Elem generator() const { return generator_; }
  bool has_tables() const { return tables_; }

  // --- arithmetic ---------------------------------------------------------

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!has_packed()) return add_digits(a, b);
    std::uint64_t s = pack(a) + pack(b);
    s -= (((s + nib_fix_) & nib_hi_) >> 3) * p_;
    return unpack(s);
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    if (!has_packed()) {
      Elem r = 0;
      for (int i = deg_ - 1; i >= 0; --i) {
        int dd = digit(a, i);
        r = static_cast<Elem>(r * p_ +
                              static_cast<Elem>(dd == 0 ? 0 : static_cast<int>(p_) - dd));
      }
      return r;
    }
    std::uint64_t pk = pack(a);
    // nibble-wise p - d for nonzero digits
    std::uint64_t nz = (((pk + nib_full_) & nib_hi_) >> 3);  // 1 where digit>0
    std::uint64_t s = nz * p_ - pk;
    return unpack(s);
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_)
      return exp_[static_cast<size_t>(log_[a]) + log_[b]];
    return mul_slow(a, b);
  }

  Elem inv(Elem a) const {
    if (a == 0) throw validation_error("inverse of zero");
    if (tables_) return exp_[order_ - 1 - log_[a]];
    return pow(a, order_ - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1u : 0u;
    if (tables_) {
      std::uint64_t l =
          static_cast<std::uint64_t>(log_[a]) % (order_ - 1) * (e % (order_ - 1)) %
          (order_ - 1);
      return exp_[l];
    }
    Elem r = 1, base = a;
    while (e > 0) {
      if (e & 1) r = mul_slow(r, base);
      base = mul_slow(base, base);
      e >>= 1;
    }
    return r;
  }

  // --- Frobenius and subfields -------------------------------------------

  // x^{q^s}; s taken mod n.
  Elem frobenius(Elem a, int s = 1) const {
    s %= n_;
    if (s < 0) s += n_;
    Elem r = a;
    for (int i = 0; i < s; ++i) r = frob_q(r);
    return r;
  }

  // x^{p^s}; s taken mod hn.
  Elem frobenius_p(Elem a, int s) const {
    s %= deg_;
    if (s < 0) s += deg_;
    Elem r = a;
    for (int i = 0; i < s; ++i) r = frob_p(r);
    return r;
  }

  // N_{q^n/q^m} and Tr_{q^n/q^m}; m must divide n.
  Elem norm(Elem a, int m = 1) const {
    check_q_subdegree(m);
    Elem r = 1;
    for (int i = 0; i < n_ / m; ++i) r = mul(r, frobenius(a, m * i));
    return r;
  }

  Elem trace(Elem a, int m = 1) const {
    check_q_subdegree(m);
    Elem r = 0;
    for (int i = 0; i < n_ / m; ++i) r = add(r, frobenius(a, m * i));
    return r;
  }

  // Norm/trace onto F_{p^d}, d | hn (p-granular; the additive twisted family
  // states its condition over F_{q_0}).
  Elem norm_p_units(Elem a, int d) const {
    check_p_subdegree(d);
    Elem r = 1;
    for (int i = 0; i < deg_ / d; ++i) r = mul(r, frobenius_p(a, d * i));
    return r;
  }

  Elem trace_p_units(Elem a, int d) const {
    check_p_subdegree(d);
    Elem r = 0;
    for (int i = 0; i < deg_ / d; ++i) r = add(r, frobenius_p(a, d * i));
    return r;
  }

  // x in F_{q^m}? (m | n)
  bool in_subfield(Elem a, int m) const {
    check_q_subdegree(m);
    return frobenius(a, m) == a;
  }

  // x in F_{p^d}? (d | hn)
  bool in_subfield_p(Elem a, int d) const {
    check_p_subdegree(d);
    return frobenius_p(a, d) == a;
  }

  // --- digits, packing, coordinates ---------------------------------------

  int digit(Elem a, int i) const {
    return static_cast<int>(a / pw_[static_cast<size_t>(i)] % p_);
  }

  Elem from_digits(const std::vector<int>& d) const {
    Elem r = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i)
      r = static_cast<Elem>(r * p_ + static_cast<Elem>(d[static_cast<size_t>(i)] %
                                                       static_cast<int>(p_)));
    return r;
  }

  // 4-bit digit lanes need hn <= 16 positions and sums below 16, i.e. p <= 7
  bool has_packed() const { return deg_ <= 16 && p_ <= 7; }

  // Base-p digits in 4-bit lanes; the workhorse representation of the exact
  // rank kernels.
  std::uint64_t pack(Elem a) const {
    if (!packed_.empty()) return packed_[a];
    std::uint64_t r = 0;
    Elem t = a;
    for (int i = 0; i < deg_; ++i) {
      r |= static_cast<std::uint64_t>(t % p_) << (4 * i);
      t /= p_;
    }
    return r;
  }

  Elem unpack(std::uint64_t s) const {
    Elem r = 0;
    for (int i = deg_ - 1; i >= 0; --i)
      r = static_cast<Elem>(r * p_ + ((s >> (4 * i)) & 0xF));
    return r;
  }

  // Data for the subfield F_{p^d}, d | hn.
  struct SubfieldData {
    int d = 0;
    std::vector<Elem> fp_basis;    // F_p-basis of the subfield (canonical)
    std::vector<Elem> basis_over;  // basis of the whole field over F_{p^d}:
                                   // greedy scan of modulus-root powers
    std::vector<Elem> elements;    // all p^d elements, sorted (when small)
    std::vector<std::uint8_t> coord_inv;  // deg x deg over F_p
  };

  const SubfieldData& subfield(int d) const {
    for (const auto& s : sub_)
      if (s.d == d) return s;
    throw validation_error("no subfield of p-degree " + std::to_string(d));
  }

  // The distinguished F_q-basis of F_{q^n}.
  const std::vector<Elem>& fq_basis() const { return subfield(h_).basis_over; }

  // Coordinates of v over F_{p^d} w.r.t. subfield(d).basis_over.
  std::vector<Elem> coords_over_subfield(Elem v, int d) const {
    const SubfieldData& S = subfield(d);
    int D = deg_ / d;
    std::vector<Elem> out(static_cast<size_t>(D), 0);
    // y = coord_inv * digits(v) over F_p, then regroup d digits per coordinate
    for (int row = 0; row < deg_; ++row) {
      int acc = 0;
      for (int col = 0; col < deg_; ++col) {
        int dv = digit(v, col);
        if (dv != 0)
          acc = static_cast<int>(
              (acc + 1LL * S.coord_inv[static_cast<size_t>(row) *
                                           static_cast<size_t>(deg_) +
                                       static_cast<size_t>(col)] *
                         dv) %
              static_cast<int>(p_));
      }
      if (acc != 0) {
        int j = row / d, i = row % d;
        out[static_cast<size_t>(j)] =
            add(out[static_cast<size_t>(j)],
                mul(static_cast<Elem>(acc), S.fp_basis[static_cast<size_t>(i)]));
      }
    }
    return out;
  }

  Elem from_coords_over_subfield(const std::vector<Elem>& coords, int d) const {
    const SubfieldData& S = subfield(d);
    Elem v = 0;
    for (size_t j = 0; j < coords.size(); ++j)
      v = add(v, mul(coords[j], S.basis_over[j]));
    return v;
  }

  // F_q-coordinates w.r.t. fq_basis().
  std::vector<Elem> fq_coords(Elem v) const {
    return coords_over_subfield(v, h_);
  }

  Elem from_fq_coords(const std::vector<Elem>& c) const {
    return from_coords_over_subfield(c, h_);
  }

 private:
  FieldSpec spec_;
  std::uint32_t p_ = 2;
  int h_ = 1, n_ = 1, deg_ = 1;
  std::uint64_t order_ = 2, q_ = 2;
  bool tables_ = false;
  Elem generator_ = 0;
  std::vector<std::uint64_t> pw_;
  std::vector<Elem> exp_;  // size 2(order-1): wraparound-free products
  std::vector<std::uint32_t> log_;
  std::vector<Elem> frob_q_tab_, frob_p_tab_;
  std::vector<std::uint64_t> packed_;
  std::uint64_t nib_fix_ = 0, nib_hi_ = 0, nib_full_ = 0;
  std::vector<SubfieldData> sub_;

  void check_q_subdegree(int m) const {
    if (m < 1 || n_ % m != 0)
      throw validation_error("subfield degree must divide n");
  }

  void check_p_subdegree(int d) const {
    if (d < 1 || deg_ % d != 0)
      throw validation_error("subfield p-degree must divide hn");
  }

  detail::DigitPoly to_poly(Elem a) const {
    detail::DigitPoly r(static_cast<size_t>(deg_));
    for (int i = 0; i < deg_; ++i) r[static_cast<size_t>(i)] = digit(a, i);
    detail::dp_trim(r);
    return r;
  }

  Elem from_poly(const detail::DigitPoly& a) const {
    Elem r = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
      r = static_cast<Elem>(r * p_ +
                            static_cast<Elem>(a[static_cast<size_t>(i)]));
    return r;
  }

  Elem mul_slow(Elem a, Elem b) const {
    auto r = detail::dp_mod(
        detail::dp_mul(to_poly(a), to_poly(b), static_cast<int>(p_)),
        spec_.modulus, static_cast<int>(p_));
    return from_poly(r);
  }

  Elem frob_q(Elem a) const {
    if (!frob_q_tab_.empty()) return frob_q_tab_[a];
    return pow(a, q_);
  }

  Elem frob_p(Elem a) const {
    if (!frob_p_tab_.empty()) return frob_p_tab_[a];
    return pow(a, p_);
  }

  void build_tables() {
    std::uint64_t rep = 0;
    for (int i = 0; i < 16; ++i) rep = (rep << 4) | 1;
    nib_fix_ = rep * (8 - p_);
    nib_hi_ = rep * 8;
    nib_full_ = rep * 7;
    packed_.resize(order_);
    for (std::uint64_t a = 0; a < order_; ++a) {
      std::uint64_t r = 0;
      std::uint64_t t = a;
      for (int i = 0; i < deg_; ++i) {
        r |= (t % p_) << (4 * i);
        t /= p_;
      }
      packed_[a] = r;
    }
    // exp/log over a primitive element found by order testing
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t m = order_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) prime_factors.push_back(m);
    Elem g = order_ == 2 ? 1 : 0;
    for (Elem cand = 2; cand < order_ && g == 0; ++cand) {
      bool ok = true;
      for (std::uint64_t f : prime_factors) {
        if (pow_slow(cand, (order_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) g = cand;
    }
    if (g == 0) throw error("no primitive element found");
    exp_.assign(2 * (order_ - 1), 0);
    log_.assign(order_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < order_ - 1; ++i) {
      exp_[i] = cur;
      exp_[i + order_ - 1] = cur;
      log_[cur] = static_cast<std::uint32_t>(i);
      cur = mul_slow(cur, g);
    }
    if (cur != 1) throw error("generator order mismatch");
    table_generator_ = g;
  }

  Elem pow_slow(Elem a, std::uint64_t e) const {
    Elem r = 1, base = a;
    while (e > 0) {
      if (e & 1) r = mul_slow(r, base);
      base = mul_slow(base, base);
      e >>= 1;
    }
    return r;
  }

  Elem find_generator() const {
    if (tables_) return table_generator_;
    if (order_ == 2) return 1;
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t m = order_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) prime_factors.push_back(m);
    for (Elem cand = 2; cand < order_; ++cand) {
      bool ok = true;
      for (std::uint64_t f : prime_factors)
        if (pow_slow(cand, (order_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) return cand;
    }
    throw error("no primitive element found");
  }

  void build_frobenius() {
    if (tables_) {
      frob_q_tab_.resize(order_);
      frob_p_tab_.resize(order_);
      for (std::uint64_t a = 0; a < order_; ++a) {
        frob_p_tab_[a] = pow(static_cast<Elem>(a), p_);
        frob_q_tab_[a] = pow(static_cast<Elem>(a), q_);
      }
    }
  }

  Elem add_digits(Elem a, Elem b) const {
    Elem r = 0;
    for (int i = deg_ - 1; i >= 0; --i)
      r = static_cast<Elem>(
          r * p_ + static_cast<Elem>((digit(a, i) + digit(b, i)) %
                                     static_cast<int>(p_)));
    return r;
  }

  // --- construction-time F_p linear algebra on digit vectors ---------------

  using FpVec = std::vector<std::uint8_t>;

  FpVec digits_of(Elem a) const {
    FpVec v(static_cast<size_t>(deg_));
    for (int i = 0; i < deg_; ++i)
      v[static_cast<size_t>(i)] = static_cast<std::uint8_t>(digit(a, i));
    return v;
  }

  // Incremental row space with reduction; tracks pivot columns.
  struct FpSpan {
    int p;
    int width;
    std::vector<FpVec> rows;  // reduced, each with a leading pivot
    std::vector<int> pivots;

    bool reduce(FpVec& v) const {
      for (size_t r = 0; r < rows.size(); ++r) {
        int c = v[static_cast<size_t>(pivots[r])];
        if (c != 0) {
          for (int j = 0; j < width; ++j)
            v[static_cast<size_t>(j)] = static_cast<std::uint8_t>(
                ((v[static_cast<size_t>(j)] -
                  c * rows[r][static_cast<size_t>(j)]) %
                     p +
                 p) %
                p);
        }
      }
      for (int j = 0; j < width; ++j)
        if (v[static_cast<size_t>(j)] != 0) return false;
      return true;  // v in span
    }

    bool insert(FpVec v) {
      for (size_t r = 0; r < rows.size(); ++r) {
        int c = v[static_cast<size_t>(pivots[r])];
        if (c != 0)
          for (int j = 0; j < width; ++j)
            v[static_cast<size_t>(j)] = static_cast<std::uint8_t>(
                ((v[static_cast<size_t>(j)] -
                  c * rows[r][static_cast<size_t>(j)]) %
                     p +
                 p) %
                p);
      }
      int piv = -1;
      for (int j = 0; j < width; ++j)
        if (v[static_cast<size_t>(j)] != 0) {
          piv = j;
          break;
        }
      if (piv < 0) return false;
      int inv = detail::dp_inv_mod_p(v[static_cast<size_t>(piv)], p);
      for (int j = 0; j < width; ++j)
        v[static_cast<size_t>(j)] = static_cast<std::uint8_t>(
            1LL * v[static_cast<size_t>(j)] * inv % p);
      rows.push_back(std::move(v));
      pivots.push_back(piv);
      return true;
    }
  };

  void build_subfield_data() {
    for (int d = 1; d <= deg_; ++d) {
      if (deg_ % d != 0) continue;
      SubfieldData S;
      S.d = d;
      // F_p-basis of the fixed field of x -> x^{p^d}: kernel of (M - I)
      // where M is the digit matrix of that map.
      int w = deg_;
      std::vector<FpVec> mat(static_cast<size_t>(w));
      for (int col = 0; col < w; ++col) {
        Elem img = frobenius_p_direct(static_cast<Elem>(pw_[static_cast<size_t>(col)]), d);
        FpVec digs = digits_of(img);
        digs[static_cast<size_t>(col)] = static_cast<std::uint8_t>(
            ((digs[static_cast<size_t>(col)] - 1) % static_cast<int>(p_) +
             static_cast<int>(p_)) %
            static_cast<int>(p_));
        mat[static_cast<size_t>(col)] = digs;  // column of M - I
      }
      // kernel via rref on the transposed system
      std::vector<FpVec> rows(static_cast<size_t>(w),
                              FpVec(static_cast<size_t>(w)));
      for (int r = 0; r < w; ++r)
        for (int c = 0; c < w; ++c)
          rows[static_cast<size_t>(r)][static_cast<size_t>(c)] =
              mat[static_cast<size_t>(c)][static_cast<size_t>(r)];
      // Gaussian elimination, track pivots
      std::vector<int> pivot_of_row;
      std::vector<bool> col_is_pivot(static_cast<size_t>(w), false);
      int rr = 0;
      for (int col = 0; col < w && rr < w; ++col) {
        int sel = -1;
        for (int r2 = rr; r2 < w; ++r2)
          if (rows[static_cast<size_t>(r2)][static_cast<size_t>(col)] != 0) {
            sel = r2;
            break;
          }
        if (sel < 0) continue;
        std::swap(rows[static_cast<size_t>(sel)], rows[static_cast<size_t>(rr)]);
        int inv = detail::dp_inv_mod_p(
            rows[static_cast<size_t>(rr)][static_cast<size_t>(col)],
            static_cast<int>(p_));
        for (int c2 = 0; c2 < w; ++c2)
          rows[static_cast<size_t>(rr)][static_cast<size_t>(c2)] =
              static_cast<std::uint8_t>(
                  1LL * rows[static_cast<size_t>(rr)][static_cast<size_t>(c2)] *
                  inv % static_cast<int>(p_));
        for (int r2 = 0; r2 < w; ++r2) {
          if (r2 == rr) continue;
          int c = rows[static_cast<size_t>(r2)][static_cast<size_t>(col)];
          if (c != 0)
            for (int c2 = 0; c2 < w; ++c2)
              rows[static_cast<size_t>(r2)][static_cast<size_t>(c2)] =
                  static_cast<std::uint8_t>(
                      ((rows[static_cast<size_t>(r2)][static_cast<size_t>(c2)] -
                        c * rows[static_cast<size_t>(rr)][static_cast<size_t>(c2)]) %
                           static_cast<int>(p_) +
                       static_cast<int>(p_)) %
                      static_cast<int>(p_));
        }
        pivot_of_row.push_back(col);
        col_is_pivot[static_cast<size_t>(col)] = true;
        ++rr;
      }
      // free columns parameterize the kernel
      for (int col = 0; col < w; ++col) {
        if (col_is_pivot[static_cast<size_t>(col)]) continue;
        std::vector<int> ker(static_cast<size_t>(w), 0);
        ker[static_cast<size_t>(col)] = 1;
        for (int r2 = 0; r2 < rr; ++r2) {
          int pc = pivot_of_row[static_cast<size_t>(r2)];
          int val = rows[static_cast<size_t>(r2)][static_cast<size_t>(col)];
          ker[static_cast<size_t>(pc)] =
              ((-val) % static_cast<int>(p_) + static_cast<int>(p_)) %
              static_cast<int>(p_);
        }
        S.fp_basis.push_back(from_digits(ker));
      }
      if (static_cast<int>(S.fp_basis.size()) != d)
        throw error("unexpected subfield dimension");
      std::sort(S.fp_basis.begin(), S.fp_basis.end());

      // Greedy basis of the whole field over this subfield: powers of the
      // modulus root, keeping those outside the current subfield-span.
      int D = deg_ / d;
      FpSpan span{static_cast<int>(p_), deg_, {}, {}};
      Elem beta = static_cast<Elem>(pw_[1] % order_);  // the modulus root
      Elem powv = 1;
      for (int guard = 0; static_cast<int>(S.basis_over.size()) < D; ++guard) {
        if (guard > 4 * deg_) throw error("subfield basis scan failed");
        FpVec probe = digits_of(powv);
        bool in_span = span.reduce(probe);
        if (!in_span) {
          S.basis_over.push_back(powv);
          for (Elem b : S.fp_basis) span.insert(digits_of(mul_construct(powv, b)));
        }
        powv = mul_construct(powv, beta);
      }

      // Invert the coordinate matrix: columns are digits(basis_over[j] * fp_basis[i]).
      std::vector<std::uint8_t> M(static_cast<size_t>(deg_) *
                                  static_cast<size_t>(deg_));
      for (int j = 0; j < D; ++j)
        for (int i = 0; i < d; ++i) {
          Elem prod = mul_construct(S.basis_over[static_cast<size_t>(j)],
                                    S.fp_basis[static_cast<size_t>(i)]);
          for (int row = 0; row < deg_; ++row)
            M[static_cast<size_t>(row) * static_cast<size_t>(deg_) +
              static_cast<size_t>(j * d + i)] =
                static_cast<std::uint8_t>(digit(prod, row));
        }
      S.coord_inv = fp_invert(M, deg_);

      if (ipow128(p_, static_cast<unsigned>(d)) <= kTableLimit) {
        // enumerate the subfield by F_p-combinations of its basis
        std::uint64_t cnt = ipow64(p_, static_cast<unsigned>(d));
        S.elements.reserve(cnt);
        for (std::uint64_t v = 0; v < cnt; ++v) {
          Elem e = 0;
          std::uint64_t t = v;
          for (int i = 0; i < d; ++i) {
            Elem c = static_cast<Elem>(t % p_);
            t /= p_;
            if (c != 0)
              e = add_construct(e, mul_construct(c, S.fp_basis[static_cast<size_t>(i)]));
          }
          S.elements.push_back(e);
        }
        std::sort(S.elements.begin(), S.elements.end());
      }
      sub_.push_back(std::move(S));
    }
  }

  // construction-time ops (tables may not be final yet for frobenius helpers)
  Elem mul_construct(Elem a, Elem b) const {
    if (tables_ && !exp_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[static_cast<size_t>(log_[a]) + log_[b]];
    }
    return mul_slow(a, b);
  }

  Elem add_construct(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    detail::DigitPoly x = to_poly(a), y = to_poly(b);
    x.resize(static_cast<size_t>(deg_), 0);
    y.resize(static_cast<size_t>(deg_), 0);
    for (int i = 0; i < deg_; ++i)
      x[static_cast<size_t>(i)] =
          (x[static_cast<size_t>(i)] + y[static_cast<size_t>(i)]) %
          static_cast<int>(p_);
    return from_poly(x);
  }

  Elem frobenius_p_direct(Elem a, int d) const {
    Elem r = a;
    for (int i = 0; i < d; ++i) r = tables_ ? pow(r, p_) : pow_slow(r, p_);
    return r;
  }

  std::vector<std::uint8_t> fp_invert(const std::vector<std::uint8_t>& M,
                                      int w) const {
    std::vector<std::uint8_t> A(M);
    std::vector<std::uint8_t> I(static_cast<size_t>(w) * static_cast<size_t>(w),
                                0);
    for (int i = 0; i < w; ++i)
      I[static_cast<size_t>(i) * static_cast<size_t>(w) +
        static_cast<size_t>(i)] = 1;
    auto at = [w](std::vector<std::uint8_t>& mm, int r, int c) -> std::uint8_t& {
      return mm[static_cast<size_t>(r) * static_cast<size_t>(w) +
                static_cast<size_t>(c)];
    };
    int pp = static_cast<int>(p_);
    for (int col = 0; col < w; ++col) {
      int sel = -1;
      for (int r = col; r < w; ++r)
        if (at(A, r, col) != 0) {
          sel = r;
          break;
        }
      if (sel < 0) throw error("coordinate matrix singular");
      for (int c = 0; c < w; ++c) {
        std::swap(at(A, sel, c), at(A, col, c));
        std::swap(at(I, sel, c), at(I, col, c));
      }
      int invv = detail::dp_inv_mod_p(at(A, col, col), pp);
      for (int c = 0; c < w; ++c) {
        at(A, col, c) = static_cast<std::uint8_t>(1LL * at(A, col, c) * invv % pp);
        at(I, col, c) = static_cast<std::uint8_t>(1LL * at(I, col, c) * invv % pp);
      }
      for (int r = 0; r < w; ++r) {
        if (r == col) continue;
        int f = at(A, r, col);
        if (f != 0)
          for (int c = 0; c < w; ++c) {
            at(A, r, c) = static_cast<std::uint8_t>(
                ((at(A, r, c) - f * at(A, col, c)) % pp + pp) % pp);
            at(I, r, c) = static_cast<std::uint8_t>(
                ((at(I, r, c) - f * at(I, col, c)) % pp + pp) % pp);
          }
      }
    }
    return I;
  }

  Elem table_generator_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

// (N_{q^n/q^m}(x), Tr_{q^n/q^m}(x)) in one call; m must divide n.
inline std::pair<Elem, Elem> norm_trace(const Field& F, Elem x, int m = 1) {
  return {F.norm(x, m), F.trace(x, m)};
}

inline FieldPtr make_field(FieldSpec spec) {
  return std::make_shared<const Field>(std::move(spec));
}

inline FieldPtr make_field(std::uint32_t p, int h, int n) {
  FieldSpec s;
  s.p = p;
  s.h = h;
  s.n = n;
  s.modulus = default_modulus(p, h * n);
  return make_field(std::move(s));
}

// Embedding of a small field into a big one of the same characteristic whose
// degree is a multiple; realized by mapping the small modulus root to its
// smallest root in the big field.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr small, FieldPtr big)
      : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p())
      throw validation_error("embedding requires equal characteristic");
    if (big_->degree() % small_->degree() != 0)
      throw validation_error("small degree must divide big degree");
    Elem root = 0;
    bool found = false;
    for (std::uint64_t cand = 0; cand < big_->order(); ++cand) {
      Elem x = static_cast<Elem>(cand);
      Elem acc = 0;  // Horner on the small modulus
      const auto& m = small_->spec().modulus;
      for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
        acc = big_->add(big_->mul(acc, x), static_cast<Elem>(m[static_cast<size_t>(i)]));
      if (acc == 0) {
        root = x;
        found = true;
        break;
      }
    }
    if (!found) throw error("no root of small modulus in big field");
    fwd_.resize(small_->order());
    for (std::uint64_t a = 0; a < small_->order(); ++a) {
      Elem acc = 0;
      for (int i = small_->degree() - 1; i >= 0; --i)
        acc = big_->add(big_->mul(acc, root),
                        static_cast<Elem>(small_->digit(static_cast<Elem>(a), i)));
      fwd_[a] = acc;
      rev_[acc] = static_cast<Elem>(a);
    }
  }

  Elem embed(Elem small_elem) const { return fwd_[small_elem]; }

  Elem project(Elem big_elem) const {
    auto it = rev_.find(big_elem);
    if (it == rev_.end())
      throw validation_error("element not in embedded subfield");
    return it->second;
  }

  const Field& small() const { return *small_; }
  const Field& big() const { return *big_; }

 private:
  FieldPtr small_, big_;
  std::vector<Elem> fwd_;
  std::unordered_map<Elem, Elem> rev_;
};

}  // namespace rmlab
