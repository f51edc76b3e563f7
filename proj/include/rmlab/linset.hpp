#pragma once

// F_q-subspaces of F_{q^n}^r, their linear sets, weights, scatteredness and
// h-scatteredness, the known maximum scattered families, and small-scale
// exhaustive searches. All verdicts come from exact enumeration.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "rmlab/fq_linalg.hpp"
#include "rmlab/linpoly.hpp"
#include "rmlab/rmcode.hpp"
#include "rmlab/util.hpp"

namespace rmlab {

class Subspace {
 public:
  Subspace(FieldPtr F, int r, const std::vector<std::vector<Elem>>& gens)
      : F_(std::move(F)), r_(r) {
    if (r_ < 1) throw validation_error("ambient dimension must be positive");
    int width = r_ * F_->n();
    FqMat m(F_, static_cast<int>(gens.size()), width);
    for (size_t i = 0; i < gens.size(); ++i) {
      if (static_cast<int>(gens[i].size()) != r_)
        throw validation_error("generator has wrong length");
      auto fl = flatten(gens[i]);
      for (int j = 0; j < width; ++j)
        m.at(static_cast<int>(i), j) = fl[static_cast<size_t>(j)];
    }
    auto piv = m.rref();
    for (size_t row = 0; row < piv.size(); ++row)
      basis_.push_back(unflatten(m.row(static_cast<int>(row))));
  }

  const FieldPtr& field() const { return F_; }
  int r() const { return r_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::vector<Elem>>& basis() const { return basis_; }

  std::vector<Elem> flatten(const std::vector<Elem>& v) const {
    std::vector<Elem> out;
    out.reserve(static_cast<size_t>(r_) * static_cast<size_t>(F_->n()));
    for (Elem x : v) {
      auto c = F_->fq_coords(x);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  std::vector<Elem> unflatten(const std::vector<Elem>& fl) const {
    int n = F_->n();
    std::vector<Elem> v(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) {
      std::vector<Elem> part(fl.begin() + static_cast<long>(i) * n,
                             fl.begin() + static_cast<long>(i + 1) * n);
      v[static_cast<size_t>(i)] = F_->from_fq_coords(part);
    }
    return v;
  }

  // vector of U from a coefficient tuple over F_q
  std::vector<Elem> combine(std::span<const Elem> coeffs) const {
    std::vector<Elem> v(static_cast<size_t>(r_), 0);
    for (size_t i = 0; i < basis_.size(); ++i) {
      Elem c = coeffs[i];
      if (c == 0) continue;
      for (int j = 0; j < r_; ++j)
        v[static_cast<size_t>(j)] =
            F_->add(v[static_cast<size_t>(j)],
                    F_->mul(c, basis_[i][static_cast<size_t>(j)]));
    }
    return v;
  }

  bool operator==(const Subspace& o) const {
    return F_->spec() == o.F_->spec() && r_ == o.r_ && basis_ == o.basis_;
  }

 private:
  FieldPtr F_;
  int r_;
  std::vector<std::vector<Elem>> basis_;  // canonical echelon form
};

// U_f = {(x, f(x))}: the rank-n subspace of F_{q^n}^2 attached to a
// q-polynomial.
inline Subspace subspace_from_map(const LinPoly& f) {
  const FieldPtr& F = f.F;
  std::vector<std::vector<Elem>> gens;
  for (Elem b : F->fq_basis()) gens.push_back({b, lp_eval(f, b)});
  return Subspace(F, 2, gens);
}

namespace ldetail {

// canonical projective representative: divide by the first nonzero coordinate
inline std::vector<Elem> normalize_point(const Field& F, std::vector<Elem> v) {
  for (Elem x : v)
    if (x != 0) {
      Elem inv = F.inv(x);
      for (auto& y : v) y = F.mul(inv, y);
      return v;
    }
  throw validation_error("zero vector has no projective point");
}

// compact point keys (r <= 4 packs into 64 bits; larger r uses an ordered set)
struct PointSet {
  bool packed;
  std::unordered_set<std::uint64_t> small;
  std::set<std::vector<Elem>> big;

  explicit PointSet(int r) : packed(r <= 4) {}

  static std::uint64_t key(const std::vector<Elem>& v) {
    std::uint64_t k = 0;
    for (Elem x : v) k = (k << 16) | x;
    return k;
  }

  // returns true if the point was new
  bool insert(const std::vector<Elem>& v) {
    if (packed) return small.insert(key(v)).second;
    return big.insert(v).second;
  }

  bool contains(const std::vector<Elem>& v) const {
    if (packed) return small.count(key(v)) > 0;
    return big.count(v) > 0;
  }

  size_t size() const { return packed ? small.size() : big.size(); }
};

inline void decode_tuple(std::uint64_t idx, std::uint64_t q, int k, Elem* out) {
  for (int i = 0; i < k; ++i) {
    out[i] = static_cast<Elem>(idx % q);
    idx /= q;
  }
}

inline std::uint64_t projective_count(std::uint64_t q, int k) {
  std::uint64_t reps = 0, block = 1;
  for (int i = 0; i < k; ++i) {
    reps += block;
    block *= q;
  }
  return reps;
}

// smallest multiplicative generator of the subfield F_{q^m}
inline Elem subfield_generator(const Field& F, int qdeg) {
  const auto& S = F.subfield(F.h() * qdeg);
  std::uint64_t Q = ipow64(F.p(), static_cast<unsigned>(F.h() * qdeg));
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t m = Q - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) prime_factors.push_back(m);
  for (Elem cand : S.elements) {
    if (cand == 0 || (cand == 1 && Q > 2)) continue;
    bool ok = true;
    for (std::uint64_t f : prime_factors)
      if (F.pow(cand, (Q - 1) / f) == 1) {
        ok = false;
        break;
      }
    if (ok) return cand;
  }
  if (Q == 2) return 1;
  throw error("no subfield generator found");
}

}  // namespace ldetail

// dim_{F_q}(U cap <v>_{F_{q^n}}), the weight of the point <v>.
inline int point_weight(const Subspace& U, const std::vector<Elem>& v) {
  const Field& F = *U.field();
  bool zero = true;
  for (Elem x : v) zero &= (x == 0);
  if (zero) throw validation_error("weight of the zero vector is undefined");
  std::vector<std::vector<Elem>> rows;
  for (const auto& b : U.basis()) rows.push_back(U.flatten(b));
  int dimU = static_cast<int>(rows.size());
  for (Elem b : F.fq_basis()) {
    std::vector<Elem> scaled(static_cast<size_t>(U.r()));
    for (int j = 0; j < U.r(); ++j)
      scaled[static_cast<size_t>(j)] = F.mul(b, v[static_cast<size_t>(j)]);
    rows.push_back(U.flatten(scaled));
  }
  int total = FqMat::from_rows(U.field(), rows).rank();
  return dimU + F.n() - total;
}

// dim_{F_q}(U cap W) for W the F_{q^n}-span of the given generators.
inline int subspace_weight(const Subspace& U,
                           const std::vector<std::vector<Elem>>& w_gens) {
  const Field& F = *U.field();
  std::vector<std::vector<Elem>> wrows;
  for (const auto& w : w_gens)
    for (Elem b : F.fq_basis()) {
      std::vector<Elem> scaled(static_cast<size_t>(U.r()));
      for (int j = 0; j < U.r(); ++j)
        scaled[static_cast<size_t>(j)] = F.mul(b, w[static_cast<size_t>(j)]);
      wrows.push_back(U.flatten(scaled));
    }
  FqMat wm = FqMat::from_rows(U.field(), wrows);
  int dimW = wm.rank();
  std::vector<std::vector<Elem>> all = wrows;
  for (const auto& b : U.basis()) all.push_back(U.flatten(b));
  int dimSum = FqMat::from_rows(U.field(), all).rank();
  return U.rank() + dimW - dimSum;
}

// True iff every point of L_U has weight one, i.e. no two non-proportional
// vectors of U define the same projective point.
inline bool is_scattered(const Subspace& U, const RunConfig& cfg = {}) {
  const Field& F = *U.field();
  int k = U.rank();
  if (k == 0) return true;
  if (k > 30) throw budget_error("subspace rank too large to enumerate");
  std::uint64_t reps = ldetail::projective_count(F.q(), k);
  if (reps > cfg.budget)
    throw budget_error("scatteredness enumeration exceeds budget");
  const auto& scalars = F.subfield(F.h()).elements;
  ldetail::PointSet seen(U.r());
  Elem digits[32];
  for (std::uint64_t idx = 0; idx < reps; ++idx) {
    cdetail::decode_projective(idx, F.q(), k, digits);
    Elem coeffs[32];
    for (int i = 0; i < k; ++i) coeffs[i] = scalars[digits[i]];
    auto v = U.combine(std::span<const Elem>(coeffs, static_cast<size_t>(k)));
    auto p = ldetail::normalize_point(F, std::move(v));
    if (!seen.insert(p)) return false;
  }
  return true;
}

struct LinearSetSummary {
  int rank = 0;
  std::uint64_t size = 0;       // number of points of L_U
  std::uint64_t max_size = 0;   // (q^k - 1)/(q - 1)
  bool scattered = false;
  int max_point_weight = 0;
  std::map<int, std::uint64_t> weight_spectrum;  // weight -> point count
  // normalized projective representatives with their weights
  std::vector<std::pair<std::vector<Elem>, int>> points;
  int linearity_exp = 1;        // max field of linearity F_{q^ell}
  bool subgeometry_case = false;  // rank <= r
};

inline LinearSetSummary linear_set_summary(const Subspace& U,
                                           const RunConfig& cfg = {}) {
  const Field& F = *U.field();
  int k = U.rank();
  LinearSetSummary S;
  S.rank = k;
  S.subgeometry_case = k <= U.r();
  if (k == 0) return S;
  if (k > 30) throw budget_error("subspace rank too large to enumerate");
  uint128 total = ipow128(F.q(), static_cast<unsigned>(k)) - 1;
  if (total > static_cast<uint128>(cfg.budget))
    throw budget_error("linear set enumeration exceeds budget");

  // point multiplicities: a weight-w point is hit by q^w - 1 vectors
  std::map<std::vector<Elem>, std::uint64_t> mult;
  const auto& scalars = F.subfield(F.h()).elements;
  Elem digits[32], coeffs[32];
  for (std::uint64_t idx = 1; idx <= static_cast<std::uint64_t>(total); ++idx) {
    ldetail::decode_tuple(idx, F.q(), k, digits);
    for (int i = 0; i < k; ++i) coeffs[i] = scalars[digits[i]];
    auto v = U.combine(std::span<const Elem>(coeffs, static_cast<size_t>(k)));
    auto p = ldetail::normalize_point(F, std::move(v));
    mult[p] += 1;
  }
  S.size = mult.size();
  S.max_size = (ipow64(F.q(), static_cast<unsigned>(k)) - 1) / (F.q() - 1);
  std::uint64_t checksum = 0;
  for (const auto& [p, m] : mult) {
    int w = 0;
    std::uint64_t t = m + 1;
    while (t > 1) {
      t /= F.q();
      ++w;
    }
    if (ipow64(F.q(), static_cast<unsigned>(w)) - 1 != m)
      throw error("point multiplicity is not of the form q^w - 1");
    S.weight_spectrum[w] += 1;
    S.max_point_weight = std::max(S.max_point_weight, w);
    S.points.emplace_back(p, w);
    checksum += m;
  }
  if (checksum != ipow64(F.q(), static_cast<unsigned>(k)) - 1)
    throw error("weight partition identity failed");
  S.scattered = S.size == S.max_size;

  // max field of linearity: largest ell | n with U closed under F_{q^ell}
  for (int ell = F.n(); ell >= 1; --ell) {
    if (F.n() % ell != 0) continue;
    Elem g = ldetail::subfield_generator(F, ell);
    bool closed = true;
    RowSpan span(U.field(), U.r() * F.n());
    for (const auto& b : U.basis()) span.insert(U.flatten(b));
    for (const auto& b : U.basis()) {
      std::vector<Elem> vb(static_cast<size_t>(U.r()));
      for (int j = 0; j < U.r(); ++j) vb[static_cast<size_t>(j)] = F.mul(g, b[static_cast<size_t>(j)]);
      if (!span.contains(U.flatten(vb))) {
        closed = false;
        break;
      }
    }
    if (closed) {
      S.linearity_exp = ell;
      break;
    }
  }
  return S;
}

// h-scattered: L_U spans PG(r-1, q^n) and every (h-1)-dimensional projective
// subspace has weight at most h. Enumerates all h-dimensional
// F_{q^n}-subspaces of F_{q^n}^r.
inline bool is_h_scattered(const Subspace& U, int h, const RunConfig& cfg = {}) {
  const Field& F = *U.field();
  int r = U.r();
  if (h < 1 || h > r - 1) throw validation_error("h must satisfy 1 <= h <= r-1");
  // span condition over F_{q^n}
  FqMat m = FqMat::from_rows(U.field(), U.basis());
  if (m.rank() < r) return false;
  uint128 count = gauss_binom(r, h, F.order());
  if (count > static_cast<uint128>(cfg.budget))
    throw budget_error("h-scattered subspace enumeration exceeds budget");
  std::vector<Elem> all_elems;
  all_elems.reserve(F.order());
  for (std::uint64_t c = 0; c < F.order(); ++c)
    all_elems.push_back(static_cast<Elem>(c));
  bool ok = true;
  for_each_subspace(all_elems, r, h,
                    [&](const std::vector<std::vector<Elem>>& rows,
                        const std::vector<int>&) {
                      if (subspace_weight(U, rows) > h) {
                        ok = false;
                        return false;
                      }
                      return true;
                    });
  return ok;
}

// ---------------------------------------------------------------------------
// Known scattered families.
// ---------------------------------------------------------------------------

struct ScatteredFamilyParams {
  int s = 1;
  Elem delta = 0;
  Elem h_elem = 0;
  int r = 2;   // ambient dimension for lavrauw / baer / bgmp* / csmpz
  int i = 1;   // exponent for bgmp* / csmpz
  Elem a = 0;  // bgmp coefficient; 0 means "search"
  Elem b = 0;  // bgmp3 / csmpz coefficient; 0 means "search"
};

namespace ldetail {

// norm from the subfield F_{q^A} down to F_{q^B} (B | A), computed inside the
// ambient field
inline Elem rel_norm(const Field& F, Elem x, int A, int B) {
  Elem prod = 1;
  for (int j = 0; j < A / B; ++j) prod = F.mul(prod, F.frobenius(x, B * j));
  return prod;
}

struct BigFieldContext {
  FieldPtr big;
  SubfieldEmbedding emb;  // component field -> big field

  BigFieldContext(const FieldPtr& component, int r)
      : big(make_field(component->p(), component->h(), component->n() * r)),
        emb(component, big) {}
};

// vectors of the component-field space F_{q^n}^r from a big-field element
inline std::vector<Elem> vectorize(const BigFieldContext& ctx, Elem big_elem,
                                   int r) {
  const Field& B = *ctx.big;
  int d = B.h() * (B.n() / r);  // p-degree of the component subfield
  auto coords = B.coords_over_subfield(big_elem, d);
  std::vector<Elem> v(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j) v[static_cast<size_t>(j)] = ctx.emb.project(coords[static_cast<size_t>(j)]);
  return v;
}

// smallest omega in F_{q^n} \ F_{q^{n/2}} inside the big field
inline Elem pick_omega(const Field& B, int n_qdeg) {
  for (std::uint64_t c = 0; c < B.order(); ++c) {
    Elem x = static_cast<Elem>(c);
    if (B.in_subfield(x, n_qdeg) && !B.in_subfield(x, n_qdeg / 2)) return x;
  }
  throw error("no omega found");
}

}  // namespace ldetail

inline Subspace scattered_family(FieldPtr F, const std::string& name,
                                 const ScatteredFamilyParams& P,
                                 const RunConfig& cfg = {}) {
  const int n = F->n();
  const std::uint64_t q = F->q();
  auto need = [&](bool cond, const std::string& msg) {
    if (!cond) throw validation_error(name + ": " + msg);
  };

  if (name == "U1") {
    need(gcd_int(P.s, n) == 1, "needs gcd(s, n) = 1");
    return subspace_from_map(LinPoly::monomial(F, P.s, 1));
  }
  if (name == "U2") {
    need(n >= 4, "needs n >= 4");
    need(q != 2, "needs q != 2");
    need(gcd_int(P.s, n) == 1, "needs gcd(s, n) = 1");
    Elem nd = F->norm(P.delta, 1);
    need(nd != 0 && nd != 1, "needs N(delta) outside {0, 1}");
    LinPoly f = lp_add(LinPoly::monomial(F, P.s, P.delta),
                       LinPoly::monomial(F, n - P.s, 1));
    return subspace_from_map(f);
  }
  if (name == "U3") {
    need(n == 6 || n == 8, "needs n in {6, 8}");
    need(gcd_int(P.s, n / 2) == 1, "needs gcd(s, n/2) = 1");
    Elem nd = F->norm(P.delta, n / 2);
    need(nd != 0 && nd != 1, "needs N_{q^n/q^{n/2}}(delta) outside {0, 1}");
    LinPoly f = lp_add(LinPoly::monomial(F, P.s, P.delta),
                       LinPoly::monomial(F, (P.s + n / 2) % n, 1));
    return subspace_from_map(f);
  }
  if (name == "U4") {
    need(n == 6, "needs n = 6");
    need(q % 2 == 1, "needs q odd");
    need(F->add(F->mul(P.delta, P.delta), P.delta) == 1,
         "needs delta^2 + delta = 1");
    LinPoly f = lp_add(lp_add(LinPoly::monomial(F, 1, 1), LinPoly::monomial(F, 3, 1)),
                       LinPoly::monomial(F, 5, P.delta));
    return subspace_from_map(f);
  }
  if (name == "U5") {
    need(n == 6, "needs n = 6");
    need(q % 2 == 1, "needs q odd");
    Elem hv = P.h_elem;
    need(F->pow(hv, ipow64(q, 3) + 1) == F->neg(1), "needs h^{q^3+1} = -1");
    LinPoly f = lp_add(
        lp_add(LinPoly::monomial(F, 1, F->pow(hv, q - 1)),
               LinPoly::monomial(F, 2, F->neg(F->pow(hv, ipow64(q, 2) - 1)))),
        lp_add(LinPoly::monomial(F, 4, 1), LinPoly::monomial(F, 5, 1)));
    return subspace_from_map(f);
  }
  if (name == "lavrauw") {
    need(P.r >= 2 && P.r % 2 == 0, "needs even r");
    std::vector<std::vector<Elem>> gens;
    int half = P.r / 2;
    for (int j = 0; j < half; ++j)
      for (Elem b : F->fq_basis()) {
        std::vector<Elem> v(static_cast<size_t>(P.r), 0);
        v[static_cast<size_t>(j)] = b;
        v[static_cast<size_t>(half + j)] = F->frobenius(b, 1);
        gens.push_back(std::move(v));
      }
    return Subspace(F, P.r, gens);
  }
  if (name == "baer") {
    need(n == 2, "Baer subgeometries live in PG(r-1, q^2)");
    need(P.r >= 2, "needs r >= 2");
    std::vector<std::vector<Elem>> gens;
    for (int j = 0; j < P.r; ++j) {
      std::vector<Elem> v(static_cast<size_t>(P.r), 0);
      v[static_cast<size_t>(j)] = 1;
      gens.push_back(std::move(v));
    }
    return Subspace(F, P.r, gens);
  }
  if (name == "bgmp1" || name == "bgmp2") {
    // {a x^{q^i} + x omega : x in F_{q^{rt}}} inside F_{q^{2rt}}, n = 2t
    need(n % 2 == 0, "needs even n");
    int t = n / 2, r = P.r;
    need(r >= 3 && r % 2 == 1, "needs odd r >= 3");
    need(t >= 2, "needs t >= 2");
    if (name == "bgmp1") {
      need(gcd_int(t, r) == 1, "needs gcd(t, r) = 1");
      need(gcd_int(P.i, 2 * t) == 1, "needs gcd(i, 2t) = 1");
      need(gcd_int(P.i, r * t) == r, "needs gcd(i, rt) = r");
    } else {
      need(q % static_cast<std::uint64_t>(r) == 1, "needs q = 1 mod r");
      need(gcd_int(P.i, 2 * t) == 1 && gcd_int(P.i, r * t) == 1,
           "needs gcd(i, 2t) = gcd(i, rt) = 1");
    }
    ldetail::BigFieldContext ctx(F, r);
    const Field& B = *ctx.big;
    Elem omega = ldetail::pick_omega(B, n);
    auto cond = [&](Elem a) {
      if (a == 0) return false;
      if (name == "bgmp1") {
        Elem nrm = ldetail::rel_norm(B, a, r * t, r);
        return !B.in_subfield(nrm, 1);
      }
      Elem nrm = ldetail::rel_norm(B, a, r * t, 1);
      return B.pow(nrm, (q - 1) / static_cast<std::uint64_t>(r)) != 1;
    };
    Elem a = P.a;
    if (a == 0) {
      for (std::uint64_t c = 1; c < B.order(); ++c)
        if (B.in_subfield(static_cast<Elem>(c), r * t) && cond(static_cast<Elem>(c))) {
          a = static_cast<Elem>(c);
          break;
        }
      need(a != 0, "no coefficient a satisfies the norm condition");
    } else {
      need(B.in_subfield(a, r * t) && cond(a), "a violates the norm condition");
    }
    auto xb = fq_basis_of_q_subfield(B, r * t);
    std::vector<std::vector<Elem>> gens;
    for (Elem x : xb)
      gens.push_back(ldetail::vectorize(
          ctx, B.add(B.mul(a, B.frobenius(x, P.i)), B.mul(x, omega)), r));
    return Subspace(F, r, gens);
  }
  if (name == "bgmp3") {
    // q = 2, r = 3: {x^2 + b x^{2^{2t+1}} + x omega : x in F_{2^{3t}}}
    need(q == 2 && F->p() == 2 && F->h() == 1, "needs q = 2");
    need(n % 2 == 0, "needs even n");
    int t = n / 2, r = 3;
    need(t >= 2, "needs t >= 2");
    ldetail::BigFieldContext ctx(F, r);
    const Field& B = *ctx.big;
    Elem omega = ldetail::pick_omega(B, n);
    auto cond = [&](Elem b) {
      if (b == 0 || !B.in_subfield(b, 3 * t)) return false;
      if (ldetail::rel_norm(B, b, 3 * t, t) == 1) return false;
      // x + b x^{2^{2t+1}-1} outside F_{2^t} for every nonzero x of F_{2^{3t}}
      for (std::uint64_t c = 1; c < B.order(); ++c) {
        Elem x = static_cast<Elem>(c);
        if (!B.in_subfield(x, 3 * t)) continue;
        Elem val = B.add(x, B.mul(b, B.div(B.frobenius(x, 2 * t + 1), x)));
        if (B.in_subfield(val, t)) return false;
      }
      return true;
    };
    Elem b = P.b;
    if (b == 0) {
      for (std::uint64_t c = 1; c < B.order(); ++c)
        if (cond(static_cast<Elem>(c))) {
          b = static_cast<Elem>(c);
          break;
        }
      need(b != 0, "no coefficient b satisfies the conditions");
    } else {
      need(cond(b), "b violates the conditions");
    }
    auto xb = fq_basis_of_q_subfield(B, 3 * t);
    std::vector<std::vector<Elem>> gens;
    for (Elem x : xb)
      gens.push_back(ldetail::vectorize(
          ctx,
          B.add(B.add(B.frobenius(x, 1), B.mul(b, B.frobenius(x, 2 * t + 1))),
                B.mul(x, omega)),
          r));
    return Subspace(F, r, gens);
  }
  if (name == "csmpz") {
    // {a x^{q^i} + b x^{q^{2t+i}} + omega x : x in F_{q^{3t}}}; the defining
    // conditions are an existence statement, so search (i, a, b) for the
    // first scattered witness
    need(n % 2 == 0, "needs even n");
    int t = n / 2, r = 3;
    need(t >= 2, "needs t >= 2");
    ldetail::BigFieldContext ctx(F, r);
    const Field& B = *ctx.big;
    Elem omega = ldetail::pick_omega(B, n);
    auto xb = fq_basis_of_q_subfield(B, 3 * t);
    auto build = [&](int i, Elem a, Elem b) {
      std::vector<std::vector<Elem>> gens;
      for (Elem x : xb)
        gens.push_back(ldetail::vectorize(
            ctx,
            B.add(B.add(B.mul(a, B.frobenius(x, i)),
                        B.mul(b, B.frobenius(x, 2 * t + i))),
                  B.mul(omega, x)),
            r));
      return Subspace(F, r, gens);
    };
    std::vector<Elem> subfield_elems;
    for (std::uint64_t c = 1; c < B.order(); ++c)
      if (B.in_subfield(static_cast<Elem>(c), 3 * t))
        subfield_elems.push_back(static_cast<Elem>(c));
    for (int i = 1; i <= 3 * t - 1; ++i) {
      if (gcd_int(i, 2 * t) != 1) continue;
      for (Elem a : subfield_elems)
        for (Elem b : subfield_elems) {
          if (P.a != 0 && a != P.a) continue;
          if (P.b != 0 && b != P.b) continue;
          Subspace U = build(i, a, b);
          if (U.rank() == 3 * t && is_scattered(U, cfg)) return U;
        }
    }
    throw validation_error("csmpz: no scattered witness found in the search range");
  }
  throw validation_error("unknown scattered family: " + name);
}

// ---------------------------------------------------------------------------
// Exhaustive searches.
// ---------------------------------------------------------------------------

struct MaxScatteredLevel {
  int k = 0;
  std::uint64_t subspaces = 0;
  bool found = false;
};

struct MaxScatteredResult {
  int max_rank = 0;
  std::vector<MaxScatteredLevel> levels;
  Subspace witness;  // a scattered subspace of the maximum rank
};

// Descending exhaustive search for the largest scattered rank in F_{q^n}^r.
// Starts at rn - n (cardinality forces k <= rn - n). The optional verifier is
// invoked on every scattered witness found.
inline MaxScatteredResult max_scattered_rank_search(
    FieldPtr F, int r, const RunConfig& cfg = {},
    const std::function<void(const Subspace&)>& verifier = nullptr) {
  if (r < 2) throw validation_error("search needs r >= 2");
  const int n = F->n();
  const int D = r * n;
  uint128 budget_needed = 0;
  for (int k = D - n; k >= 1; --k)
    budget_needed += gauss_binom(D, k, F->q());
  if (budget_needed > static_cast<uint128>(cfg.budget))
    throw budget_error("subspace search exceeds budget");

  const auto& scalars = F->subfield(F->h()).elements;
  MaxScatteredResult res{0, {}, Subspace(F, r, {})};
  Subspace proto(F, r, {});
  for (int k = D - n; k >= 1; --k) {
    MaxScatteredLevel level;
    level.k = k;
    Subspace found = Subspace(F, r, {});
    for_each_subspace(scalars, D, k,
                      [&](const std::vector<std::vector<Elem>>& rows,
                          const std::vector<int>&) {
                        ++level.subspaces;
                        std::vector<std::vector<Elem>> vecs;
                        vecs.reserve(rows.size());
                        for (const auto& row : rows) vecs.push_back(proto.unflatten(row));
                        Subspace U(F, r, vecs);
                        if (U.rank() == k && is_scattered(U, cfg)) {
                          level.found = true;
                          found = U;
                          return false;  // first witness in canonical order
                        }
                        return true;
                      });
    res.levels.push_back(level);
    if (level.found) {
      res.max_rank = k;
      res.witness = found;
      if (verifier) verifier(found);
      return res;
    }
  }
  return res;
}

struct ZGLResult {
  int zgl_class = 0;
  std::vector<Subspace> reps;  // one defining subspace per scalar-orbit
};

// Z(GammaL)-class by brute force: all rank-n F_q-subspaces of F_{q^n}^2 with
// the same linear set, counted modulo the F_{q^n}-scalar action.
inline ZGLResult zgl_class_bruteforce(const Subspace& U, const RunConfig& cfg = {}) {
  const FieldPtr& Fp = U.field();
  const Field& F = *Fp;
  const int n = F.n();
  if (U.r() != 2) throw validation_error("Z(GammaL)-class brute force needs r = 2");
  if (U.rank() != n) throw validation_error("needs a rank-n subspace");
  uint128 total = gauss_binom(2 * n, n, F.q());
  if (total > static_cast<uint128>(cfg.budget))
    throw budget_error("Z(GammaL) enumeration exceeds budget");

  const auto& scalars = F.subfield(F.h()).elements;
  std::uint64_t reps_n = ldetail::projective_count(F.q(), n);

  // the target linear set, as packed point keys
  std::unordered_set<std::uint64_t> target;
  {
    Elem digits[32], coeffs[32];
    for (std::uint64_t idx = 0; idx < reps_n; ++idx) {
      cdetail::decode_projective(idx, F.q(), n, digits);
      for (int i = 0; i < n; ++i) coeffs[i] = scalars[digits[i]];
      auto v = U.combine(std::span<const Elem>(coeffs, static_cast<size_t>(n)));
      target.insert(ldetail::PointSet::key(ldetail::normalize_point(F, std::move(v))));
    }
  }

  Subspace proto(Fp, 2, {});
  std::vector<Subspace> matches;
  for_each_subspace(
      scalars, 2 * n, n,
      [&](const std::vector<std::vector<Elem>>& rows, const std::vector<int>&) {
        std::vector<std::vector<Elem>> vecs;
        vecs.reserve(rows.size());
        for (const auto& row : rows) vecs.push_back(proto.unflatten(row));
        // same linear set iff every point lands in the target and the
        // point counts agree
        std::unordered_set<std::uint64_t> pts;
        Elem digits[32];
        bool ok = true;
        for (std::uint64_t idx = 0; idx < reps_n && ok; ++idx) {
          cdetail::decode_projective(idx, F.q(), n, digits);
          std::vector<Elem> v(2, 0);
          for (int i = 0; i < n; ++i) {
            Elem c = scalars[digits[i]];
            if (c == 0) continue;
            v[0] = F.add(v[0], F.mul(c, vecs[static_cast<size_t>(i)][0]));
            v[1] = F.add(v[1], F.mul(c, vecs[static_cast<size_t>(i)][1]));
          }
          std::uint64_t key =
              ldetail::PointSet::key(ldetail::normalize_point(F, std::move(v)));
          if (target.find(key) == target.end())
            ok = false;
          else
            pts.insert(key);
        }
        if (ok && pts.size() == target.size())
          matches.push_back(Subspace(Fp, 2, vecs));
        return true;
      });

  // group the matches modulo U -> lambda U
  std::set<std::vector<std::vector<Elem>>> orbit_keys;
  ZGLResult res;
  for (const auto& M : matches) {
    std::vector<std::vector<Elem>> best;
    for (std::uint64_t lam = 1; lam < F.order(); ++lam) {
      std::vector<std::vector<Elem>> scaled;
      for (const auto& b : M.basis())
        scaled.push_back({F.mul(static_cast<Elem>(lam), b[0]),
                          F.mul(static_cast<Elem>(lam), b[1])});
      Subspace S(Fp, 2, scaled);
      if (best.empty() || S.basis() < best) best = S.basis();
    }
    if (orbit_keys.insert(best).second) res.reps.push_back(Subspace(Fp, 2, best));
  }
  res.zgl_class = static_cast<int>(res.reps.size());
  return res;
}

// Full iteration over GammaL(2, q^n) = GL(2, q^n) x Aut(F_{q^n}); true iff
// some semilinear map sends U onto W.
inline bool gl_orbit_equivalent(const Subspace& U, const Subspace& W,
                                const RunConfig& cfg = {}) {
  const FieldPtr& Fp = U.field();
  const Field& F = *Fp;
  if (U.r() != 2 || W.r() != 2)
    throw validation_error("GammaL iteration implemented for r = 2 only");
  if (!(F.spec() == W.field()->spec()))
    throw validation_error("subspaces live over different fields");
  if (U.rank() != W.rank()) return false;
  std::uint64_t Q = F.order();
  uint128 group = static_cast<uint128>(Q) * Q * Q * Q *
                  static_cast<uint128>(F.degree());
  if (group > static_cast<uint128>(cfg.budget))
    throw budget_error("GammaL iteration exceeds budget");

  const auto& wkey = W.basis();
  int k = U.rank();
  for (int j = 0; j < F.degree(); ++j) {
    // sigma = p^j applied componentwise
    std::vector<std::vector<Elem>> sig;
    sig.reserve(static_cast<size_t>(k));
    for (const auto& b : U.basis())
      sig.push_back({F.frobenius_p(b[0], j), F.frobenius_p(b[1], j)});
    for (std::uint64_t a = 0; a < Q; ++a)
      for (std::uint64_t bb = 0; bb < Q; ++bb)
        for (std::uint64_t c = 0; c < Q; ++c)
          for (std::uint64_t d = 0; d < Q; ++d) {
            Elem A = static_cast<Elem>(a), B = static_cast<Elem>(bb);
            Elem C = static_cast<Elem>(c), D = static_cast<Elem>(d);
            if (F.sub(F.mul(A, D), F.mul(B, C)) == 0) continue;
            std::vector<std::vector<Elem>> img;
            img.reserve(static_cast<size_t>(k));
            for (const auto& v : sig)
              img.push_back({F.add(F.mul(A, v[0]), F.mul(B, v[1])),
                             F.add(F.mul(C, v[0]), F.mul(D, v[1]))});
            Subspace S(Fp, 2, img);
            if (S.basis() == wkey) return true;
          }
  }
  return false;
}

// Number of equivalence classes among the given subspaces under the GammaL
// action (pairwise merging).
inline int merge_classes_by_gl(const std::vector<Subspace>& reps,
                               const RunConfig& cfg = {}) {
  std::vector<int> cls(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) cls[i] = static_cast<int>(i);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      if (cls[i] == cls[j]) continue;
      if (gl_orbit_equivalent(reps[i], reps[j], cfg)) {
        int from = cls[j], to = cls[i];
        for (auto& c : cls)
          if (c == from) c = to;
      }
    }
  std::set<int> distinct(cls.begin(), cls.end());
  return static_cast<int>(distinct.size());
}

}  // namespace rmlab
