#pragma once

// The algebra of q-polynomials f(x) = sum a_i x^{q^i} over F_{q^n}, i.e. the
// F_q-linear maps on F_{q^n}, with composition mod x^{q^n} - x.

#include <cctype>
#include <string>
#include <vector>

#include "rmlab/fq_linalg.hpp"
#include "rmlab/gf.hpp"

namespace rmlab {

struct LinPoly {
  FieldPtr F;
  std::vector<Elem> c;  // length n

  LinPoly() = default;
  LinPoly(FieldPtr field, std::vector<Elem> coeffs)
      : F(std::move(field)), c(std::move(coeffs)) {
    if (static_cast<int>(c.size()) != F->n())
      throw validation_error("q-polynomial needs exactly n coefficients");
  }

  static LinPoly zero(FieldPtr F) {
    std::vector<Elem> c(static_cast<size_t>(F->n()), 0);
    return LinPoly(std::move(F), std::move(c));
  }

  static LinPoly monomial(FieldPtr F, int exp, Elem coeff) {
    int n = F->n();
    exp %= n;
    if (exp < 0) exp += n;
    std::vector<Elem> c(static_cast<size_t>(n), 0);
    c[static_cast<size_t>(exp)] = coeff;
    return LinPoly(std::move(F), std::move(c));
  }

  static LinPoly identity(FieldPtr F) { return monomial(std::move(F), 0, 1); }

  // Tr_{q^n/q}: all coefficients 1.
  static LinPoly trace_poly(FieldPtr F) {
    std::vector<Elem> c(static_cast<size_t>(F->n()), 1);
    return LinPoly(std::move(F), std::move(c));
  }

  bool is_zero() const {
    for (Elem x : c)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const LinPoly& o) const {
    return F->spec() == o.F->spec() && c == o.c;
  }
};

inline LinPoly lp_add(const LinPoly& f, const LinPoly& g) {
  std::vector<Elem> c(f.c.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = f.F->add(f.c[i], g.c[i]);
  return LinPoly(f.F, std::move(c));
}

// Left scalar: alpha * f, i.e. tau_alpha after f.
inline LinPoly lp_scale(Elem alpha, const LinPoly& f) {
  std::vector<Elem> c(f.c.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = f.F->mul(alpha, f.c[i]);
  return LinPoly(f.F, std::move(c));
}

// f composed with tau_alpha on the right: x -> f(alpha x).
inline LinPoly lp_right_scale(const LinPoly& f, Elem alpha) {
  std::vector<Elem> c(f.c.size());
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = f.F->mul(f.c[i], f.F->frobenius(alpha, static_cast<int>(i)));
  return LinPoly(f.F, std::move(c));
}

inline Elem lp_eval(const LinPoly& f, Elem x) {
  const Field& F = *f.F;
  Elem acc = 0;
  Elem fx = x;
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] != 0) acc = F.add(acc, F.mul(f.c[i], fx));
    fx = F.frobenius(fx, 1);
  }
  return acc;
}

// Coefficients of f o g mod x^{q^n} - x: exponents wrap mod n with a
// Frobenius twist on the inner coefficients.
inline LinPoly lp_compose(const LinPoly& f, const LinPoly& g) {
  if (!(f.F->spec() == g.F->spec()))
    throw validation_error("composition requires one common field");
  const Field& F = *f.F;
  int n = F.n();
  std::vector<Elem> c(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (f.c[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (g.c[static_cast<size_t>(j)] == 0) continue;
      int k = (i + j) % n;
      Elem term = F.mul(f.c[static_cast<size_t>(i)],
                        F.frobenius(g.c[static_cast<size_t>(j)], i));
      c[static_cast<size_t>(k)] = F.add(c[static_cast<size_t>(k)], term);
    }
  }
  return LinPoly(f.F, std::move(c));
}

// Adjoint w.r.t. the bilinear form b(f,g) = Tr(sum f_i g_i):
// coefficient i of the adjoint is a_{(n-i) mod n}^{q^i}.
inline LinPoly lp_adjoint(const LinPoly& f) {
  const Field& F = *f.F;
  int n = F.n();
  std::vector<Elem> c(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    c[static_cast<size_t>(i)] =
        F.frobenius(f.c[static_cast<size_t>((n - i) % n)], i);
  return LinPoly(f.F, std::move(c));
}

// Matrix of x -> f(x) over F_q w.r.t. the field's distinguished basis;
// columns are the coordinate images of the basis vectors.
inline FqMat lp_to_matrix(const LinPoly& f) {
  const Field& F = *f.F;
  int n = F.n();
  FqMat m(f.F, n, n);
  const auto& basis = F.fq_basis();
  for (int j = 0; j < n; ++j) {
    auto coords = F.fq_coords(lp_eval(f, basis[static_cast<size_t>(j)]));
    for (int i = 0; i < n; ++i) m.at(i, j) = coords[static_cast<size_t>(i)];
  }
  return m;
}

// Rank over F_q: dim of the image. The image is spanned over F_p by the
// images of the F_p power basis, and its F_p-dimension is h times the
// F_q-dimension.
inline int lp_rank(const LinPoly& f) {
  const Field& F = *f.F;
  int deg = F.degree();
  int rp = 0;
  if (F.has_packed()) {
    std::array<std::uint64_t, 16> rows{};
    std::uint64_t pwt = 1;
    for (int t = 0; t < deg; ++t) {
      rows[static_cast<size_t>(t)] = F.pack(lp_eval(f, static_cast<Elem>(pwt)));
      pwt *= F.p();
    }
    PackedOps ops(F.p());
    rp = rank_packed(rows.data(), deg, deg, ops);
  } else {
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(static_cast<size_t>(deg));
    std::uint64_t pwt = 1;
    for (int t = 0; t < deg; ++t) {
      Elem img = lp_eval(f, static_cast<Elem>(pwt));
      pwt *= F.p();
      std::vector<std::uint8_t> row(static_cast<size_t>(deg));
      for (int c = 0; c < deg; ++c)
        row[static_cast<size_t>(c)] = static_cast<std::uint8_t>(F.digit(img, c));
      rows.push_back(std::move(row));
    }
    rp = rank_bytes_mod_p(rows, static_cast<int>(F.p()));
  }
  if (rp % F.h() != 0) throw error("image dimension not divisible by h");
  return rp / F.h();
}

inline int lp_kernel_dim(const LinPoly& f) { return f.F->n() - lp_rank(f); }

// --- tiny text form for the CLI: sums of terms like "x", "x^q3", "5*x^q2" ---

inline LinPoly parse_qpoly(FieldPtr F, const std::string& text) {
  LinPoly out = LinPoly::zero(F);
  size_t i = 0;
  auto skip_ws = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    bool negate = false;
    if (text[i] == '+' || text[i] == '-') {
      negate = text[i] == '-';
      ++i;
      skip_ws();
    } else if (!first) {
      throw validation_error("expected '+' or '-' in q-polynomial: " + text);
    }
    first = false;
    std::uint64_t coef = 1;
    bool have_coef = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        coef = coef * 10 + static_cast<std::uint64_t>(text[i++] - '0');
      have_coef = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    int exp = 0;
    if (i < text.size() && text[i] == 'x') {
      ++i;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || text[i] != 'q')
          throw validation_error("exponent must be a power of q: " + text);
        ++i;
        if (i < text.size() && text[i] == '^') ++i;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          exp = 0;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            exp = exp * 10 + (text[i++] - '0');
        } else {
          exp = 1;
        }
      }
    } else if (have_coef) {
      throw validation_error("constant terms are not q-polynomials: " + text);
    } else {
      throw validation_error("expected a term in q-polynomial: " + text);
    }
    if (coef >= F->order()) throw validation_error("coefficient code out of range");
    Elem ce = static_cast<Elem>(coef);
    if (negate) ce = F->neg(ce);
    out = lp_add(out, LinPoly::monomial(F, exp, ce));
  }
  if (first) throw validation_error("empty q-polynomial");
  return out;
}

inline std::string format_qpoly(const LinPoly& f) {
  std::string s;
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (f.c[i] != 1) s += std::to_string(f.c[i]) + "*";
    s += "x";
    if (i >= 1) {
      s += "^q";
      if (i > 1) s += std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace rmlab
