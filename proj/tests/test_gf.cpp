#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "rmlab/gf.hpp"

using namespace rmlab;

namespace {

FieldSpec spec_of(std::uint32_t p, int h, int n, std::vector<int> mod) {
  FieldSpec s;
  s.p = p;
  s.h = h;
  s.n = n;
  s.modulus = std::move(mod);
  return s;
}

}  // namespace

TEST_CASE("F4 construction from t^2+t+1") {
  auto F = make_field(spec_of(2, 1, 2, {1, 1, 1}));
  REQUIRE(F->order() == 4);
  REQUIRE(F->q() == 2);
  // t has code 2; t^2 = t + 1 has code 3
  REQUIRE(F->mul(2, 2) == 3);
  REQUIRE(F->add(2, 3) == 1);
}

TEST_CASE("reducible modulus is rejected") {
  // t^2 + 1 = (t+1)^2 over F_2
  REQUIRE_THROWS_AS(make_field(spec_of(2, 1, 2, {1, 0, 1})), validation_error);
  REQUIRE_THROWS_AS(make_field(spec_of(4, 1, 2, {1, 1, 1})), validation_error);
  // non-monic
  REQUIRE_THROWS_AS(make_field(spec_of(3, 1, 2, {1, 1, 2})), validation_error);
}

TEST_CASE("stored degree-4 modulus over F_3 gives a field of order 81") {
  auto F = make_field(3, 1, 4);
  REQUIRE(F->order() == 81);
}

TEST_CASE("default moduli are irreducible and minimal in scan order") {
  for (const auto& e : builtin_moduli()) {
    REQUIRE(detail::dp_irreducible(e.coeffs, static_cast<int>(e.p)));
    // all candidates with a smaller non-leading value must be reducible
    std::uint64_t value = 0;
    for (int i = 0; i < e.degree; ++i)
      value += static_cast<std::uint64_t>(e.coeffs[static_cast<size_t>(i)]) *
               ipow64(e.p, static_cast<unsigned>(i));
    for (std::uint64_t v = 0; v < value; ++v) {
      std::vector<int> cand(static_cast<size_t>(e.degree) + 1);
      std::uint64_t t = v;
      for (int i = 0; i < e.degree; ++i) {
        cand[static_cast<size_t>(i)] = static_cast<int>(t % e.p);
        t /= e.p;
      }
      cand[static_cast<size_t>(e.degree)] = 1;
      REQUIRE_FALSE(detail::dp_irreducible(cand, static_cast<int>(e.p)));
    }
  }
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, h, n] : {std::tuple<int, int, int>{2, 1, 2},
                         {2, 1, 3},
                         {3, 1, 2},
                         {2, 1, 4},
                         {5, 1, 1},
                         {3, 2, 2}}) {
    auto F = make_field(static_cast<std::uint32_t>(p), h, n);
    std::uint64_t N = F->order();
    for (Elem a = 0; a < N; ++a) {
      REQUIRE(F->add(a, 0) == a);
      REQUIRE(F->mul(a, 1) == a);
      REQUIRE(F->add(a, F->neg(a)) == 0);
      if (a != 0) REQUIRE(F->mul(a, F->inv(a)) == 1);
      for (Elem b = 0; b < N; ++b) {
        REQUIRE(F->add(a, b) == F->add(b, a));
        REQUIRE(F->mul(a, b) == F->mul(b, a));
      }
    }
    if (N <= 81) {
      for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b)
          for (Elem c = 0; c < N; ++c) {
            REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
            REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            REQUIRE(F->mul(a, F->add(b, c)) ==
                    F->add(F->mul(a, b), F->mul(a, c)));
          }
    }
  }
}

TEST_CASE("frobenius basics") {
  auto F4 = make_field(2, 1, 2);
  REQUIRE(F4->frobenius(2, 1) == 3);  // t -> t+1

  auto F = make_field(2, 1, 6);
  for (Elem x = 0; x < F->order(); ++x) {
    REQUIRE(F->frobenius(x, 0) == x);
    REQUIRE(F->frobenius(x, F->n()) == x);
    Elem y = x;
    for (int i = 0; i < F->n(); ++i) y = F->frobenius(y, 1);
    REQUIRE(y == x);
  }
}

TEST_CASE("frobenius is F_q-linear and multiplicative") {
  auto F = make_field(3, 2, 2);  // q = 9, n = 2
  const auto& fq = F->subfield(F->h()).elements;
  for (Elem x = 0; x < F->order(); ++x)
    for (Elem y = 0; y < F->order(); ++y)
      REQUIRE(F->frobenius(F->mul(x, y)) ==
              F->mul(F->frobenius(x), F->frobenius(y)));
  for (Elem c : fq)
    for (Elem x = 0; x < F->order(); ++x) {
      REQUIRE(F->frobenius(F->add(x, c)) ==
              F->add(F->frobenius(x), F->frobenius(c)));
      REQUIRE(F->frobenius(F->mul(c, x)) == F->mul(c, F->frobenius(x)));
    }
}

TEST_CASE("norm and trace on F_4 over F_2") {
  auto F = make_field(spec_of(2, 1, 2, {1, 1, 1}));
  REQUIRE(F->norm(2) == 1);   // t * t^2 = t^3 = 1
  REQUIRE(F->trace(2) == 1);  // t + t^2 = 1
  REQUIRE(F->norm(1) == 1);
  REQUIRE(F->trace(0) == 0);
}

TEST_CASE("trace of F_8 over F_2 has exactly 4 zeros") {
  auto F = make_field(2, 1, 3);
  int zeros = 0;
  for (Elem x = 0; x < F->order(); ++x)
    if (F->trace(x) == 0) ++zeros;
  REQUIRE(zeros == 4);
}

TEST_CASE("norm is multiplicative, trace is additive, both land in subfield") {
  auto F = make_field(2, 1, 6);
  for (Elem x = 0; x < F->order(); ++x) {
    for (int m : {1, 2, 3}) {
      REQUIRE(F->in_subfield(F->norm(x, m), m));
      REQUIRE(F->in_subfield(F->trace(x, m), m));
    }
  }
  for (Elem x = 1; x < 40; ++x)
    for (Elem y = 1; y < 40; ++y) {
      REQUIRE(F->norm(F->mul(x, y)) == F->mul(F->norm(x), F->norm(y)));
      REQUIRE(F->trace(F->add(x, y)) == F->add(F->trace(x), F->trace(y)));
    }
  REQUIRE_THROWS_AS(F->norm(1, 4), validation_error);
}

TEST_CASE("subfield membership") {
  auto F4 = make_field(2, 1, 2);
  REQUIRE(F4->in_subfield(1, 1));
  REQUIRE_FALSE(F4->in_subfield(2, 1));  // t is not in the prime field

  auto F16 = make_field(2, 1, 4);
  int cnt = 0;
  for (Elem x = 0; x < F16->order(); ++x)
    if (F16->in_subfield(x, 2)) ++cnt;
  REQUIRE(cnt == 4);  // the unique F_4 inside F_16
  REQUIRE_THROWS_AS(F16->in_subfield(1, 3), validation_error);
}

TEST_CASE("coordinate round trips for every subfield") {
  for (auto [p, h, n] : {std::tuple<int, int, int>{2, 1, 6}, {3, 2, 2}, {5, 1, 2}}) {
    auto F = make_field(static_cast<std::uint32_t>(p), h, n);
    for (int d = 1; d <= F->degree(); ++d) {
      if (F->degree() % d != 0) continue;
      const auto& S = F->subfield(d);
      REQUIRE(static_cast<int>(S.fp_basis.size()) == d);
      REQUIRE(static_cast<int>(S.basis_over.size()) == F->degree() / d);
      for (Elem x = 0; x < F->order(); ++x) {
        auto coords = F->coords_over_subfield(x, d);
        for (Elem c : coords) REQUIRE(F->in_subfield_p(c, d));
        REQUIRE(F->from_coords_over_subfield(coords, d) == x);
      }
    }
  }
}

TEST_CASE("fq basis spans uniquely") {
  auto F = make_field(3, 1, 4);
  const auto& basis = F->fq_basis();
  REQUIRE(static_cast<int>(basis.size()) == F->n());
  std::set<std::vector<Elem>> seen;
  for (Elem x = 0; x < F->order(); ++x) {
    auto c = F->fq_coords(x);
    REQUIRE(seen.insert(c).second);
    REQUIRE(F->from_fq_coords(c) == x);
  }
}

TEST_CASE("digits round trip") {
  auto F = make_field(5, 1, 2);
  for (Elem x = 0; x < F->order(); ++x) {
    std::vector<int> d(static_cast<size_t>(F->degree()));
    for (int i = 0; i < F->degree(); ++i) d[static_cast<size_t>(i)] = F->digit(x, i);
    REQUIRE(F->from_digits(d) == x);
    REQUIRE(F->unpack(F->pack(x)) == x);
  }
}

TEST_CASE("generator has full multiplicative order") {
  auto F = make_field(3, 1, 2);
  Elem g = F->generator();
  std::set<Elem> powers;
  Elem cur = 1;
  for (std::uint64_t i = 0; i + 1 < F->order(); ++i) {
    powers.insert(cur);
    cur = F->mul(cur, g);
  }
  REQUIRE(powers.size() == F->order() - 1);
}

TEST_CASE("subfield embedding is a ring homomorphism") {
  auto F4 = make_field(2, 1, 2);
  auto F16 = make_field(2, 1, 4);
  SubfieldEmbedding emb(F4, F16);
  for (Elem a = 0; a < 4; ++a) {
    REQUIRE(emb.project(emb.embed(a)) == a);
    for (Elem b = 0; b < 4; ++b) {
      REQUIRE(emb.embed(F4->add(a, b)) == F16->add(emb.embed(a), emb.embed(b)));
      REQUIRE(emb.embed(F4->mul(a, b)) == F16->mul(emb.embed(a), emb.embed(b)));
    }
  }
  REQUIRE(emb.embed(0) == 0);
  REQUIRE(emb.embed(1) == 1);
}

TEST_CASE("bad parameters are rejected") {
  REQUIRE_THROWS_AS(make_field(1, 1, 2), validation_error);
  FieldSpec s;
  s.p = 2;
  s.h = 0;
  s.n = 2;
  s.modulus = {1, 1, 1};
  REQUIRE_THROWS_AS(make_field(s), validation_error);
}

TEST_CASE("fields beyond the table limit fall back to polynomial arithmetic") {
  // x^17 + x^3 + 1 over F_2
  std::vector<int> mod(18, 0);
  mod[0] = 1;
  mod[3] = 1;
  mod[17] = 1;
  auto F = make_field(spec_of(2, 1, 17, mod));
  REQUIRE_FALSE(F->has_tables());
  REQUIRE(F->order() == std::uint64_t{1} << 17);
  std::mt19937 rng(53);
  for (int t = 0; t < 50; ++t) {
    Elem a = static_cast<Elem>(rng() % F->order());
    Elem b = static_cast<Elem>(rng() % F->order());
    Elem c = static_cast<Elem>(rng() % F->order());
    REQUIRE(F->mul(a, b) == F->mul(b, a));
    REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
    if (a != 0) REQUIRE(F->mul(a, F->inv(a)) == 1);
    REQUIRE(F->frobenius(a, F->n()) == a);
  }
  Elem g = F->generator();
  REQUIRE(F->pow(g, F->order() - 1) == 1);
}

TEST_CASE("norm and trace as a pair") {
  auto F = make_field(spec_of(2, 1, 2, {1, 1, 1}));
  auto [nrm, tr] = norm_trace(*F, 2);
  REQUIRE(nrm == 1);
  REQUIRE(tr == 1);
}
