#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rmlab/linset.hpp"

using namespace rmlab;

TEST_CASE("point weights of U_f subspaces") {
  auto F = make_field(2, 1, 4);
  // U_1 = {(x, x^q)}: the point (1,1) has weight 1 (solutions of x^q = x)
  Subspace U1 = subspace_from_map(LinPoly::monomial(F, 1, 1));
  REQUIRE(U1.rank() == 4);
  REQUIRE(point_weight(U1, {1, 1}) == 1);

  // {(x, x^{q^2})}: the point (1,1) has weight 2 (solutions form F_{q^2})
  Subspace U2 = subspace_from_map(LinPoly::monomial(F, 2, 1));
  REQUIRE(point_weight(U2, {1, 1}) == 2);

  // a point outside the linear set has weight 0
  Subspace Uz = subspace_from_map(LinPoly::zero(F));
  REQUIRE(point_weight(Uz, {0, 1}) == 0);

  REQUIRE_THROWS_AS(point_weight(U1, {0, 0}), validation_error);
}

TEST_CASE("subspace weights") {
  auto F = make_field(2, 1, 3);
  Subspace U = subspace_from_map(LinPoly::monomial(F, 1, 1));
  // the whole space has weight k
  REQUIRE(subspace_weight(U, {{1, 0}, {0, 1}}) == U.rank());
  // a line through two weight-one points meets U in dimension >= 2;
  // here r = 2, so any line is the whole space already
  auto F3 = make_field(2, 1, 2);
  Subspace B(F3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  REQUIRE(subspace_weight(B, {{1, 0, 0}, {0, 1, 0}}) == 2);
}

TEST_CASE("scatteredness catalogue") {
  // U_1 at q=2, n=5
  auto F25 = make_field(2, 1, 5);
  REQUIRE(is_scattered(subspace_from_map(LinPoly::monomial(F25, 1, 1))));

  // {(x, x^{q^2})} at n=4 is not scattered
  auto F24 = make_field(2, 1, 4);
  REQUIRE_FALSE(is_scattered(subspace_from_map(LinPoly::monomial(F24, 2, 1))));

  // Baer subgeometry r=3, q=2
  auto F4 = make_field(2, 1, 2);
  ScatteredFamilyParams P;
  P.r = 3;
  REQUIRE(is_scattered(scattered_family(F4, "baer", P)));
}

TEST_CASE("U2 at q=3, n=4 with N(delta)=2 is scattered of rank 4") {
  auto F = make_field(3, 1, 4);
  Elem delta = 0;
  for (Elem c = 1; c < F->order(); ++c)
    if (F->norm(c, 1) == 2) {
      delta = c;
      break;
    }
  ScatteredFamilyParams P;
  P.s = 1;
  P.delta = delta;
  Subspace U = scattered_family(F, "U2", P);
  REQUIRE(U.rank() == 4);
  REQUIRE(is_scattered(U));
}

TEST_CASE("U4 at q=5 with delta=2 is scattered of rank 6") {
  auto F = make_field(5, 1, 6);
  ScatteredFamilyParams P;
  P.delta = 2;  // 2^2 + 2 = 6 = 1 over F_5
  Subspace U = scattered_family(F, "U4", P);
  REQUIRE(U.rank() == 6);
  RunConfig cfg;
  REQUIRE(is_scattered(U, cfg));
}

TEST_CASE("lavrauw family r=4, n=3, q=2 is scattered of rank 6") {
  auto F = make_field(2, 1, 3);
  ScatteredFamilyParams P;
  P.r = 4;
  Subspace U = scattered_family(F, "lavrauw", P);
  REQUIRE(U.r() == 4);
  REQUIRE(U.rank() == 6);
  REQUIRE(is_scattered(U));
}

TEST_CASE("linear set summary: partition identity and sizes") {
  auto F = make_field(2, 1, 4);
  Subspace U1 = subspace_from_map(LinPoly::monomial(F, 1, 1));
  auto S = linear_set_summary(U1);
  REQUIRE(S.rank == 4);
  REQUIRE(S.scattered);
  REQUIRE(S.size == S.max_size);
  REQUIRE(S.max_size == 15);
  REQUIRE(S.linearity_exp == 1);
  REQUIRE(S.weight_spectrum.at(1) == 15);

  Subspace U2 = subspace_from_map(LinPoly::monomial(F, 2, 1));
  auto S2 = linear_set_summary(U2);
  REQUIRE_FALSE(S2.scattered);
  REQUIRE(S2.size < S2.max_size);
  REQUIRE(S2.max_point_weight == 2);

  // U = <v>_{F_{q^n}} is one point of weight n, maximum field of linearity q^n
  Subspace line(F, 2, {{1, 0}, {F->generator(), 0},
                       {F->mul(F->generator(), F->generator()), 0},
                       {F->pow(F->generator(), 3), 0}});
  auto S3 = linear_set_summary(line);
  REQUIRE(S3.size == 1);
  REQUIRE(S3.max_point_weight == 4);
  REQUIRE(S3.linearity_exp == 4);
}

TEST_CASE("weight partition identity on random subspaces") {
  std::mt19937 rng(23);
  auto F = make_field(3, 1, 3);
  for (int t = 0; t < 20; ++t) {
    int k = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<Elem>> gens;
    for (int i = 0; i < k; ++i)
      gens.push_back({static_cast<Elem>(rng() % F->order()),
                      static_cast<Elem>(rng() % F->order())});
    Subspace U(F, 2, gens);
    if (U.rank() == 0) continue;
    auto S = linear_set_summary(U);  // throws internally if the identity fails
    REQUIRE(S.size <= S.max_size);   // the cardinality bound
    REQUIRE((S.scattered == (S.size == S.max_size)));
    // monotone weight bound for points: w <= min(k, n)
    REQUIRE(S.max_point_weight <= std::min(U.rank(), F->n()));
  }
}

TEST_CASE("h-scattered: the rank-4 example over F_16 in r=3") {
  auto F = make_field(2, 1, 4);
  // U = {(x, x^q, x^{q^2})}
  std::vector<std::vector<Elem>> gens;
  for (Elem b : F->fq_basis())
    gens.push_back({b, F->frobenius(b, 1), F->frobenius(b, 2)});
  Subspace U(F, 3, gens);
  REQUIRE(U.rank() == 4);  // = rn/(h+1) for h = 2
  REQUIRE(is_h_scattered(U, 2));
  REQUIRE_THROWS_AS(is_h_scattered(U, 3), validation_error);
  REQUIRE_THROWS_AS(is_h_scattered(U, 0), validation_error);
}

TEST_CASE("h=1 agrees with is_scattered on spanning subspaces") {
  std::mt19937 rng(29);
  auto F = make_field(2, 1, 3);
  int checked = 0;
  while (checked < 20) {
    int k = 2 + static_cast<int>(rng() % 2);
    std::vector<std::vector<Elem>> gens;
    for (int i = 0; i < k; ++i)
      gens.push_back({static_cast<Elem>(rng() % F->order()),
                      static_cast<Elem>(rng() % F->order())});
    Subspace U(F, 2, gens);
    if (U.rank() < 2) continue;
    ++checked;
    bool spans = FqMat::from_rows(F, U.basis()).rank() == 2;
    bool hs = is_h_scattered(U, 1);
    bool sc = is_scattered(U);
    if (spans)
      REQUIRE(hs == sc);
    else
      REQUIRE_FALSE(hs);
  }
}

TEST_CASE("h-scattered rank bound") {
  // every h-scattered subspace found with k > r satisfies k <= rn/(h+1)
  auto F = make_field(2, 1, 4);
  std::vector<std::vector<Elem>> gens;
  for (Elem b : F->fq_basis())
    gens.push_back({b, F->frobenius(b, 1), F->frobenius(b, 2)});
  Subspace U(F, 3, gens);
  int r = 3, n = 4, h = 2;
  REQUIRE(is_h_scattered(U, h));
  if (U.rank() > r) REQUIRE(U.rank() <= r * n / (h + 1));
}

TEST_CASE("max scattered rank search at tiny parameters") {
  RunConfig cfg;
  // (r=2, n=2, q=2) -> 2
  auto F22 = make_field(2, 1, 2);
  auto r1 = max_scattered_rank_search(F22, 2, cfg);
  REQUIRE(r1.max_rank == 2);
  REQUIRE(is_scattered(r1.witness));

  // (r=2, n=3, q=2) -> 3
  auto F23 = make_field(2, 1, 3);
  auto r2 = max_scattered_rank_search(F23, 2, cfg);
  REQUIRE(r2.max_rank == 3);

  // (r=3, n=2, q=2) -> 3, with all 651 dimension-4 subspaces failing
  auto r3 = max_scattered_rank_search(F22, 3, cfg);
  REQUIRE(r3.max_rank == 3);
  REQUIRE(r3.levels.front().k == 4);
  REQUIRE(r3.levels.front().subspaces == 651);
  REQUIRE_FALSE(r3.levels.front().found);
}

TEST_CASE("bound saturation: rn/2 at even rn within reach") {
  RunConfig cfg;
  auto F22 = make_field(2, 1, 2);
  REQUIRE(max_scattered_rank_search(F22, 2, cfg).max_rank == 2);
  auto F23 = make_field(2, 1, 3);
  REQUIRE(max_scattered_rank_search(F23, 2, cfg).max_rank == 3);
}

TEST_CASE("Z(GammaL) class of U1 is phi(n) at q=2") {
  auto F3 = make_field(2, 1, 3);
  auto z3 = zgl_class_bruteforce(subspace_from_map(LinPoly::monomial(F3, 1, 1)));
  REQUIRE(z3.zgl_class == 2);  // phi(3)

  // a subspace whose defining space is unique up to scalars: class >= 1
  REQUIRE(z3.reps.size() == 2);
}

TEST_CASE("GammaL orbit equivalence") {
  auto F = make_field(2, 1, 4);
  Subspace U = subspace_from_map(LinPoly::monomial(F, 1, 1));

  // U vs lambda U
  Elem lam = F->generator();
  std::vector<std::vector<Elem>> scaled;
  for (const auto& b : U.basis())
    scaled.push_back({F->mul(lam, b[0]), F->mul(lam, b[1])});
  REQUIRE(gl_orbit_equivalent(U, Subspace(F, 2, scaled)));

  // {(x, x^q)} vs {(x, x^{q^{n-1}})} at n=4, q=2
  Subspace W = subspace_from_map(LinPoly::monomial(F, 3, 1));
  REQUIRE(gl_orbit_equivalent(U, W));

  // scatteredness is a GammaL invariant: U1 is never equivalent to a
  // non-scattered subspace
  Subspace NS = subspace_from_map(LinPoly::monomial(F, 2, 1));
  REQUIRE_FALSE(gl_orbit_equivalent(U, NS));
}

TEST_CASE("scatteredness is preserved along GammaL images") {
  std::mt19937 rng(31);
  auto F = make_field(2, 1, 3);
  Subspace U = subspace_from_map(LinPoly::monomial(F, 1, 1));
  for (int t = 0; t < 10; ++t) {
    Elem a, b, c, d;
    do {
      a = static_cast<Elem>(rng() % F->order());
      b = static_cast<Elem>(rng() % F->order());
      c = static_cast<Elem>(rng() % F->order());
      d = static_cast<Elem>(rng() % F->order());
    } while (F->sub(F->mul(a, d), F->mul(b, c)) == 0);
    int j = static_cast<int>(rng() % F->degree());
    std::vector<std::vector<Elem>> img;
    for (const auto& v : U.basis()) {
      Elem x = F->frobenius_p(v[0], j), y = F->frobenius_p(v[1], j);
      img.push_back({F->add(F->mul(a, x), F->mul(b, y)),
                     F->add(F->mul(c, x), F->mul(d, y))});
    }
    Subspace V(F, 2, img);
    REQUIRE(is_scattered(V) == is_scattered(U));
    REQUIRE(gl_orbit_equivalent(U, V));
  }
}

TEST_CASE("bgmp and csmpz families produce scattered subspaces") {
  RunConfig cfg;
  // bgmp1 with q=2, t=2, r=3, i=3: rank rt = 6 in F_{16}^3
  auto F16 = make_field(2, 1, 4);
  ScatteredFamilyParams P;
  P.r = 3;
  P.i = 3;
  Subspace U = scattered_family(F16, "bgmp1", P, cfg);
  REQUIRE(U.rank() == 6);
  REQUIRE(is_scattered(U, cfg));

  // csmpz at q=2, t=2: rank 3t = 6 in F_{16}^3 (search-backed)
  Subspace V = scattered_family(F16, "csmpz", P, cfg);
  REQUIRE(V.rank() == 6);
  REQUIRE(is_scattered(V, cfg));

  // condition violations are rejected
  ScatteredFamilyParams bad;
  bad.r = 3;
  bad.i = 2;  // gcd(2, 2t) != 1
  REQUIRE_THROWS_AS(scattered_family(F16, "bgmp1", bad), validation_error);
}

TEST_CASE("U1 rejects gcd violations and unknown names throw") {
  auto F = make_field(2, 1, 4);
  ScatteredFamilyParams P;
  P.s = 2;
  REQUIRE_THROWS_AS(scattered_family(F, "U1", P), validation_error);
  REQUIRE_THROWS_AS(scattered_family(F, "U9", P), validation_error);
}

TEST_CASE("subspace weights obey the monotone bound") {
  std::mt19937 rng(59);
  auto F = make_field(2, 1, 3);
  for (int t = 0; t < 15; ++t) {
    int k = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<Elem>> gens;
    for (int i = 0; i < k; ++i)
      gens.push_back({static_cast<Elem>(rng() % F->order()),
                      static_cast<Elem>(rng() % F->order()),
                      static_cast<Elem>(rng() % F->order())});
    Subspace U(F, 3, gens);
    if (U.rank() == 0) continue;
    // a random s-dimensional projective subspace: s+1 generators
    int s = static_cast<int>(rng() % 2);
    std::vector<std::vector<Elem>> wgens;
    for (int i = 0; i <= s; ++i)
      wgens.push_back({static_cast<Elem>(rng() % F->order()),
                       static_cast<Elem>(rng() % F->order()),
                       static_cast<Elem>(1 + rng() % (F->order() - 1))});
    int w = subspace_weight(U, wgens);
    REQUIRE(w >= 0);
    REQUIRE(w <= std::min(U.rank(), F->n() * (s + 1)));
  }
}

TEST_CASE("scatteredness enumeration respects the budget") {
  auto F = make_field(2, 1, 5);
  Subspace U = subspace_from_map(LinPoly::monomial(F, 1, 1));
  RunConfig tiny;
  tiny.budget = 3;
  REQUIRE_THROWS_AS(is_scattered(U, tiny), budget_error);
  REQUIRE_THROWS_AS(linear_set_summary(U, tiny), budget_error);
}

TEST_CASE("a line through two weight-one points has weight at least 2") {
  auto F4 = make_field(2, 1, 2);
  ScatteredFamilyParams P;
  P.r = 3;
  Subspace B = scattered_family(F4, "baer", P);  // scattered of rank 3
  // two distinct points of L_B
  std::vector<Elem> p1 = {1, 0, 0}, p2 = {0, 1, 0};
  REQUIRE(point_weight(B, p1) == 1);
  REQUIRE(point_weight(B, p2) == 1);
  REQUIRE(subspace_weight(B, {p1, p2}) >= 2);
}
