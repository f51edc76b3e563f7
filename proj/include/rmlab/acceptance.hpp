#pragma once

// The acceptance suite: one entry per verification criterion, each exact and
// self-contained. Parameter grids come from a fixtures JSON (defaults are
// compiled in and shipped as fixtures/acceptance.json), so new parameter sets
// are data additions.

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rmlab/bridge.hpp"
#include "rmlab/json_io.hpp"

namespace rmlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace accept {

inline json default_fixtures() {
  return json{
      {"gabidulin_grid",
       {{"q", {2, 3}}, {"n_min", 4}, {"n_max", 6}, {"k", {2, 3}}}},
      {"weights",
       {{{"q", 2}, {"n", 3}, {"k", 2}},
        {{"q", 2}, {"n", 4}, {"k", 2}},
        {{"q", 2}, {"n", 5}, {"k", 2}},
        {{"q", 2}, {"n", 5}, {"k", 3}}}},
      {"weights_frozen", {1, 0, 49, 14}},
      {"idealisers", {{"q", 3}, {"n", 4}, {"eta_norm", 2}, {"h", {1, 2, 3}}}},
      {"scattered_u1", {{"q", {2, 3}}, {"n_min", 2}, {"n_max", 6}}},
      {"bound_search",
       {{{"r", 2}, {"n", 2}, {"q", 2}, {"expect", 2}},
        {{"r", 2}, {"n", 3}, {"q", 2}, {"expect", 3}},
        {{"r", 3}, {"n", 2}, {"q", 2}, {"expect", 3}}}},
  };
}

inline Elem find_norm_element(const Field& F, Elem target) {
  for (std::uint64_t c = 1; c < F.order(); ++c)
    if (F.norm(static_cast<Elem>(c), 1) == target) return static_cast<Elem>(c);
  throw validation_error("no element with the requested norm");
}

struct Check {
  bool ok = true;
  std::ostringstream msg;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (msg.tellp() > 0) msg << "; ";
      msg << what;
    }
  }
};

// 1. Gabidulin codes over the whole grid are MRD with d = n-k+1.
inline CriterionResult c1_gabidulin_mrd(const json& fx, const RunConfig& cfg) {
  Check ck;
  const auto& grid = fx.at("gabidulin_grid");
  int verified = 0;
  for (int q : grid.at("q").get<std::vector<int>>())
    for (int n = grid.at("n_min").get<int>(); n <= grid.at("n_max").get<int>(); ++n)
      for (int k : grid.at("k").get<std::vector<int>>())
        for (int s = 1; s < n; ++s) {
          if (gcd_int(s, n) != 1) continue;
          auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
          auto P = params(family_gabidulin(F, k, s), cfg);
          std::ostringstream tag;
          tag << "G(q=" << q << ",n=" << n << ",k=" << k << ",s=" << s << ")";
          ck.expect(P.mrd, tag.str() + " not MRD");
          ck.expect(P.d == n - k + 1, tag.str() + " wrong distance");
          ++verified;
        }
  return {1, "gabidulin grid is MRD with d = n-k+1", ck.ok,
          ck.ok ? std::to_string(verified) + " codes verified" : ck.msg.str(),
          0.0};
}

// 2. Brute-force weight distributions match the closed form; frozen values at
// (q=2, n=3).
inline CriterionResult c2_weight_distribution(const json& fx,
                                              const RunConfig& cfg) {
  Check ck;
  for (const auto& e : fx.at("weights")) {
    int q = e.at("q").get<int>(), n = e.at("n").get<int>(), k = e.at("k").get<int>();
    auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
    SquareCode G = family_gabidulin(F, k, 1);
    auto w = weight_distribution(G, cfg);
    int d = n - k + 1;
    std::ostringstream tag;
    tag << "G(q=" << q << ",n=" << n << ",k=" << k << ")";
    for (int r = 1; r < d; ++r)
      ck.expect(w[static_cast<size_t>(r)] == 0, tag.str() + " weight below d");
    for (int l = 0; l <= n - d; ++l)
      ck.expect(w[static_cast<size_t>(d + l)] ==
                    mrd_weight_formula(n, n, static_cast<std::uint64_t>(q), d, l),
                tag.str() + " A_" + std::to_string(d + l) + " mismatch");
  }
  auto F = make_field(2, 1, 3);
  auto w = weight_distribution(family_gabidulin(F, 2, 1), cfg);
  auto frozen = fx.at("weights_frozen").get<std::vector<std::uint64_t>>();
  ck.expect(w == frozen, "frozen (1,0,49,14) mismatch at q=2, n=3");
  return {2, "weight distributions match the closed form", ck.ok,
          ck.ok ? "4 spectra + frozen values" : ck.msg.str(), 0.0};
}

// 3. Delsarte duals of the grid codes: dimension, MRD, double dual.
inline CriterionResult c3_duality(const json& fx, const RunConfig& cfg) {
  Check ck;
  const auto& grid = fx.at("gabidulin_grid");
  int verified = 0;
  for (int q : grid.at("q").get<std::vector<int>>())
    for (int n = grid.at("n_min").get<int>(); n <= grid.at("n_max").get<int>(); ++n)
      for (int k : grid.at("k").get<std::vector<int>>())
        for (int s = 1; s < n; ++s) {
          if (gcd_int(s, n) != 1) continue;
          auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
          SquareCode G = family_gabidulin(F, k, s);
          auto PG = params(G, cfg);
          if (!PG.mrd || PG.d <= 1) continue;
          SquareCode D = delsarte_dual(G);
          std::ostringstream tag;
          tag << "G(q=" << q << ",n=" << n << ",k=" << k << ",s=" << s << ")^perp";
          ck.expect(D.dim_sub() == n * n - n * k, tag.str() + " wrong dimension");
          auto PD = params(D, cfg);
          ck.expect(PD.mrd, tag.str() + " not MRD");
          ck.expect(delsarte_dual(D) == G, tag.str() + " double dual mismatch");
          ++verified;
        }
  return {3, "duality: dimension, MRD transport, double dual", ck.ok,
          ck.ok ? std::to_string(verified) + " duals verified" : ck.msg.str(),
          0.0};
}

// 4. Idealiser orders: Gabidulin q^n fields; twisted gcd laws; Trombetti-Zhou
// half-field orders.
inline CriterionResult c4_idealisers(const json& fx, const RunConfig& cfg) {
  Check ck;
  const auto& grid = fx.at("gabidulin_grid");
  for (int q : grid.at("q").get<std::vector<int>>())
    for (int n = grid.at("n_min").get<int>(); n <= grid.at("n_max").get<int>(); ++n)
      for (int k : grid.at("k").get<std::vector<int>>())
        for (int s = 1; s < n; ++s) {
          if (gcd_int(s, n) != 1) continue;
          auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
          SquareCode G = family_gabidulin(F, k, s);
          Idealiser L = left_idealiser(G), R = right_idealiser(G);
          std::ostringstream tag;
          tag << "G(q=" << q << ",n=" << n << ",k=" << k << ",s=" << s << ")";
          ck.expect(L.order(static_cast<std::uint32_t>(q)) ==
                        ipow64(static_cast<std::uint64_t>(q),
                               static_cast<unsigned>(n)),
                    tag.str() + " |L| != q^n");
          ck.expect(R.order(static_cast<std::uint32_t>(q)) ==
                        ipow64(static_cast<std::uint64_t>(q),
                               static_cast<unsigned>(n)),
                    tag.str() + " |R| != q^n");
          ck.expect(L.is_field && R.is_field, tag.str() + " idealisers not fields");
        }

  const auto& tw = fx.at("idealisers");
  int q = tw.at("q").get<int>(), n = tw.at("n").get<int>();
  auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
  Elem eta = find_norm_element(*F, static_cast<Elem>(tw.at("eta_norm").get<int>()));
  for (int h : tw.at("h").get<std::vector<int>>()) {
    SquareCode H = family_twisted(F, 2, 1, eta, h);
    Idealiser L = left_idealiser(H), R = right_idealiser(H);
    int lexp = gcd_int(n, h);
    int rh = ((2 - h) % n + n) % n;
    int rexp = rh == 0 ? n : gcd_int(n, rh);
    std::ostringstream tag;
    tag << "H(eta,h=" << h << ")";
    ck.expect(L.order(static_cast<std::uint32_t>(q)) ==
                  ipow64(static_cast<std::uint64_t>(q), static_cast<unsigned>(lexp)),
              tag.str() + " |L| mismatch");
    ck.expect(R.order(static_cast<std::uint32_t>(q)) ==
                  ipow64(static_cast<std::uint64_t>(q), static_cast<unsigned>(rexp)),
              tag.str() + " |R| mismatch");
  }

  Elem gamma = find_norm_element(*F, 2);
  SquareCode D = family_trombetti_zhou(F, 2, 1, gamma);
  Idealiser L = left_idealiser(D), R = right_idealiser(D);
  ck.expect(L.order(3) == 9 && R.order(3) == 9,
            "Trombetti-Zhou idealisers not of order 9");
  return {4, "idealiser orders (Gabidulin, twisted, Trombetti-Zhou)", ck.ok,
          ck.ok ? "orders and field checks" : ck.msg.str(), 0.0};
}

// 5. Idealiser transport across adjoint and Delsarte dual on every code from
// criteria 1-4.
inline CriterionResult c5_idealiser_transport(const json& fx,
                                              const RunConfig& cfg) {
  Check ck;
  std::vector<std::pair<std::string, SquareCode>> codes;
  const auto& grid = fx.at("gabidulin_grid");
  for (int q : grid.at("q").get<std::vector<int>>())
    for (int n = grid.at("n_min").get<int>(); n <= grid.at("n_max").get<int>(); ++n)
      for (int k : grid.at("k").get<std::vector<int>>())
        for (int s = 1; s < n; ++s) {
          if (gcd_int(s, n) != 1) continue;
          auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
          std::ostringstream tag;
          tag << "G(" << q << "," << n << "," << k << "," << s << ")";
          codes.emplace_back(tag.str(), family_gabidulin(F, k, s));
        }
  {
    const auto& tw = fx.at("idealisers");
    int q = tw.at("q").get<int>(), n = tw.at("n").get<int>();
    auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
    Elem eta = find_norm_element(*F, static_cast<Elem>(tw.at("eta_norm").get<int>()));
    for (int h : tw.at("h").get<std::vector<int>>()) {
      codes.emplace_back("H(h=" + std::to_string(h) + ")",
                         family_twisted(F, 2, 1, eta, h));
    }
    codes.emplace_back("D(2,1)", family_trombetti_zhou(F, 2, 1, eta));
  }
  for (const auto& [tag, C] : codes) {
    Idealiser L = left_idealiser(C), R = right_idealiser(C);
    SquareCode T = adjoint_code(C);
    SquareCode D = delsarte_dual(C);
    ck.expect(left_idealiser(T).order_p_exp() == R.order_p_exp(),
              tag + ": |L(C^T)| != |R(C)|");
    ck.expect(right_idealiser(T).order_p_exp() == L.order_p_exp(),
              tag + ": |R(C^T)| != |L(C)|");
    ck.expect(left_idealiser(D).order_p_exp() == L.order_p_exp(),
              tag + ": |L(C^perp)| != |L(C)|");
    ck.expect(right_idealiser(D).order_p_exp() == R.order_p_exp(),
              tag + ": |R(C^perp)| != |R(C)|");
  }
  (void)cfg;
  return {5, "idealiser transport across adjoint and dual", ck.ok,
          ck.ok ? std::to_string(codes.size()) + " codes checked" : ck.msg.str(),
          0.0};
}

// 6. Scatteredness catalogue.
inline CriterionResult c6_scattered_catalogue(const json& fx,
                                              const RunConfig& cfg) {
  Check ck;
  const auto& u1 = fx.at("scattered_u1");
  for (int q : u1.at("q").get<std::vector<int>>())
    for (int n = u1.at("n_min").get<int>(); n <= u1.at("n_max").get<int>(); ++n)
      for (int s = 1; s < std::max(n, 2); ++s) {
        if (gcd_int(s, n) != 1) continue;
        auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
        ScatteredFamilyParams P;
        P.s = s;
        ck.expect(is_scattered(scattered_family(F, "U1", P), cfg),
                  "U1 not scattered at q=" + std::to_string(q) +
                      ", n=" + std::to_string(n) + ", s=" + std::to_string(s));
      }
  for (int q : {2, 3}) {
    auto F = make_field(static_cast<std::uint32_t>(q), 1, 4);
    ck.expect(!is_scattered(subspace_from_map(LinPoly::monomial(F, 2, 1)), cfg),
              "{(x, x^{q^2})} scattered at n=4, q=" + std::to_string(q));
  }
  {
    auto F = make_field(3, 1, 4);
    ScatteredFamilyParams P;
    P.s = 1;
    P.delta = find_norm_element(*F, 2);
    ck.expect(is_scattered(scattered_family(F, "U2", P), cfg),
              "U2 not scattered at q=3, n=4");
  }
  {
    auto F = make_field(5, 1, 6);
    ScatteredFamilyParams P;
    P.delta = 2;
    Subspace U = scattered_family(F, "U4", P);
    auto S = linear_set_summary(U, cfg);  // full 15624-vector enumeration
    ck.expect(S.scattered && is_scattered(U, cfg),
              "U4 not scattered at q=5, delta=2");
    ck.expect(S.rank == 6, "U4 rank != 6");
  }
  {
    auto F = make_field(2, 1, 2);
    ScatteredFamilyParams P;
    P.r = 3;
    ck.expect(is_scattered(scattered_family(F, "baer", P), cfg),
              "Baer subgeometry not scattered at r=3, q=2");
  }
  return {6, "scatteredness catalogue", ck.ok,
          ck.ok ? "U1 sweep, U2, U4, Baer, non-scattered witness" : ck.msg.str(),
          0.0};
}

// 7. Bound saturation by exhaustion (with the code-side verifier attached).
inline CriterionResult c7_bound_saturation(const json& fx, const RunConfig& cfg) {
  Check ck;
  auto verifier = bl_bound_verifier(cfg);
  for (const auto& e : fx.at("bound_search")) {
    int r = e.at("r").get<int>(), n = e.at("n").get<int>(), q = e.at("q").get<int>();
    int expect = e.at("expect").get<int>();
    auto F = make_field(static_cast<std::uint32_t>(q), 1, n);
    auto res = max_scattered_rank_search(F, r, cfg, verifier);
    std::ostringstream tag;
    tag << "(r=" << r << ",n=" << n << ",q=" << q << ")";
    ck.expect(res.max_rank == expect, tag.str() + " wrong maximum rank");
    if (r == 3 && n == 2 && q == 2) {
      ck.expect(!res.levels.empty() && res.levels.front().k == 4 &&
                    res.levels.front().subspaces == 651 &&
                    !res.levels.front().found,
                "651 dimension-4 subspaces were not all refuted");
    }
  }
  return {7, "Blokhuis-Lavrauw saturation by exhaustive search", ck.ok,
          ck.ok ? "ranks 2/3/3 with 651 refutations" : ck.msg.str(), 0.0};
}

// 8. The square correspondence, both sides computed independently.
inline CriterionResult c8_sheekey_equivalence(const json&, const RunConfig& cfg) {
  Check ck;
  {
    auto F = make_field(2, 1, 5);
    auto rep = verify_sheekey(LinPoly::monomial(F, 1, 1), cfg);
    ck.expect(rep.agree && rep.scattered && rep.mrd,
              "x^q at n=5 expected (true,true)");
  }
  {
    auto F = make_field(2, 1, 4);
    auto rep = verify_sheekey(LinPoly::monomial(F, 2, 1), cfg);
    ck.expect(rep.agree && !rep.scattered && !rep.mrd,
              "x^{q^2} at n=4 expected (false,false)");
  }
  {
    auto F = make_field(3, 1, 4);
    Elem delta = find_norm_element(*F, 2);
    LinPoly f = lp_add(LinPoly::monomial(F, 1, delta), LinPoly::monomial(F, 3, 1));
    auto rep = verify_sheekey(f, cfg);
    ck.expect(rep.agree && rep.scattered && rep.mrd,
              "delta x^q + x^{q^3} at q=3, n=4 expected (true,true)");
  }
  return {8, "square correspondence: scattered iff MRD", ck.ok,
          ck.ok ? "3 maps, both sides independent" : ck.msg.str(), 0.0};
}

// 9. Non-square construction and converse round trip on the Lavrauw subspace.
inline CriterionResult c9_nonsquare_roundtrip(const json&, const RunConfig& cfg) {
  Check ck;
  auto F = make_field(2, 1, 3);
  ScatteredFamilyParams P;
  P.r = 4;
  Subspace U = scattered_family(F, "lavrauw", P);
  auto fwd = code_from_subspace(U, cfg);
  auto Pm = params(fwd.code, cfg);
  ck.expect(Pm.m == 6 && Pm.n == 3 && Pm.q == 2 && Pm.d == 2, "parameters != (6,3,2;2)");
  ck.expect(Pm.mrd, "C_{U,G} not MRD");
  Idealiser R = right_idealiser(fwd.code);
  ck.expect(R.order(2) == 8 && R.is_field, "right idealiser is not a field of order 8");

  auto back = subspace_from_code(fwd.code, cfg);
  ck.expect(is_scattered(back.U, cfg), "extracted subspace not scattered");
  auto second = bdetail::build_cug(back.U, back.G, cfg);
  ck.expect(second.code == fwd.code, "reconstruction differs from the code");

  auto alt = code_from_subspace(U, kernel_projection(U, true), cfg);
  auto Pa = params(alt.code, cfg);
  ck.expect(Pa.d == Pm.d && Pa.mrd == Pm.mrd && Pa.dim == Pm.dim,
            "verdicts depend on the choice of G");
  ck.expect(weight_distribution(alt.code, cfg) == weight_distribution(fwd.code, cfg),
            "weights depend on the choice of G");
  ck.expect(right_idealiser(alt.code).order_p_exp() == R.order_p_exp(),
            "idealiser order depends on the choice of G");
  return {9, "non-square construction and converse round trip", ck.ok,
          ck.ok ? "(6,3,2;2) MRD, |R|=8, round trip exact, G-invariant"
                : ck.msg.str(),
          0.0};
}

// 10. Sporadic verifications: C3 via the scatteredness fast path, C5 by
// projective enumeration.
inline CriterionResult c10_sporadic(const json&, const RunConfig& cfg) {
  Check ck;
  {
    auto F = make_field(5, 1, 6);
    SporadicParams SP;
    SP.delta = 2;
    SquareCode C3 = family_sporadic(F, "C3", SP);
    // the bridge fast path: C3 = C_f for f = x^q + x^{q^3} + delta x^{q^5},
    // so MRD iff U_f is scattered (the correspondence itself is criterion 8)
    LinPoly f = lp_add(lp_add(LinPoly::monomial(F, 1, 1), LinPoly::monomial(F, 3, 1)),
                       LinPoly::monomial(F, 5, SP.delta));
    ck.expect(C3 == code_from_f(f), "C3 is not <x, f>");
    ck.expect(is_scattered(subspace_from_map(f), cfg),
              "U_f not scattered for C3 at q=5");
    // direct cross-check by projective codeword enumeration
    auto P3 = params(C3, cfg);
    ck.expect(P3.mrd && P3.d == 5 && P3.m == 6 && P3.q == 5,
              "C3 direct verification failed");
  }
  {
    auto F = make_field(3, 1, 7);
    SporadicParams SP;
    SP.s = 1;
    SquareCode C5 = family_sporadic(F, "C5", SP);
    auto dres = min_distance(C5, cfg);
    ck.expect(dres.path == EnumPath::projective_left,
              "C5 did not use projective enumeration");
    ck.expect(dres.ranks_used == 4785157, "C5 rank count != 4785157");
    ck.expect(dres.d == 5, "C5 distance != 5");
    auto P5 = params(C5, cfg);
    ck.expect(P5.mrd && P5.m == 7 && P5.q == 3, "C5 not MRD (7,7,3;5)");
  }
  return {10, "sporadic codes C3 (bridge fast path) and C5 (4.8M ranks)", ck.ok,
          ck.ok ? "C3 via scatteredness + direct, C5 projective" : ck.msg.str(),
          0.0};
}

// 11. Class computations at q = 2.
inline CriterionResult c11_classes(const json&, const RunConfig& cfg) {
  Check ck;
  for (int n : {3, 4}) {
    auto F = make_field(2, 1, n);
    Subspace U1 = subspace_from_map(LinPoly::monomial(F, 1, 1));
    auto res = zgl_class_bruteforce(U1, cfg);
    int phi = 0;
    for (int i = 1; i <= n; ++i)
      if (gcd_int(i, n) == 1) ++phi;
    ck.expect(res.zgl_class == phi,
              "Z(GammaL)-class at n=" + std::to_string(n) + " is " +
                  std::to_string(res.zgl_class) + ", expected phi(n)=" +
                  std::to_string(phi));
    if (n == 4) {
      ck.expect(merge_classes_by_gl(res.reps, cfg) == 1,
                "GammaL merging at n=4 does not give one class");
    }
  }
  return {11, "Z(GammaL) classes phi(n) and GammaL merging", ck.ok,
          ck.ok ? "phi(3)=2, phi(4)=2, merged to 1" : ck.msg.str(), 0.0};
}

// 12. h-scattered checks.
inline CriterionResult c12_h_scattered(const json&, const RunConfig& cfg) {
  Check ck;
  {
    auto F = make_field(2, 1, 4);
    std::vector<std::vector<Elem>> gens;
    for (Elem b : F->fq_basis())
      gens.push_back({b, F->frobenius(b, 1), F->frobenius(b, 2)});
    Subspace U(F, 3, gens);
    ck.expect(U.rank() == 4, "rank != 4 = rn/(h+1)");
    ck.expect(is_h_scattered(U, 2, cfg), "not 2-scattered");
  }
  {
    auto F = make_field(2, 1, 3);
    std::mt19937 rng(12345);
    int checked = 0;
    while (checked < 20) {
      int k = 2 + static_cast<int>(rng() % 3);
      std::vector<std::vector<Elem>> gens;
      for (int i = 0; i < k; ++i)
        gens.push_back({static_cast<Elem>(rng() % F->order()),
                        static_cast<Elem>(rng() % F->order())});
      Subspace U(F, 2, gens);
      if (U.rank() < 2) continue;
      ++checked;
      bool spans = FqMat::from_rows(F, U.basis()).rank() == 2;
      bool hs = is_h_scattered(U, 1, cfg);
      bool sc = is_scattered(U, cfg);
      if (spans)
        ck.expect(hs == sc, "h=1 disagrees with is_scattered on a spanning subspace");
      else
        ck.expect(!hs && !sc, "non-spanning subspace misclassified");
    }
  }
  return {12, "h-scattered: rank rn/(h+1) example and h=1 agreement", ck.ok,
          ck.ok ? "2-scattered rank 4; 20 random agreements" : ck.msg.str(), 0.0};
}

}  // namespace accept

inline std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                                   const RunConfig& cfg = {},
                                                   const json* fixtures = nullptr) {
  json fx = fixtures ? *fixtures : accept::default_fixtures();
  using Fn = std::function<CriterionResult(const json&, const RunConfig&)>;
  std::vector<std::pair<int, Fn>> all = {
      {1, accept::c1_gabidulin_mrd},   {2, accept::c2_weight_distribution},
      {3, accept::c3_duality},         {4, accept::c4_idealisers},
      {5, accept::c5_idealiser_transport}, {6, accept::c6_scattered_catalogue},
      {7, accept::c7_bound_saturation}, {8, accept::c8_sheekey_equivalence},
      {9, accept::c9_nonsquare_roundtrip}, {10, accept::c10_sporadic},
      {11, accept::c11_classes},       {12, accept::c12_h_scattered},
  };
  std::vector<int> quick = {2, 4, 6, 7, 8, 9, 12};
  std::vector<CriterionResult> out;
  for (auto& [id, fn] : all) {
    if (suite == "quick" &&
        std::find(quick.begin(), quick.end(), id) == quick.end())
      continue;
    if (suite != "quick" && suite != "full")
      throw validation_error("unknown acceptance suite: " + suite);
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = fn(fx, cfg);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rmlab
