// rmlab: exact rank-metric codes, linear sets, and the correspondence
// between them, over small finite fields.
//
// Exit codes: 0 = claim verified, 1 = claim refuted (e.g. "not MRD"),
// 2 = usage, I/O or budget errors.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rmlab/acceptance.hpp"
#include "rmlab/bridge.hpp"
#include "rmlab/json_io.hpp"

using namespace rmlab;

namespace {

struct GlobalOpts {
  std::uint64_t budget = RunConfig{}.budget;
  int workers = 1;
  std::string format = "text";

  RunConfig cfg() const {
    RunConfig c;
    c.budget = budget;
    c.workers = workers;
    return c;
  }
  bool json_out() const { return format == "json"; }
};

// q = p^h for a prime p
std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (!detail::is_prime_u32(p)) continue;
    if (q % p != 0) continue;
    int h = 0;
    std::uint64_t t = q;
    while (t % p == 0) {
      t /= p;
      ++h;
    }
    if (t == 1) return {p, h};
    break;
  }
  throw validation_error("q must be a prime power: " + std::to_string(q));
}

FieldPtr field_for(std::uint64_t q, int n) {
  auto [p, h] = split_prime_power(q);
  return make_field(p, h, n);
}

Elem element_with_norm(const Field& F, Elem target) {
  for (std::uint64_t c = 1; c < F.order(); ++c)
    if (F.norm(static_cast<Elem>(c), 1) == target) return static_cast<Elem>(c);
  throw validation_error("no element with norm " + std::to_string(target));
}

std::string params_line(const CodeParams& P) {
  std::ostringstream os;
  os << "(" << P.m << "," << P.n << "," << P.q << ";" << P.d << ")"
     << " MRD=" << (P.mrd ? "true" : "false") << " dim=" << P.dim;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-metric codes, scattered linear sets, and their correspondence"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--budget", g.budget, "enumeration budget (rank computations / vectors)");
  app.add_option("--workers", g.workers, "worker threads for enumerations");
  app.add_option("--format", g.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  int exit_code = 0;

  // ------------------------------------------------------------- field ---
  auto* field = app.add_subcommand("field", "field construction");
  {
    auto* neu = field->add_subcommand("new", "create a field spec");
    neu->set_help_flag("--help", "print help");
    auto p = std::make_shared<std::uint32_t>(2);
    auto h = std::make_shared<int>(1);
    auto n = std::make_shared<int>(1);
    auto mod = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    neu->add_option("--p", *p, "prime characteristic")->required();
    neu->add_option("--h", *h, "q = p^h");
    neu->add_option("--n", *n, "extension degree of F_{q^n} over F_q")->required();
    neu->add_option("--modulus", *mod, "comma-separated ascending coefficients");
    neu->add_option("-o,--out", *out, "output file")->required();
    neu->callback([=, &g]() {
      FieldSpec s;
      s.p = *p;
      s.h = *h;
      s.n = *n;
      if (mod->empty()) {
        s.modulus = default_modulus(s.p, s.h * s.n);
      } else {
        std::stringstream ss(*mod);
        std::string tok;
        while (std::getline(ss, tok, ',')) s.modulus.push_back(std::stoi(tok));
      }
      auto F = make_field(s);  // validates
      write_json_file(*out, to_json(F->spec()));
      if (!g.json_out())
        std::printf("field of order %llu written to %s\n",
                    static_cast<unsigned long long>(F->order()), out->c_str());
    });

    auto* show = field->add_subcommand("show", "print field data");
    auto in = std::make_shared<std::string>();
    show->add_option("file", *in)->required();
    show->callback([=, &g]() {
      auto F = make_field(field_spec_from_json(read_json_file(*in)));
      json j{{"order", F->order()},
             {"q", F->q()},
             {"p", F->p()},
             {"h", F->h()},
             {"n", F->n()},
             {"generator", F->generator()},
             {"fq_basis", F->fq_basis()}};
      if (g.json_out())
        std::cout << j.dump(2) << "\n";
      else
        std::printf("|F| = %llu, q = %llu, n = %d, generator code %u\n",
                    static_cast<unsigned long long>(F->order()),
                    static_cast<unsigned long long>(F->q()), F->n(),
                    F->generator());
    });
  }

  // -------------------------------------------------------------- code ---
  auto* code = app.add_subcommand("code", "rank-metric codes");
  {
    auto* neu = code->add_subcommand("new", "construct a code from a family");
    auto family = std::make_shared<std::string>();
    auto q = std::make_shared<std::uint64_t>(2);
    auto n = std::make_shared<int>(3);
    auto k = std::make_shared<int>(2);
    auto s = std::make_shared<int>(1);
    auto twist = std::make_shared<int>(1);
    auto q0 = std::make_shared<std::uint64_t>(0);
    auto eta = std::make_shared<std::int64_t>(-1);
    auto eta_norm = std::make_shared<std::int64_t>(-1);
    auto gamma = std::make_shared<std::int64_t>(-1);
    auto gamma_norm = std::make_shared<std::int64_t>(-1);
    auto name = std::make_shared<std::string>();
    auto delta = std::make_shared<std::int64_t>(-1);
    auto h_elem = std::make_shared<std::int64_t>(-1);
    auto search = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    neu->add_option("--family", *family,
                    "gabidulin | twisted | additive-twisted | trombetti-zhou | sporadic")
        ->required();
    neu->add_option("--q", *q, "field size q (prime power)")->required();
    neu->add_option("--n", *n, "extension degree")->required();
    neu->add_option("--k", *k, "number of F_{q^n}-generators");
    neu->add_option("--s", *s, "Frobenius step");
    neu->add_option("--twist", *twist, "twist exponent h of the twisted families");
    neu->add_option("--q0", *q0, "sub-base q0 of the additive family");
    neu->add_option("--eta", *eta, "eta by element code");
    neu->add_option("--eta-norm", *eta_norm, "pick the first eta with this norm to F_q");
    neu->add_option("--gamma", *gamma, "gamma by element code");
    neu->add_option("--gamma-norm", *gamma_norm, "pick the first gamma with this norm");
    neu->add_option("--name", *name, "sporadic family name (C1..C6, C4prime, D1..D6)");
    neu->add_option("--delta", *delta, "sporadic delta by element code");
    neu->add_option("--h-elem", *h_elem, "sporadic h by element code");
    neu->add_flag("--search", *search, "scan sporadic parameters until MRD passes");
    neu->add_option("-o,--out", *out, "output file")->required();
    neu->callback([=, &g]() {
      auto F = field_for(*q, *n);
      auto pick = [&](std::int64_t code_opt, std::int64_t norm_opt) -> Elem {
        if (code_opt >= 0) return static_cast<Elem>(code_opt);
        if (norm_opt >= 0) return element_with_norm(*F, static_cast<Elem>(norm_opt));
        throw validation_error("supply the element by code or by norm");
      };
      json j;
      if (*family == "gabidulin") {
        if (gcd_int(*s, *n) != 1)
          std::fprintf(stderr,
                       "warning: gcd(s, n) != 1; MRD verification will fail in general\n");
        j = to_json(family_gabidulin(F, *k, *s));
      } else if (*family == "twisted") {
        j = to_json(family_twisted(F, *k, *s, pick(*eta, *eta_norm), *twist));
      } else if (*family == "additive-twisted") {
        j = to_json(family_additive_twisted(F, *k, *s, *q0, pick(*eta, *eta_norm),
                                            *twist));
      } else if (*family == "trombetti-zhou") {
        j = to_json(family_trombetti_zhou(F, *k, *s, pick(*gamma, *gamma_norm)));
      } else if (*family == "sporadic") {
        SporadicParams P;
        P.s = *s;
        if (*search) {
          P = sporadic_search(F, *name, g.cfg());
        } else {
          if (*delta >= 0) P.delta = static_cast<Elem>(*delta);
          if (*h_elem >= 0) P.h_elem = static_cast<Elem>(*h_elem);
        }
        j = to_json(family_sporadic(F, *name, P));
      } else {
        throw validation_error("unknown family: " + *family);
      }
      write_json_file(*out, j);
      if (!g.json_out()) std::printf("code written to %s\n", out->c_str());
    });

    auto* verify = code->add_subcommand("verify", "parameters and MRD verdict");
    auto vin = std::make_shared<std::string>();
    verify->add_option("file", *vin)->required();
    verify->callback([=, &g, &exit_code]() {
      AnyCode C = code_from_json(read_json_file(*vin));
      CodeParams P;
      std::uint64_t used = 0;
      std::string path;
      if (std::holds_alternative<SquareCode>(C)) {
        auto res = min_distance(std::get<SquareCode>(C), g.cfg());
        P = params(std::get<SquareCode>(C), g.cfg());
        used = res.ranks_used;
        path = res.path == EnumPath::kernel ? "kernel-subspace" : "enumeration";
      } else {
        auto res = min_distance(std::get<MatrixCode>(C), g.cfg());
        P = params(std::get<MatrixCode>(C), g.cfg());
        used = res.ranks_used;
        path = "enumeration";
      }
      if (g.json_out()) {
        json j = to_json(P);
        j["budget_used"] = used;
        j["path"] = path;
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("%s budget_used=%llu (%s)\n", params_line(P).c_str(),
                    static_cast<unsigned long long>(used), path.c_str());
      }
      if (!P.mrd) exit_code = 1;
    });

    auto* weights = code->add_subcommand("weights", "exact weight distribution");
    auto win = std::make_shared<std::string>();
    weights->add_option("file", *win)->required();
    weights->callback([=, &g]() {
      AnyCode C = code_from_json(read_json_file(*win));
      std::vector<std::uint64_t> w;
      if (std::holds_alternative<SquareCode>(C))
        w = weight_distribution(std::get<SquareCode>(C), g.cfg());
      else
        w = weight_distribution(std::get<MatrixCode>(C), g.cfg());
      if (g.json_out()) {
        std::cout << json{{"weights", w}}.dump(2) << "\n";
      } else {
        for (size_t i = 0; i < w.size(); ++i)
          if (w[i] != 0 || i == 0)
            std::printf("A_%zu = %llu\n", i, static_cast<unsigned long long>(w[i]));
      }
    });

    auto* dual = code->add_subcommand("dual", "Delsarte dual code");
    auto din = std::make_shared<std::string>();
    auto dout = std::make_shared<std::string>();
    dual->add_option("file", *din)->required();
    dual->add_option("-o,--out", *dout, "output file")->required();
    dual->callback([=, &g]() {
      AnyCode C = code_from_json(read_json_file(*din));
      json j;
      if (std::holds_alternative<SquareCode>(C))
        j = to_json(delsarte_dual(std::get<SquareCode>(C)));
      else
        j = to_json(delsarte_dual(std::get<MatrixCode>(C)));
      write_json_file(*dout, j);
      if (!g.json_out()) std::printf("dual written to %s\n", dout->c_str());
    });

    auto* ideal = code->add_subcommand("idealisers", "left/right idealisers");
    auto iin = std::make_shared<std::string>();
    ideal->add_option("file", *iin)->required();
    ideal->callback([=, &g]() {
      AnyCode C = code_from_json(read_json_file(*iin));
      Idealiser L, R;
      std::uint32_t p = 2;
      if (std::holds_alternative<SquareCode>(C)) {
        const auto& S = std::get<SquareCode>(C);
        L = left_idealiser(S);
        R = right_idealiser(S);
        p = S.field()->p();
      } else {
        const auto& M = std::get<MatrixCode>(C);
        L = left_idealiser(M);
        R = right_idealiser(M);
        p = M.field()->p();
      }
      json j{{"left_order", L.order(p)},
             {"left_is_field", L.is_field},
             {"left_contains_scalars", L.contains_scalars},
             {"right_order", R.order(p)},
             {"right_is_field", R.is_field},
             {"right_contains_scalars", R.contains_scalars}};
      if (g.json_out())
        std::cout << j.dump(2) << "\n";
      else
        std::printf("|L| = %llu (field=%s), |R| = %llu (field=%s)\n",
                    static_cast<unsigned long long>(L.order(p)),
                    L.is_field ? "yes" : "no",
                    static_cast<unsigned long long>(R.order(p)),
                    R.is_field ? "yes" : "no");
    });
  }

  // ---------------------------------------------------------- subspace ---
  auto* sub = app.add_subcommand("subspace", "F_q-subspaces and linear sets");
  {
    auto* neu = sub->add_subcommand("new", "construct a subspace from a family");
    auto family = std::make_shared<std::string>();
    auto q = std::make_shared<std::uint64_t>(2);
    auto n = std::make_shared<int>(3);
    auto s = std::make_shared<int>(1);
    auto r = std::make_shared<int>(2);
    auto i = std::make_shared<int>(1);
    auto delta = std::make_shared<std::int64_t>(-1);
    auto delta_norm = std::make_shared<std::int64_t>(-1);
    auto h_elem = std::make_shared<std::int64_t>(-1);
    auto a = std::make_shared<std::int64_t>(-1);
    auto b = std::make_shared<std::int64_t>(-1);
    auto fstr = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    neu->add_option("--family", *family,
                    "U1..U5 | lavrauw | baer | bgmp1 | bgmp2 | bgmp3 | csmpz | map")
        ->required();
    neu->add_option("--q", *q)->required();
    neu->add_option("--n", *n)->required();
    neu->add_option("--s", *s, "Frobenius step");
    neu->add_option("--r", *r, "ambient dimension");
    neu->add_option("--i", *i, "exponent of the bgmp/csmpz families");
    neu->add_option("--delta", *delta, "delta by element code");
    neu->add_option("--delta-norm", *delta_norm, "pick the first delta with this norm");
    neu->add_option("--h-elem", *h_elem, "h by element code (U5)");
    neu->add_option("--a", *a, "coefficient a (bgmp)");
    neu->add_option("--b", *b, "coefficient b (bgmp3/csmpz)");
    neu->add_option("--f", *fstr, "defining q-polynomial for --family map, e.g. \"x^q\"");
    neu->add_option("-o,--out", *out)->required();
    neu->callback([=, &g]() {
      auto F = field_for(*q, *n);
      json j;
      if (*family == "map") {
        j = to_json(subspace_from_map(parse_qpoly(F, *fstr)));
      } else {
        ScatteredFamilyParams P;
        P.s = *s;
        P.r = *r;
        P.i = *i;
        if (*delta >= 0)
          P.delta = static_cast<Elem>(*delta);
        else if (*delta_norm >= 0)
          P.delta = element_with_norm(*F, static_cast<Elem>(*delta_norm));
        if (*h_elem >= 0) P.h_elem = static_cast<Elem>(*h_elem);
        if (*a >= 0) P.a = static_cast<Elem>(*a);
        if (*b >= 0) P.b = static_cast<Elem>(*b);
        j = to_json(scattered_family(F, *family, P, g.cfg()));
      }
      write_json_file(*out, j);
      if (!g.json_out()) std::printf("subspace written to %s\n", out->c_str());
    });

    auto* check = sub->add_subcommand("check", "rank, |L_U|, scatteredness, weights");
    auto cin2 = std::make_shared<std::string>();
    check->add_option("file", *cin2)->required();
    check->callback([=, &g, &exit_code]() {
      Subspace U = subspace_from_json(read_json_file(*cin2));
      auto S = linear_set_summary(U, g.cfg());
      if (g.json_out()) {
        std::cout << to_json(S).dump(2) << "\n";
      } else {
        std::printf("rank=%d |L_U|=%llu max=%llu scattered=%s linearity=q^%d%s\n",
                    S.rank, static_cast<unsigned long long>(S.size),
                    static_cast<unsigned long long>(S.max_size),
                    S.scattered ? "true" : "false", S.linearity_exp,
                    S.subgeometry_case ? " (subgeometry case: rank <= r)" : "");
        for (const auto& [w, c] : S.weight_spectrum)
          std::printf("  weight %d: %llu points\n", w,
                      static_cast<unsigned long long>(c));
      }
      if (!S.scattered) exit_code = 1;
    });

    auto* smax = sub->add_subcommand("search-max", "exhaustive maximum scattered rank");
    auto q2 = std::make_shared<std::uint64_t>(2);
    auto n2 = std::make_shared<int>(2);
    auto r2 = std::make_shared<int>(2);
    smax->add_option("--q", *q2)->required();
    smax->add_option("--n", *n2)->required();
    smax->add_option("--r", *r2)->required();
    smax->callback([=, &g]() {
      auto F = field_for(*q2, *n2);
      auto res = max_scattered_rank_search(F, *r2, g.cfg(), bl_bound_verifier(g.cfg()));
      if (g.json_out()) {
        json levels = json::array();
        for (const auto& L : res.levels)
          levels.push_back(json{{"k", L.k},
                                {"subspaces", L.subspaces},
                                {"found", L.found}});
        std::cout << json{{"max_rank", res.max_rank}, {"levels", levels}}.dump(2)
                  << "\n";
      } else {
        for (const auto& L : res.levels)
          std::printf("k=%d: %llu subspaces, scattered %s\n", L.k,
                      static_cast<unsigned long long>(L.subspaces),
                      L.found ? "found" : "none");
        std::printf("maximum scattered rank: %d\n", res.max_rank);
      }
    });

    auto* zgl = sub->add_subcommand("zgl-class", "Z(GammaL)-class by brute force");
    auto zin = std::make_shared<std::string>();
    zgl->add_option("file", *zin)->required();
    zgl->callback([=, &g]() {
      Subspace U = subspace_from_json(read_json_file(*zin));
      auto res = zgl_class_bruteforce(U, g.cfg());
      if (g.json_out())
        std::cout << json{{"zgl_class", res.zgl_class}}.dump(2) << "\n";
      else
        std::printf("Z(GammaL)-class = %d\n", res.zgl_class);
    });
  }

  // ------------------------------------------------------------ bridge ---
  auto* bridge = app.add_subcommand("bridge", "subspace <-> code correspondence");
  {
    auto* tocode = bridge->add_subcommand("to-code", "C_{U,G} from a subspace");
    auto uin = std::make_shared<std::string>();
    auto cout2 = std::make_shared<std::string>();
    tocode->add_option("file", *uin)->required();
    tocode->add_option("-o,--out", *cout2)->required();
    tocode->callback([=, &g]() {
      Subspace U = subspace_from_json(read_json_file(*uin));
      auto res = code_from_subspace(U, g.cfg());
      write_json_file(*cout2, to_json(res.code));
      if (!g.json_out())
        std::printf("code written to %s (max point weight i=%d)\n", cout2->c_str(),
                    res.max_point_weight);
    });

    auto* fromcode = bridge->add_subcommand("from-code", "extract U from a code");
    auto cin3 = std::make_shared<std::string>();
    auto uout = std::make_shared<std::string>();
    fromcode->add_option("file", *cin3)->required();
    fromcode->add_option("-o,--out", *uout)->required();
    fromcode->callback([=, &g]() {
      AnyCode C = code_from_json(read_json_file(*cin3));
      if (!std::holds_alternative<MatrixCode>(C))
        throw validation_error("the converse expects a matrix code");
      auto res = subspace_from_code(std::get<MatrixCode>(C), g.cfg());
      write_json_file(*uout, to_json(res.U));
      if (!g.json_out()) std::printf("subspace written to %s\n", uout->c_str());
    });

    auto* vs = bridge->add_subcommand("verify-sheekey",
                                      "scattered(U_f) iff MRD(C_f), independently");
    auto fstr2 = std::make_shared<std::string>();
    auto q3 = std::make_shared<std::uint64_t>(2);
    auto n3 = std::make_shared<int>(3);
    vs->add_option("--f", *fstr2, "q-polynomial, e.g. \"x^q\"")->required();
    vs->add_option("--q", *q3)->required();
    vs->add_option("--n", *n3)->required();
    vs->callback([=, &g, &exit_code]() {
      auto F = field_for(*q3, *n3);
      auto rep = verify_sheekey(parse_qpoly(F, *fstr2), g.cfg());
      if (g.json_out())
        std::cout << to_json(rep).dump(2) << "\n";
      else
        std::printf("scattered=%s MRD=%s agree=%s\n",
                    rep.scattered ? "true" : "false", rep.mrd ? "true" : "false",
                    rep.agree ? "true" : "false");
      if (!rep.agree) exit_code = 1;
    });

    auto* rt = bridge->add_subcommand("roundtrip",
                                      "U -> C_{U,G} -> U' -> C and compare");
    auto rin = std::make_shared<std::string>();
    rt->add_option("file", *rin)->required();
    rt->callback([=, &g, &exit_code]() {
      Subspace U = subspace_from_json(read_json_file(*rin));
      auto rep = bridge_roundtrip(U, g.cfg());
      std::cout << to_json(rep).dump(2) << "\n";
      if (!rep.roundtrip_equal) exit_code = 1;
    });
  }

  // ------------------------------------------------------------ accept ---
  auto* acc = app.add_subcommand("accept", "run the acceptance suite");
  {
    auto suite = std::make_shared<std::string>("full");
    auto fixtures = std::make_shared<std::string>();
    acc->add_option("suite", *suite, "quick | full");
    acc->add_option("--fixtures", *fixtures, "fixtures JSON path");
    acc->callback([=, &g, &exit_code]() {
      json fx;
      const json* fxp = nullptr;
      if (!fixtures->empty()) {
        fx = read_json_file(*fixtures);
        fxp = &fx;
      }
      auto results = run_acceptance(*suite, g.cfg(), fxp);
      bool all = true;
      for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
        all &= r.pass;
      }
      if (!all) exit_code = 1;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const budget_error& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return 2;
  } catch (const io_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return exit_code;
}
