#include <doctest.h>

#include "support.hpp"

using namespace gwpo;
using namespace gwpo::testing;

namespace {

const Term x = V("x");
Term f(Term t) { return F("f", {std::move(t)}); }
Term g(Term t) { return F("g", {std::move(t)}); }
Term h(Term t) { return F("h", {std::move(t)}); }

/// The f_A(x) = 2x algebra, outside the searchable class on purpose.
Algebra doubling() {
  Algebra a(InterpKind::linear);
  a.set_shared(S("f", 1), LinearInterp{0, {2}});
  return a;
}

}  // namespace

TEST_CASE("precedence levels") {
  Precedence p = fgh_precedence();
  CHECK(p.gt(S("f", 1), S("g", 1)));
  CHECK(p.ge(S("g", 1), S("g", 1)));
  CHECK_FALSE(p.gt(S("g", 1), S("g", 1)));
  CHECK(p.level_of("unknown") == 0);
  CHECK(p.to_string() == "f:2 g:1 h:0");
}

TEST_CASE("WPO on the first worked example") {
  WpoOrder wpo(fgh_algebra(), fgh_precedence());
  CHECK(wpo.gt(f(g(x)), g(f(f(x)))));
  CHECK(wpo.gt(f(h(x)), h(h(f(x)))));
  CHECK_FALSE(wpo.gt(x, x));
  CHECK_FALSE(wpo.gt(x, f(x)));

  auto d = wpo.derive(f(g(x)), g(f(f(x))));
  REQUIRE(d.has_value());
  CHECK(d->label == "WPO 2b(i)");
  REQUIRE(d->premises.size() == 3);
  CHECK(d->premises[0].claim == "f(g(x)) >=_A g(f(f(x)))");
  CHECK(d->premises[1].claim == "f > g");
  CHECK(d->premises[2].label == "WPO 1");
  CHECK(d->premises[2].claim == "f(g(x)) >_wpo f(f(x))");
  CHECK_FALSE(wpo.derive(g(f(f(x))), f(g(x))).has_value());
}

TEST_CASE("the order pair of the first example") {
  OrderPair pair = build_wpo_pair(fgh_algebra(), fgh_precedence());
  CHECK(pair.sgt(f(g(x)), g(f(f(x)))));
  CHECK(pair.sgt(f(g(x)), f(f(x))));
  CHECK(pair.sgt(f(g(x)), f(x)));
  CHECK_THROWS_AS(pair.qge(x, f(x)), PreconditionError);
  CHECK_THROWS_AS(pair.sgt(f(x), x), PreconditionError);
}

TEST_CASE("SPO derivation on the first example") {
  SpoOrder spo(build_wpo_pair(fgh_algebra(), fgh_precedence()));
  auto d = spo.derive(f(g(x)), g(f(f(x))));
  REQUIRE(d.has_value());
  // Three 2a steps down the right spine, closed by two subterm steps.
  const Derivation* node = &*d;
  const char* claims[] = {"f(g(x)) >_spo g(f(f(x)))", "f(g(x)) >_spo f(f(x))", "f(g(x)) >_spo f(x)"};
  for (const char* claim : claims) {
    CHECK(node->label == "SPO 2a");
    CHECK(node->claim == claim);
    REQUIRE(node->premises.size() == 2);
    CHECK(node->premises[0].label.empty());
    CHECK(node->premises[0].claim.find(" |> ") != std::string::npos);
    node = &node->premises[1];
  }
  CHECK(node->label == "SPO 1");
  CHECK(node->claim == "f(g(x)) >_spo x");
  REQUIRE(node->premises.size() == 1);
  CHECK(node->premises[0].label == "SPO 1");
  CHECK(node->premises[0].claim == "g(x) >_spo x");
  REQUIRE(node->premises[0].premises.size() == 1);
  CHECK(node->premises[0].premises[0].claim == "x >=_spo x");

  CHECK(spo.gt(f(h(x)), h(h(f(x)))));
  CHECK_FALSE(spo.gt(x, f(x)));
  CHECK_FALSE(spo.gt(x, x));
  SpoOrder any(OrderPair{[](const Term&, const Term&) { return false; }, [](const Term&, const Term&) { return false; }});
  CHECK(any.gt(f(x), x));
}

TEST_CASE("MSPO is a conjunction") {
  const Algebra a = fgh_algebra();
  const Precedence p = fgh_precedence();
  OrderPair pair = build_wpo_pair(a, p);
  auto quasi = [&](const Term& s, const Term& t) { return alg_ge(a, s, t); };
  CHECK(mspo_gt(quasi, pair, f(g(x)), g(f(f(x)))));
  CHECK_FALSE(mspo_gt(quasi, pair, f(g(x)), f(g(x))));
  auto never = [](const Term&, const Term&) { return false; };
  CHECK_FALSE(mspo_gt(never, pair, f(g(x)), g(f(f(x)))));
}

TEST_CASE("the strict relation is not the strict part of the quasi relation") {
  OrderPair pair = build_wpo_pair(doubling(), Precedence{});
  CHECK(pair.qge(f(f(x)), f(x)));
  CHECK_FALSE(pair.qge(f(x), f(f(x))));
  CHECK_FALSE(pair.sgt(f(f(x)), f(x)));
}

TEST_CASE("GWPO orients the division system") {
  const Trs trs = parse_trs(kDivText);
  for (const auto& prec : {Precedence{}, Precedence{{{"div", 3}, {"s", 2}, {"-", 1}}},
                           Precedence{{{"0", 4}, {"p", 1}, {"div", 0}}}}) {
    GwpoOrder gwpo(div_algebra(), prec);
    CHECK(orients([&](const Term& s, const Term& t) { return gwpo.gt(s, t); }, trs).oriented);
  }
}

TEST_CASE("no sampled simple algebra lets WPO orient the division system") {
  const Trs trs = parse_trs(kDivText);
  std::vector<Symbol> sig = trs.signature;
  Rng rng(0x5eed0209);
  for (int n = 0; n < 300; ++n) {
    const InterpKind kind = coin(rng) ? InterpKind::linear : InterpKind::maxplus;
    const Algebra a = random_algebra(rng, sig, {kind, true, true, 3});
    WpoOrder wpo(a, random_precedence(rng, sig, 5));
    CHECK_FALSE(orients([&](const Term& s, const Term& t) { return wpo.gt(s, t); }, trs).oriented);
  }
}

TEST_CASE("GWPO orients the bits system") {
  const Trs trs = parse_trs(kBitsText);
  GwpoOrder gwpo(bits_algebra(), bits_precedence());
  auto report = orients([&](const Term& s, const Term& t) { return gwpo.gt(s, t); }, trs);
  CHECK(report.oriented);
  CHECK(report.failing.empty());
  for (const auto& r : trs.rules) CHECK(gwpo.derive(r.lhs, r.rhs).has_value());
  GwpoOrder flat(bits_algebra(), Precedence{});
  CHECK_FALSE(orients([&](const Term& s, const Term& t) { return flat.gt(s, t); }, trs).oriented);
}

TEST_CASE("GWPO handles a duplicating rule") {
  Algebra a(InterpKind::linear);
  a.set(S("f", 1), LinearInterp{0, {0}});
  a.set(S("g", 2), LinearInterp{0, {0, 0}});
  a.set(S("f", 1, true), LinearInterp{1, {0}});
  a.set(S("g", 2, true), LinearInterp{0, {0, 0}});
  const Term lhs = f(x), rhs = F("g", {x, x});
  for (const auto& prec : {Precedence{}, Precedence{{{"g", 1}}}, Precedence{{{"f", 1}}}}) {
    CHECK(gwpo_gt(a, prec, lhs, rhs));
    CHECK(naive_gwpo(a, prec, lhs, rhs));
  }
}

TEST_CASE("orients reports failing rules and rejects ill-formed ones") {
  const Trs trs = parse_trs("(VAR x) (RULES f(g(x)) -> g(f(f(x))) h(x) -> g(x))");
  WpoOrder wpo(fgh_algebra(), fgh_precedence());
  auto rel = [&](const Term& s, const Term& t) { return wpo.gt(s, t); };
  auto report = orients(rel, trs);
  CHECK_FALSE(report.oriented);
  CHECK(report.failing == std::vector<std::size_t>{1});
  CHECK(orients(rel, parse_trs("(VAR x) (RULES )")).oriented);
  CHECK_THROWS_AS(orients(rel, parse_trs("(VAR x y) (RULES f(x) -> y)")), PreconditionError);
}

// ---------------------------------------------------------------------------
// Sampled properties

namespace {

struct Sample {
  Algebra algebra;
  Precedence precedence;
};

Sample simple_sample(Rng& rng, const Universe& u) {
  const InterpKind kind = coin(rng) ? InterpKind::linear : InterpKind::maxplus;
  return {random_algebra(rng, u.symbols, {kind, true, true, 2}), random_precedence(rng, u.symbols)};
}

Sample general_sample(Rng& rng, const Universe& u) {
  const InterpKind kind = coin(rng) ? InterpKind::linear : InterpKind::maxplus;
  return {random_algebra(rng, u.symbols, {kind, false, false, 2}), random_precedence(rng, u.symbols)};
}

}  // namespace

TEST_CASE("WPO, SPO, MSPO and GWPO coincide on simple algebras with shared marks") {
  Rng rng(0x5eed0201);
  const Universe u = small_universe();
  std::size_t positives = 0;
  for (int n = 0; n < 600; ++n) {
    Sample smp = simple_sample(rng, u);
    const Term s = random_term(rng, u, 6), t = random_term(rng, u, 6);
    CAPTURE(s.to_string());
    CAPTURE(t.to_string());
    CAPTURE(print_algebra(smp.algebra));
    CAPTURE(smp.precedence.to_string());
    const bool w = wpo_gt(smp.algebra, smp.precedence, s, t);
    OrderPair pair = build_wpo_pair(smp.algebra, smp.precedence);
    auto quasi = [&](const Term& a, const Term& b) { return alg_ge(smp.algebra, a, b); };
    CHECK(gwpo_gt(smp.algebra, smp.precedence, s, t) == w);
    CHECK(mspo_gt(quasi, pair, s, t) == w);
    CHECK(spo_gt(pair, s, t) == w);
    positives += w;
  }
  CHECK(positives > 60);
}

TEST_CASE("both order-pair constructions are compatible and nested") {
  Rng rng(0x5eed0202);
  const Universe u = small_universe();
  std::size_t chains = 0;
  for (int n = 0; n < 800; ++n) {
    Sample smp = general_sample(rng, u);
    for (const OrderPair& pair : {build_wpo_pair(smp.algebra, smp.precedence),
                                  build_marked_pair(smp.algebra, smp.precedence)}) {
      const Term a = random_nonvar_term(rng, u, 5), b = random_nonvar_term(rng, u, 5),
                 c = random_nonvar_term(rng, u, 5), d = random_nonvar_term(rng, u, 5);
      if (pair.sgt(a, b)) CHECK(pair.qge(a, b));
      CHECK(pair.qge(a, a));
      CHECK_FALSE(pair.sgt(a, a));
      if (pair.qge(a, b) && pair.sgt(b, c) && pair.qge(c, d)) {
        CHECK(pair.sgt(a, d));
        ++chains;
      }
      if (pair.qge(a, b) && pair.qge(b, c)) CHECK(pair.qge(a, c));
    }
  }
  CHECK(chains > 20);
}

TEST_CASE("relations are stable under substitutions") {
  Rng rng(0x5eed0203);
  const Universe u = small_universe();
  std::size_t hits = 0;
  for (int n = 0; n < 700; ++n) {
    Sample gen = general_sample(rng, u);
    Sample simp = simple_sample(rng, u);
    const Term s = random_nonvar_term(rng, u, 6), t = random_nonvar_term(rng, u, 6);
    const Substitution sigma = random_substitution(rng, u);
    const Term ss = sigma.apply(s), ts = sigma.apply(t);
    CAPTURE(s.to_string());
    CAPTURE(t.to_string());
    for (const OrderPair& pair : {build_wpo_pair(gen.algebra, gen.precedence),
                                  build_marked_pair(gen.algebra, gen.precedence)}) {
      if (pair.sgt(s, t)) CHECK(pair.sgt(ss, ts));
      if (pair.qge(s, t)) CHECK(pair.qge(ss, ts));
    }
    if (gwpo_gt(gen.algebra, gen.precedence, s, t)) {
      ++hits;
      CHECK(gwpo_gt(gen.algebra, gen.precedence, ss, ts));
    }
    if (wpo_gt(simp.algebra, simp.precedence, s, t)) {
      ++hits;
      CHECK(wpo_gt(simp.algebra, simp.precedence, ss, ts));
    }
  }
  CHECK(hits > 50);
}

TEST_CASE("oriented rules stay oriented in contexts and under substitutions") {
  Rng rng(0x5eed0204);
  const Universe u = small_universe();
  std::size_t rules = 0, instances = 0;
  for (int n = 0; n < 4000 && rules < 40; ++n) {
    const bool simple = coin(rng);
    Sample smp = simple ? simple_sample(rng, u) : general_sample(rng, u);
    const Term l = random_nonvar_term(rng, u, 5), r = random_term(rng, u, 5);
    if (!Rule{l, r}.well_formed()) continue;
    const bool oriented = simple ? wpo_gt(smp.algebra, smp.precedence, l, r)
                                 : gwpo_gt(smp.algebra, smp.precedence, l, r);
    if (!oriented) continue;
    ++rules;
    CAPTURE(l.to_string());
    CAPTURE(r.to_string());
    for (int k = 0; k < 100; ++k) {
      const Context c = random_context(rng, u);
      const Substitution sigma = random_substitution(rng, u);
      const Term big = c.fill(sigma.apply(l)), small = c.fill(sigma.apply(r));
      if (simple)
        CHECK(wpo_gt(smp.algebra, smp.precedence, big, small));
      else
        CHECK(gwpo_gt(smp.algebra, smp.precedence, big, small));
      ++instances;
    }
  }
  CHECK(rules >= 40);
  CHECK(instances >= 4000);
}

TEST_CASE("WPO with a simple algebra has the subterm property") {
  Rng rng(0x5eed0205);
  const Universe u = small_universe();
  for (int n = 0; n < 500; ++n) {
    Sample smp = simple_sample(rng, u);
    const Term s = random_term(rng, u, 7);
    WpoOrder wpo(smp.algebra, smp.precedence);
    for (const auto& t : s.subterms())
      if (!(t == s)) CHECK(wpo.gt(s, t));
  }
}

TEST_CASE("orders are irreflexive, transitive and acyclic on samples") {
  Rng rng(0x5eed0206);
  const Universe u = small_universe();
  for (int n = 0; n < 500; ++n) {
    Sample simp = simple_sample(rng, u);
    Sample gen = general_sample(rng, u);
    const Term a = random_term(rng, u, 5), b = random_term(rng, u, 5), c = random_term(rng, u, 5);
    WpoOrder wpo(simp.algebra, simp.precedence);
    GwpoOrder gwpo(gen.algebra, gen.precedence);
    auto check = [&](auto& ord) {
      CHECK_FALSE(ord.gt(a, a));
      CHECK_FALSE((ord.gt(a, b) && ord.gt(b, a)));
      if (ord.gt(a, b) && ord.gt(b, c)) {
        CHECK(ord.gt(a, c));
        CHECK_FALSE(ord.gt(c, a));
      }
    };
    check(wpo);
    check(gwpo);
  }
}

TEST_CASE("harmony between the quasi-order and the marked pair") {
  Rng rng(0x5eed0207);
  const Universe u = small_universe();
  std::size_t hits = 0;
  for (int n = 0; n < 2500; ++n) {
    Sample smp = general_sample(rng, u);
    OrderPair marked = build_marked_pair(smp.algebra, smp.precedence);
    OrderPair plain = build_wpo_pair(smp.algebra, smp.precedence);
    const Term s = random_nonvar_term(rng, u, 6);
    if (s.args().empty()) continue;
    const std::size_t i = uniform(rng, 0, static_cast<std::int64_t>(s.args().size()) - 1);
    const Term t = random_term(rng, u, 4);
    if (!alg_ge(smp.algebra, s.arg(i), t)) continue;
    const std::size_t pos[] = {i};
    const Term s2 = replace_at(s, pos, t);
    ++hits;
    CHECK(marked.qge(s, s2));
    CHECK(plain.qge(s, s2));
  }
  CHECK(hits >= 500);
}

TEST_CASE("memo-free transcriptions agree with the production orders") {
  Rng rng(0x5eed0208);
  const Universe u = small_universe();
  std::size_t positives = 0;
  for (int n = 0; n < 600; ++n) {
    Sample simp = simple_sample(rng, u);
    Sample gen = general_sample(rng, u);
    const Term s = random_term(rng, u, 6), t = random_term(rng, u, 6);
    CAPTURE(s.to_string());
    CAPTURE(t.to_string());
    const bool w = wpo_gt(simp.algebra, simp.precedence, s, t);
    CHECK(naive_wpo(simp.algebra, simp.precedence, s, t) == w);
    const OrderPair pair = build_wpo_pair(gen.algebra, gen.precedence);
    CHECK(naive_spo(naive_plain_pair(gen.algebra, gen.precedence), s, t) == spo_gt(pair, s, t));
    const bool g = gwpo_gt(gen.algebra, gen.precedence, s, t);
    CHECK(naive_gwpo(gen.algebra, gen.precedence, s, t) == g);
    positives += w + g;
  }
  CHECK(positives > 60);
}
