// Additive oracle, relations, classification, generators and JSON I/O.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ffspace/ffspace.hpp"

using namespace ffspace;

namespace {

using PF = PrimeField;
using QF = RationalField;

template <class F>
Subspace<F> S(const CurvePtr<F>& c, std::initializer_list<const char*> gens) {
  std::vector<Element<F>> v;
  for (auto g : gens) v.push_back(parse_element(c, g));
  return Subspace<F>::span(v);
}

IntSet brute_sumset(const IntSet& a) {
  std::set<std::int64_t> s;
  for (auto u : a)
    for (auto v : a) s.insert(u + v);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------- additive

TEST(Additive, SumsetMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    std::vector<std::int64_t> v;
    const int k = std::uniform_int_distribution<int>(1, 9)(rng);
    for (int i = 0; i < k; ++i) v.push_back(std::uniform_int_distribution<int>(-20, 20)(rng));
    const auto a = make_intset(v);
    EXPECT_EQ(sumset(a, a), brute_sumset(a));
  }
}

TEST(Additive, Structure2kExamples) {
  const auto h = structure_2k({0, 2, 3, 4, 5});
  ASSERT_TRUE(h);
  EXPECT_EQ(h->a, 0);
  EXPECT_EQ(h->d, 1);
  EXPECT_EQ(h->n, 5);
  EXPECT_FALSE(h->reflected);

  const auto r = structure_2k({0, 1, 2, 4});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->a, 4);
  EXPECT_EQ(r->d, -1);
  EXPECT_EQ(r->n, 4);
  EXPECT_TRUE(r->reflected);
  EXPECT_EQ(r->rebuild(), (IntSet{0, 1, 2, 4}));

  EXPECT_FALSE(structure_2k({0, 1, 2, 3}));  // |2A| = 7
  EXPECT_THROW(structure_2k({0, 2, 3}), InputError);

  const auto scaled = structure_2k({10, 16, 19, 22});
  ASSERT_TRUE(scaled);
  EXPECT_EQ(scaled->rebuild(), (IntSet{10, 16, 19, 22}));
}

TEST(Additive, FreimanBoundIsTightOnProgressions) {
  std::vector<IntVec> ap;
  for (int i = 0; i < 7; ++i) ap.push_back({3 * i});
  EXPECT_TRUE(freiman_lemma_holds(ap, 1));
  // a simplex in dimension 2: |A+A| = 6 = 3*3 - 3
  EXPECT_TRUE(freiman_lemma_holds({{0, 0}, {1, 0}, {0, 1}}, 2));
  EXPECT_THROW(freiman_lemma_holds({{0, 0}, {1, 1}, {2, 2}}, 2), InputError);
  EXPECT_EQ(affine_rank({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3);
}

// Valuation sets at infinity of hole progressions are hole progressions.
TEST(Additive, ValuationSetsOfHoleSpaces) {
  const auto line = parse_curve(PF{}, "rational");
  const auto P = place_by_id(*line, "Pinf");
  for (int k = 4; k <= 8; ++k) {
    std::vector<Element<PF>> g{Element<PF>::from_int(line, 1)};
    for (int i = 2; i <= k; ++i) g.push_back(Element<PF>::x(line).pow(i));
    IntSet a;
    for (int v : valuation_set(Subspace<PF>::span(g), P)) a.push_back(-v);
    a = make_intset(a);
    EXPECT_EQ(brute_sumset(a).size(), 2 * a.size());
    const auto h = structure_2k(a);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->n, k);
  }
}

// ---------------------------------------------------------------- relations

using B31 = BiPoly<Fp>;

B31 mono(const PF& K, std::int64_t c, int i, int j) { return B31::monomial(K.from_int(c), i, j); }

// f(x + k y + u, y + v)
B31 affine_change(const PF& K, const B31& f, std::int64_t k, std::int64_t u, std::int64_t v) {
  const B31 X = mono(K, 1, 1, 0) + mono(K, k, 0, 1) + mono(K, u, 0, 0);
  const B31 Y = mono(K, 1, 0, 1) + mono(K, v, 0, 0);
  return f.eval(X, Y, B31{}, [](const Fp& c) { return B31::monomial(c, 0, 0); });
}

TEST(Relation, WeierstrassSmoothnessAgreesWithDiscriminant) {
  const PF K(31);
  std::mt19937_64 rng(11);
  int smooth = 0, singular = 0;
  for (std::int64_t a = 0; a < 31; a += 3)
    for (std::int64_t b = 0; b < 31; b += 2) {
      const B31 w = mono(K, 1, 0, 2) + mono(K, -1, 3, 0) + mono(K, -a, 1, 0) + mono(K, -b, 0, 0);
      const bool disc_zero = (K.from_int(4 * a * a * a + 27 * b * b)).is_zero();
      const auto g = affine_change(K, w, std::uniform_int_distribution<int>(0, 30)(rng),
                                   std::uniform_int_distribution<int>(0, 30)(rng), std::uniform_int_distribution<int>(0, 30)(rng));
      const auto r = cubic_is_smooth(g);
      ASSERT_TRUE(r) << g.to_string();
      EXPECT_EQ(*r, !disc_zero) << g.to_string();
      (disc_zero ? singular : smooth)++;
    }
  EXPECT_GT(smooth, 0);
  EXPECT_GT(singular, 0);
}

TEST(Relation, CubicsWithAConstructedSingularPoint) {
  const PF K(31);
  std::mt19937_64 rng(12);
  auto r31 = [&] { return std::uniform_int_distribution<std::int64_t>(0, 30)(rng); };
  for (int it = 0; it < 40; ++it) {
    // no constant or linear terms: singular at the origin
    B31 f;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j)
        if (i + j >= 2) f = f + mono(K, r31(), i, j);
    if (f.degree() != 3) continue;
    const auto r = cubic_is_smooth(affine_change(K, f, r31(), r31(), r31()));
    if (r) {
      EXPECT_FALSE(*r) << f.to_string();
    }
  }
  // a line meeting a conic in two conjugate points (x^2 = 3 has no root mod 31)
  const B31 conj = mono(K, 1, 0, 1) * (mono(K, 1, 0, 1) + mono(K, -1, 2, 0) + mono(K, 3, 0, 0));
  const auto r = cubic_is_smooth(conj);
  ASSERT_TRUE(r);
  EXPECT_FALSE(*r);
}

TEST(Relation, EllipticCubicVanishesOnGenerators) {
  const auto ell = parse_curve(PF{}, "y^2 = x^3 - x");
  const auto r = find_relation(S(ell, {"1", "x", "y", "x^2", "x*y"}), place_by_id(*ell, "O"));
  EXPECT_EQ(r.kind, RelationKind::Cubic);
  EXPECT_EQ(r.relation().degree(), 3);
  EXPECT_TRUE(evaluate(r.relation(), r.x, r.y).is_zero());
  EXPECT_EQ(r.genus(), 1);
  EXPECT_TRUE(evaluate(r.L1 * r.Q2 - r.L2 * r.Q1, r.x, r.y).is_zero());
}

TEST(Relation, GenusZeroRelations) {
  const auto line = parse_curve(PF{}, "rational");
  const auto P = place_by_id(*line, "Pinf");
  const auto q = find_relation(S(line, {"1", "x", "x^2", "x^3"}), P);
  EXPECT_EQ(q.kind, RelationKind::Quadratic);
  EXPECT_EQ(q.relation().degree(), 2);
  EXPECT_TRUE(evaluate(q.relation(), q.x, q.y).is_zero());
  EXPECT_EQ(q.genus(), 0);

  const auto c = find_relation(S(line, {"1", "x^2", "x^3", "x^4"}), P);
  EXPECT_EQ(c.kind, RelationKind::Cubic);
  EXPECT_TRUE(evaluate(c.relation(), c.x, c.y).is_zero());
  EXPECT_EQ(c.smooth, false);
  EXPECT_EQ(c.genus(), 0);

  EXPECT_THROW(find_relation(S(line, {"1", "x", "x^3", "x^4"}), P), InputError);
  EXPECT_THROW(find_relation(S(line, {"1", "x^2", "x^3"}), P), InputError);
}

TEST(Relation, RelationsAtAFinitePlace) {
  const auto ell = parse_curve(PF{}, "y^2 = x^3 - x");
  const auto P = place_by_id(*ell, "P(0,0)");
  const auto L = rr_space(ell, parse_divisor(ell, "6*P(0,0)"));
  ASSERT_TRUE(L.space);
  const auto r = find_relation(*L.space, P);
  EXPECT_TRUE(evaluate(r.relation(), r.x, r.y).is_zero());
  EXPECT_EQ(r.genus(), 1);
}

// ---------------------------------------------------------------- classifier

TEST(Classify, EllipticExample) {
  const auto ell = parse_curve(PF{}, "y^2 = x^3 - x");
  const auto r = classify(S(ell, {"1", "x", "y", "x^2", "x*y"}));
  EXPECT_EQ(r.gamma, 1);
  EXPECT_EQ(r.genus_detected, 1);
  EXPECT_EQ(r.codim_in_LD, 0);
  EXPECT_EQ(r.D_S.degree(), 5);
  ASSERT_TRUE(std::holds_alternative<Genus1RR<PF>>(r.form));
  EXPECT_EQ(std::get<Genus1RR<PF>>(r.form).D.to_string(), "5*Pinf");
  ASSERT_TRUE(r.p_index);
  EXPECT_TRUE(*r.p_index == 2 || *r.p_index == 4);
}

// Independent rebuild of the two forms from (t, alpha) as expression strings.
template <class F>
Subspace<F> form_space(const CurvePtr<F>& c, bool two, const std::string& t, const std::string& alpha, int n) {
  std::vector<Element<F>> g{parse_element(c, "1")};
  for (int k = 1; k < n; ++k) {
    const std::string p = "(" + t + ")^" + std::to_string(k);
    const std::string ta = "((" + t + ") + " + alpha + ")";
    g.push_back(parse_element(c, two || k == n - 1 ? ta + "*" + p : p));
  }
  return Subspace<F>::span(g);
}

TEST(Classify, GenusZeroForms) {
  const auto line = parse_curve(PF{}, "rational");
  struct Case {
    std::vector<const char*> gens;
    bool two;
    const char* alpha;
  };
  const std::vector<Case> cases{{{"1", "x^2", "x^3", "x^4"}, true, "0"},
                                {{"1", "x", "x^2", "(x+3)*x^3"}, false, "3"},
                                {{"1", "(x+1)*x", "(x+1)*x^2", "(x+1)*x^3"}, true, "1"},
                                {{"1/x", "1", "x", "x^2", "x^4"}, false, "0"}};
  for (const auto& cs : cases) {
    std::vector<Element<PF>> g;
    for (auto e : cs.gens) g.push_back(parse_element(line, e));
    const auto sp = Subspace<PF>::span(g);
    const auto r = classify(sp);
    EXPECT_EQ(r.gamma, 1);
    EXPECT_EQ(r.genus_detected, 0);
    EXPECT_EQ(r.codim_in_LD, 1);
    std::string t, alpha;
    if (cs.two) {
      const auto* f = std::get_if<Genus0TypeII<PF>>(&r.form);
      ASSERT_TRUE(f) << form_name<PF>(r.form);
      t = f->t.to_string(), alpha = f->alpha.to_string();
    } else {
      const auto* f = std::get_if<Genus0TypeI<PF>>(&r.form);
      ASSERT_TRUE(f) << form_name<PF>(r.form);
      t = f->t.to_string(), alpha = f->alpha.to_string();
    }
    EXPECT_EQ(alpha, cs.alpha);
    // rebuild in the normalized space, then undo the scaling
    const auto rebuilt = form_space(line, cs.two, t, alpha, sp.dim()).scaled(r.scale);
    EXPECT_EQ(rebuilt, sp) << t;
  }
}

TEST(Classify, OutOfScope) {
  const auto line = parse_curve(PF{}, "rational");
  const auto g2 = classify(S(line, {"1", "x", "x^3", "x^4"}));
  EXPECT_EQ(g2.gamma, 2);
  EXPECT_TRUE(std::holds_alternative<Unclassified>(g2.form));
  ASSERT_TRUE(g2.conjecture_bound);

  const auto n3 = classify(S(line, {"1", "x^2", "x^3"}));
  EXPECT_EQ(n3.gamma, 1);
  EXPECT_TRUE(std::holds_alternative<Unclassified>(n3.form));
}

TEST(Classify, GeometricProgressionOverQ) {
  const auto line = parse_curve(QF{}, "rational");
  const auto r = classify(S(line, {"3", "3*x/2 + 1", "3*x^2/4 + x", "3*x^3/8"}));
  EXPECT_EQ(r.gamma, 0);
  const auto* gp = std::get_if<GeomProgression<QF>>(&r.form);
  ASSERT_TRUE(gp);
  std::vector<Element<QF>> g;
  auto p = gp->a;
  for (int k = 0; k < 4; ++k, p = p * gp->x) g.push_back(p);
  EXPECT_EQ(Subspace<QF>::span(g), r.normalized.scaled(r.scale));
}

TEST(Classify, ConicOverQHasNoRationalPlace) {
  const auto conic = parse_curve(QF{}, "y^2 = -x^2 - 1");
  EXPECT_FALSE(rational_place(*conic));
  const auto r = classify(S(conic, {"1", "x", "y"}));
  EXPECT_EQ(r.gamma, 0);
  EXPECT_EQ(r.D_S.degree(), 2);
  EXPECT_EQ(r.D_S.terms().size(), 1u);
  EXPECT_TRUE(std::holds_alternative<CodimOneUnnormalized<QF>>(r.form));
  // over F_10007 the conic has points, e.g. above x = 2
  const auto fp = parse_curve(PF{}, "y^2 = -x^2 - 1");
  EXPECT_TRUE(rational_place(*fp));
}

// Brute-force oracle: R = P(r) is a good place for S iff the function with
// divisor n R - D_S lies in S. Here D_S = P(0) + 4 Pinf, so that function
// is (x - r)^5 / x.
TEST(Classify, NormalizeGoodPlaceAgreesWithBruteForce) {
  const PF K;
  const auto line = parse_curve(K, "rational");
  const auto sp = S(line, {"1", "x", "x^2", "x^4", "x^3 - 1/x"});
  ASSERT_EQ(divisor_of(sp).to_string(), "P(0) + 4*Pinf");
  std::set<std::string> good;
  const auto x = Element<PF>::x(line);
  for (std::int64_t r = 0; r < 10007; ++r) {
    const auto f = (x - Element<PF>::from_int(line, r)).pow(5) / x;
    if (sp.contains(f)) good.insert("P(" + K.from_int(r).to_string() + ")");
  }
  ASSERT_FALSE(good.empty());
  const auto g = normalize_good_place(sp);
  EXPECT_FALSE(g.shortcut);
  EXPECT_TRUE(good.count(g.R.id)) << g.R.id;
  EXPECT_TRUE(g.normalized.contains(Element<PF>::from_int(line, 1)));
  const auto D = divisor_of(g.normalized);
  EXPECT_EQ(D.to_string(), "5*" + g.R.id);
  // every root of a^4 + 5 gives a good place, plus a = 0
  EXPECT_EQ(good.size(), 1u + roots(Poly<Fp>({K.from_int(5), K.zero(), K.zero(), K.zero(), K.one()})).size());
}

TEST(Classify, NormalizeGoodPlaceWithoutRoot) {
  // n = 4 needs a^4 = -1, which has no solution mod 10007
  const auto line = parse_curve(PF{}, "rational");
  const auto sp = S(line, {"1", "x", "x^2", "x^3 - 1/x"});
  EXPECT_THROW(normalize_good_place(sp), NoRootError);
  const auto r = classify(sp);
  EXPECT_EQ(r.gamma, 1);
  EXPECT_TRUE(std::holds_alternative<CodimOneUnnormalized<PF>>(r.form)) << form_name<PF>(r.form);
}

// ---------------------------------------------------------------- generators

TEST(Generate, DeterministicInSeed) {
  const auto ell = parse_curve(PF{}, "y^2 = x^3 - x");
  for (auto kind : {GenKind::RR, GenKind::Free}) {
    const auto a = generate_random(kind, ell, 6, 17);
    const auto b = generate_random(kind, ell, 6, 17);
    ASSERT_EQ(a.elements.size(), b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i) EXPECT_EQ(a.elements[i].to_string(), b.elements[i].to_string());
  }
}

TEST(Generate, GroundTruthMatchesGamma) {
  const PF K;
  const auto ell = parse_curve(K, "y^2 = x^3 - x");
  const auto line = parse_curve(K, "rational");

  const auto rr = generate_random(GenKind::RR, ell, 6, 1);
  EXPECT_EQ(combinatorial_genus(Subspace<PF>::span(rr.elements)), 1);
  EXPECT_EQ(rr.truth.genus, 1);
  const auto D = parse_divisor(ell, *rr.truth.divisor);
  EXPECT_EQ(D.degree(), 6);

  const auto c1 = generate_random(GenKind::Codim1, line, 5, 2);
  EXPECT_EQ(combinatorial_genus(Subspace<PF>::span(c1.elements)), 1);
  EXPECT_EQ(c1.truth.genus, 0);

  const auto r0 = generate_random(GenKind::RR, line, 4, 3);
  EXPECT_EQ(combinatorial_genus(Subspace<PF>::span(r0.elements)), 0);

  const auto fr = generate_random(GenKind::Free, ell, 4, 4);
  EXPECT_EQ(Subspace<PF>::span(fr.elements).dim(), 4);

  EXPECT_THROW(generate_random(GenKind::Codim1, line, 3, 1), InputError);
  EXPECT_THROW(generate_random(GenKind::Codim1, ell, 5, 1), InputError);
  EXPECT_THROW(parse_gen_kind("lattice"), InputError);
}

// Split places at infinity on a quartic model.
TEST(Generate, QuarticModelClassifiesAsRiemannRoch) {
  const auto q = parse_curve(PF{}, "y^2 = x^4 + 3*x + 1");
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = generate_random(GenKind::RR, q, 5 + static_cast<int>(seed % 3), seed);
    const auto r = classify(Subspace<PF>::span(g.elements));
    EXPECT_EQ(r.genus_detected, 1);
    EXPECT_TRUE(std::holds_alternative<Genus1RR<PF>>(r.form)) << form_name<PF>(r.form);
    EXPECT_EQ(r.D_S.degree(), g.truth.n);
  }
}

// ---------------------------------------------------------------- io

TEST(Io, ParsesInstances) {
  const auto s = parse_instance(R"({"field":{"kind":"Fp","p":10007},"curve":"y^2 = x^3 - x","elements":["1","x","y","x^2","x*y"]})");
  EXPECT_FALSE(s.field.rational);
  EXPECT_EQ(s.field.p, 10007u);
  const auto c = parse_curve(PF(s.field.p), s.curve);
  EXPECT_EQ(instance_subspace(c, s).dim(), 5);

  const auto h = parse_instance(R"({"field":{"kind":"Q"},"curve":"rational","elements":["1","x","x^2","x^3 + 1/x"]})");
  EXPECT_TRUE(h.field.rational);
}

TEST(Io, RejectsBadInstances) {
  EXPECT_THROW(parse_instance(R"({"field":{"kind":"Fp"},"curve":"y^2 = x^2","elements":["1"]})"), InputError);
  EXPECT_THROW(parse_instance(R"({"field":{"kind":"Fp","p":2},"curve":"rational","elements":["1"]})"), InputError);
  EXPECT_THROW(parse_instance(R"({"field":{"kind":"Q"},"curve":"rational","elements":["y"]})"), InputError);
  EXPECT_THROW(parse_instance(R"({"field":{"kind":"Q"},"curve":"rational","elements":[]})"), InputError);
  try {
    parse_instance("{\n  \"field\": ,\n}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_field_flag("F7"), InputError);
  EXPECT_THROW(parse_field_flag("Fp:9"), InputError);
  EXPECT_EQ(parse_field_flag("Q").to_string(), "Q");
}

TEST(Io, ReportsRoundTripAndAreDeterministic) {
  const auto spec = parse_instance(R"({"field":{"kind":"Fp","p":10007},"curve":"rational","elements":["1","x^2","x^3","x^4"],"seed":9})");
  const auto again = parse_instance(to_json(spec).dump());
  EXPECT_EQ(to_json(again).dump(), to_json(spec).dump());

  const auto c = parse_curve(PF(spec.field.p), spec.curve);
  const auto a = to_json(classify(instance_subspace(c, spec))).dump();
  const auto b = to_json(classify(instance_subspace(c, again))).dump();
  EXPECT_EQ(a, b);
  const auto j = Json::parse(a);
  EXPECT_EQ(j["form"]["kind"], "Genus0TypeII");
  EXPECT_EQ(j["D_S"]["degree"], 4);

  // elements printed by the library parse back to the same space
  const auto g = generate_random(GenKind::Codim1, c, 5, 3);
  const auto inst = make_instance(spec.field, *c, g.elements, 3);
  EXPECT_EQ(instance_subspace(c, parse_instance(to_json(inst).dump())), Subspace<PF>::span(g.elements));
}

TEST(Io, DimsCsv) {
  EXPECT_EQ(dims_csv({{1, 2}, {2, 3}}), "i,S1,S2\nS1,1,2\nS2,2,3\n");
}

}  // namespace
