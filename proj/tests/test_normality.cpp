#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarseprox/normality.hpp"

using namespace coarseprox;

namespace {

std::vector<EPSet> z_samples() {
  return {EPSet::empty(),
          EPSet::all(),
          EPSet::singleton(5),
          EPSet::finite_set({-3, 0, 5}),
          EPSet::tail_ap(0, 2),
          EPSet::tail_ap(1, 2),
          EPSet::tail_ap(0, 2).reflected(),
          EPSet::normalize(2, {0}, {0}, 0, {}),
          EPSet::ray_ge(0),
          EPSet::ray_le(-1),
          EPSet::normalize(6, {1, 4}, {0}, 8, {-2, 5})};
}

std::vector<QSet> q_samples() {
  return {QSet::empty(),
          QSet::all(),
          QSet::interval(Rat(0), true, Rat(1), true),
          QSet::nat(),
          QSet::complement(QSet::nat()),
          QSet::from_ap(RatAP(Rat(0), Rat(2))),
          QSet::interval(Rat(5), true, Rat(6), true),
          QSet::singleton(Rat(1, 2))};
}

NormalityError::Kind thrown_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const NormalityError& e) {
    return e.kind;
  }
  FAIL("expected a NormalityError");
  return NormalityError::PrecFails;
}

}  // namespace

TEST_CASE("interpolate: frozen constructions") {
  EPSet posEvens = EPSet::tail_ap(0, 2);
  NormalityWitness w = interpolate(posEvens, EPSet::ray_ge(0));
  CHECK(w.c == EPSet::ray_ge(0));
  CHECK(w.left.verdict.is_true());
  CHECK(w.right.verdict.is_true());

  // bounded sets interpolate through the empty set
  NormalityWitness wf = interpolate(EPSet::singleton(5), EPSet::finite_set({5, 6}));
  CHECK(wf.c.is_empty());

  // B whose complement is the reflected evens: A keeps its positive end
  NormalityWitness wn =
      interpolate(posEvens, EPSet::complement(EPSet::tail_ap(0, 2).reflected()));
  CHECK(wn.c == EPSet::ray_ge(0));
}

TEST_CASE("interpolate: rejects pairs without prec") {
  EPSet posEvens = EPSet::tail_ap(0, 2);
  CHECK(thrown_kind([&] { interpolate(posEvens, EPSet::tail_ap(1, 2)); }) ==
        NormalityError::PrecFails);
}

TEST_CASE("interpolate: revalidates on every sample pair with prec") {
  int hits = 0;
  for (const EPSet& a : z_samples())
    for (const EPSet& b : z_samples()) {
      if (!prec(a, b).verdict.is_true()) continue;
      ++hits;
      NormalityWitness w = interpolate(a, b);
      CHECK(prec(a, w.c).verdict.is_true());
      CHECK(prec(w.c, b).verdict.is_true());
    }
  CHECK(hits > 10);
}

TEST_CASE("interpolate_star: nesting plus both prec checks") {
  EPSet posEvens = EPSet::tail_ap(0, 2);
  EPSet c = interpolate_star(posEvens, EPSet::ray_ge(0));
  CHECK(posEvens.is_subset_of(c));
  CHECK(c.is_subset_of(EPSet::ray_ge(0)));
  CHECK(prec(posEvens, c).verdict.is_true());
  CHECK(prec(c, EPSet::ray_ge(0)).verdict.is_true());

  CHECK(interpolate_star(EPSet::empty(), EPSet::ray_le(-1)).is_empty());

  CHECK(thrown_kind([] {
          interpolate_star(EPSet::ray_ge(0), EPSet::tail_ap(0, 2));
        }) == NormalityError::NotNested);
  // A = A is nested but shares both ends with its complement's neighbors:
  // prec(A, A) fails for the two-ended evens
  CHECK(thrown_kind([] {
          EPSet evens = EPSet::normalize(2, {0}, {0}, 0, {});
          interpolate_star(evens, evens);
        }) == NormalityError::PrecFails);
}

TEST_CASE("interpolate_star: every nested sample pair with prec revalidates") {
  int hits = 0;
  for (const EPSet& a : z_samples())
    for (const EPSet& b : z_samples()) {
      if (!EPSet::set_diff(a, b).is_empty()) continue;
      if (!prec(a, b).verdict.is_true()) continue;
      ++hits;
      EPSet c = interpolate_star(a, b);
      CHECK(a.is_subset_of(c));
      CHECK(c.is_subset_of(b));
      CHECK(prec(a, c).verdict.is_true());
      CHECK(prec(c, b).verdict.is_true());
    }
  CHECK(hits > 5);
}

TEST_CASE("split_asymptotic: frozen constructions") {
  EPSet posEvens = EPSet::tail_ap(0, 2);
  EPSet negEvens = posEvens.reflected();
  auto [x1, x2] = split_asymptotic(posEvens, negEvens);
  CHECK(EPSet::set_union(x1, x2) == EPSet::all());
  CHECK_FALSE(b_rel(posEvens, x1).verdict.is_true());
  CHECK_FALSE(b_rel(negEvens, x2).verdict.is_true());
  CHECK(x2.has_pos_end());
  CHECK(x1.has_neg_end());

  auto [y1, y2] = split_asymptotic(EPSet::singleton(1), EPSet::singleton(2));
  CHECK(EPSet::set_union(y1, y2) == EPSet::all());

  CHECK(thrown_kind([&] { split_asymptotic(posEvens, EPSet::tail_ap(1, 2)); }) ==
        NormalityError::NotDisjoint);
}

TEST_CASE("split_asymptotic: revalidates on every disjoint sample pair") {
  int hits = 0;
  for (const EPSet& a : z_samples())
    for (const EPSet& b : z_samples()) {
      if (b_rel(a, b).verdict.is_true()) continue;
      ++hits;
      auto [x1, x2] = split_asymptotic(a, b);
      CHECK(EPSet::set_union(x1, x2) == EPSet::all());
      CHECK_FALSE(b_rel(a, x1).verdict.is_true());
      CHECK_FALSE(b_rel(b, x2).verdict.is_true());
    }
  CHECK(hits > 10);
}

TEST_CASE("finite perturbations never change prec") {
  EPSet d1 = EPSet::finite_set({0, 1, 2, 3, 4, 5});
  EPSet d2 = EPSet::finite_set({-7, 3});
  for (const EPSet& a : z_samples())
    for (const EPSet& b : z_samples()) {
      bool v = prec(a, b).verdict.is_true();
      CHECK(prec(EPSet::set_union(a, d1), EPSet::set_diff(b, d2)).verdict.is_true() == v);
      CHECK(prec(EPSet::set_diff(a, d1), EPSet::set_union(b, d2)).verdict.is_true() == v);
    }

  QSet q1 = QSet::set_union(QSet::singleton(Rat(1, 2)), QSet::singleton(Rat(7)));
  for (const QSet& a : q_samples())
    for (const QSet& b : q_samples()) {
      bool v = prec(a, b).verdict.is_true();
      CHECK(prec(QSet::set_union(a, q1), QSet::set_diff(b, q1)).verdict.is_true() == v);
      CHECK(prec(QSet::set_diff(a, q1), QSet::set_union(b, q1)).verdict.is_true() == v);
    }
}

TEST_CASE("avoid_offset: frozen values and non-membership") {
  ZAP ints{Rat(0), Rat(1)};
  CHECK(avoid_offset({ints}) == Rat(1, 2));
  CHECK(avoid_offset({ZAP{Rat(0), Rat(1, 2)}}) == Rat(1, 3));
  CHECK(avoid_offset({ints, ZAP{Rat(1, 3), Rat(1, 3)}}) == Rat(1, 5));
  std::vector<ZAP> lats{ints, ZAP{Rat(1, 4), Rat(3, 2)}, ZAP{Rat(2, 3), Rat(1, 6)}};
  Rat c = avoid_offset(lats);
  CHECK(c > Rat(0));
  for (const ZAP& l : lats) CHECK_FALSE(l.member(c));
}

TEST_CASE("canonical pair of the half-line obstruction") {
  CHECK(halfline_a().member(Rat(1, 2)));
  CHECK_FALSE(halfline_a().member(Rat(1)));
  CHECK(halfline_b().member(Rat(3, 2)));
  CHECK_FALSE(halfline_b().member(Rat(2)));
  CHECK(prec(halfline_a(), halfline_b()).verdict.is_true());
}

TEST_CASE("certificate: punctured half line as its own candidate") {
  NonNormalityCertificate cert = nonnormality_certificate(halfline_b());
  CHECK(cert.offset == Rat(1, 2));
  CHECK(cert.trace.size() == 50);
  Rat prev(-1);
  for (const Rat& x : cert.trace) {
    CHECK(x > prev);
    CHECK(x.is_integer());
    prev = x;
  }
  CHECK(validate_certificate(cert));
  // the certificate is exactly a witness that prec(C, B) fails
  CHECK_FALSE(prec(halfline_b(), halfline_b()).verdict.is_true());
}

TEST_CASE("certificate: half-integer puncturing forces a finer offset") {
  QSet c = QSet::complement(QSet::from_ap(RatAP(Rat(0), Rat(1, 2))));
  NonNormalityCertificate cert = nonnormality_certificate(c);
  CHECK(cert.offset == Rat(1, 3));
  CHECK(validate_certificate(cert));
}

TEST_CASE("certificate: full half line") {
  NonNormalityCertificate cert = nonnormality_certificate(QSet::all());
  CHECK(cert.offset == Rat(1, 2));
  CHECK(cert.trace.front() == Rat(0));
  CHECK(cert.trace.back() == Rat(49));
  CHECK(cert.tail.d == Rat(1));
  CHECK(validate_certificate(cert));
}

TEST_CASE("certificate: rejected when the unit interval does not sit inside C") {
  CHECK(thrown_kind([] { nonnormality_certificate(QSet::nat()); }) ==
        NormalityError::PrecFails);
}

TEST_CASE("certificate: json round trip and tamper detection") {
  NonNormalityCertificate cert = nonnormality_certificate(halfline_b());
  NonNormalityCertificate back = NonNormalityCertificate::from_json(cert.to_json());
  CHECK(back.offset == cert.offset);
  CHECK(back.trace == cert.trace);
  CHECK(validate_certificate(back));

  NonNormalityCertificate bad = back;
  bad.offset = Rat(1);  // lands on the integer lattice
  CHECK_FALSE(validate_certificate(bad));

  NonNormalityCertificate scrambled = back;
  std::swap(scrambled.trace[3], scrambled.trace[4]);
  CHECK_FALSE(validate_certificate(scrambled));

  NonNormalityCertificate offgrid = back;
  offgrid.trace[0] = Rat(1, 2);
  CHECK_FALSE(validate_certificate(offgrid));
}

TEST_CASE("certificate: a family of punctured candidates all certify") {
  std::vector<QSet> punctures{
      QSet::nat(),
      QSet::from_ap(RatAP(Rat(0), Rat(1, 2))),
      QSet::from_ap(RatAP(Rat(1, 3), Rat(1))),
      QSet::set_union(QSet::nat(), QSet::from_ap(RatAP(Rat(1, 2), Rat(3)))),
      QSet::set_union(QSet::from_ap(RatAP(Rat(0), Rat(2))), QSet::singleton(Rat(7, 2))),
      QSet::empty(),
      QSet::singleton(Rat(5)),
      QSet::from_ap(RatAP(Rat(2, 3), Rat(1, 3))),
  };
  for (const QSet& d : punctures) {
    QSet c = QSet::complement(d);
    REQUIRE(prec(halfline_a(), c).verdict.is_true());
    NonNormalityCertificate cert = nonnormality_certificate(c);
    CHECK(validate_certificate(cert));
    CHECK_FALSE(prec(c, halfline_b()).verdict.is_true());
  }
}
