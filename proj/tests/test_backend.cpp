#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coarseprox/backend.hpp"

using namespace coarseprox;

namespace {

std::vector<Rat> probe_grid(long long dmax, long long bound) {
  std::set<Rat> pts;
  for (long long q = 1; q <= dmax; ++q)
    for (long long p = 0; p <= bound * q; ++p) pts.insert(Rat(p, q));
  return std::vector<Rat>(pts.begin(), pts.end());
}

}  // namespace

TEST_CASE("boundedness is finiteness on both carriers") {
  CHECK(bounded(EPSet::finite_set({1, 2, 3})));
  CHECK_FALSE(bounded(EPSet::tail_ap(0, 2)));
  CHECK(bounded(EPSet::empty()));
  CHECK_FALSE(bounded(QSet::interval(Rat(0), true, Rat(1), true)));
  CHECK(bounded(QSet::singleton(Rat(1, 2))));
  CHECK_FALSE(bounded(QSet::nat()));
}

TEST_CASE("bounded sets form a bornology") {
  EPSet a = EPSet::finite_set({-3, 0, 5});
  EPSet b = EPSet::finite_set({1, 7});
  CHECK(bounded(EPSet::set_union(a, b)));
  // every subset of a bounded set is bounded: diff against anything
  CHECK(bounded(EPSet::set_diff(a, EPSet::tail_ap(0, 2))));
  CHECK(bounded(EPSet::finite_set({42})));
  QSet qa = QSet::singleton(Rat(1, 3));
  QSet qb = QSet::singleton(Rat(5));
  CHECK(bounded(QSet::set_union(qa, qb)));
  CHECK(bounded(QSet::set_inter(qa, QSet::all())));
}

TEST_CASE("metric image: radius one is the identity") {
  EPSet a = EPSet::normalize(6, {1, 4}, {0}, 8, {-2, 5});
  CHECK(image(MetricEntourage{1}, a) == a);
  CHECK(image(MetricEntourage{0}, a) == EPSet::empty());
}

TEST_CASE("metric image: radius two spreads the two-ended evens over Z") {
  EPSet evens = EPSet::normalize(2, {0}, {0}, 0, {});
  EPSet im = image(MetricEntourage{2}, evens);
  for (long long x = -40; x <= 40; ++x) CHECK(im.member(x));
  CHECK(im == EPSet::all());
}

TEST_CASE("half line image with a single offset") {
  QSet a = QSet::interval(Rat(0), true, Rat(1), true);
  QSet im = image(make_halfline({Rat(2)}), a);
  for (const Rat& x : probe_grid(4, 6)) {
    bool expect = (Rat(0) < x && x < Rat(1)) || (Rat(2) < x && x < Rat(3));
    CHECK(im.member(x) == expect);
  }
}

TEST_CASE("half line image respects the entourage threshold") {
  QSet a = QSet::set_union(QSet::singleton(Rat(1)), QSet::singleton(Rat(10)));
  QSet im = image(make_halfline({Rat(2)}, Rat(5)), a);
  // 1 sits below the threshold: neither 1+2 nor 1-2 is reachable.
  CHECK(im.member(Rat(1)));
  CHECK_FALSE(im.member(Rat(3)));
  CHECK(im.member(Rat(12)));
  CHECK(im.member(Rat(8)));
}

TEST_CASE("entourage algebra") {
  CHECK(compose(MetricEntourage{2}, MetricEntourage{3}).r == 5);
  CHECK(invert(MetricEntourage{4}).r == 4);
  CHECK(entourage_union(MetricEntourage{2}, MetricEntourage{7}).r == 7);

  HalfLineEntourage h = make_halfline({Rat(1, 2)});
  HalfLineEntourage hi = invert(h);
  CHECK(hi.offsets.count(Rat(-1, 2)) == 1);
  CHECK(hi.offsets.count(Rat(0)) == 1);
  HalfLineEntourage u = entourage_union(make_halfline({Rat(1)}), make_halfline({Rat(1, 2)}));
  CHECK(u.offsets == std::set<Rat>{Rat(0), Rat(1, 2), Rat(1)});
  HalfLineEntourage c = compose(make_halfline({Rat(1)}), make_halfline({Rat(1, 2)}));
  CHECK(c.offsets.count(Rat(3, 2)) == 1);
  CHECK(c.offsets.count(Rat(1)) == 1);
  CHECK(c.offsets.count(Rat(1, 2)) == 1);
  CHECK(c.offsets.count(Rat(0)) == 1);
}

TEST_CASE("symmetrization makes the inverse image equal") {
  QSet a = QSet::set_union(QSet::interval(Rat(1), false, Rat(2), false),
                           QSet::from_ap(RatAP(Rat(0), Rat(3))));
  HalfLineEntourage e = make_halfline({Rat(1, 2), Rat(-2)});
  QSet fwd = image(e, a);
  QSet bwd = image(invert(e), a);
  for (const Rat& x : probe_grid(4, 15)) CHECK(fwd.member(x) == bwd.member(x));
}

TEST_CASE("composition dominates iterated images") {
  EPSet a = EPSet::normalize(5, {2}, {}, 3, {0});
  MetricEntourage e{3}, f{4};
  EPSet once = image(compose(e, f), a);
  EPSet twice = image(e, image(f, a));
  CHECK(twice.is_subset_of(once));

  QSet qa = QSet::set_union(QSet::nat(), QSet::interval(Rat(1, 2), false, Rat(3), true));
  HalfLineEntourage he = make_halfline({Rat(1)}), hf = make_halfline({Rat(1, 2)});
  QSet qonce = image(compose(he, hf), qa);
  QSet qtwice = image(he, image(hf, qa));
  for (const Rat& x : probe_grid(4, 10))
    if (qtwice.member(x)) CHECK(qonce.member(x));
}

TEST_CASE("connectivity probes") {
  CHECK(connecting_entourage(0LL, 7LL).r == 8);
  CHECK(connectivity_check(std::vector<std::pair<long long, long long>>{{0, 7}}));
  HalfLineEntourage h = connecting_entourage(Rat(1, 3), Rat(5, 2));
  CHECK(h.offsets.count(Rat(13, 6)) == 1);
  CHECK(connectivity_check(std::vector<std::pair<Rat, Rat>>{{Rat(1, 3), Rat(5, 2)}}));

  std::mt19937_64 rng(42);
  std::vector<std::pair<long long, long long>> zp;
  std::vector<std::pair<Rat, Rat>> qp;
  for (int i = 0; i < 100; ++i) {
    zp.emplace_back((long long)(rng() % 200) - 100, (long long)(rng() % 200) - 100);
    qp.emplace_back(Rat(rng() % 50, 1 + rng() % 6), Rat(rng() % 50, 1 + rng() % 6));
  }
  CHECK(connectivity_check(zp));
  CHECK(connectivity_check(qp));
}

TEST_CASE("windowed boundedness verdicts") {
  GeneratorSet squares{[](long long x) {
                         if (x < 0) return false;
                         for (long long k = 0; k * k <= x; ++k)
                           if (k * k == x) return true;
                         return false;
                       },
                       std::nullopt,
                       "squares"};
  Verdict v = bounded_windowed(squares, 100);
  CHECK(v.is_false());  // 64, 81, 100 sit past the margin

  GeneratorSet tiny{[](long long x) { return x == 1 || x == 2; }, std::nullopt, "pair"};
  Verdict u = bounded_windowed(tiny, 100);
  CHECK(u.is_unknown());
  CHECK(u.window == 100);

  GeneratorSet certified{[](long long x) { return x == 1 || x == 2; }, 5, "pair"};
  CHECK(bounded_windowed(certified, 100).is_true());
}

TEST_CASE("verdict json forms") {
  CHECK(Verdict::yes().to_json() == nlohmann::json(true));
  CHECK(Verdict::no().to_json() == nlohmann::json(false));
  nlohmann::json u = Verdict::unknown(1000).to_json();
  CHECK(u.at("unknown_at_window") == 1000);
  CHECK(backend_name(BackendKind::ZMetric) == "z-metric");
  CHECK(backend_name(BackendKind::QHalfLine) == "q-halfline");
}
