#include "coarseprox/relations.hpp"

#include <algorithm>
#include <numeric>

#include "coarseprox/normality.hpp"

namespace coarseprox {

std::string prec_mode_name(PrecMode m) {
  switch (m) {
    case PrecMode::Image:
      return "image";
    case PrecMode::Disjoint:
      return "disjoint";
    case PrecMode::Pairs:
      return "pairs";
  }
  return "?";
}

std::string b_mode_name(BMode m) {
  switch (m) {
    case BMode::Image:
      return "image";
    case BMode::Resemblance:
      return "resemblance";
    case BMode::Pairs:
      return "pairs";
  }
  return "?";
}

std::optional<PrecMode> parse_prec_mode(const std::string& s) {
  if (s == "image") return PrecMode::Image;
  if (s == "disjoint") return PrecMode::Disjoint;
  if (s == "pairs") return PrecMode::Pairs;
  return std::nullopt;
}

std::optional<BMode> parse_b_mode(const std::string& s) {
  if (s == "image") return BMode::Image;
  if (s == "resemblance") return BMode::Resemblance;
  if (s == "pairs") return BMode::Pairs;
  return std::nullopt;
}

// --- metric structure on Z -------------------------------------------------

Ends ends_of(const EPSet& a) {
  return {!a.pos_residues().empty(), !a.neg_residues().empty()};
}

namespace {

long long z_scale(const EPSet& a, const EPSet& b) {
  long long l = std::lcm(a.period(), b.period());
  return 2 * l + a.threshold() + b.threshold() + a.finite_radius() +
         b.finite_radius() + 8;
}

EPSet z_ball(long long m) {
  return EPSet::set_inter(EPSet::ray_ge(-m), EPSet::ray_le(m));
}

EPSet z_pos_part(const EPSet& a) { return EPSet::set_inter(a, EPSet::ray_ge(0)); }
EPSet z_neg_part(const EPSet& a) { return EPSet::set_inter(a, EPSet::ray_le(-1)); }

std::vector<long long> z_trace(const EPSet& s, int n) {
  std::vector<long long> out;
  long long span = s.threshold() + (long long)n * s.period() + s.finite_radius() + 2;
  if (!s.pos_residues().empty()) {
    for (long long x = 0; x <= span && (int)out.size() < n; ++x)
      if (s.member(x)) out.push_back(x);
  } else {
    for (long long x = 0; x >= -span && (int)out.size() < n; --x)
      if (s.member(x)) out.push_back(x);
  }
  return out;
}

}  // namespace

RelationResult lambda_rel(const EPSet& a, const EPSet& b) {
  RelationResult res;
  res.mode = "image";
  Ends ea = ends_of(a), eb = ends_of(b);
  bool rule;
  if (a.is_empty() || b.is_empty())
    rule = a.is_empty() && b.is_empty();
  else if (a.is_finite() && b.is_finite())
    rule = true;
  else
    rule = !a.is_finite() && !b.is_finite() && ea.pos == eb.pos && ea.neg == eb.neg;
  if (!rule) {
    res.verdict = Verdict::no();
    return res;
  }
  long long cap = z_scale(a, b);
  for (long long r = 1; r <= cap; ++r) {
    EPSet ia = image(MetricEntourage{r}, a);
    EPSet ib = image(MetricEntourage{r}, b);
    if (EPSet::set_diff(a, ib).is_empty() && EPSet::set_diff(b, ia).is_empty()) {
      res.verdict = Verdict::yes();
      res.witness = {{"r", r}};
      return res;
    }
  }
  throw std::logic_error("lambda radius search exhausted");
}

bool asym_bounded(const EPSet& a) { return bounded(a); }

RelationResult prec(const EPSet& a, const EPSet& b, PrecMode mode) {
  RelationResult res;
  res.mode = prec_mode_name(mode);
  EPSet c = EPSet::complement(b);
  Ends ea = ends_of(a), ec = ends_of(c);
  bool rule = !((ea.pos && ec.pos) || (ea.neg && ec.neg));

  switch (mode) {
    case PrecMode::Image: {
      if (rule) {
        EPSet k = EPSet::set_diff(image(MetricEntourage{2}, a), b);
        res.verdict = Verdict::yes();
        res.witness = {{"r", 2}, {"K", k.finite_elements()}};
      } else {
        long long cap = z_scale(a, c);
        for (long long r = 1; r <= cap; ++r) {
          EPSet escape = EPSet::set_diff(image(MetricEntourage{r}, a), b);
          if (!escape.is_finite()) {
            res.verdict = Verdict::no();
            res.witness = {{"r", r}, {"escape", escape.to_json()}};
            return res;
          }
        }
        throw std::logic_error("prec falsification search exhausted");
      }
      return res;
    }
    case PrecMode::Disjoint: {
      for (int end = 0; end < 2; ++end) {
        EPSet ap = end == 0 ? z_pos_part(a) : z_neg_part(a);
        EPSet cp = end == 0 ? z_pos_part(c) : z_neg_part(c);
        if (ap.is_finite() || cp.is_finite()) continue;
        RelationResult lam = lambda_rel(ap, cp);
        if (lam.verdict.is_true()) {
          res.verdict = Verdict::no();
          res.witness = {{"A1", ap.to_json()}, {"C1", cp.to_json()},
                         {"r", lam.witness.at("r")}};
          return res;
        }
      }
      res.verdict = Verdict::yes();
      return res;
    }
    case PrecMode::Pairs: {
      long long rs = std::lcm(a.period(), c.period()) + 2;
      long long cap = z_scale(a, c) + rs;
      for (long long m = 0; m <= cap; ++m) {
        EPSet ball = z_ball(m);
        EPSet left = EPSet::set_diff(a, ball);
        EPSet right = EPSet::set_diff(c, ball);
        if (EPSet::set_inter(image(MetricEntourage{rs}, left), right).is_empty()) {
          res.verdict = Verdict::yes();
          res.witness = {{"r", rs}, {"D_radius", m}};
          return res;
        }
      }
      res.verdict = Verdict::no();
      res.witness = {{"r", rs}};
      return res;
    }
  }
  return res;
}

RelationResult b_rel(const EPSet& a, const EPSet& b, BMode mode) {
  RelationResult res;
  res.mode = b_mode_name(mode);
  switch (mode) {
    case BMode::Image: {
      long long cap = std::lcm(a.period(), b.period()) + 2;
      for (long long r = 1; r <= cap; ++r) {
        EPSet s = EPSet::set_inter(image(MetricEntourage{r}, a), b);
        if (!s.is_finite()) {
          res.verdict = Verdict::yes();
          res.witness = {{"r", r}, {"trace", z_trace(s, 10)}};
          return res;
        }
      }
      res.verdict = Verdict::no();
      res.witness = {{"r_max", cap}};
      return res;
    }
    case BMode::Resemblance: {
      for (int end = 0; end < 2; ++end) {
        EPSet ap = end == 0 ? z_pos_part(a) : z_neg_part(a);
        EPSet bp = end == 0 ? z_pos_part(b) : z_neg_part(b);
        if (ap.is_finite() || bp.is_finite()) continue;
        RelationResult lam = lambda_rel(ap, bp);
        if (lam.verdict.is_true()) {
          res.verdict = Verdict::yes();
          res.witness = {{"A1", ap.to_json()}, {"B1", bp.to_json()},
                         {"r", lam.witness.at("r")}};
          return res;
        }
      }
      res.verdict = Verdict::no();
      return res;
    }
    case BMode::Pairs: {
      long long rs = std::lcm(a.period(), b.period()) + 2;
      long long m = z_scale(a, b) + rs;
      EPSet ball = z_ball(m);
      EPSet s = EPSet::set_inter(image(MetricEntourage{rs}, EPSet::set_diff(a, ball)),
                                 EPSet::set_diff(b, ball));
      if (!s.is_empty()) {
        res.verdict = Verdict::yes();
        res.witness = {{"r", rs}, {"beyond", m}};
      } else {
        res.verdict = Verdict::no();
        res.witness = {{"r", rs}, {"D_radius", m}};
      }
      return res;
    }
  }
  return res;
}

RelationResult nbhd(const EPSet& a, const EPSet& b) {
  RelationResult inner = b_rel(a, EPSet::complement(b), BMode::Image);
  RelationResult res;
  res.mode = "nbhd";
  res.verdict = inner.verdict.is_true() ? Verdict::no() : Verdict::yes();
  res.witness = inner.witness;
  return res;
}

// --- half-line structure on Q>=0 -------------------------------------------

namespace {

// Closeness in terms of content: tails meet every infinite set, intervals
// meet interval content, progressions meet progressions.
bool q_b_rule(const QSet& a, const QSet& b) {
  if (a.is_finite_set() || b.is_finite_set()) return false;
  if (a.has_tail_interval() || b.has_tail_interval()) return true;
  if (a.has_bounded_interval() && b.has_interval_content()) return true;
  if (b.has_bounded_interval() && a.has_interval_content()) return true;
  return a.has_ap_tail() && b.has_ap_tail();
}

bool q_lambda_rule(const QSet& a, const QSet& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  if (a.is_finite_set() || b.is_finite_set())
    return a.is_finite_set() && b.is_finite_set();
  if (a.has_tail_interval() != b.has_tail_interval()) return false;
  if (a.has_bounded_interval() && !b.has_interval_content()) return false;
  if (b.has_bounded_interval() && !a.has_interval_content()) return false;
  if (a.has_ap_tail() && !(b.has_tail_interval() || b.has_ap_tail())) return false;
  if (b.has_ap_tail() && !(a.has_tail_interval() || a.has_ap_tail())) return false;
  return true;
}

std::vector<Rat> salient_points(const QSet& s) {
  std::vector<Rat> v;
  int budget = 4;
  for (const QInterval& iv : s.intervals()) {
    v.push_back(iv.lo);
    if (iv.hi) v.push_back(*iv.hi);
    if (--budget == 0) break;
  }
  budget = 4;
  for (const RatAP& ap : s.sprinkled().aps()) {
    v.push_back(ap.a);
    if (--budget == 0) break;
  }
  budget = 2;
  for (const Rat& x : s.sprinkled().extra()) {
    v.push_back(x);
    if (--budget == 0) break;
  }
  return v;
}

std::vector<ZAP> cross_lattices(const QSet& a, const QSet& c) {
  std::vector<ZAP> lat;
  std::vector<RatAP> left, right;
  auto gather = [](const QSet& s, std::vector<RatAP>& out) {
    for (const RatAP& ap : s.excised().aps()) out.push_back(ap);
    for (const RatAP& ap : s.sprinkled().aps()) out.push_back(ap);
  };
  gather(a, left);
  gather(c, right);
  for (const RatAP& p : left)
    for (const RatAP& q : right) lat.push_back(solve_offset(p, q));
  // self differences, for shifted-copy hole avoidance
  for (const RatAP& p : left)
    for (const RatAP& q : left) lat.push_back(solve_offset(p, q));
  for (const RatAP& p : right)
    for (const RatAP& q : right) lat.push_back(solve_offset(p, q));
  return lat;
}

QSet entourage_overlap(const Rat& off, const QSet& a, const QSet& c) {
  return QSet::set_inter(image(make_halfline({off}), a), c);
}

std::optional<std::pair<Rat, QSet>> find_infinite_overlap(const QSet& a,
                                                          const QSet& c) {
  for (const Rat& off : offset_pool(a, c)) {
    QSet s = entourage_overlap(off, a, c);
    if (!s.is_finite_set()) return std::make_pair(off, s);
  }
  return std::nullopt;
}

}  // namespace

std::vector<Rat> offset_pool(const QSet& a, const QSet& c) {
  std::set<Rat> pool{Rat(0)};
  std::vector<Rat> pa = salient_points(a), pc = salient_points(c);
  for (const Rat& p : pa)
    for (const Rat& q : pc) pool.insert(q - p);
  for (const RatAP& apA : a.sprinkled().aps())
    for (const RatAP& apC : c.sprinkled().aps())
      pool.insert(solve_offset(apA, apC).anchor);
  Rat av = avoid_offset(cross_lattices(a, c));
  std::set<Rat> shifted;
  for (const Rat& base : pool) shifted.insert(base + av);
  pool.insert(av);
  pool.insert(-av);
  pool.insert(shifted.begin(), shifted.end());
  return std::vector<Rat>(pool.begin(), pool.end());
}

std::optional<Rat> some_element(const QSet& a) {
  for (const QInterval& iv : a.intervals()) {
    Rat width = iv.hi ? *iv.hi - iv.lo : Rat(1);
    for (long long k = 1; k <= 64; ++k) {
      Rat x = iv.lo + width * Rat(k, 128);
      if (a.member(x)) return x;
    }
    if (a.member(iv.lo)) return iv.lo;
  }
  for (const RatAP& ap : a.sprinkled().aps())
    for (long long k = 0; k <= 64; ++k) {
      Rat x = ap.a + ap.d * Rat(k);
      if (a.member(x)) return x;
    }
  for (const Rat& x : a.sprinkled().extra())
    if (a.member(x)) return x;
  return std::nullopt;
}

namespace {

// Offsets making E[src] cover tgt, for content combinations the lambda rule
// admits. Returns nullopt if the residual never becomes finite.
std::optional<std::set<Rat>> cover_direction(const QSet& tgt, const QSet& src) {
  std::set<Rat> offs{Rat(0)};
  // alignment and chain offsets
  for (const QInterval& it : tgt.intervals()) {
    for (const QInterval& is : src.intervals()) {
      if (!is.hi) {
        offs.insert(it.lo - is.lo);
        continue;
      }
      if (!it.hi) continue;  // bounded source cannot reach a tail
      Rat len = *is.hi - is.lo;
      Rat step = len / Rat(2);
      Rat span = *it.hi - it.lo;
      long long n = (span / step).ceil() + 1;
      for (long long j = 0; j <= n; ++j)
        offs.insert((it.lo - is.lo) - len / Rat(4) + step * Rat(j));
    }
  }
  for (const RatAP& apt : tgt.sprinkled().aps()) {
    for (const QInterval& is : src.intervals())
      if (!is.hi) offs.insert(apt.a - is.lo);
    for (const RatAP& aps : src.sprinkled().aps()) {
      Rat g = rat_gcd(apt.d, aps.d);
      long long classes = (aps.d / g).num;  // aps.d/g is integral over g-steps
      // translate j catches target indices congruent to j
      for (long long j = 0; j < classes; ++j)
        offs.insert((apt.a - aps.a) + apt.d * Rat(j));
    }
  }
  // hole avoidance: a generically shifted copy of every offset
  Rat av = avoid_offset(cross_lattices(src, tgt));
  std::set<Rat> extra;
  for (const Rat& c : offs) extra.insert(c + av);
  offs.insert(extra.begin(), extra.end());

  std::optional<Rat> anchor = some_element(src);
  if (!anchor) return std::nullopt;
  for (int round = 0; round < 6; ++round) {
    QSet uncovered = QSet::set_diff(tgt, image(make_halfline(offs), src));
    if (uncovered.is_empty()) return offs;
    if (!uncovered.is_finite_set()) return std::nullopt;
    for (const Rat& u : uncovered.finite_elements()) offs.insert(u - *anchor);
  }
  return std::nullopt;
}

}  // namespace

std::optional<HalfLineEntourage> lambda_cover(const QSet& a, const QSet& b) {
  if (a.is_empty() && b.is_empty()) return make_halfline({});
  if (!q_lambda_rule(a, b)) return std::nullopt;
  auto fwd = cover_direction(a, b);
  auto bwd = cover_direction(b, a);
  if (!fwd || !bwd) return std::nullopt;
  std::set<Rat> all = *fwd;
  for (const Rat& c : *bwd) all.insert(-c);
  return make_halfline(std::move(all));
}

RelationResult lambda_rel(const QSet& a, const QSet& b) {
  RelationResult res;
  res.mode = "image";
  auto cover = lambda_cover(a, b);
  if (cover) {
    res.verdict = Verdict::yes();
    nlohmann::json offs = nlohmann::json::array();
    for (const Rat& c : cover->offsets) offs.push_back(c.str());
    res.witness = {{"offsets", offs}};
  } else {
    if (q_lambda_rule(a, b))
      throw std::logic_error("lambda cover construction failed on a related pair");
    res.verdict = Verdict::no();
  }
  return res;
}

bool asym_bounded(const QSet& a) { return bounded(a); }

namespace {

nlohmann::json q_subset_witness(const Rat& off, const QSet& a, const QSet& s) {
  QSet pre = QSet::set_inter(
      a, QSet::set_union(QSet::set_union(s.shifted(-off), s.shifted(off)), s));
  return {{"offset", off.str()}, {"A1", pre.to_json()}, {"C1", s.to_json()}};
}

}  // namespace

RelationResult prec(const QSet& a, const QSet& b, PrecMode mode) {
  RelationResult res;
  res.mode = prec_mode_name(mode);
  QSet c = QSet::complement(b);
  bool rule = !q_b_rule(a, c);
  switch (mode) {
    case PrecMode::Image: {
      if (rule) {
        QSet k = entourage_overlap(Rat(1), a, c);
        res.verdict = Verdict::yes();
        nlohmann::json ke = nlohmann::json::array();
        for (const Rat& x : k.finite_elements()) ke.push_back(x.str());
        res.witness = {{"offsets", {"1"}}, {"K", ke}};
      } else {
        auto ov = find_infinite_overlap(a, c);
        if (!ov) throw std::logic_error("offset pool missed a falsifying shift");
        res.verdict = Verdict::no();
        res.witness = {{"offset", ov->first.str()}, {"escape", ov->second.to_json()}};
      }
      return res;
    }
    case PrecMode::Disjoint: {
      auto ov = find_infinite_overlap(a, c);
      if (ov) {
        res.verdict = Verdict::no();
        res.witness = q_subset_witness(ov->first, a, ov->second);
      } else {
        res.verdict = Verdict::yes();
      }
      return res;
    }
    case PrecMode::Pairs: {
      std::vector<Rat> probes{Rat(0), Rat(1)};
      auto ov = find_infinite_overlap(a, c);
      if (ov) probes.push_back(ov->first);
      for (const Rat& off : probes) {
        QSet s = entourage_overlap(off, a, c);
        if (!s.is_finite_set()) {
          res.verdict = Verdict::no();
          res.witness = {{"offset", off.str()}};
          return res;
        }
      }
      // each probe admits the finite exception set D = overlap u preimage
      nlohmann::json ds = nlohmann::json::array();
      for (const Rat& off : probes) {
        QSet s = entourage_overlap(off, a, c);
        for (const Rat& x : s.finite_elements()) ds.push_back(x.str());
      }
      res.verdict = Verdict::yes();
      res.witness = {{"D", ds}};
      return res;
    }
  }
  return res;
}

RelationResult b_rel(const QSet& a, const QSet& b, BMode mode) {
  RelationResult res;
  res.mode = b_mode_name(mode);
  switch (mode) {
    case BMode::Image: {
      auto ov = find_infinite_overlap(a, b);
      if (ov) {
        res.verdict = Verdict::yes();
        res.witness = {{"offset", ov->first.str()}, {"overlap", ov->second.to_json()}};
      } else {
        if (q_b_rule(a, b))
          throw std::logic_error("offset pool missed a closeness witness");
        res.verdict = Verdict::no();
      }
      return res;
    }
    case BMode::Resemblance: {
      auto ov = find_infinite_overlap(a, b);
      if (ov) {
        res.verdict = Verdict::yes();
        res.witness = q_subset_witness(ov->first, a, ov->second);
      } else {
        res.verdict = Verdict::no();
      }
      return res;
    }
    case BMode::Pairs: {
      std::vector<Rat> probes{Rat(0), Rat(1)};
      auto ov = find_infinite_overlap(a, b);
      if (ov) probes.push_back(ov->first);
      for (const Rat& off : probes) {
        QSet s = entourage_overlap(off, a, b);
        if (!s.is_finite_set()) {
          res.verdict = Verdict::yes();
          res.witness = {{"offset", off.str()}};
          return res;
        }
      }
      res.verdict = Verdict::no();
      return res;
    }
  }
  return res;
}

RelationResult nbhd(const QSet& a, const QSet& b) {
  RelationResult inner = b_rel(a, QSet::complement(b), BMode::Image);
  RelationResult res;
  res.mode = "nbhd";
  res.verdict = inner.verdict.is_true() ? Verdict::no() : Verdict::yes();
  res.witness = inner.witness;
  return res;
}

// --- derived relations -----------------------------------------------------

ZRel derive_b_from_nbhd(ZRel nbhd_eval) {
  return [nbhd_eval](const EPSet& a, const EPSet& b) {
    return !nbhd_eval(a, EPSet::complement(b));
  };
}

QRel derive_b_from_nbhd(QRel nbhd_eval) {
  return [nbhd_eval](const QSet& a, const QSet& b) {
    return !nbhd_eval(a, QSet::complement(b));
  };
}

ZRel derive_nbhd_from_b(ZRel b_eval) {
  return [b_eval](const EPSet& a, const EPSet& b) {
    return !b_eval(a, EPSet::complement(b));
  };
}

QRel derive_nbhd_from_b(QRel b_eval) {
  return [b_eval](const QSet& a, const QSet& b) {
    return !b_eval(a, QSet::complement(b));
  };
}

}  // namespace coarseprox
