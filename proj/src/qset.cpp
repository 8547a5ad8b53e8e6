#include "coarseprox/qset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace coarseprox {

// --- ap_kernel -------------------------------------------------------------

namespace {

long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long mod_pos_ll(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::optional<RatAP> ap_intersect(const RatAP& p, const RatAP& q) {
  long long M = std::lcm(std::lcm(p.a.den, p.d.den), std::lcm(q.a.den, q.d.den));
  long long a1 = p.a.num * (M / p.a.den), d1 = p.d.num * (M / p.d.den);
  long long a2 = q.a.num * (M / q.a.den), d2 = q.d.num * (M / q.d.den);
  long long g = std::gcd(d1, d2);
  if (mod_pos_ll(a2 - a1, g) != 0) return std::nullopt;
  long long l = d1 / g * d2;
  // x = a1 + d1*t, x == a2 (mod d2)  =>  t == (a2-a1)/g * inv(d1/g) (mod d2/g)
  long long m = d2 / g;
  long long x, y;
  egcd(mod_pos_ll(d1 / g, m), m, x, y);
  long long t = (__int128)mod_pos_ll((a2 - a1) / g, m) * mod_pos_ll(x, m) % m;
  long long x0 = a1 + d1 * t;
  long long lo = std::max(a1, a2);
  if (x0 < lo) x0 += (lo - x0 + l - 1) / l * l;
  return RatAP(Rat(x0, M), Rat(l, M));
}

bool ap_intersection_infinite(const RatAP& p, const RatAP& q) {
  return ap_intersect(p, q).has_value();
}

APSubtractResult ap_subtract(const RatAP& p, const std::vector<RatAP>& qs) {
  APSubtractResult res;
  res.aps.push_back(p);
  for (const RatAP& q : qs) {
    APSubtractResult next;
    next.points = res.points;
    for (const RatAP& piece : res.aps) {
      auto inter = ap_intersect(piece, q);
      if (!inter) {
        next.aps.push_back(piece);
        continue;
      }
      Rat l = inter->d;                      // multiple of piece.d
      long long classes = (l / piece.d).num; // l/piece.d is a positive integer
      // Split piece into residue classes of step l; drop the class of the
      // intersection, keeping its finitely many elements below inter->a.
      for (long long i = 0; i < classes; ++i) {
        Rat anchor = piece.a + piece.d * Rat(i);
        if (((inter->a - anchor) / l).is_integer()) {
          for (Rat v = anchor; v < inter->a; v = v + l) next.points.insert(v);
        } else {
          next.aps.emplace_back(anchor, l);
        }
      }
    }
    // Points may be swallowed by later progressions in qs.
    std::set<Rat> kept;
    for (const Rat& v : next.points)
      if (!q.member(v)) kept.insert(v);
    next.points = std::move(kept);
    res = std::move(next);
  }
  return res;
}

ZAP solve_offset(const RatAP& src, const RatAP& tgt) {
  return ZAP{tgt.a - src.a, rat_gcd(src.d, tgt.d)};
}

// --- intervals -------------------------------------------------------------

namespace {

// Boundary key: (value, eps) with eps in {-1,0,1}; lower bound of an open
// interval sits just after its value, upper bound just before.
struct BKey {
  Rat v;
  int eps;
};
bool bkey_le(const BKey& a, const BKey& b) {
  return a.v < b.v || (a.v == b.v && a.eps <= b.eps);
}

BKey low_key(const QInterval& iv) { return {iv.lo, iv.lo_open ? 1 : 0}; }
BKey high_key(const QInterval& iv) { return {*iv.hi, iv.hi_open ? -1 : 0}; }

}  // namespace

bool QInterval::member(const Rat& x) const {
  if (x < lo || (x == lo && lo_open)) return false;
  if (!hi) return true;
  return x < *hi || (x == *hi && !hi_open);
}

IntervalNormalized iv_normalize(std::vector<QInterval> raw) {
  IntervalNormalized out;
  std::vector<QInterval> live;
  for (auto& iv : raw) {
    if (iv.lo < Rat(0)) throw std::invalid_argument("interval below 0");
    if (iv.unbounded()) {
      live.push_back(iv);
      continue;
    }
    BKey l = low_key(iv), h = high_key(iv);
    if (!bkey_le(l, h)) continue;  // empty
    if (l.v == h.v && l.eps == h.eps) {
      out.points.insert(l.v);  // degenerate [a,a]
      continue;
    }
    live.push_back(iv);
  }
  std::sort(live.begin(), live.end(), [](const QInterval& a, const QInterval& b) {
    BKey la = low_key(a), lb = low_key(b);
    return la.v < lb.v || (la.v == lb.v && la.eps < lb.eps);
  });
  for (const auto& iv : live) {
    if (!out.intervals.empty()) {
      QInterval& cur = out.intervals.back();
      if (cur.unbounded()) continue;
      BKey ch = high_key(cur);
      BKey nl = low_key(iv);
      bool contiguous = nl.v < ch.v || (nl.v == ch.v && nl.eps <= ch.eps + 1);
      if (contiguous) {
        if (iv.unbounded()) {
          cur.hi.reset();
          cur.hi_open = true;
        } else if (bkey_le(ch, high_key(iv))) {
          cur.hi = iv.hi;
          cur.hi_open = iv.hi_open;
        }
        continue;
      }
    }
    out.intervals.push_back(iv);
  }
  return out;
}

IntervalNormalized iv_union(const IntervalList& a, const IntervalList& b) {
  std::vector<QInterval> raw(a.begin(), a.end());
  raw.insert(raw.end(), b.begin(), b.end());
  return iv_normalize(std::move(raw));
}

IntervalNormalized iv_complement(const IntervalList& ivs) {
  std::vector<QInterval> raw;
  Rat cur(0);
  bool cur_open = false;  // next gap starts at cur, closed unless flagged
  bool done = false;
  for (const auto& iv : ivs) {
    QInterval gap{cur, cur_open, iv.lo, !iv.lo_open};
    raw.push_back(gap);
    if (iv.unbounded()) {
      done = true;
      break;
    }
    cur = *iv.hi;
    cur_open = !iv.hi_open;
  }
  if (!done) raw.push_back(QInterval{cur, cur_open, std::nullopt, true});
  return iv_normalize(std::move(raw));
}

bool iv_member(const IntervalList& ivs, const Rat& x) {
  for (const auto& iv : ivs)
    if (iv.member(x)) return true;
  return false;
}

bool iv_has_unbounded(const IntervalList& ivs) {
  for (const auto& iv : ivs)
    if (iv.unbounded()) return true;
  return false;
}

// --- DiscreteSet -----------------------------------------------------------

DiscreteSet DiscreteSet::from_points(const std::set<Rat>& pts) {
  return normalize({}, pts, {});
}

DiscreteSet DiscreteSet::from_ap(const RatAP& ap) {
  return normalize({ap}, {}, {});
}

DiscreteSet DiscreteSet::normalize(std::vector<RatAP> aps, std::set<Rat> extra,
                                   std::set<Rat> removed) {
  DiscreteSet raw;
  raw.aps_ = aps;
  raw.extra_ = extra;
  raw.removed_ = removed;

  DiscreteSet out;
  std::sort(aps.begin(), aps.end());
  for (const RatAP& ap : aps) {
    bool redundant = false;
    for (const RatAP& kept : out.aps_)
      if (kept.contains(ap)) {
        redundant = true;
        break;
      }
    if (!redundant) out.aps_.push_back(ap);
  }
  std::set<Rat> specials = extra;
  specials.insert(removed.begin(), removed.end());
  for (const Rat& x : specials) {
    bool m = raw.member(x);
    bool c = out.cover_member(x);
    if (c && !m) out.removed_.insert(x);
    if (!c && m) out.extra_.insert(x);
  }
  return out;
}

bool DiscreteSet::cover_member(const Rat& x) const {
  for (const RatAP& ap : aps_)
    if (ap.member(x)) return true;
  return false;
}

bool DiscreteSet::member(const Rat& x) const {
  if (extra_.count(x)) return true;
  if (removed_.count(x)) return false;
  return cover_member(x);
}

bool DiscreteSet::is_empty() const {
  return aps_.empty() && extra_.empty();
}

namespace {

DiscreteSet fixup(std::vector<RatAP> aps, std::set<Rat> base,
                  const std::set<Rat>& candidates,
                  const std::function<bool(const Rat&)>& pred) {
  DiscreteSet d = DiscreteSet::normalize(std::move(aps), std::move(base), {});
  for (const Rat& c : candidates) d = d.with_membership(c, pred(c));
  return d;
}

std::set<Rat> specials_of(const DiscreteSet& a, const DiscreteSet& b) {
  std::set<Rat> s = a.extra();
  s.insert(a.removed().begin(), a.removed().end());
  s.insert(b.extra().begin(), b.extra().end());
  s.insert(b.removed().begin(), b.removed().end());
  return s;
}

}  // namespace

DiscreteSet DiscreteSet::with_membership(const Rat& x, bool m) const {
  if (member(x) == m) return *this;
  DiscreteSet out = *this;
  if (m) {
    if (out.cover_member(x))
      out.removed_.erase(x);
    else
      out.extra_.insert(x);
  } else {
    if (out.extra_.count(x))
      out.extra_.erase(x);
    else
      out.removed_.insert(x);
  }
  return out;
}

DiscreteSet DiscreteSet::set_union(const DiscreteSet& a, const DiscreteSet& b) {
  std::vector<RatAP> aps = a.aps_;
  aps.insert(aps.end(), b.aps_.begin(), b.aps_.end());
  return fixup(std::move(aps), {}, specials_of(a, b),
               [&](const Rat& x) { return a.member(x) || b.member(x); });
}

DiscreteSet DiscreteSet::set_inter(const DiscreteSet& a, const DiscreteSet& b) {
  std::vector<RatAP> aps;
  for (const RatAP& p : a.aps_)
    for (const RatAP& q : b.aps_)
      if (auto i = ap_intersect(p, q)) aps.push_back(*i);
  return fixup(std::move(aps), {}, specials_of(a, b),
               [&](const Rat& x) { return a.member(x) && b.member(x); });
}

DiscreteSet DiscreteSet::set_diff(const DiscreteSet& a, const DiscreteSet& b) {
  std::vector<RatAP> aps;
  std::set<Rat> pts;
  for (const RatAP& p : a.aps_) {
    APSubtractResult r = ap_subtract(p, b.aps_);
    aps.insert(aps.end(), r.aps.begin(), r.aps.end());
    pts.insert(r.points.begin(), r.points.end());
  }
  std::set<Rat> cands = specials_of(a, b);
  cands.insert(pts.begin(), pts.end());
  return fixup(std::move(aps), std::move(pts), cands,
               [&](const Rat& x) { return a.member(x) && !b.member(x); });
}

DiscreteSet DiscreteSet::restrict_to(const IntervalList& ivs) const {
  std::vector<RatAP> aps;
  std::set<Rat> pts;
  for (const RatAP& ap : aps_) {
    for (const QInterval& iv : ivs) {
      if (iv.unbounded()) {
        Rat k0(0);
        if (ap.a < iv.lo) k0 = Rat(((iv.lo - ap.a) / ap.d).ceil());
        Rat anchor = ap.a + ap.d * k0;
        if (anchor == iv.lo && iv.lo_open) anchor = anchor + ap.d;
        aps.emplace_back(anchor, ap.d);
      } else {
        long long k0 = 0, k1 = ((*iv.hi - ap.a) / ap.d).floor();
        if (ap.a < iv.lo) k0 = ((iv.lo - ap.a) / ap.d).ceil();
        for (long long k = k0; k <= k1; ++k) {
          Rat v = ap.a + ap.d * Rat(k);
          if (iv.member(v)) pts.insert(v);
        }
      }
    }
  }
  std::set<Rat> cands = specials_of(*this, DiscreteSet());
  cands.insert(pts.begin(), pts.end());
  return fixup(std::move(aps), std::move(pts), cands, [&](const Rat& x) {
    return member(x) && iv_member(ivs, x);
  });
}

DiscreteSet DiscreteSet::subtract_intervals(const IntervalList& ivs) const {
  IntervalNormalized comp = iv_complement(ivs);
  DiscreteSet r = restrict_to(comp.intervals);
  for (const Rat& p : comp.points) r = r.with_membership(p, member(p));
  return r;
}

DiscreteSet DiscreteSet::shifted(const Rat& c) const {
  std::vector<RatAP> aps;
  for (const RatAP& ap : aps_) {
    Rat anchor = ap.a + c;
    if (anchor < Rat(0)) {
      Rat k0 = Rat(((-anchor) / ap.d).ceil());
      anchor = anchor + ap.d * k0;
    }
    aps.emplace_back(anchor, ap.d);
  }
  std::set<Rat> cands;
  for (const Rat& x : extra_)
    if (x + c >= Rat(0)) cands.insert(x + c);
  for (const Rat& x : removed_)
    if (x + c >= Rat(0)) cands.insert(x + c);
  return fixup(std::move(aps), {}, cands, [&](const Rat& x) {
    return x - c >= Rat(0) && member(x - c);
  });
}

std::vector<Rat> DiscreteSet::elements_upto(const Rat& bound) const {
  std::set<Rat> out;
  for (const RatAP& ap : aps_)
    for (Rat v = ap.a; v <= bound; v = v + ap.d)
      if (!removed_.count(v)) out.insert(v);
  for (const Rat& x : extra_)
    if (x <= bound) out.insert(x);
  return std::vector<Rat>(out.begin(), out.end());
}

std::vector<Rat> DiscreteSet::structural_rationals() const {
  std::vector<Rat> out;
  for (const RatAP& ap : aps_) {
    out.push_back(ap.a);
    out.push_back(ap.d);
  }
  out.insert(out.end(), extra_.begin(), extra_.end());
  out.insert(out.end(), removed_.begin(), removed_.end());
  return out;
}

nlohmann::json DiscreteSet::to_json() const {
  nlohmann::json aps = nlohmann::json::array();
  for (const RatAP& ap : aps_)
    aps.push_back({{"a", ap.a.str()}, {"d", ap.d.str()}});
  nlohmann::json extra = nlohmann::json::array(), removed = nlohmann::json::array();
  for (const Rat& x : extra_) extra.push_back(x.str());
  for (const Rat& x : removed_) removed.push_back(x.str());
  return {{"aps", aps}, {"extra", extra}, {"removed", removed}};
}

DiscreteSet DiscreteSet::from_json(const nlohmann::json& j) {
  std::vector<RatAP> aps;
  std::set<Rat> extra, removed;
  for (const auto& ap : j.at("aps"))
    aps.emplace_back(parse_rat(ap.at("a").get<std::string>()),
                     parse_rat(ap.at("d").get<std::string>()));
  for (const auto& x : j.at("extra")) extra.insert(parse_rat(x.get<std::string>()));
  for (const auto& x : j.at("removed")) removed.insert(parse_rat(x.get<std::string>()));
  return normalize(std::move(aps), std::move(extra), std::move(removed));
}

// --- QSet ------------------------------------------------------------------

QSet QSet::empty() { return QSet(); }

QSet QSet::all() {
  QSet s;
  s.u_.push_back(QInterval{Rat(0), false, std::nullopt, true});
  return s;
}

QSet QSet::interval(Rat lo, bool lo_open, std::optional<Rat> hi, bool hi_open) {
  std::vector<QInterval> raw{QInterval{lo, lo_open, hi, hi_open}};
  QInterval iv = raw[0];
  return assemble(raw, DiscreteSet(), DiscreteSet(),
                  [&](const Rat& x) { return iv.member(x); }, {});
}

QSet QSet::nat() { return from_ap(RatAP(Rat(0), Rat(1))); }

QSet QSet::from_discrete(const DiscreteSet& d) {
  QSet s;
  s.q_ = d;
  return s;
}

QSet QSet::singleton(const Rat& x) { return from_discrete(DiscreteSet::from_points({x})); }

QSet QSet::assemble(const std::vector<QInterval>& rawU, DiscreteSet P,
                    DiscreteSet Q, const std::function<bool(const Rat&)>& pred,
                    std::set<Rat> candidates) {
  IntervalNormalized norm = iv_normalize(rawU);
  candidates.insert(norm.points.begin(), norm.points.end());
  for (const QInterval& iv : norm.intervals) {
    candidates.insert(iv.lo);
    if (iv.hi) candidates.insert(*iv.hi);
  }
  QSet out;
  out.u_ = norm.intervals;
  out.p_ = DiscreteSet::set_diff(P, Q).restrict_to(out.u_);
  out.q_ = Q.subtract_intervals(out.u_);
  for (const Rat& c : candidates) {
    if (c < Rat(0)) continue;
    if (iv_member(out.u_, c))
      out.p_ = out.p_.with_membership(c, !pred(c));
    else
      out.q_ = out.q_.with_membership(c, pred(c));
  }
  return out;
}

bool QSet::member(const Rat& x) const {
  if (x < Rat(0)) throw std::invalid_argument("QSet::member: negative argument");
  if (iv_member(u_, x)) return !p_.member(x);
  return q_.member(x);
}

QSet QSet::set_union(const QSet& a, const QSet& b) {
  IntervalNormalized u = iv_union(a.u_, b.u_);
  DiscreteSet P = DiscreteSet::set_union(
      DiscreteSet::set_inter(a.p_, b.p_),
      DiscreteSet::set_union(
          DiscreteSet::set_diff(a.p_.subtract_intervals(b.u_), b.q_),
          DiscreteSet::set_diff(b.p_.subtract_intervals(a.u_), a.q_)));
  DiscreteSet Q = DiscreteSet::set_union(a.q_, b.q_);
  std::set<Rat> cands = specials_of(a.p_, a.q_);
  std::set<Rat> more = specials_of(b.p_, b.q_);
  cands.insert(more.begin(), more.end());
  std::vector<QInterval> raw(u.intervals.begin(), u.intervals.end());
  return assemble(raw, P, Q,
                  [&](const Rat& x) { return a.member(x) || b.member(x); },
                  std::move(cands));
}

QSet QSet::complement(const QSet& a) {
  IntervalNormalized comp = iv_complement(a.u_);
  std::set<Rat> cands = specials_of(a.p_, a.q_);
  cands.insert(comp.points.begin(), comp.points.end());
  std::vector<QInterval> raw(comp.intervals.begin(), comp.intervals.end());
  return assemble(raw, a.q_, a.p_,
                  [&](const Rat& x) { return !a.member(x); }, std::move(cands));
}

QSet QSet::set_inter(const QSet& a, const QSet& b) {
  return complement(set_union(complement(a), complement(b)));
}

QSet QSet::set_diff(const QSet& a, const QSet& b) {
  return set_inter(a, complement(b));
}

QSet QSet::shifted(const Rat& c) const {
  std::vector<QInterval> raw;
  std::set<Rat> cands{Rat(0)};
  for (const QInterval& iv : u_) {
    QInterval s = iv;
    s.lo = iv.lo + c;
    if (iv.hi) s.hi = *iv.hi + c;
    if (s.hi && (*s.hi < Rat(0) || (*s.hi == Rat(0) && s.hi_open))) continue;
    if (s.lo < Rat(0)) {
      s.lo = Rat(0);
      s.lo_open = false;
    }
    raw.push_back(s);
    cands.insert(s.lo);
    if (s.hi) cands.insert(*s.hi);
  }
  DiscreteSet P = p_.shifted(c), Q = q_.shifted(c);
  std::set<Rat> sp = specials_of(P, Q);
  cands.insert(sp.begin(), sp.end());
  return assemble(raw, P, Q,
                  [&](const Rat& x) { return x - c >= Rat(0) && member(x - c); },
                  std::move(cands));
}

bool QSet::has_bounded_interval() const {
  for (const auto& iv : u_)
    if (!iv.unbounded()) return true;
  return false;
}

std::vector<Rat> QSet::finite_elements() const {
  if (!is_finite_set()) throw std::logic_error("finite_elements on infinite QSet");
  return std::vector<Rat>(q_.extra().begin(), q_.extra().end());
}

std::vector<Rat> QSet::structural_rationals() const {
  std::vector<Rat> out;
  for (const QInterval& iv : u_) {
    out.push_back(iv.lo);
    if (iv.hi) out.push_back(*iv.hi);
  }
  auto pp = p_.structural_rationals();
  auto qq = q_.structural_rationals();
  out.insert(out.end(), pp.begin(), pp.end());
  out.insert(out.end(), qq.begin(), qq.end());
  return out;
}

nlohmann::json QSet::to_json() const {
  nlohmann::json u = nlohmann::json::array();
  for (const QInterval& iv : u_)
    u.push_back({iv.lo.str(), iv.hi ? iv.hi->str() : "inf", iv.lo_open, iv.hi_open});
  return {{"U", u}, {"P", p_.to_json()}, {"Q", q_.to_json()}};
}

QSet QSet::from_json(const nlohmann::json& j) {
  QSet s;
  for (const auto& e : j.at("U")) {
    QInterval iv;
    iv.lo = parse_rat(e.at(0).get<std::string>());
    std::string hi = e.at(1).get<std::string>();
    if (hi != "inf") iv.hi = parse_rat(hi);
    iv.lo_open = e.at(2).get<bool>();
    iv.hi_open = e.at(3).get<bool>();
    s.u_.push_back(iv);
  }
  s.p_ = DiscreteSet::from_json(j.at("P"));
  s.q_ = DiscreteSet::from_json(j.at("Q"));
  // Re-assemble so the invariants hold even for hand-written files.
  std::vector<QInterval> raw(s.u_.begin(), s.u_.end());
  QSet copy = s;
  std::set<Rat> cands = specials_of(s.p_, s.q_);
  return assemble(raw, s.p_, s.q_,
                  [copy](const Rat& x) { return copy.member(x); }, std::move(cands));
}

std::string QSet::describe() const { return to_json().dump(); }

}  // namespace coarseprox
