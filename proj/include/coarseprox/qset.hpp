#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarseprox/rat.hpp"

namespace coarseprox {

/// Arithmetic progression {a + d*k : k >= 0} in Q>=0. d > 0, a >= 0.
struct RatAP {
  Rat a;
  Rat d;

  RatAP(Rat anchor, Rat step) : a(anchor), d(step) {
    if (!(d > Rat(0))) throw std::invalid_argument("RatAP: step must be > 0");
    if (a < Rat(0)) throw std::invalid_argument("RatAP: anchor must be >= 0");
  }

  bool member(const Rat& x) const {
    if (x < a) return false;
    return ((x - a) / d).is_integer();
  }
  /// true iff other is a subset of this.
  bool contains(const RatAP& other) const {
    return member(other.a) && (other.d / d).is_integer();
  }
  friend bool operator==(const RatAP& p, const RatAP& q) {
    return p.a == q.a && p.d == q.d;
  }
  friend bool operator<(const RatAP& p, const RatAP& q) {
    return p.a < q.a || (p.a == q.a && p.d < q.d);
  }
};

/// Two-sided lattice {anchor + step*k : k in Z}, step > 0. Used for offset
/// sets: the offsets c making two progressions meet infinitely often form
/// such a lattice.
struct ZAP {
  Rat anchor;
  Rat step;

  bool member(const Rat& c) const { return ((c - anchor) / step).is_integer(); }
};

// --- ap_kernel -------------------------------------------------------------

/// Exact intersection of two progressions: empty or again a progression with
/// step lcm(d1, d2) over Q.
std::optional<RatAP> ap_intersect(const RatAP& p, const RatAP& q);

bool ap_intersection_infinite(const RatAP& p, const RatAP& q);

struct APSubtractResult {
  std::vector<RatAP> aps;
  std::set<Rat> points;  // finite leftovers below the removed class
};

/// p minus the union of the given progressions, as progressions plus a
/// finite set.
APSubtractResult ap_subtract(const RatAP& p, const std::vector<RatAP>& qs);

/// Offsets c for which (src + c) meets tgt in infinitely many points.
ZAP solve_offset(const RatAP& src, const RatAP& tgt);

// --- intervals -------------------------------------------------------------

/// Rational interval inside [0, +inf); hi absent means unbounded above.
struct QInterval {
  Rat lo;
  bool lo_open = false;
  std::optional<Rat> hi;  // nullopt = +infinity
  bool hi_open = true;

  bool unbounded() const { return !hi.has_value(); }
  bool member(const Rat& x) const;
};

/// Sorted, disjoint, positive-length intervals.
using IntervalList = std::vector<QInterval>;

struct IntervalNormalized {
  IntervalList intervals;
  std::set<Rat> points;  // degenerate [a,a] pieces
};

IntervalNormalized iv_normalize(std::vector<QInterval> raw);
IntervalNormalized iv_union(const IntervalList& a, const IntervalList& b);
/// Complement within [0, +inf).
IntervalNormalized iv_complement(const IntervalList& ivs);
bool iv_member(const IntervalList& ivs, const Rat& x);
bool iv_has_unbounded(const IntervalList& ivs);

// --- discrete sets ---------------------------------------------------------

/// Finite union of progressions with finitely many extra points and finitely
/// many excised points. Uniformly discrete beyond any bound.
class DiscreteSet {
 public:
  DiscreteSet() = default;

  static DiscreteSet from_points(const std::set<Rat>& pts);
  static DiscreteSet from_ap(const RatAP& ap);
  /// Restores the invariants (pruned aps, disjoint extra, removed inside the
  /// cover) without changing membership.
  static DiscreteSet normalize(std::vector<RatAP> aps, std::set<Rat> extra,
                               std::set<Rat> removed);

  bool member(const Rat& x) const;
  bool cover_member(const Rat& x) const;  // union of aps only
  bool is_infinite() const { return !aps_.empty(); }
  bool is_empty() const;

  static DiscreteSet set_union(const DiscreteSet& a, const DiscreteSet& b);
  static DiscreteSet set_inter(const DiscreteSet& a, const DiscreteSet& b);
  static DiscreteSet set_diff(const DiscreteSet& a, const DiscreteSet& b);

  DiscreteSet restrict_to(const IntervalList& ivs) const;
  DiscreteSet subtract_intervals(const IntervalList& ivs) const;
  /// {x + c : x in this, x + c >= 0}.
  DiscreteSet shifted(const Rat& c) const;

  /// Forces membership of a single point without touching anything else.
  DiscreteSet with_membership(const Rat& x, bool m) const;

  /// Sorted members <= bound.
  std::vector<Rat> elements_upto(const Rat& bound) const;

  const std::vector<RatAP>& aps() const { return aps_; }
  const std::set<Rat>& extra() const { return extra_; }
  const std::set<Rat>& removed() const { return removed_; }

  /// All anchors/steps and exceptional points; used for offset candidate
  /// pools and denominator analysis.
  std::vector<Rat> structural_rationals() const;

  nlohmann::json to_json() const;
  static DiscreteSet from_json(const nlohmann::json& j);

 private:
  std::vector<RatAP> aps_;
  std::set<Rat> extra_;
  std::set<Rat> removed_;
};

// --- QSet ------------------------------------------------------------------

/// Subset of Q>=0 of shape (U \ P) u Q with U a finite union of intervals,
/// P a discrete set excised from U, Q a discrete set disjoint from U.
class QSet {
 public:
  QSet() = default;  // empty

  static QSet empty();
  static QSet all();
  static QSet interval(Rat lo, bool lo_open, std::optional<Rat> hi,
                       bool hi_open);
  static QSet nat();  // {0, 1, 2, ...}
  static QSet from_discrete(const DiscreteSet& d);
  static QSet from_ap(const RatAP& ap) { return from_discrete(DiscreteSet::from_ap(ap)); }
  static QSet singleton(const Rat& x);

  /// Builds a normalized QSet whose membership agrees with `pred`; U, P, Q
  /// must already be correct away from the finitely many `candidates`.
  static QSet assemble(const std::vector<QInterval>& rawU, DiscreteSet P,
                       DiscreteSet Q, const std::function<bool(const Rat&)>& pred,
                       std::set<Rat> candidates);

  /// Throws std::invalid_argument on x < 0.
  bool member(const Rat& x) const;

  static QSet set_union(const QSet& a, const QSet& b);
  static QSet set_inter(const QSet& a, const QSet& b);
  static QSet set_diff(const QSet& a, const QSet& b);
  static QSet complement(const QSet& a);

  /// {x + c : x in this} n Q>=0.
  QSet shifted(const Rat& c) const;

  // Content classification; these drive every coarse decision on this class.
  bool has_tail_interval() const { return iv_has_unbounded(u_); }
  bool has_bounded_interval() const;
  bool has_ap_tail() const { return !q_.aps().empty(); }
  bool has_interval_content() const {
    return has_tail_interval() || has_bounded_interval();
  }
  bool is_finite_set() const {
    return u_.empty() && q_.aps().empty();
  }
  bool is_empty() const { return is_finite_set() && q_.extra().empty(); }

  /// Sorted members of a finite QSet. Throws if infinite.
  std::vector<Rat> finite_elements() const;

  const IntervalList& intervals() const { return u_; }
  const DiscreteSet& excised() const { return p_; }
  const DiscreteSet& sprinkled() const { return q_; }

  std::vector<Rat> structural_rationals() const;

  nlohmann::json to_json() const;
  static QSet from_json(const nlohmann::json& j);
  std::string describe() const;

 private:
  IntervalList u_;
  DiscreteSet p_;
  DiscreteSet q_;
};

}  // namespace coarseprox
