#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarseprox/epset.hpp"
#include "coarseprox/qset.hpp"

namespace coarseprox {

enum class BackendKind { ZMetric, QHalfLine, Windowed };

std::string backend_name(BackendKind k);

/// Three-valued result. Exact backends only ever produce True or False.
struct Verdict {
  enum Kind { True_, False_, Unknown_ } kind = False_;
  long long window = 0;  // probe bound for Unknown_

  static Verdict yes() { return {True_, 0}; }
  static Verdict no() { return {False_, 0}; }
  static Verdict unknown(long long w) { return {Unknown_, w}; }

  bool is_true() const { return kind == True_; }
  bool is_false() const { return kind == False_; }
  bool is_unknown() const { return kind == Unknown_; }
  bool definite() const { return kind != Unknown_; }

  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.kind == b.kind && a.window == b.window;
  }

  nlohmann::json to_json() const;
};

/// Generator E_r = {(x,y) : |x-y| < r} on Z. r = 0 is the empty entourage;
/// r = 1 is the diagonal.
struct MetricEntourage {
  long long r = 1;
};

/// Symmetrized union over the offset set of {(x, x+c) : x >= threshold}.
/// Offsets always contain 0 so the diagonal tail is included.
struct HalfLineEntourage {
  std::set<Rat> offsets{Rat(0)};
  Rat threshold{0};
};

HalfLineEntourage make_halfline(std::set<Rat> offsets, Rat threshold = Rat(0));

MetricEntourage compose(const MetricEntourage& e, const MetricEntourage& f);
MetricEntourage invert(const MetricEntourage& e);
MetricEntourage entourage_union(const MetricEntourage& e, const MetricEntourage& f);

HalfLineEntourage compose(const HalfLineEntourage& e, const HalfLineEntourage& f);
HalfLineEntourage invert(const HalfLineEntourage& e);
HalfLineEntourage entourage_union(const HalfLineEntourage& e,
                                  const HalfLineEntourage& f);

/// E_r[A] on Z: dilation by r-1 (d(x,y) < r), empty for r = 0.
EPSet image(const MetricEntourage& e, const EPSet& a);
/// E[A] on the half line, computed in QSet algebra.
QSet image(const HalfLineEntourage& e, const QSet& a);

/// Bounded = finite on both exact carriers.
bool bounded(const EPSet& a);
bool bounded(const QSet& a);

/// Generator covering the pair, for connectivity probes.
MetricEntourage connecting_entourage(long long x, long long y);
HalfLineEntourage connecting_entourage(const Rat& x, const Rat& y);

bool connectivity_check(const std::vector<std::pair<long long, long long>>& pairs);
bool connectivity_check(const std::vector<std::pair<Rat, Rat>>& pairs);

/// Set given only by a membership predicate on Z; used by the windowed
/// backend for exploration outside the exact classes.
struct GeneratorSet {
  std::function<bool(long long)> pred;
  std::optional<long long> certified_radius;  // all members inside [-B, B]
  std::string desc;
};

/// Windowed boundedness: definite only when a certified radius is supplied
/// or a member is found beyond the window margin.
Verdict bounded_windowed(const GeneratorSet& a, long long window);

}  // namespace coarseprox
