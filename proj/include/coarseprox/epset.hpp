#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarseprox {

/// Eventually periodic subset of Z: beyond a threshold T each end follows a
/// union of residue classes mod L; inside the open window (-T, T) membership
/// is given by the explicit finite set F.
///
/// membership(x) = (x >= T && x mod L in pos)
///              || (x <= -T && (-x) mod L in neg)
///              || (x in F)
///
/// Canonical form: minimal L, then minimal T; F = members inside the window.
/// Two EPSets denote the same subset of Z iff they are structurally equal.
class EPSet {
 public:
  EPSet() = default;  // empty set

  /// Canonicalizes raw data. Throws std::invalid_argument on L <= 0, T < 0,
  /// residues outside [0, L), or F outside (-T, T).
  static EPSet normalize(long long L, std::set<long long> pos,
                         std::set<long long> neg, long long T,
                         std::set<long long> F);

  static EPSet empty();
  static EPSet all();
  static EPSet finite_set(const std::set<long long>& elems);
  static EPSet singleton(long long x) { return finite_set({x}); }
  /// {a + d*k : k >= 0}, d >= 1.
  static EPSet tail_ap(long long a, long long d);
  /// {x : x >= t}.
  static EPSet ray_ge(long long t);
  /// {x : x <= t}.
  static EPSet ray_le(long long t);

  bool member(long long x) const;

  static EPSet set_union(const EPSet& a, const EPSet& b);
  static EPSet set_inter(const EPSet& a, const EPSet& b);
  static EPSet set_diff(const EPSet& a, const EPSet& b);
  static EPSet complement(const EPSet& a);

  /// {x + j : x in this}.
  EPSet shifted(long long j) const;
  /// {x : exists y in this with |x - y| <= w}, w >= 0. This is E_{w+1}[A].
  EPSet dilated(long long w) const;
  /// {-x : x in this}.
  EPSet reflected() const;

  bool has_pos_end() const { return !pos_.empty(); }
  bool has_neg_end() const { return !neg_.empty(); }
  bool is_finite() const { return pos_.empty() && neg_.empty(); }
  bool is_empty() const { return is_finite() && F_.empty(); }
  bool is_subset_of(const EPSet& b) const;

  /// Members of a finite EPSet, sorted. Throws if infinite.
  std::vector<long long> finite_elements() const;
  /// max |x| over members of a finite EPSet (0 if empty).
  long long finite_radius() const;

  long long period() const { return L_; }
  long long threshold() const { return T_; }
  const std::set<long long>& pos_residues() const { return pos_; }
  const std::set<long long>& neg_residues() const { return neg_; }
  const std::set<long long>& exceptions() const { return F_; }

  friend bool operator==(const EPSet& a, const EPSet& b) {
    return a.L_ == b.L_ && a.T_ == b.T_ && a.pos_ == b.pos_ &&
           a.neg_ == b.neg_ && a.F_ == b.F_;
  }
  friend bool operator!=(const EPSet& a, const EPSet& b) { return !(a == b); }
  friend bool operator<(const EPSet& a, const EPSet& b);

  nlohmann::json to_json() const;
  static EPSet from_json(const nlohmann::json& j);
  std::string describe() const;

 private:
  long long L_ = 1;
  std::set<long long> pos_;
  std::set<long long> neg_;
  long long T_ = 0;
  std::set<long long> F_;
};

}  // namespace coarseprox
