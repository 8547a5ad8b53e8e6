#include "coarseprox/epset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coarseprox {

namespace {

long long mod_pos(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

EPSet EPSet::normalize(long long L, std::set<long long> pos,
                       std::set<long long> neg, long long T,
                       std::set<long long> F) {
  if (L <= 0) throw std::invalid_argument("EPSet: period must be positive");
  if (T < 0) throw std::invalid_argument("EPSet: threshold must be >= 0");
  for (long long r : pos)
    if (r < 0 || r >= L) throw std::invalid_argument("EPSet: residue out of range");
  for (long long r : neg)
    if (r < 0 || r >= L) throw std::invalid_argument("EPSet: residue out of range");
  for (long long f : F)
    if (f <= -T || f >= T)
      throw std::invalid_argument("EPSet: exception outside window (-T, T)");

  auto raw_member = [&](long long x) {
    return (x >= T && pos.count(mod_pos(x, L))) ||
           (x <= -T && neg.count(mod_pos(-x, L))) || F.count(x) > 0;
  };

  // Minimal period: smallest divisor d of L with both residue sets d-periodic.
  long long Lmin = L;
  for (long long d = 1; d <= L; ++d) {
    if (L % d != 0) continue;
    bool ok = true;
    for (long long r = 0; r < L && ok; ++r) {
      if (pos.count(r) != pos.count(r % d)) ok = false;
      if (neg.count(r) != neg.count(r % d)) ok = false;
    }
    if (ok) {
      Lmin = d;
      break;
    }
  }
  std::set<long long> posd, negd;
  for (long long r : pos)
    if (r < Lmin) posd.insert(r);
  for (long long r : neg)
    if (r < Lmin) negd.insert(r);

  // Minimal threshold: smallest T' whose formula reproduces raw membership.
  auto valid = [&](long long Tp) {
    for (long long x = -T; x <= T; ++x) {
      bool fm = (x >= Tp && posd.count(mod_pos(x, Lmin))) ||
                (x <= -Tp && negd.count(mod_pos(-x, Lmin))) ||
                (x > -Tp && x < Tp && raw_member(x));
      if (fm != raw_member(x)) return false;
    }
    return true;
  };
  long long Tmin = 0;
  while (!valid(Tmin)) ++Tmin;

  EPSet out;
  out.L_ = Lmin;
  out.pos_ = std::move(posd);
  out.neg_ = std::move(negd);
  out.T_ = Tmin;
  for (long long x = -Tmin + 1; x < Tmin; ++x)
    if (raw_member(x)) out.F_.insert(x);
  return out;
}

EPSet EPSet::empty() { return EPSet(); }

EPSet EPSet::all() { return normalize(1, {0}, {0}, 0, {}); }

EPSet EPSet::finite_set(const std::set<long long>& elems) {
  if (elems.empty()) return empty();
  long long m = 0;
  for (long long e : elems) m = std::max(m, e < 0 ? -e : e);
  return normalize(1, {}, {}, m + 1, elems);
}

EPSet EPSet::tail_ap(long long a, long long d) {
  if (d <= 0) throw std::invalid_argument("tail_ap: step must be positive");
  long long T = std::max<long long>(a, 0);
  std::set<long long> F;
  // a < 0: the tail {a, a+d, ...} includes negative members up to the window.
  if (a < 0) {
    T = 0;
    EPSet base = normalize(d, {mod_pos(a, d)}, {}, 0, {});
    std::set<long long> extra;
    for (long long x = a; x < 0; x += d) extra.insert(x);
    return set_union(base, finite_set(extra));
  }
  return normalize(d, {mod_pos(a, d)}, {}, T, F);
}

EPSet EPSet::ray_ge(long long t) {
  if (t >= 0) return normalize(1, {0}, {}, t, {});
  EPSet nonneg = normalize(1, {0}, {}, 0, {});
  std::set<long long> extra;
  for (long long x = t; x < 0; ++x) extra.insert(x);
  return set_union(nonneg, finite_set(extra));
}

EPSet EPSet::ray_le(long long t) { return ray_ge(-t).reflected(); }

bool EPSet::member(long long x) const {
  return (x >= T_ && pos_.count(mod_pos(x, L_))) ||
         (x <= -T_ && neg_.count(mod_pos(-x, L_))) || F_.count(x) > 0;
}

namespace {

EPSet combine(const EPSet& a, const EPSet& b,
              const std::function<bool(bool, bool)>& fn) {
  long long L = std::lcm(a.period(), b.period());
  // T >= 1 keeps x = 0 in the explicit window; at T = 0 the membership of 0
  // is the OR of both tails, which a residue-wise combine cannot express.
  long long T = std::max({a.threshold(), b.threshold(), 1LL});
  std::set<long long> pos, neg, F;
  for (long long r = 0; r < L; ++r) {
    if (fn(a.pos_residues().count(r % a.period()) > 0,
           b.pos_residues().count(r % b.period()) > 0))
      pos.insert(r);
    if (fn(a.neg_residues().count(r % a.period()) > 0,
           b.neg_residues().count(r % b.period()) > 0))
      neg.insert(r);
  }
  for (long long x = -T + 1; x < T; ++x)
    if (fn(a.member(x), b.member(x))) F.insert(x);
  return EPSet::normalize(L, pos, neg, T, F);
}

}  // namespace

EPSet EPSet::set_union(const EPSet& a, const EPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

EPSet EPSet::set_inter(const EPSet& a, const EPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

EPSet EPSet::set_diff(const EPSet& a, const EPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

EPSet EPSet::complement(const EPSet& a) {
  return combine(a, a, [](bool x, bool) { return !x; });
}

EPSet EPSet::shifted(long long j) const {
  // +1: at T = 0 the shifted image of x = 0 (covered by either tail) lands on
  // x = j, which must stay inside the explicit window.
  long long T = T_ + (j < 0 ? -j : j) + 1;
  std::set<long long> pos, neg, F;
  for (long long r : pos_) pos.insert(mod_pos(r + j, L_));
  for (long long r : neg_) neg.insert(mod_pos(r - j, L_));
  for (long long x = -T + 1; x < T; ++x)
    if (member(x - j)) F.insert(x);
  return normalize(L_, pos, neg, T, F);
}

EPSet EPSet::dilated(long long w) const {
  if (w < 0) throw std::invalid_argument("dilated: negative width");
  if (is_empty() || w == 0) return *this;
  // Dilation leaks up to w past the old window on an end without a tail, and
  // near the threshold residue coverage is irregular; take a generous window
  // and let normalize shrink it.
  long long T = T_ + w + L_;
  std::set<long long> pos, neg, F;
  auto expand = [&](const std::set<long long>& src, std::set<long long>& dst) {
    if (src.empty()) return;
    if (2 * w + 1 >= L_) {
      for (long long r = 0; r < L_; ++r) dst.insert(r);
      return;
    }
    for (long long r : src)
      for (long long d = -w; d <= w; ++d) dst.insert(mod_pos(r + d, L_));
  };
  expand(pos_, pos);
  expand(neg_, neg);
  for (long long x = -T + 1; x < T; ++x) {
    for (long long d = -w; d <= w; ++d) {
      if (member(x + d)) {
        F.insert(x);
        break;
      }
    }
  }
  return normalize(L_, pos, neg, T, F);
}

EPSet EPSet::reflected() const {
  std::set<long long> F;
  for (long long f : F_) F.insert(-f);
  return normalize(L_, neg_, pos_, T_, F);
}

bool EPSet::is_subset_of(const EPSet& b) const {
  return set_diff(*this, b).is_empty();
}

std::vector<long long> EPSet::finite_elements() const {
  if (!is_finite()) throw std::logic_error("finite_elements on infinite EPSet");
  return std::vector<long long>(F_.begin(), F_.end());
}

long long EPSet::finite_radius() const {
  long long m = 0;
  for (long long f : F_) m = std::max(m, f < 0 ? -f : f);
  return m;
}

bool operator<(const EPSet& a, const EPSet& b) {
  auto ta = std::tie(a.L_, a.T_, a.pos_, a.neg_, a.F_);
  auto tb = std::tie(b.L_, b.T_, b.pos_, b.neg_, b.F_);
  return ta < tb;
}

nlohmann::json EPSet::to_json() const {
  return nlohmann::json{{"L", L_},
                        {"pos", std::vector<long long>(pos_.begin(), pos_.end())},
                        {"neg", std::vector<long long>(neg_.begin(), neg_.end())},
                        {"T", T_},
                        {"F", std::vector<long long>(F_.begin(), F_.end())}};
}

EPSet EPSet::from_json(const nlohmann::json& j) {
  std::set<long long> pos, neg, F;
  for (const auto& v : j.at("pos")) pos.insert(v.get<long long>());
  for (const auto& v : j.at("neg")) neg.insert(v.get<long long>());
  for (const auto& v : j.at("F")) F.insert(v.get<long long>());
  return normalize(j.at("L").get<long long>(), pos, neg,
                   j.at("T").get<long long>(), F);
}

std::string EPSet::describe() const {
  std::ostringstream os;
  os << "EPSet(L=" << L_ << ",pos={";
  for (long long r : pos_) os << r << ",";
  os << "},neg={";
  for (long long r : neg_) os << r << ",";
  os << "},T=" << T_ << ",F={";
  for (long long f : F_) os << f << ",";
  os << "})";
  return os.str();
}

}  // namespace coarseprox
