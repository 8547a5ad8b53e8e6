#include "coarseprox/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace coarseprox {

namespace {

bool far(long long x, long long window) {
  long long ax = x < 0 ? -x : x;
  return 2 * ax > window && ax <= window;
}

bool near_member(const ZPred& p, long long x, long long radius) {
  for (long long y = x - radius; y <= x + radius; ++y)
    if (p(y)) return true;
  return false;
}

}  // namespace

bool oracle_b_z(const ZPred& a, const ZPred& b, long long window,
                long long radius_cap) {
  for (long long x = -window; x <= window; ++x) {
    if (!far(x, window)) continue;
    if (a(x) && near_member(b, x, radius_cap)) return true;
  }
  return false;
}

bool oracle_prec_z(const ZPred& a, const ZPred& bsup, long long window,
                   long long radius_cap) {
  // escape point: far, outside B, but within reach of A
  for (long long x = -window; x <= window; ++x) {
    if (!far(x, window)) continue;
    if (!bsup(x) && near_member(a, x, radius_cap)) return false;
  }
  return true;
}

std::optional<long long> oracle_lambda_z(const ZPred& a, const ZPred& b,
                                         long long window, long long radius_cap) {
  long long inner = window - radius_cap;
  for (long long r = 1; r <= radius_cap; ++r) {
    bool ok = true;
    for (long long x = -inner; x <= inner && ok; ++x) {
      if (a(x) && !near_member(b, x, r - 1)) ok = false;
      if (b(x) && !near_member(a, x, r - 1)) ok = false;
    }
    if (ok) return r;
  }
  return std::nullopt;
}

std::vector<Rat> q_probes(long long den_bound, long long window) {
  static std::map<std::pair<long long, long long>, std::vector<Rat>> cache;
  auto it = cache.find({den_bound, window});
  if (it != cache.end()) return it->second;
  std::set<Rat> pts;
  for (long long q = 1; q <= den_bound; ++q)
    for (long long p = 0; p <= window * q; ++p) pts.insert(Rat(p, q));
  std::vector<Rat> out(pts.begin(), pts.end());
  cache[{den_bound, window}] = out;
  return out;
}

long long q_overlap_count(const QPred& a, const QPred& b, const Rat& off,
                          long long den_bound, long long window) {
  long long count = 0;
  for (const Rat& x : q_probes(den_bound, window)) {
    if (!b(x)) continue;
    Rat down = x - off, up = x + off;
    if ((down >= Rat(0) && a(down)) || (up >= Rat(0) && a(up))) ++count;
  }
  return count;
}

bool oracle_b_q(const QPred& a, const QPred& b, const std::vector<Rat>& offsets,
                long long d1, long long w1, long long d2, long long w2) {
  for (const Rat& off : offsets) {
    long long c1 = q_overlap_count(a, b, off, d1, w1);
    long long c2 = q_overlap_count(a, b, off, d2, w2);
    if (c2 > c1) return true;
  }
  return false;
}

bool oracle_prec_q(const QPred& a, const QPred& bsup,
                   const std::vector<Rat>& offsets, long long d1, long long w1,
                   long long d2, long long w2) {
  QPred comp = [&bsup](const Rat& x) { return !bsup(x); };
  return !oracle_b_q(a, comp, offsets, d1, w1, d2, w2);
}

namespace {

long long uncovered_count(const QPred& a, const QPred& b,
                          const std::vector<Rat>& offsets, long long den_bound,
                          long long window) {
  long long count = 0;
  for (const Rat& x : q_probes(den_bound, window)) {
    if (!a(x)) continue;
    bool covered = false;
    for (const Rat& off : offsets) {
      Rat down = x - off, up = x + off;
      if ((down >= Rat(0) && b(down)) || (up >= Rat(0) && b(up))) {
        covered = true;
        break;
      }
    }
    if (!covered) ++count;
  }
  return count;
}

}  // namespace

bool oracle_lambda_q(const QPred& a, const QPred& b,
                     const std::vector<Rat>& offsets, long long d1,
                     long long w1, long long d2, long long w2) {
  // E[empty] is empty, so an empty side can only match an empty side; growth
  // cannot see this, the fine grid can.
  auto occupied = [&](const QPred& p) {
    for (const Rat& x : q_probes(d2, w2))
      if (p(x)) return true;
    return false;
  };
  if (occupied(a) != occupied(b)) return false;
  if (uncovered_count(a, b, offsets, d2, w2) >
      uncovered_count(a, b, offsets, d1, w1))
    return false;
  if (uncovered_count(b, a, offsets, d2, w2) >
      uncovered_count(b, a, offsets, d1, w1))
    return false;
  return true;
}

}  // namespace coarseprox
