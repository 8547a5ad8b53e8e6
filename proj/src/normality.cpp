#include "coarseprox/normality.hpp"

#include <algorithm>

namespace coarseprox {

nlohmann::json NormalityWitness::to_json() const {
  return {{"C", c.to_json()},
          {"left", left.to_json()},
          {"right", right.to_json()}};
}

nlohmann::json NonNormalityCertificate::to_json() const {
  nlohmann::json tr = nlohmann::json::array();
  for (const Rat& x : trace) tr.push_back(x.str());
  return {{"candidate", candidate},
          {"offset", offset.str()},
          {"trace", tr},
          {"tail", {{"a", tail.a.str()}, {"d", tail.d.str()}}}};
}

NonNormalityCertificate NonNormalityCertificate::from_json(const nlohmann::json& j) {
  NonNormalityCertificate cert{
      j.at("candidate"),
      parse_rat(j.at("offset").get<std::string>()),
      {},
      RatAP(parse_rat(j.at("tail").at("a").get<std::string>()),
            parse_rat(j.at("tail").at("d").get<std::string>()))};
  for (const auto& x : j.at("trace"))
    cert.trace.push_back(parse_rat(x.get<std::string>()));
  return cert;
}

namespace {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Rat avoid_offset(const std::vector<ZAP>& lattices) {
  long long max_den = 1;
  for (const ZAP& l : lattices)
    max_den = std::max({max_den, l.anchor.den, l.step.den});
  long long q = max_den + 1;
  for (;; ++q) {
    if (!is_prime(q)) continue;
    Rat c(1, q);
    bool clear = true;
    for (const ZAP& l : lattices)
      if (l.member(c)) {
        clear = false;
        break;
      }
    if (clear) return c;
  }
}

// --- metric-backend constructions ------------------------------------------

NormalityWitness interpolate(const EPSet& a, const EPSet& b) {
  if (!prec(a, b).verdict.is_true())
    throw NormalityError(NormalityError::PrecFails, "interpolate: A < B fails");
  Ends ea = ends_of(a);
  EPSet c = EPSet::empty();
  if (ea.pos) c = EPSet::set_union(c, EPSet::ray_ge(0));
  if (ea.neg) c = EPSet::set_union(c, EPSet::ray_le(0));
  NormalityWitness w{c, prec(a, c), prec(c, b)};
  if (!w.left.verdict.is_true() || !w.right.verdict.is_true())
    throw std::logic_error("interpolation revalidation failed");
  return w;
}

EPSet interpolate_star(const EPSet& a, const EPSet& b) {
  if (!EPSet::set_diff(a, b).is_empty())
    throw NormalityError(NormalityError::NotNested, "interpolate_star: A not inside B");
  if (!prec(a, b).verdict.is_true())
    throw NormalityError(NormalityError::PrecFails, "interpolate_star: A < B fails");
  EPSet cp = interpolate(a, b).c;
  EPSet d1 = EPSet::set_diff(a, cp);            // bounded: C' holds A's ends
  EPSet d2 = EPSet::set_diff(cp, b);            // bounded: X\B avoids C''s ends
  EPSet c = EPSet::set_diff(EPSet::set_union(cp, d1), d2);
  if (!EPSet::set_diff(a, c).is_empty() || !EPSet::set_diff(c, b).is_empty())
    throw std::logic_error("interpolate_star nesting failed");
  if (!prec(a, c).verdict.is_true() || !prec(c, b).verdict.is_true())
    throw std::logic_error("interpolate_star revalidation failed");
  return c;
}

std::pair<EPSet, EPSet> split_asymptotic(const EPSet& a1, const EPSet& a2) {
  if (b_rel(a1, a2).verdict.is_true())
    throw NormalityError(NormalityError::NotDisjoint, "split: sets are coarsely close");
  EPSet x2 = interpolate(a1, EPSet::complement(a2)).c;
  EPSet x1 = EPSet::complement(x2);
  if (b_rel(a1, x1).verdict.is_true() || b_rel(a2, x2).verdict.is_true())
    throw std::logic_error("split revalidation failed");
  return {x1, x2};
}

// --- half-line obstruction --------------------------------------------------

QSet halfline_a() { return QSet::interval(Rat(0), true, Rat(1), true); }

QSet halfline_b() { return QSet::complement(QSet::nat()); }

namespace {

RatAP nat_ap() { return RatAP(Rat(0), Rat(1)); }

std::vector<ZAP> certificate_lattices(const QSet& c) {
  QSet d = QSet::complement(c);
  std::vector<ZAP> lats{solve_offset(nat_ap(), nat_ap())};
  for (const RatAP& ap : d.sprinkled().aps())
    lats.push_back(solve_offset(ap, nat_ap()));
  return lats;
}

}  // namespace

NonNormalityCertificate nonnormality_certificate(const QSet& c, long long trace_len) {
  if (!prec(halfline_a(), c).verdict.is_true())
    throw NormalityError(NormalityError::PrecFails, "certificate: A < C fails");
  Rat off = avoid_offset(certificate_lattices(c));
  QSet overlap = QSet::set_inter(image(make_halfline({off}), c), QSet::nat());
  if (overlap.is_finite_set())
    throw std::logic_error("certificate overlap unexpectedly finite");
  std::vector<Rat> trace;
  for (long long bound = 2 * trace_len;; bound *= 2) {
    trace = overlap.sprinkled().elements_upto(Rat(bound));
    if ((long long)trace.size() >= trace_len) break;
    if (bound > (1LL << 22))
      throw std::logic_error("certificate trace did not fill");
  }
  trace.resize(trace_len);
  RatAP tail = nat_ap();
  bool found = false;
  for (long long k = 0; k <= 1000; ++k) {
    RatAP cand(Rat(k), Rat(1));
    if (QSet::set_diff(QSet::from_ap(cand), overlap).is_empty()) {
      tail = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("certificate tail progression not found");
  return NonNormalityCertificate{c.to_json(), off, std::move(trace), tail};
}

bool validate_certificate(const NonNormalityCertificate& cert) {
  QSet c = QSet::from_json(cert.candidate);
  if (!prec(halfline_a(), c).verdict.is_true()) return false;
  for (const ZAP& l : certificate_lattices(c))
    if (l.member(cert.offset)) return false;
  QSet im = image(make_halfline({cert.offset}), c);
  Rat prev(-1);
  for (const Rat& x : cert.trace) {
    if (!(prev < x)) return false;
    prev = x;
    if (!x.is_integer() || x < Rat(0)) return false;
    if (!im.member(x)) return false;
  }
  if (cert.trace.empty()) return false;
  QSet overlap = QSet::set_inter(im, QSet::nat());
  if (!QSet::set_diff(QSet::from_ap(cert.tail), overlap).is_empty()) return false;
  // the progression certifies prec(C, B) fails: the overlap with X\B is
  // infinite, so no bounded K absorbs it
  return !overlap.is_finite_set();
}

}  // namespace coarseprox
