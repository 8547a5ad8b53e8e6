#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "coarseprox/relations.hpp"

namespace coarseprox {

/// Precondition failures of the witness constructors.
struct NormalityError : std::runtime_error {
  enum Kind { PrecFails, NotNested, NotDisjoint } kind;
  NormalityError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Interpolant C with A < C < B, both checks recorded and revalidated.
struct NormalityWitness {
  EPSet c;
  RelationResult left;   // prec(A, C)
  RelationResult right;  // prec(C, B)
  nlohmann::json to_json() const;
};

/// Witness that a candidate C with A < C admits no A < C < B on the half
/// line: an offset c whose entourage drags C onto an unbounded part of the
/// complement of B, with an explicit progression inside the overlap.
struct NonNormalityCertificate {
  nlohmann::json candidate;    // serialized QSet C
  Rat offset;                  // avoids the difference lattices of X\C and N
  std::vector<Rat> trace;      // first elements of E_offset[C] n N, increasing
  RatAP tail;                  // progression contained in E_offset[C] n N

  nlohmann::json to_json() const;
  static NonNormalityCertificate from_json(const nlohmann::json& j);
};

/// Positive rational outside every given lattice: 1/q for the smallest prime
/// q exceeding all anchor and step denominators, verified by membership.
Rat avoid_offset(const std::vector<ZAP>& lattices);

/// End-based interpolation on the metric backend. Throws PrecFails.
NormalityWitness interpolate(const EPSet& a, const EPSet& b);

/// Nested interpolation: A subset of C subset of B with A < C < B, via the
/// bounded corrections C = (C' u D1) \ D2. Throws NotNested / PrecFails.
EPSet interpolate_star(const EPSet& a, const EPSet& b);

/// Split X = X1 u X2 with A1 away from X1 and A2 away from X2.
/// Throws NotDisjoint.
std::pair<EPSet, EPSet> split_asymptotic(const EPSet& a1, const EPSet& a2);

/// The canonical pair of the half-line obstruction.
QSet halfline_a();  // open unit interval
QSet halfline_b();  // complement of N

/// Certificate construction for a candidate C with A < C. Throws PrecFails.
NonNormalityCertificate nonnormality_certificate(const QSet& c,
                                                 long long trace_len = 50);

/// Full independent revalidation of a certificate.
bool validate_certificate(const NonNormalityCertificate& cert);

}  // namespace coarseprox
