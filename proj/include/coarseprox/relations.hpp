#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarseprox/backend.hpp"
#include "coarseprox/epset.hpp"
#include "coarseprox/qset.hpp"

namespace coarseprox {

/// Verdict plus the existential data the chosen characterization produced
/// (entourage, bounded exception set, subset pair), revalidatable by direct
/// recomputation.
struct RelationResult {
  Verdict verdict;
  nlohmann::json witness = nlohmann::json::object();
  std::string mode;

  nlohmann::json to_json() const {
    return {{"verdict", verdict.to_json()}, {"witness", witness}, {"mode", mode}};
  }
};

/// The three equivalent characterizations of A < B: thickenings land in B up
/// to a bounded set / complement asymptotically disjoint / pair separation
/// beyond a bounded set.
enum class PrecMode { Image, Disjoint, Pairs };

/// The three equivalent characterizations of closeness: unbounded thickening
/// overlap / unbounded lambda-related subsets / persistent pairs.
enum class BMode { Image, Resemblance, Pairs };

std::string prec_mode_name(PrecMode m);
std::string b_mode_name(BMode m);
std::optional<PrecMode> parse_prec_mode(const std::string& s);
std::optional<BMode> parse_b_mode(const std::string& s);

// --- metric structure on Z -------------------------------------------------

/// Directions to infinity an eventually periodic set reaches.
struct Ends {
  bool pos = false;
  bool neg = false;
};
Ends ends_of(const EPSet& a);

RelationResult lambda_rel(const EPSet& a, const EPSet& b);
bool asym_bounded(const EPSet& a);
RelationResult prec(const EPSet& a, const EPSet& b, PrecMode mode = PrecMode::Image);
RelationResult b_rel(const EPSet& a, const EPSet& b, BMode mode = BMode::Image);
RelationResult nbhd(const EPSet& a, const EPSet& b);

// --- half-line structure on Q>=0 -------------------------------------------

RelationResult lambda_rel(const QSet& a, const QSet& b);
bool asym_bounded(const QSet& a);
RelationResult prec(const QSet& a, const QSet& b, PrecMode mode = PrecMode::Image);
RelationResult b_rel(const QSet& a, const QSet& b, BMode mode = BMode::Image);
RelationResult nbhd(const QSet& a, const QSet& b);

/// Candidate shift amounts that can make translates of `a` meet `c` in an
/// infinite set: alignment differences, progression offset lattices, and
/// lattice-avoiding values. Complete for the QSet class.
std::vector<Rat> offset_pool(const QSet& a, const QSet& c);

/// Some member of a nonempty QSet.
std::optional<Rat> some_element(const QSet& a);

/// Symmetric entourage E with A in E[B] and B in E[A], when one exists.
std::optional<HalfLineEntourage> lambda_cover(const QSet& a, const QSet& b);

// --- derived relation (b from coarse neighborhoods) ------------------------

using ZRel = std::function<bool(const EPSet&, const EPSet&)>;
using QRel = std::function<bool(const QSet&, const QSet&)>;

/// A b B iff not (A << X \ B).
ZRel derive_b_from_nbhd(ZRel nbhd_eval);
QRel derive_b_from_nbhd(QRel nbhd_eval);

/// A << B iff not b(A, X \ B).
ZRel derive_nbhd_from_b(ZRel b_eval);
QRel derive_nbhd_from_b(QRel b_eval);

}  // namespace coarseprox
