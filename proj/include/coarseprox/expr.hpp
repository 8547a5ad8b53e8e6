#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarseprox/epset.hpp"
#include "coarseprox/qset.hpp"

namespace coarseprox {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) +
                           ", column " + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

/// Raised when an expression uses an atom the selected carrier cannot host.
struct ElaborationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Abstract syntax of the set language.
/// atoms:       empty | all | finite{v,...} | ap(a,d) | interval(lo,hi,f,f)
///              | evens | odds | nat | neg(e)
/// combinators: union(e,e,...) | inter(e,e,...) | compl(e) | diff(e,e)
struct SetExpr {
  enum Kind {
    Empty, All, Finite, Ap, Interval, Evens, Odds, Nat, Neg,
    Union, Inter, Compl, Diff
  } kind = Empty;

  std::vector<Rat> values;  // Finite
  Rat ap_a, ap_d;           // Ap
  Rat lo, hi;               // Interval
  bool lo_open = false, hi_open = false;
  std::vector<std::shared_ptr<SetExpr>> args;

  std::string print() const;
};

using ExprPtr = std::shared_ptr<SetExpr>;

/// Throws ParseError with 1-based position on malformed input.
ExprPtr parse_expr(const std::string& text);

bool expr_equal(const SetExpr& a, const SetExpr& b);

/// Carrier elaborations. Z rejects interval/nat and non-integer values;
/// Q rejects neg and negative values.
EPSet elaborate_z(const SetExpr& e);
QSet elaborate_q(const SetExpr& e);

}  // namespace coarseprox
