#include "coarseprox/expr.hpp"

#include <cctype>

namespace coarseprox {

namespace {

struct Token {
  enum Type { Ident, Number, LParen, RParen, LBrace, RBrace, Comma, End } type;
  std::string text;
  Rat value;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_ws();
    int l = line_, c = col_;
    if (pos_ >= s_.size()) return {Token::End, "", Rat(0), l, c};
    char ch = s_[pos_];
    switch (ch) {
      case '(': advance(); return {Token::LParen, "(", Rat(0), l, c};
      case ')': advance(); return {Token::RParen, ")", Rat(0), l, c};
      case '{': advance(); return {Token::LBrace, "{", Rat(0), l, c};
      case '}': advance(); return {Token::RBrace, "}", Rat(0), l, c};
      case ',': advance(); return {Token::Comma, ",", Rat(0), l, c};
      default: break;
    }
    if (std::isalpha((unsigned char)ch)) {
      std::string id;
      while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
        id += s_[pos_];
        advance();
      }
      return {Token::Ident, id, Rat(0), l, c};
    }
    if (ch == '-' || std::isdigit((unsigned char)ch)) {
      bool negative = ch == '-';
      if (negative) advance();
      long long num = read_digits(l, c), den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        advance();
        den = read_digits(l, c);
        if (den == 0) throw ParseError("zero denominator", l, c);
      }
      Rat v(num, den);
      return {Token::Number, v.str(), negative ? -v : v, l, c};
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) advance();
  }

  long long read_digits(int l, int c) {
    if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
      throw ParseError("expected a number", line_, col_);
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
      v = v * 10 + (s_[pos_] - '0');
      if (v < 0) throw ParseError("number out of range", l, c);
      advance();
    }
    return v;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) { bump(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    expect(Token::End, "expected end of input");
    return e;
  }

 private:
  void bump() { tok_ = lex_.next(); }

  void expect(Token::Type t, const char* what) {
    if (tok_.type != t) throw ParseError(what, tok_.line, tok_.col);
    if (t != Token::End) bump();
  }

  Rat number() {
    if (tok_.type != Token::Number)
      throw ParseError("expected a number", tok_.line, tok_.col);
    Rat v = tok_.value;
    bump();
    return v;
  }

  bool open_flag() {
    if (tok_.type != Token::Ident || (tok_.text != "open" && tok_.text != "closed"))
      throw ParseError("expected 'open' or 'closed'", tok_.line, tok_.col);
    bool open = tok_.text == "open";
    bump();
    return open;
  }

  ExprPtr expr() {
    if (tok_.type != Token::Ident)
      throw ParseError("expected a set expression", tok_.line, tok_.col);
    std::string name = tok_.text;
    int l = tok_.line, c = tok_.col;
    bump();
    auto e = std::make_shared<SetExpr>();
    if (name == "empty") { e->kind = SetExpr::Empty; return e; }
    if (name == "all") { e->kind = SetExpr::All; return e; }
    if (name == "evens") { e->kind = SetExpr::Evens; return e; }
    if (name == "odds") { e->kind = SetExpr::Odds; return e; }
    if (name == "nat") { e->kind = SetExpr::Nat; return e; }
    if (name == "finite") {
      e->kind = SetExpr::Finite;
      expect(Token::LBrace, "expected '{'");
      if (tok_.type != Token::RBrace) {
        e->values.push_back(number());
        while (tok_.type == Token::Comma) {
          bump();
          e->values.push_back(number());
        }
      }
      expect(Token::RBrace, "expected '}'");
      return e;
    }
    if (name == "ap") {
      e->kind = SetExpr::Ap;
      expect(Token::LParen, "expected '('");
      e->ap_a = number();
      expect(Token::Comma, "expected ','");
      e->ap_d = number();
      expect(Token::RParen, "expected ')'");
      return e;
    }
    if (name == "interval") {
      e->kind = SetExpr::Interval;
      expect(Token::LParen, "expected '('");
      e->lo = number();
      expect(Token::Comma, "expected ','");
      e->hi = number();
      expect(Token::Comma, "expected ','");
      e->lo_open = open_flag();
      expect(Token::Comma, "expected ','");
      e->hi_open = open_flag();
      expect(Token::RParen, "expected ')'");
      return e;
    }
    auto arglist = [&](size_t min_args, size_t max_args) {
      expect(Token::LParen, "expected '('");
      e->args.push_back(expr());
      while (tok_.type == Token::Comma) {
        bump();
        e->args.push_back(expr());
      }
      expect(Token::RParen, "expected ')'");
      if (e->args.size() < min_args || e->args.size() > max_args)
        throw ParseError("wrong number of arguments to '" + name + "'", l, c);
    };
    if (name == "neg") { e->kind = SetExpr::Neg; arglist(1, 1); return e; }
    if (name == "compl") { e->kind = SetExpr::Compl; arglist(1, 1); return e; }
    if (name == "union") { e->kind = SetExpr::Union; arglist(2, 64); return e; }
    if (name == "inter") { e->kind = SetExpr::Inter; arglist(2, 64); return e; }
    if (name == "diff") { e->kind = SetExpr::Diff; arglist(2, 2); return e; }
    throw ParseError("unknown atom '" + name + "'", l, c);
  }

  Lexer lex_;
  Token tok_;
};

std::string join_args(const char* head, const SetExpr& e) {
  std::string out = std::string(head) + "(";
  for (size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ",";
    out += e.args[i]->print();
  }
  return out + ")";
}

}  // namespace

std::string SetExpr::print() const {
  switch (kind) {
    case Empty: return "empty";
    case All: return "all";
    case Evens: return "evens";
    case Odds: return "odds";
    case Nat: return "nat";
    case Finite: {
      std::string out = "finite{";
      for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += values[i].str();
      }
      return out + "}";
    }
    case Ap: return "ap(" + ap_a.str() + "," + ap_d.str() + ")";
    case Interval:
      return "interval(" + lo.str() + "," + hi.str() + "," +
             (lo_open ? "open" : "closed") + "," + (hi_open ? "open" : "closed") + ")";
    case Neg: return join_args("neg", *this);
    case Compl: return join_args("compl", *this);
    case Union: return join_args("union", *this);
    case Inter: return join_args("inter", *this);
    case Diff: return join_args("diff", *this);
  }
  return "?";
}

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

bool expr_equal(const SetExpr& a, const SetExpr& b) {
  if (a.kind != b.kind || a.values != b.values || a.ap_a != b.ap_a ||
      a.ap_d != b.ap_d || a.lo != b.lo || a.hi != b.hi ||
      a.lo_open != b.lo_open || a.hi_open != b.hi_open ||
      a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

EPSet elaborate_z(const SetExpr& e) {
  auto integer = [](const Rat& v) {
    if (!v.is_integer())
      throw ElaborationError("the metric carrier holds integers, got " + v.str());
    return v.num;
  };
  switch (e.kind) {
    case SetExpr::Empty: return EPSet::empty();
    case SetExpr::All: return EPSet::all();
    case SetExpr::Evens: return EPSet::normalize(2, {0}, {0}, 0, {});
    case SetExpr::Odds: return EPSet::normalize(2, {1}, {1}, 0, {});
    case SetExpr::Finite: {
      std::set<long long> elems;
      for (const Rat& v : e.values) elems.insert(integer(v));
      return EPSet::finite_set(elems);
    }
    case SetExpr::Ap: {
      long long d = integer(e.ap_d);
      if (d < 1) throw ElaborationError("ap step must be a positive integer");
      return EPSet::tail_ap(integer(e.ap_a), d);
    }
    case SetExpr::Neg: return elaborate_z(*e.args[0]).reflected();
    case SetExpr::Compl: return EPSet::complement(elaborate_z(*e.args[0]));
    case SetExpr::Union: {
      EPSet s = elaborate_z(*e.args[0]);
      for (size_t i = 1; i < e.args.size(); ++i)
        s = EPSet::set_union(s, elaborate_z(*e.args[i]));
      return s;
    }
    case SetExpr::Inter: {
      EPSet s = elaborate_z(*e.args[0]);
      for (size_t i = 1; i < e.args.size(); ++i)
        s = EPSet::set_inter(s, elaborate_z(*e.args[i]));
      return s;
    }
    case SetExpr::Diff:
      return EPSet::set_diff(elaborate_z(*e.args[0]), elaborate_z(*e.args[1]));
    case SetExpr::Interval:
    case SetExpr::Nat:
      throw ElaborationError("atom '" + e.print() +
                             "' lives on the half line; use --backend q-halfline");
  }
  throw ElaborationError("unreachable expression kind");
}

QSet elaborate_q(const SetExpr& e) {
  auto nonneg = [](const Rat& v) {
    if (v < Rat(0))
      throw ElaborationError("the half-line carrier holds nonnegative rationals, got " +
                             v.str());
    return v;
  };
  switch (e.kind) {
    case SetExpr::Empty: return QSet::empty();
    case SetExpr::All: return QSet::all();
    case SetExpr::Nat: return QSet::nat();
    case SetExpr::Evens: return QSet::from_ap(RatAP(Rat(0), Rat(2)));
    case SetExpr::Odds: return QSet::from_ap(RatAP(Rat(1), Rat(2)));
    case SetExpr::Finite: {
      QSet s = QSet::empty();
      for (const Rat& v : e.values)
        s = QSet::set_union(s, QSet::singleton(nonneg(v)));
      return s;
    }
    case SetExpr::Ap: {
      if (!(e.ap_d > Rat(0))) throw ElaborationError("ap step must be positive");
      return QSet::from_ap(RatAP(nonneg(e.ap_a), e.ap_d));
    }
    case SetExpr::Interval: {
      if (!(nonneg(e.lo) < e.hi))
        throw ElaborationError("interval needs lo < hi");
      return QSet::interval(e.lo, e.lo_open, e.hi, e.hi_open);
    }
    case SetExpr::Compl: return QSet::complement(elaborate_q(*e.args[0]));
    case SetExpr::Union: {
      QSet s = elaborate_q(*e.args[0]);
      for (size_t i = 1; i < e.args.size(); ++i)
        s = QSet::set_union(s, elaborate_q(*e.args[i]));
      return s;
    }
    case SetExpr::Inter: {
      QSet s = elaborate_q(*e.args[0]);
      for (size_t i = 1; i < e.args.size(); ++i)
        s = QSet::set_inter(s, elaborate_q(*e.args[i]));
      return s;
    }
    case SetExpr::Diff:
      return QSet::set_diff(elaborate_q(*e.args[0]), elaborate_q(*e.args[1]));
    case SetExpr::Neg:
      throw ElaborationError(
          "atom 'neg' reflects through zero and only exists on the metric backend");
  }
  throw ElaborationError("unreachable expression kind");
}

}  // namespace coarseprox
