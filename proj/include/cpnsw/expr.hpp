#ifndef CPNSW_EXPR_HPP
#define CPNSW_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpnsw/color.hpp"

namespace cpnsw {

/// Variable assignment produced by matching input-arc patterns.
using Binding = std::map<std::string, ColorValue>;

/// Input-arc pattern: matches one token's value, binding variables.
/// A variable already bound must match structurally (join semantics).
struct Pattern {
  enum class Kind { Var, Const, Tuple };

  Kind kind = Kind::Var;
  std::string var;
  ColorValue value;
  std::vector<Pattern> parts;

  static Pattern any(std::string name) { return {Kind::Var, std::move(name), {}, {}}; }
  static Pattern constant(ColorValue v) { return {Kind::Const, {}, std::move(v), {}}; }
  static Pattern tuple(std::vector<Pattern> ps) { return {Kind::Tuple, {}, {}, std::move(ps)}; }

  /// Tries to match `v`, extending `binding`. On failure `binding` is
  /// left unspecified; callers work on a copy.
  bool match(const ColorValue& v, Binding& binding) const;

  void collect_vars(std::vector<std::string>& out) const;
  std::string to_string() const;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Side-effect-free expression over a binding; evaluates to a ColorValue.
/// Comparisons and logic yield Int 0/1; guards treat nonzero Int as true.
class Expr {
 public:
  enum class Op {
    Const,     // literal value
    Var,       // binding lookup
    MkTuple,   // tuple of arg values
    MkSeq,     // sequence literal
    Concat,    // seq ^^ seq
    Head,      // first element (error on empty)
    Tail,      // all but first (error on empty)
    Len,       // sequence length as Int
    Nth,       // element at index (args: seq, index)
    TupleGet,  // tuple component by fixed index
    Drop,      // seq without its first n elements (clamped)
    Add, Sub,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or, Not,
    IfElse,    // args: cond, then, else
  };

  static ExprPtr lit(ColorValue v);
  static ExprPtr sym(std::string s) { return lit(ColorValue::symbol(std::move(s))); }
  static ExprPtr num(std::int64_t n) { return lit(ColorValue::integer(n)); }
  static ExprPtr nil() { return lit(ColorValue::seq({})); }
  static ExprPtr var(std::string name);
  static ExprPtr mk_tuple(std::vector<ExprPtr> args);
  static ExprPtr mk_seq(std::vector<ExprPtr> args);
  static ExprPtr concat(ExprPtr a, ExprPtr b);
  static ExprPtr head(ExprPtr s);
  static ExprPtr tail(ExprPtr s);
  static ExprPtr len(ExprPtr s);
  static ExprPtr nth(ExprPtr s, ExprPtr index);
  static ExprPtr tuple_get(ExprPtr t, std::size_t index);
  static ExprPtr drop(ExprPtr s, ExprPtr count);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr eq(ExprPtr a, ExprPtr b);
  static ExprPtr ne(ExprPtr a, ExprPtr b);
  static ExprPtr lt(ExprPtr a, ExprPtr b);
  static ExprPtr le(ExprPtr a, ExprPtr b);
  static ExprPtr gt(ExprPtr a, ExprPtr b);
  static ExprPtr ge(ExprPtr a, ExprPtr b);
  static ExprPtr logic_and(ExprPtr a, ExprPtr b);
  static ExprPtr logic_or(ExprPtr a, ExprPtr b);
  static ExprPtr logic_not(ExprPtr a);
  static ExprPtr if_else(ExprPtr cond, ExprPtr t, ExprPtr f);

  Op op() const { return op_; }

  ColorValue eval(const Binding& binding) const;
  bool eval_bool(const Binding& binding) const;

  void collect_vars(std::vector<std::string>& out) const;
  std::string to_string() const;

 private:
  Expr(Op op, ColorValue value, std::string name, std::vector<ExprPtr> args,
       std::size_t index)
      : op_(op), value_(std::move(value)), name_(std::move(name)),
        args_(std::move(args)), index_(index) {}

  static ExprPtr make(Op op, std::vector<ExprPtr> args);

  Op op_;
  ColorValue value_;           // Const
  std::string name_;           // Var
  std::vector<ExprPtr> args_;  // operands
  std::size_t index_ = 0;      // TupleGet
};

}  // namespace cpnsw

#endif
