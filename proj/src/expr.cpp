#include "cpnsw/expr.hpp"

#include <sstream>
#include <stdexcept>

namespace cpnsw {

bool Pattern::match(const ColorValue& v, Binding& binding) const {
  switch (kind) {
    case Kind::Var: {
      auto it = binding.find(var);
      if (it != binding.end()) return it->second == v;
      binding.emplace(var, v);
      return true;
    }
    case Kind::Const:
      return value == v;
    case Kind::Tuple: {
      if (!v.is_tuple() || v.size() != parts.size()) return false;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (!parts[i].match(v.items()[i], binding)) return false;
      return true;
    }
  }
  return false;
}

void Pattern::collect_vars(std::vector<std::string>& out) const {
  switch (kind) {
    case Kind::Var:
      out.push_back(var);
      break;
    case Kind::Const:
      break;
    case Kind::Tuple:
      for (const auto& p : parts) p.collect_vars(out);
      break;
  }
}

std::string Pattern::to_string() const {
  switch (kind) {
    case Kind::Var:
      return var;
    case Kind::Const:
      return value.to_string();
    case Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i].to_string();
      }
      return s + ")";
    }
  }
  return "?";
}

ExprPtr Expr::make(Op op, std::vector<ExprPtr> args) {
  return ExprPtr(new Expr(op, {}, {}, std::move(args), 0));
}

ExprPtr Expr::lit(ColorValue v) {
  return ExprPtr(new Expr(Op::Const, std::move(v), {}, {}, 0));
}
ExprPtr Expr::var(std::string name) {
  return ExprPtr(new Expr(Op::Var, {}, std::move(name), {}, 0));
}
ExprPtr Expr::mk_tuple(std::vector<ExprPtr> args) { return make(Op::MkTuple, std::move(args)); }
ExprPtr Expr::mk_seq(std::vector<ExprPtr> args) { return make(Op::MkSeq, std::move(args)); }
ExprPtr Expr::concat(ExprPtr a, ExprPtr b) { return make(Op::Concat, {std::move(a), std::move(b)}); }
ExprPtr Expr::head(ExprPtr s) { return make(Op::Head, {std::move(s)}); }
ExprPtr Expr::tail(ExprPtr s) { return make(Op::Tail, {std::move(s)}); }
ExprPtr Expr::len(ExprPtr s) { return make(Op::Len, {std::move(s)}); }
ExprPtr Expr::nth(ExprPtr s, ExprPtr index) { return make(Op::Nth, {std::move(s), std::move(index)}); }
ExprPtr Expr::tuple_get(ExprPtr t, std::size_t index) {
  auto e = ExprPtr(new Expr(Op::TupleGet, {}, {}, {std::move(t)}, index));
  return e;
}
ExprPtr Expr::drop(ExprPtr s, ExprPtr count) { return make(Op::Drop, {std::move(s), std::move(count)}); }
ExprPtr Expr::add(ExprPtr a, ExprPtr b) { return make(Op::Add, {std::move(a), std::move(b)}); }
ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return make(Op::Sub, {std::move(a), std::move(b)}); }
ExprPtr Expr::eq(ExprPtr a, ExprPtr b) { return make(Op::Eq, {std::move(a), std::move(b)}); }
ExprPtr Expr::ne(ExprPtr a, ExprPtr b) { return make(Op::Ne, {std::move(a), std::move(b)}); }
ExprPtr Expr::lt(ExprPtr a, ExprPtr b) { return make(Op::Lt, {std::move(a), std::move(b)}); }
ExprPtr Expr::le(ExprPtr a, ExprPtr b) { return make(Op::Le, {std::move(a), std::move(b)}); }
ExprPtr Expr::gt(ExprPtr a, ExprPtr b) { return make(Op::Gt, {std::move(a), std::move(b)}); }
ExprPtr Expr::ge(ExprPtr a, ExprPtr b) { return make(Op::Ge, {std::move(a), std::move(b)}); }
ExprPtr Expr::logic_and(ExprPtr a, ExprPtr b) { return make(Op::And, {std::move(a), std::move(b)}); }
ExprPtr Expr::logic_or(ExprPtr a, ExprPtr b) { return make(Op::Or, {std::move(a), std::move(b)}); }
ExprPtr Expr::logic_not(ExprPtr a) { return make(Op::Not, {std::move(a)}); }
ExprPtr Expr::if_else(ExprPtr cond, ExprPtr t, ExprPtr f) {
  return make(Op::IfElse, {std::move(cond), std::move(t), std::move(f)});
}

namespace {

std::int64_t as_int(const ColorValue& v, const char* ctx) {
  if (!v.is_int()) throw std::runtime_error(std::string("expr: ") + ctx + " expects an Int, got " + v.to_string());
  return v.int_value();
}

const std::vector<ColorValue>& as_seq(const ColorValue& v, const char* ctx) {
  if (!v.is_seq()) throw std::runtime_error(std::string("expr: ") + ctx + " expects a Seq, got " + v.to_string());
  return v.items();
}

ColorValue bool_value(bool b) { return ColorValue::integer(b ? 1 : 0); }

}  // namespace

ColorValue Expr::eval(const Binding& binding) const {
  switch (op_) {
    case Op::Const:
      return value_;
    case Op::Var: {
      auto it = binding.find(name_);
      if (it == binding.end())
        throw std::runtime_error("expr: unbound variable '" + name_ + "'");
      return it->second;
    }
    case Op::MkTuple: {
      std::vector<ColorValue> xs;
      xs.reserve(args_.size());
      for (const auto& a : args_) xs.push_back(a->eval(binding));
      return ColorValue::tuple(std::move(xs));
    }
    case Op::MkSeq: {
      std::vector<ColorValue> xs;
      xs.reserve(args_.size());
      for (const auto& a : args_) xs.push_back(a->eval(binding));
      return ColorValue::seq(std::move(xs));
    }
    case Op::Concat: {
      auto a = args_[0]->eval(binding);
      auto b = args_[1]->eval(binding);
      std::vector<ColorValue> xs = as_seq(a, "concat");
      const auto& ys = as_seq(b, "concat");
      xs.insert(xs.end(), ys.begin(), ys.end());
      return ColorValue::seq(std::move(xs));
    }
    case Op::Head: {
      const auto& xs = as_seq(args_[0]->eval(binding), "head");
      if (xs.empty()) throw std::runtime_error("expr: head of empty sequence");
      return xs.front();
    }
    case Op::Tail: {
      const auto& xs = as_seq(args_[0]->eval(binding), "tail");
      if (xs.empty()) throw std::runtime_error("expr: tail of empty sequence");
      return ColorValue::seq({xs.begin() + 1, xs.end()});
    }
    case Op::Len:
      return ColorValue::integer(static_cast<std::int64_t>(
          as_seq(args_[0]->eval(binding), "len").size()));
    case Op::Nth: {
      const auto& xs = as_seq(args_[0]->eval(binding), "nth");
      auto i = as_int(args_[1]->eval(binding), "nth");
      if (i < 0 || static_cast<std::size_t>(i) >= xs.size())
        throw std::runtime_error("expr: nth index out of range");
      return xs[static_cast<std::size_t>(i)];
    }
    case Op::TupleGet: {
      auto t = args_[0]->eval(binding);
      if (!t.is_tuple() || index_ >= t.size())
        throw std::runtime_error("expr: bad tuple projection");
      return t.items()[index_];
    }
    case Op::Drop: {
      const auto& xs = as_seq(args_[0]->eval(binding), "drop");
      auto n = as_int(args_[1]->eval(binding), "drop");
      if (n < 0) n = 0;
      std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n), xs.size());
      return ColorValue::seq({xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end()});
    }
    case Op::Add:
      return ColorValue::integer(as_int(args_[0]->eval(binding), "add") +
                                 as_int(args_[1]->eval(binding), "add"));
    case Op::Sub:
      return ColorValue::integer(as_int(args_[0]->eval(binding), "sub") -
                                 as_int(args_[1]->eval(binding), "sub"));
    case Op::Eq:
      return bool_value(args_[0]->eval(binding) == args_[1]->eval(binding));
    case Op::Ne:
      return bool_value(args_[0]->eval(binding) != args_[1]->eval(binding));
    case Op::Lt:
      return bool_value(args_[0]->eval(binding).compare(args_[1]->eval(binding)) < 0);
    case Op::Le:
      return bool_value(args_[0]->eval(binding).compare(args_[1]->eval(binding)) <= 0);
    case Op::Gt:
      return bool_value(args_[0]->eval(binding).compare(args_[1]->eval(binding)) > 0);
    case Op::Ge:
      return bool_value(args_[0]->eval(binding).compare(args_[1]->eval(binding)) >= 0);
    case Op::And:
      return bool_value(args_[0]->eval_bool(binding) && args_[1]->eval_bool(binding));
    case Op::Or:
      return bool_value(args_[0]->eval_bool(binding) || args_[1]->eval_bool(binding));
    case Op::Not:
      return bool_value(!args_[0]->eval_bool(binding));
    case Op::IfElse:
      return args_[0]->eval_bool(binding) ? args_[1]->eval(binding)
                                          : args_[2]->eval(binding);
  }
  throw std::logic_error("expr: unknown op");
}

bool Expr::eval_bool(const Binding& binding) const {
  auto v = eval(binding);
  if (!v.is_int())
    throw std::runtime_error("expr: condition is not boolean-valued: " + v.to_string());
  return v.int_value() != 0;
}

void Expr::collect_vars(std::vector<std::string>& out) const {
  if (op_ == Op::Var) out.push_back(name_);
  for (const auto& a : args_) a->collect_vars(out);
}

std::string Expr::to_string() const {
  auto bin = [&](const char* s) {
    return "(" + args_[0]->to_string() + s + args_[1]->to_string() + ")";
  };
  switch (op_) {
    case Op::Const: return value_.to_string();
    case Op::Var: return name_;
    case Op::MkTuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) s += ",";
        s += args_[i]->to_string();
      }
      return s + ")";
    }
    case Op::MkSeq: {
      std::string s = "[";
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) s += ",";
        s += args_[i]->to_string();
      }
      return s + "]";
    }
    case Op::Concat: return bin("^^");
    case Op::Head: return "hd " + args_[0]->to_string();
    case Op::Tail: return "tl " + args_[0]->to_string();
    case Op::Len: return "len " + args_[0]->to_string();
    case Op::Nth: return "nth" + bin(",");
    case Op::TupleGet: return args_[0]->to_string() + "#" + std::to_string(index_);
    case Op::Drop: return "drop" + bin(",");
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Eq: return bin("=");
    case Op::Ne: return bin("<>");
    case Op::Lt: return bin("<");
    case Op::Le: return bin("<=");
    case Op::Gt: return bin(">");
    case Op::Ge: return bin(">=");
    case Op::And: return bin(" andalso ");
    case Op::Or: return bin(" orelse ");
    case Op::Not: return "not " + args_[0]->to_string();
    case Op::IfElse:
      return "if " + args_[0]->to_string() + " then " + args_[1]->to_string() +
             " else " + args_[2]->to_string();
  }
  return "?";
}

}  // namespace cpnsw
