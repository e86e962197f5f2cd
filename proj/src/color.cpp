#include "cpnsw/color.hpp"

#include <sstream>
#include <stdexcept>

namespace cpnsw {

namespace {
const std::vector<ColorValue> kEmptyItems;
}

ColorValue ColorValue::symbol(std::string name) {
  ColorValue v;
  v.kind_ = Kind::Symbol;
  v.sym_ = std::move(name);
  return v;
}

ColorValue ColorValue::integer(std::int64_t x) {
  ColorValue v;
  v.kind_ = Kind::Int;
  v.int_ = x;
  return v;
}

ColorValue ColorValue::tuple(std::vector<ColorValue> items) {
  ColorValue v;
  v.kind_ = Kind::Tuple;
  v.items_ = std::make_shared<const std::vector<ColorValue>>(std::move(items));
  return v;
}

ColorValue ColorValue::seq(std::vector<ColorValue> items) {
  ColorValue v;
  v.kind_ = Kind::Seq;
  v.items_ = std::make_shared<const std::vector<ColorValue>>(std::move(items));
  return v;
}

const std::string& ColorValue::sym() const {
  if (kind_ != Kind::Symbol) throw std::logic_error("ColorValue: not a symbol");
  return sym_;
}

std::int64_t ColorValue::int_value() const {
  if (kind_ != Kind::Int) throw std::logic_error("ColorValue: not an int");
  return int_;
}

const std::vector<ColorValue>& ColorValue::items() const {
  if (kind_ != Kind::Tuple && kind_ != Kind::Seq)
    throw std::logic_error("ColorValue: not a tuple or seq");
  return items_ ? *items_ : kEmptyItems;
}

int ColorValue::compare(const ColorValue& other) const {
  if (kind_ != other.kind_)
    return static_cast<int>(kind_) < static_cast<int>(other.kind_) ? -1 : 1;
  switch (kind_) {
    case Kind::Unit:
      return 0;
    case Kind::Symbol:
      return sym_.compare(other.sym_);
    case Kind::Int:
      return int_ < other.int_ ? -1 : (int_ > other.int_ ? 1 : 0);
    case Kind::Tuple:
    case Kind::Seq: {
      const auto& a = items();
      const auto& b = other.items();
      std::size_t n = std::min(a.size(), b.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
      }
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

std::string ColorValue::to_string() const {
  switch (kind_) {
    case Kind::Unit:
      return "()";
    case Kind::Symbol:
      return sym_;
    case Kind::Int:
      return std::to_string(int_);
    case Kind::Tuple:
    case Kind::Seq: {
      std::ostringstream out;
      out << (kind_ == Kind::Tuple ? '(' : '[');
      const auto& xs = items();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << ',';
        out << xs[i].to_string();
      }
      out << (kind_ == Kind::Tuple ? ')' : ']');
      return out.str();
    }
  }
  return "?";
}

bool Colorset::matches(const ColorValue& v) const {
  switch (kind) {
    case Kind::Any:
      return true;
    case Kind::Unit:
      return v.is_unit();
    case Kind::Symbol:
      return v.is_symbol();
    case Kind::Int:
      return v.is_int();
    case Kind::Tuple: {
      if (!v.is_tuple() || v.size() != parts.size()) return false;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (!parts[i].matches(v.items()[i])) return false;
      return true;
    }
    case Kind::Seq: {
      if (!v.is_seq()) return false;
      if (parts.empty()) return true;
      for (const auto& x : v.items())
        if (!parts[0].matches(x)) return false;
      return true;
    }
  }
  return false;
}

bool Colorset::operator==(const Colorset& other) const {
  return kind == other.kind && parts == other.parts;
}

std::string Colorset::to_string() const {
  switch (kind) {
    case Kind::Any:
      return "ANY";
    case Kind::Unit:
      return "E";
    case Kind::Symbol:
      return "SYM";
    case Kind::Int:
      return "INT";
    case Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += "*";
        s += parts[i].to_string();
      }
      return s + ")";
    }
    case Kind::Seq:
      return "LIST " + (parts.empty() ? std::string("ANY") : parts[0].to_string());
  }
  return "?";
}

}  // namespace cpnsw
