#ifndef CPNSW_COLOR_HPP
#define CPNSW_COLOR_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cpnsw {

/// A structured token value: unit, named atom, integer, tuple or sequence.
/// Values are immutable; equality and ordering are structural.
class ColorValue {
 public:
  enum class Kind { Unit, Symbol, Int, Tuple, Seq };

  ColorValue() : kind_(Kind::Unit) {}

  static ColorValue unit() { return ColorValue(); }
  static ColorValue symbol(std::string name);
  static ColorValue integer(std::int64_t v);
  static ColorValue tuple(std::vector<ColorValue> items);
  static ColorValue seq(std::vector<ColorValue> items);

  Kind kind() const { return kind_; }
  bool is_unit() const { return kind_ == Kind::Unit; }
  bool is_symbol() const { return kind_ == Kind::Symbol; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }
  bool is_seq() const { return kind_ == Kind::Seq; }

  const std::string& sym() const;
  std::int64_t int_value() const;
  const std::vector<ColorValue>& items() const;  // tuple or seq
  std::size_t size() const { return items().size(); }

  bool operator==(const ColorValue& other) const { return compare(other) == 0; }
  bool operator!=(const ColorValue& other) const { return compare(other) != 0; }
  bool operator<(const ColorValue& other) const { return compare(other) < 0; }

  // Total structural order: kind index first, then content.
  int compare(const ColorValue& other) const;

  std::string to_string() const;

 private:
  Kind kind_;
  std::int64_t int_ = 0;
  std::string sym_;
  std::shared_ptr<const std::vector<ColorValue>> items_;
};

/// Shape constraint on the values a place may hold.
struct Colorset {
  enum class Kind { Any, Unit, Symbol, Int, Tuple, Seq };

  Kind kind = Kind::Any;
  std::vector<Colorset> parts;  // tuple component shapes
  // Seq element shape (empty = any element); kept as parts[0] when present.

  static Colorset any() { return {Kind::Any, {}}; }
  static Colorset unit() { return {Kind::Unit, {}}; }
  static Colorset symbol() { return {Kind::Symbol, {}}; }
  static Colorset integer() { return {Kind::Int, {}}; }
  static Colorset tuple(std::vector<Colorset> components) {
    return {Kind::Tuple, std::move(components)};
  }
  static Colorset seq_of(Colorset element) {
    return {Kind::Seq, {std::move(element)}};
  }

  bool matches(const ColorValue& v) const;
  bool operator==(const Colorset& other) const;
  std::string to_string() const;
};

}  // namespace cpnsw

#endif
