#include "saddle/region.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace saddle {

namespace {

/// Shared cursor over the grammar text for both parsers below.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(fmt::format("expected '{}'", c));
  }
  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  double number() {
    skip_space();
    const std::size_t start = pos_;
    // Sign is handled here so that region arguments like "-1" parse directly.
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == 'e' ||
            text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    std::string token(text_.substr(start, pos_ - start));
    if (!token.empty() && token.front() == '+') token.erase(0, 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      pos_ = start;
      fail("expected a number");
    }
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(fmt::format("cannot parse '{}' at column {}: {}", text_, pos_ + 1, what));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Region parse_region(Cursor& in) {
  const std::string name = in.identifier();
  if (name.empty()) in.fail("expected a region name");
  if (name == "all" || name == "none") {
    if (in.accept('(')) in.expect(')');
    return name == "all" ? Region::all() : Region::none();
  }
  in.expect('(');
  auto numbers = [&](std::size_t count) {
    std::vector<double> args;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) in.expect(',');
      args.push_back(in.number());
    }
    in.expect(')');
    return args;
  };
  if (name == "halfplane") {
    const auto a = numbers(3);
    return Region::halfplane(a[0], a[1], a[2]);
  }
  if (name == "quadrant") {
    const auto a = numbers(2);
    return Region::quadrant(a[0], a[1]);
  }
  if (name == "absdiff") return Region::absdiff(numbers(1)[0]);
  if (name == "disc") return Region::disc(numbers(1)[0]);
  if (name == "band") {
    const auto a = numbers(3);
    return Region::band(a[0], a[1], a[2]);
  }
  if (name == "complement") {
    Region r = parse_region(in);
    in.expect(')');
    return Region::complement(r);
  }
  if (name == "union" || name == "intersection") {
    Region a = parse_region(in);
    in.expect(',');
    Region b = parse_region(in);
    in.expect(')');
    return name == "union" ? Region::union_of(a, b) : Region::intersection(a, b);
  }
  in.fail(fmt::format("unknown region '{}'", name));
}

using Scalar = std::function<double(double)>;

Scalar parse_sum(Cursor& in);

Scalar parse_primary(Cursor& in) {
  const char c = in.peek();
  if (c == '(') {
    in.expect('(');
    Scalar inner = parse_sum(in);
    in.expect(')');
    return inner;
  }
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
    const double value = in.number();
    return [value](double) { return value; };
  }
  const std::string name = in.identifier();
  if (name == "theta") return [](double theta) { return theta; };
  if (name == "pi") return [](double) { return std::numbers::pi; };
  double (*fn)(double) = nullptr;
  if (name == "sin") fn = [](double x) { return std::sin(x); };
  if (name == "cos") fn = [](double x) { return std::cos(x); };
  if (name == "exp") fn = [](double x) { return std::exp(x); };
  if (name == "abs") fn = [](double x) { return std::abs(x); };
  if (!fn) in.fail(name.empty() ? "expected an operand" : fmt::format("unknown name '{}'", name));
  in.expect('(');
  Scalar arg = parse_sum(in);
  in.expect(')');
  return [fn, arg](double theta) { return fn(arg(theta)); };
}

Scalar parse_unary(Cursor& in);

Scalar parse_power(Cursor& in) {
  Scalar base = parse_primary(in);
  if (!in.accept('^')) return base;
  Scalar exponent = parse_unary(in);
  return [base, exponent](double theta) { return std::pow(base(theta), exponent(theta)); };
}

Scalar parse_unary(Cursor& in) {
  if (in.accept('-')) {
    Scalar operand = parse_unary(in);
    return [operand](double theta) { return -operand(theta); };
  }
  if (in.accept('+')) return parse_unary(in);
  return parse_power(in);
}

Scalar parse_product(Cursor& in) {
  Scalar acc = parse_unary(in);
  for (;;) {
    if (in.accept('*')) {
      Scalar rhs = parse_unary(in);
      acc = [acc, rhs](double theta) { return acc(theta) * rhs(theta); };
    } else if (in.accept('/')) {
      Scalar rhs = parse_unary(in);
      acc = [acc, rhs](double theta) { return acc(theta) / rhs(theta); };
    } else {
      return acc;
    }
  }
}

Scalar parse_sum(Cursor& in) {
  Scalar acc = parse_product(in);
  for (;;) {
    if (in.accept('+')) {
      Scalar rhs = parse_product(in);
      acc = [acc, rhs](double theta) { return acc(theta) + rhs(theta); };
    } else if (in.accept('-')) {
      Scalar rhs = parse_product(in);
      acc = [acc, rhs](double theta) { return acc(theta) - rhs(theta); };
    } else {
      return acc;
    }
  }
}

}  // namespace

Region Region::all() {
  return Region([](Point) { return true; }, "all");
}

Region Region::none() {
  return Region([](Point) { return false; }, "none");
}

Region Region::halfplane(double a, double b, double c) {
  return Region([=](Point p) { return a * p.x + b * p.y > c; }, fmt::format("halfplane({},{},{})", a, b, c));
}

Region Region::quadrant(double sx, double sy) {
  return Region([=](Point p) { return sx * p.x > 0.0 && sy * p.y > 0.0; }, fmt::format("quadrant({},{})", sx, sy));
}

Region Region::absdiff(double c) {
  return Region([=](Point p) { return std::abs(p.x) - std::abs(p.y) > c; }, fmt::format("absdiff({})", c));
}

Region Region::disc(double r) {
  return Region([=](Point p) { return p.x * p.x + p.y * p.y < r * r; }, fmt::format("disc({})", r));
}

Region Region::band(double a, double b, double c) {
  return Region([=](Point p) { return std::abs(a * p.x + b * p.y) > c; }, fmt::format("band({},{},{})", a, b, c));
}

Region Region::complement(const Region& r) {
  return Region([f = r.contains_](Point p) { return !f(p); }, fmt::format("complement({})", r.text_));
}

Region Region::union_of(const Region& a, const Region& b) {
  return Region([f = a.contains_, g = b.contains_](Point p) { return f(p) || g(p); },
                fmt::format("union({},{})", a.text_, b.text_));
}

Region Region::intersection(const Region& a, const Region& b) {
  return Region([f = a.contains_, g = b.contains_](Point p) { return f(p) && g(p); },
                fmt::format("intersection({},{})", a.text_, b.text_));
}

Region Region::parse(std::string_view text) {
  Cursor in(text);
  Region r = parse_region(in);
  if (!in.at_end()) in.fail("trailing characters");
  return r;
}

BoundaryDensity BoundaryDensity::parse(std::string_view text) {
  Cursor in(text);
  Scalar fn = parse_sum(in);
  if (!in.at_end()) in.fail("trailing characters");
  return BoundaryDensity(std::move(fn), std::string(text));
}

}  // namespace saddle
