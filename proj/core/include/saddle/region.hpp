#pragma once

#include "saddle/grid.hpp"

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace saddle {

/// Planar point set used to build initial ascent directions.
///
/// Grammar accepted by parse():
///   all | none
///   halfplane(a,b,c)     a*x1 + b*x2 > c
///   quadrant(sx,sy)      sx*x1 > 0 and sy*x2 > 0
///   absdiff(c)           |x1| - |x2| > c
///   disc(r)              x1^2 + x2^2 < r^2
///   band(a,b,c)          |a*x1 + b*x2| > c
///   complement(R) | union(R,S) | intersection(R,S)
class Region {
 public:
  using Predicate = std::function<bool(Point)>;

  Region(Predicate contains, std::string text) : contains_(std::move(contains)), text_(std::move(text)) {}

  static Region all();
  static Region none();
  static Region halfplane(double a, double b, double c);
  static Region quadrant(double sx, double sy);
  static Region absdiff(double c);
  static Region disc(double r);
  static Region band(double a, double b, double c);
  static Region complement(const Region& r);
  static Region union_of(const Region& a, const Region& b);
  static Region intersection(const Region& a, const Region& b);

  /// Throws InputError on malformed text.
  static Region parse(std::string_view text);

  bool contains(Point p) const { return contains_(p); }
  const std::string& text() const { return text_; }

 private:
  Predicate contains_;
  std::string text_;
};

/// Scalar function of the boundary parameter theta in [0, 2*pi), parsed from
/// an arithmetic expression in `theta` and `pi` with + - * / ^, parentheses,
/// and the functions sin, cos, exp, abs. Example: "1 + sin(theta - pi/4)".
class BoundaryDensity {
 public:
  BoundaryDensity(std::function<double(double)> fn, std::string text)
      : fn_(std::move(fn)), text_(std::move(text)) {}

  /// Throws InputError on malformed text.
  static BoundaryDensity parse(std::string_view text);

  double operator()(double theta) const { return fn_(theta); }
  const std::string& text() const { return text_; }

 private:
  std::function<double(double)> fn_;
  std::string text_;
};

}  // namespace saddle
