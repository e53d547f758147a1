#pragma once

// Design variables of the winding layup and their binary encoding.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpv {

class DesignError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Openings are stored for every helical layer; entry 0 is the fixed
// manufacturing opening of the first layer.
struct DesignVector {
  std::vector<double> helical_thickness;  // th_i, per ply of the +/- pair
  std::vector<double> hoop_thickness;     // th90_i
  std::vector<double> upper_openings;     // r0_up_i
  std::vector<double> lower_openings;     // r0_d_i
};

// Total composite thickness on the cylinder: both plies of every helical
// pair plus every hoop ply.
double cylinder_thickness(const DesignVector& d);

struct DesignBounds {
  double thickness_min = 0.01;
  double thickness_max = 2.0;
  double opening_max = 237.5;
};

// Maps the free variables to a flat vector:
//   [th_1..th_n, th90_1..th90_m, r0_up_2..r0_up_n, r0_d_2..r0_d_n]
class DesignSpace {
 public:
  DesignSpace() = default;
  DesignSpace(int helical_layers, int hoop_layers, double upper_opening_1, double lower_opening_1,
              DesignBounds bounds);

  int helical_layers() const { return helical_; }
  int hoop_layers() const { return hoop_; }
  double upper_opening_1() const { return upper_1_; }
  double lower_opening_1() const { return lower_1_; }
  const DesignBounds& bounds() const { return bounds_; }

  std::size_t dimension() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<std::string>& names() const { return names_; }

  DesignVector decode(std::span<const double> x) const;
  std::vector<double> encode(const DesignVector& d) const;

  // One message per out-of-range or malformed field; empty when valid.
  std::vector<std::string> violations(const DesignVector& d) const;
  void validate(const DesignVector& d) const;

  std::vector<double> clip(std::span<const double> x) const;

 private:
  int helical_ = 0;
  int hoop_ = 0;
  double upper_1_ = 0.0;
  double lower_1_ = 0.0;
  DesignBounds bounds_;
  std::vector<double> lower_, upper_;
  std::vector<std::string> names_;
};

// Fixed-width unsigned binary coding of each variable on its bounds.
class BinaryCodec {
 public:
  BinaryCodec(std::vector<double> lower, std::vector<double> upper, int bits_per_variable = 16);

  std::size_t variables() const { return lower_.size(); }
  int bits_per_variable() const { return bits_; }
  std::size_t length() const { return lower_.size() * static_cast<std::size_t>(bits_); }
  double step(std::size_t variable) const;

  std::vector<std::uint8_t> encode(std::span<const double> x) const;
  std::vector<double> decode(std::span<const std::uint8_t> bits) const;

 private:
  std::vector<double> lower_, upper_;
  int bits_;
  double levels_;
};

}  // namespace cpv
