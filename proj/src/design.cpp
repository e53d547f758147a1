#include "cpv/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cpv {

double cylinder_thickness(const DesignVector& d) {
  return 2.0 * std::accumulate(d.helical_thickness.begin(), d.helical_thickness.end(), 0.0) +
         std::accumulate(d.hoop_thickness.begin(), d.hoop_thickness.end(), 0.0);
}

DesignSpace::DesignSpace(int helical_layers, int hoop_layers, double upper_opening_1,
                         double lower_opening_1, DesignBounds bounds)
    : helical_(helical_layers),
      hoop_(hoop_layers),
      upper_1_(upper_opening_1),
      lower_1_(lower_opening_1),
      bounds_(bounds) {
  if (helical_layers < 1) throw DesignError("at least one helical layer is required");
  if (hoop_layers < 0) throw DesignError("hoop layer count must be non-negative");
  if (!(bounds.thickness_min > 0.0 && bounds.thickness_max > bounds.thickness_min)) {
    throw DesignError("thickness bounds must satisfy 0 < min < max");
  }
  if (!(bounds.opening_max > upper_opening_1 && bounds.opening_max > lower_opening_1)) {
    throw DesignError("maximum opening radius must exceed the first-layer openings");
  }
  for (int i = 0; i < helical_; ++i) {
    lower_.push_back(bounds.thickness_min);
    upper_.push_back(bounds.thickness_max);
    names_.push_back("th_" + std::to_string(i + 1));
  }
  for (int i = 0; i < hoop_; ++i) {
    lower_.push_back(bounds.thickness_min);
    upper_.push_back(bounds.thickness_max);
    names_.push_back("th90_" + std::to_string(i + 1));
  }
  for (int i = 1; i < helical_; ++i) {
    lower_.push_back(upper_opening_1);
    upper_.push_back(bounds.opening_max);
    names_.push_back("r0_up_" + std::to_string(i + 1));
  }
  for (int i = 1; i < helical_; ++i) {
    lower_.push_back(lower_opening_1);
    upper_.push_back(bounds.opening_max);
    names_.push_back("r0_d_" + std::to_string(i + 1));
  }
}

DesignVector DesignSpace::decode(std::span<const double> x) const {
  if (x.size() != dimension()) throw DesignError("design vector has the wrong dimension");
  DesignVector d;
  std::size_t k = 0;
  for (int i = 0; i < helical_; ++i) d.helical_thickness.push_back(x[k++]);
  for (int i = 0; i < hoop_; ++i) d.hoop_thickness.push_back(x[k++]);
  d.upper_openings.push_back(upper_1_);
  for (int i = 1; i < helical_; ++i) d.upper_openings.push_back(x[k++]);
  d.lower_openings.push_back(lower_1_);
  for (int i = 1; i < helical_; ++i) d.lower_openings.push_back(x[k++]);
  return d;
}

std::vector<double> DesignSpace::encode(const DesignVector& d) const {
  if (static_cast<int>(d.helical_thickness.size()) != helical_ ||
      static_cast<int>(d.hoop_thickness.size()) != hoop_ ||
      static_cast<int>(d.upper_openings.size()) != helical_ ||
      static_cast<int>(d.lower_openings.size()) != helical_) {
    throw DesignError("design vector does not match the layer counts");
  }
  std::vector<double> x;
  x.reserve(dimension());
  x.insert(x.end(), d.helical_thickness.begin(), d.helical_thickness.end());
  x.insert(x.end(), d.hoop_thickness.begin(), d.hoop_thickness.end());
  x.insert(x.end(), d.upper_openings.begin() + 1, d.upper_openings.end());
  x.insert(x.end(), d.lower_openings.begin() + 1, d.lower_openings.end());
  return x;
}

std::vector<std::string> DesignSpace::violations(const DesignVector& d) const {
  std::vector<std::string> out;
  auto count = [&](const std::vector<double>& v, int expected, const char* what) {
    if (static_cast<int>(v.size()) != expected) {
      out.push_back(std::string(what) + ": expected " + std::to_string(expected) + " values, got " +
                    std::to_string(v.size()));
      return false;
    }
    return true;
  };
  const bool ok = count(d.helical_thickness, helical_, "helical thickness") &
                  count(d.hoop_thickness, hoop_, "hoop thickness") &
                  count(d.upper_openings, helical_, "upper openings") &
                  count(d.lower_openings, helical_, "lower openings");
  if (!ok) return out;

  auto fmt = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  if (d.upper_openings[0] != upper_1_) {
    out.push_back("r0_up_1 is fixed at " + fmt(upper_1_) + ", got " + fmt(d.upper_openings[0]));
  }
  if (d.lower_openings[0] != lower_1_) {
    out.push_back("r0_d_1 is fixed at " + fmt(lower_1_) + ", got " + fmt(d.lower_openings[0]));
  }
  const auto x = encode(d);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) {
      out.push_back(names_[i] + " = " + fmt(x[i]) + " outside [" + fmt(lower_[i]) + ", " + fmt(upper_[i]) + "]");
    }
  }
  return out;
}

void DesignSpace::validate(const DesignVector& d) const {
  const auto v = violations(d);
  if (v.empty()) return;
  std::string msg = "design out of bounds:";
  for (const auto& m : v) msg += "\n  " + m;
  throw DesignError(msg);
}

std::vector<double> DesignSpace::clip(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], lower_[i], upper_[i]);
  return out;
}

BinaryCodec::BinaryCodec(std::vector<double> lower, std::vector<double> upper, int bits_per_variable)
    : lower_(std::move(lower)), upper_(std::move(upper)), bits_(bits_per_variable) {
  if (lower_.size() != upper_.size()) throw DesignError("bound vectors differ in length");
  if (bits_ < 1 || bits_ > 52) throw DesignError("bits per variable must lie in [1, 52]");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(upper_[i] > lower_[i])) throw DesignError("upper bound must exceed lower bound");
  }
  levels_ = std::ldexp(1.0, bits_) - 1.0;
}

double BinaryCodec::step(std::size_t variable) const {
  return (upper_[variable] - lower_[variable]) / levels_;
}

std::vector<std::uint8_t> BinaryCodec::encode(std::span<const double> x) const {
  if (x.size() != variables()) throw DesignError("value vector has the wrong dimension");
  std::vector<std::uint8_t> bits(length());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::clamp((x[i] - lower_[i]) / (upper_[i] - lower_[i]), 0.0, 1.0);
    auto q = static_cast<std::uint64_t>(std::llround(u * levels_));
    for (int b = bits_ - 1; b >= 0; --b) {
      bits[i * bits_ + b] = static_cast<std::uint8_t>(q & 1u);
      q >>= 1;
    }
  }
  return bits;
}

std::vector<double> BinaryCodec::decode(std::span<const std::uint8_t> bits) const {
  if (bits.size() != length()) throw DesignError("chromosome has the wrong length");
  std::vector<double> x(variables());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uint64_t q = 0;
    for (int b = 0; b < bits_; ++b) q = (q << 1) | (bits[i * bits_ + b] & 1u);
    x[i] = lower_[i] + static_cast<double>(q) / levels_ * (upper_[i] - lower_[i]);
  }
  return x;
}

}  // namespace cpv
