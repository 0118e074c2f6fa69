#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "oplab/errors.hpp"

namespace oplab {

using BigInt = boost::multiprecision::cpp_int;

// Exact sum of terms count * 4^{-exp}. Kept as num / 4^scale with exact
// integer arithmetic so mass comparisons are never decided in floating point.
class DyadicSum {
  public:
    DyadicSum() = default;

    // adds count * 4^{-exp}; an infinite exponent contributes 0 exactly
    void add_pow4(std::uint64_t exp, const BigInt& count = 1);
    void add_pow4_inf() {}  // 4^{-inf} = 0

    void add(const DyadicSum& other);

    bool is_zero() const { return num_ == 0; }
    // comparisons against a natural number K
    bool leq_int(std::uint64_t k) const;
    bool gt_int(std::uint64_t k) const;
    bool gt_big(const BigInt& k) const;

    // minimal count c with value + c * 4^{-exp} > target; requires value <= target
    BigInt deficit_count(const BigInt& target, std::uint64_t exp) const;

    int compare(const DyadicSum& other) const;  // -1 / 0 / +1

    double to_double() const;
    std::string to_fraction() const;  // "p/q" in lowest dyadic terms

  private:
    void rescale_to(std::uint64_t scale);

    BigInt num_ = 0;
    std::uint64_t scale_ = 0;  // value = num / 4^scale
};

}  // namespace oplab
