#include "oplab/dyadic.hpp"

namespace oplab {

namespace {

BigInt pow4_big(std::uint64_t e) {
    BigInt one = 1;
    return one << (2 * e);
}

}  // namespace

void DyadicSum::rescale_to(std::uint64_t scale) {
    if (scale < scale_) throw OverflowError("DyadicSum: cannot reduce scale");
    num_ <<= 2 * (scale - scale_);
    scale_ = scale;
}

void DyadicSum::add_pow4(std::uint64_t exp, const BigInt& count) {
    if (count == 0) return;
    if (count < 0) throw InvalidInputError("DyadicSum: negative count");
    if (exp > scale_) rescale_to(exp);
    num_ += count * pow4_big(scale_ - exp);
}

void DyadicSum::add(const DyadicSum& other) {
    if (other.scale_ > scale_) rescale_to(other.scale_);
    num_ += other.num_ << (2 * (scale_ - other.scale_));
}

bool DyadicSum::leq_int(std::uint64_t k) const {
    return num_ <= BigInt(k) << (2 * scale_);
}

bool DyadicSum::gt_int(std::uint64_t k) const { return !leq_int(k); }

bool DyadicSum::gt_big(const BigInt& k) const { return num_ > k << (2 * scale_); }

BigInt DyadicSum::deficit_count(const BigInt& target, std::uint64_t exp) const {
    BigInt scaled_target = target << (2 * scale_);
    if (num_ > scaled_target) return 0;
    BigInt deficit = scaled_target - num_;  // at scale scale_
    if (exp <= scale_) {
        // c * 4^{scale-exp} > deficit  =>  c = floor(deficit / 4^{scale-exp}) + 1
        return (deficit >> (2 * (scale_ - exp))) + 1;
    }
    return (deficit << (2 * (exp - scale_))) + 1;
}

int DyadicSum::compare(const DyadicSum& other) const {
    std::uint64_t s = std::max(scale_, other.scale_);
    BigInt a = num_ << (2 * (s - scale_));
    BigInt b = other.num_ << (2 * (s - other.scale_));
    return a < b ? -1 : (a == b ? 0 : 1);
}

double DyadicSum::to_double() const {
    if (scale_ <= 500) return num_.convert_to<double>() / pow4_big(scale_).convert_to<double>();
    // avoid overflow of the denominator: shift both sides down first
    BigInt n = num_ >> (2 * (scale_ - 500));
    return n.convert_to<double>() / pow4_big(500).convert_to<double>();
}

std::string DyadicSum::to_fraction() const {
    BigInt n = num_;
    std::uint64_t twos = 2 * scale_;  // denominator = 2^twos
    while (twos > 0 && n != 0 && (n & 1) == 0) {
        n >>= 1;
        --twos;
    }
    if (n == 0) return "0/1";
    BigInt den = BigInt(1) << twos;
    return n.str() + "/" + den.str();
}

}  // namespace oplab
