#pragma once

#include <compare>
#include <iosfwd>

namespace minkabs {

/**
 * A real number tagged with an integer power of the measure line of
 * spacetime distances. The measure line is anchored to the SI second, so
 * `dim == 1` is seconds, `dim == 2` is sec^2, `dim == -1` is 1/sec and
 * `dim == 0` is a pure number.
 *
 * Addition, subtraction and ordering require equal dimensions and throw
 * DimensionError otherwise. Multiplication and division combine dimensions.
 */
class MeasureScalar {
public:
    constexpr MeasureScalar() = default;
    constexpr MeasureScalar(double value, int dim) : value_(value), dim_(dim) {}

    constexpr double value() const { return value_; }
    constexpr int dim() const { return dim_; }

    /// Value in sec^dim, checking that the caller expects the right dimension.
    double in(int expected_dim) const;

    MeasureScalar operator-() const { return {-value_, dim_}; }
    MeasureScalar& operator+=(const MeasureScalar& rhs);
    MeasureScalar& operator-=(const MeasureScalar& rhs);
    MeasureScalar& operator*=(double k) { value_ *= k; return *this; }

    friend MeasureScalar operator+(MeasureScalar lhs, const MeasureScalar& rhs) { return lhs += rhs; }
    friend MeasureScalar operator-(MeasureScalar lhs, const MeasureScalar& rhs) { return lhs -= rhs; }
    friend MeasureScalar operator*(const MeasureScalar& a, const MeasureScalar& b) {
        return {a.value_ * b.value_, a.dim_ + b.dim_};
    }
    friend MeasureScalar operator/(const MeasureScalar& a, const MeasureScalar& b) {
        return {a.value_ / b.value_, a.dim_ - b.dim_};
    }
    friend MeasureScalar operator*(double k, const MeasureScalar& a) { return {k * a.value_, a.dim_}; }
    friend MeasureScalar operator*(const MeasureScalar& a, double k) { return {k * a.value_, a.dim_}; }
    friend MeasureScalar operator/(const MeasureScalar& a, double k) { return {a.value_ / k, a.dim_}; }

    /// Exact comparison of value and dimension.
    friend bool operator==(const MeasureScalar&, const MeasureScalar&) = default;

    /// Ordering is only defined between equal dimensions.
    std::partial_ordering operator<=>(const MeasureScalar& rhs) const;

private:
    double value_ = 0.0;
    int dim_ = 0;
};

/// Square root; the dimension must be even and the value non-negative.
MeasureScalar sqrt(const MeasureScalar& x);
MeasureScalar abs(const MeasureScalar& x);

constexpr MeasureScalar seconds(double v) { return {v, 1}; }
constexpr MeasureScalar seconds_squared(double v) { return {v, 2}; }
constexpr MeasureScalar per_second(double v) { return {v, -1}; }
constexpr MeasureScalar number(double v) { return {v, 0}; }

std::ostream& operator<<(std::ostream& os, const MeasureScalar& x);

} // namespace minkabs
