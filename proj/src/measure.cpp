#include "minkabs/measure.hpp"

#include "minkabs/error.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace minkabs {

namespace {

void require_same_dim(const MeasureScalar& a, const MeasureScalar& b, const char* op)
{
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string("cannot ") + op + " sec^" + std::to_string(a.dim()) +
                             " and sec^" + std::to_string(b.dim()));
    }
}

} // namespace

double MeasureScalar::in(int expected_dim) const
{
    if (dim_ != expected_dim) {
        throw DimensionError("expected sec^" + std::to_string(expected_dim) + ", got sec^" +
                             std::to_string(dim_));
    }
    return value_;
}

MeasureScalar& MeasureScalar::operator+=(const MeasureScalar& rhs)
{
    require_same_dim(*this, rhs, "add");
    value_ += rhs.value_;
    return *this;
}

MeasureScalar& MeasureScalar::operator-=(const MeasureScalar& rhs)
{
    require_same_dim(*this, rhs, "subtract");
    value_ -= rhs.value_;
    return *this;
}

std::partial_ordering MeasureScalar::operator<=>(const MeasureScalar& rhs) const
{
    require_same_dim(*this, rhs, "compare");
    return value_ <=> rhs.value_;
}

MeasureScalar sqrt(const MeasureScalar& x)
{
    if (x.dim() % 2 != 0) {
        throw DimensionError("sqrt of odd power sec^" + std::to_string(x.dim()));
    }
    if (x.value() < 0.0) {
        throw DomainError("sqrt of negative measure");
    }
    return {std::sqrt(x.value()), x.dim() / 2};
}

MeasureScalar abs(const MeasureScalar& x) { return {std::fabs(x.value()), x.dim()}; }

std::ostream& operator<<(std::ostream& os, const MeasureScalar& x)
{
    os << x.value();
    if (x.dim() == 1) {
        os << " sec";
    } else if (x.dim() != 0) {
        os << " sec^" << x.dim();
    }
    return os;
}

} // namespace minkabs
