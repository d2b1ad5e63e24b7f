#pragma once

#include <cmath>

namespace lrqt {

// Neumaier's variant of Kahan summation. The result does not depend on the
// platform's FMA contraction as long as the addition order is fixed.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace lrqt
