#include <algorithm>
#include <cmath>

#include "pwh/verification.hpp"

namespace pwh {

LaurentSeries LaurentSeries::monomial(cplx c, int k, int lo, int hi) {
    LaurentSeries s(lo, hi);
    if (k >= lo && k <= hi) s[k] = c;
    return s;
}

LaurentSeries LaurentSeries::geometric(cplx c, int lo, int hi) {
    if (lo > 0) throw WindowError("geometric series needs the constant term in the window");
    LaurentSeries s(lo, hi);
    cplx p = 1.0;
    for (int k = 0; k <= hi; ++k) {
        s[k] = p;
        p *= c;
    }
    return s;
}

cplx LaurentSeries::at(int k) const {
    if (k < lo_ || k > hi_) throw WindowError("Laurent coefficient outside the window");
    return c_[static_cast<size_t>(k - lo_)];
}

cplx& LaurentSeries::operator[](int k) {
    if (k < lo_ || k > hi_) throw WindowError("Laurent coefficient outside the window");
    return c_[static_cast<size_t>(k - lo_)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    LaurentSeries s(std::max(lo_, o.lo_), std::min(hi_, o.hi_));
    for (int k = s.lo_; k <= s.hi_; ++k) s[k] = at(k) + o.at(k);
    return s;
}

// full convolution of the stored terms
LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    LaurentSeries s(lo_ + o.lo_, hi_ + o.hi_);
    for (int i = lo_; i <= hi_; ++i) {
        cplx a = c_[static_cast<size_t>(i - lo_)];
        if (a == cplx(0.0)) continue;
        for (int j = o.lo_; j <= o.hi_; ++j) s.c_[static_cast<size_t>(i + j - s.lo_)] += a * o.c_[static_cast<size_t>(j - o.lo_)];
    }
    return s;
}

LaurentSeries LaurentSeries::scaled(cplx f) const {
    LaurentSeries s = *this;
    for (auto& x : s.c_) x *= f;
    return s;
}

double LaurentSeries::max_abs_diff(const LaurentSeries& o) const {
    double m = 0;
    for (int k = std::max(lo_, o.lo_); k <= std::min(hi_, o.hi_); ++k) m = std::max(m, std::abs(at(k) - o.at(k)));
    return m;
}

}  // namespace pwh
