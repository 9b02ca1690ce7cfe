#include "mahler/errbound.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace mahler {

double ErrBound::log2_approx() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(static_cast<double>(m_)) + static_cast<double>(e_);
}

std::string ErrBound::to_string() const {
    if (is_zero()) return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "2^%.2f", log2_approx());
    return std::string(buf);
}

}  // namespace mahler
