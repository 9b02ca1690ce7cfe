#include "mahler/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace mahler {

std::string float_to_string(mpfr_srcptr x, std::size_t digits) {
    if (mpfr_nan_p(x)) return "nan";
    if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
    if (digits == 0)
        digits = static_cast<std::size_t>(mpfr_get_prec(x) * 0.3010299957) + 2;
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%zuRg", digits);
    char* out = nullptr;
    mpfr_asprintf(&out, fmt, x);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

std::string BigFloat::str(std::size_t digits) const { return float_to_string(v_, digits); }

}  // namespace mahler
