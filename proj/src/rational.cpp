#include "mahler/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// "123.456" -> 123456/1000, exactly.
mpq_class parse_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string etail = s.substr(epos + 1);
        s.erase(epos);
        if (etail.empty()) throw InputError("bad numeric literal: " + text);
        char* end = nullptr;
        exp10 = std::strtol(etail.c_str(), &end, 10);
        if (end == nullptr || *end != '\0') throw InputError("bad numeric literal: " + text);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(s.size() - dot - 1);
        s.erase(dot, 1);
    }
    if (!all_digits(s)) throw InputError("bad numeric literal: " + text);
    mpz_class digits(s, 10);
    mpq_class q(digits);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        q *= mpq_class(pow10);
    else
        q /= mpq_class(pow10);
    if (neg) q = -q;
    q.canonicalize();
    return q;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty numeric literal");
    if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
        text.find('E') != std::string::npos)
        return parse_decimal(text);
    // "p/q" or plain integer; mpq_class's own parser accepts both.
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw InputError("bad rational literal: " + text);
    if (q.get_den() == 0) throw InputError("rational literal with zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class parse_integer(const std::string& text) {
    if (text.empty()) throw InputError("empty integer literal");
    std::string s = text;
    size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size() || !all_digits(s.substr(start)))
        throw InputError("bad integer literal: " + text);
    return mpz_class(s, 10);
}

mpz_class integer_lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool is_square_free(const mpz_class& n) {
    mpz_class m = abs(n);
    if (m == 0) return false;
    if (m == 1) return true;
    // Trial division: d is squarefree iff no prime square divides it. The
    // inputs here are small field discriminants, so this is plenty fast.
    mpz_class p = 2;
    while (p * p <= m) {
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) return false;
        }
        p += (p == 2) ? 1 : 2;
    }
    return true;
}

}  // namespace mahler
