#include "bnp/rational.hpp"

#include <cctype>
#include <ostream>

namespace bnp {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::invalid_argument("division by zero");
    v_ /= o.v_;
    return *this;
}

static bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rat Rat::parse(const std::string& s) {
    auto fail = [&]() -> Rat { throw std::invalid_argument("invalid rational '" + s + "'"); };
    std::string t = s;
    bool neg = false;
    if (!t.empty() && t[0] == '-') { neg = true; t = t.substr(1); }
    std::string num = t, den = "1";
    if (auto pos = t.find('/'); pos != std::string::npos) {
        num = t.substr(0, pos);
        den = t.substr(pos + 1);
    }
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class n(num), d(den);
    if (d == 0) return fail();
    if (neg) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rat(q);
}

std::string Rat::str() const {
    std::string s = v_.get_num().get_str();
    if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
    return s;
}

mpz_class Rat::floor_z() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rat::ceil_z() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

long Rat::floor_long() const {
    mpz_class f = floor_z();
    if (!f.fits_slong_p()) throw std::overflow_error("floor does not fit in long: " + str());
    return f.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

} // namespace bnp
