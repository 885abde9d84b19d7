#pragma once

#include <gmpxx.h>
#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace bnp {

// Exact rational scalar. Stored reduced with positive denominator; the
// library never touches floating point except for explicit decimal rendering.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(int n) : v_(static_cast<long>(n)) {}
    Rat(long num, long den);
    explicit Rat(const mpz_class& n) : v_(n) {}
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p" or "p/q" with optional leading '-', q > 0. Anything else throws.
    static Rat parse(const std::string& s);

    std::string str() const;
    double approx() const { return v_.get_d(); }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    mpz_class floor_z() const;
    mpz_class ceil_z() const;
    long floor_long() const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

} // namespace bnp
