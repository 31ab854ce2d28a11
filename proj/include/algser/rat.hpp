#pragma once

/**
 * @file rat.hpp
 * @brief Exact rationals in canonical form, the coefficient field of algser.
 *
 * Rat wraps a GMP mpq_class and keeps it canonical after every operation:
 * gcd(|num|, den) = 1, den >= 1, zero is 0/1.  The text form is "num/den",
 * or just "num" when den = 1; parse() accepts only that canonical form.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "algser/errors.hpp"

namespace algser {

using BigInt = mpz_class;

class Rat {
public:
    Rat() = default;
    Rat(int v) : q_(v) {}                       // NOLINT(implicit)
    Rat(long v) : q_(v) {}                      // NOLINT(implicit)
    Rat(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT(implicit)
    Rat(const BigInt& v) : q_(v) {}             // NOLINT(implicit)

    Rat(const BigInt& num, const BigInt& den) {
        if (den == 0) throw input_error("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    static Rat from_mpq(mpq_class q) {
        q.canonicalize();
        Rat r;
        r.q_ = std::move(q);
        return r;
    }

    /// Strict canonical parse: "-3", "7/4"; rejects "4/2", "3/1", "-0", "+1", "0/5".
    static Rat parse(std::string_view text) {
        static const std::regex re(R"(^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$)");
        const std::string s(text);
        if (!std::regex_match(s, re))
            throw input_error("non-canonical rational \"" + s + "\"");
        if (s == "-0") throw input_error("non-canonical rational \"-0\"");
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        BigInt g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (den == 1 || num == 0 || g != 1)
            throw input_error("non-canonical rational \"" + s + "\"");
        return Rat(num, den);
    }

    [[nodiscard]] std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    [[nodiscard]] const BigInt& num() const { return q_.get_num(); }
    [[nodiscard]] const BigInt& den() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& mpq() const { return q_; }

    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(q_); }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return from_mpq(mpq_class(-a.q_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rat pow(Rat base, std::uint64_t e) {
    Rat acc(1);
    while (e) {
        if (e & 1U) acc *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return acc;
}

inline BigInt factorial(unsigned n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace algser
