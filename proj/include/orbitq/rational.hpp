#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orbitq {

/// Exact rational on 64-bit numerator/denominator, always reduced, den > 0.
/// Intermediate products run through 128-bit; anything that cannot be
/// reduced back into 64 bits throws std::overflow_error instead of wrapping.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) { assign(n, d); }

    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: value exceeds 64-bit range");
        Rat r;
        r.num = (long long)n;
        r.den = (long long)d;
        return r;
    }

    void assign(long long n, long long d) {
        Rat r = from128(n, d);
        num = r.num;
        den = r.den;
    }

    bool is_integer() const { return den == 1; }

    Rat operator+(const Rat& o) const {
        return from128((__int128)num * o.den + (__int128)o.num * den,
                       (__int128)den * o.den);
    }
    Rat operator-(const Rat& o) const {
        return from128((__int128)num * o.den - (__int128)o.num * den,
                       (__int128)den * o.den);
    }
    Rat operator*(const Rat& o) const {
        return from128((__int128)num * o.num, (__int128)den * o.den);
    }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw std::domain_error("Rat: division by zero");
        return from128((__int128)num * o.den, (__int128)den * o.num);
    }
    Rat operator-() const {
        Rat r;
        r.num = -num;
        r.den = den;
        return r;
    }

    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        return (__int128)num * o.den < (__int128)o.num * den;
    }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    /// Largest integer <= value.
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    /// Smallest integer >= value.
    long long ceil() const {
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    Rat pow(int e) const {
        if (e < 0) return Rat(1) / pow(-e);
        Rat r(1);
        Rat base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = e > 1 ? base * base : base;
            e >>= 1;
        }
        return r;
    }

    double to_double() const { return (double)num / (double)den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    /// Parse "p" or "p/q".
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

  private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }
};

}  // namespace orbitq
