#ifndef THETAK_RATIONAL_HPP
#define THETAK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace thetak {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational with canonical form: lowest terms, positive denominator.
/// Every scalar in the system is built from these; nothing is ever rounded.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long n, long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_half_integer() const { return den_ == 2; }

    Rational operator-() const { return Rational(raw_tag{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Largest integer <= value.
    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    /// Rendered as "p" or "p/q"; the canonical wire form for reports.
    std::string str() const {
        std::ostringstream os;
        os << num_;
        if (den_ != 1) os << '/' << den_;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    struct raw_tag {};
    Rational(raw_tag, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_, den_;
};

inline Rational half(long n) { return Rational(n, 2); }

/// Element of Q(i): re + im*i, both exact rationals.  The base field of
/// every computation in the library; i*i = -1.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long n) : re_(n) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = b.re_ * b.re_ + b.im_ * b.im_;
        GaussianRational c = a * b.conj();
        return GaussianRational(c.re_ / n, c.im_ / n);
    }
    GaussianRational& operator+=(const GaussianRational& o) { *this = *this + o; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { *this = *this - o; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }
    GaussianRational& operator/=(const GaussianRational& o) { *this = *this / o; return *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Deterministic total order (re, then im); used only for canonical maps.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        auto c = a.re_ <=> b.re_;
        if (c != std::strong_ordering::equal) return c;
        return a.im_ <=> b.im_;
    }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::ostringstream os;
        if (!re_.is_zero()) os << re_.str() << (im_ > Rational(0) ? "+" : "");
        if (im_ == Rational(1)) os << "i";
        else if (im_ == Rational(-1)) os << "-i";
        else os << im_.str() << "*i";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        return os << z.str();
    }

private:
    Rational re_, im_;
};

using GQ = GaussianRational;

enum class FieldOp { add, sub, mul, div };

/// Dispatch form of the four field operations; throws on division by zero.
inline GQ field_ops(const GQ& a, const GQ& b, FieldOp op) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
        case FieldOp::div: return a / b;
    }
    throw std::logic_error("field_ops: bad op");
}

} // namespace thetak

#endif
