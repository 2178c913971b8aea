#pragma once

// Coefficient backends: exact complex rationals (default, all identity
// suites) and complex doubles with a tolerance (spectra grid scans only).

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qplane {

using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

// Complex number with exact rational real/imaginary parts.
class ExactScalar {
public:
    ExactScalar() : re_(0), im_(0) {}
    ExactScalar(long n) : re_(n), im_(0) {}
    ExactScalar(Rational re, Rational im = Rational(0))
        : re_(std::move(re)), im_(std::move(im)) {}

    static ExactScalar zero() { return ExactScalar(); }
    static ExactScalar one() { return ExactScalar(1); }
    static ExactScalar i() { return ExactScalar(Rational(0), Rational(1)); }
    static ExactScalar from_int(long n) { return ExactScalar(n); }
    // "p/q" or "p"; numerators may carry a sign
    static ExactScalar parse(const std::string& re, const std::string& im) {
        return ExactScalar(rational_from_string(re), rational_from_string(im));
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    ExactScalar operator-() const { return ExactScalar(-re_, -im_); }
    ExactScalar& operator+=(const ExactScalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i2 = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }
    ExactScalar& operator/=(const ExactScalar& o) {
        if (o.is_zero()) throw std::domain_error("division by zero scalar");
        Rational d = o.re_ * o.re_ + o.im_ * o.im_;
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i2 = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return cmp(a.re_, b.re_) == 0 && cmp(a.im_, b.im_) == 0;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    ExactScalar conj() const { return ExactScalar(re_, -im_); }
    // |z|^2 as an exact rational
    Rational abs_sq() const { return re_ * re_ + im_ * im_; }

    ExactScalar inverse() const {
        ExactScalar r = one();
        r /= *this;
        return r;
    }

    std::string str() const {
        if (sgn(im_) == 0) return rational_to_string(re_);
        return rational_to_string(re_) + (sgn(im_) < 0 ? "" : "+") + rational_to_string(im_) + "i";
    }

    double re_double() const { return re_.get_d(); }
    double im_double() const { return im_.get_d(); }

private:
    Rational re_, im_;
};

inline ExactScalar pow(const ExactScalar& a, unsigned n) {
    ExactScalar r = ExactScalar::one(), b = a;
    for (unsigned k = n; k; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

// Complex double with a shared comparison tolerance.
class FloatScalar {
public:
    static double tolerance;  // |a - b| <= tolerance means equal

    FloatScalar() : v_(0.0, 0.0) {}
    FloatScalar(double re, double im = 0.0) : v_(re, im) {}
    explicit FloatScalar(std::complex<double> v) : v_(v) {}

    static FloatScalar zero() { return FloatScalar(); }
    static FloatScalar one() { return FloatScalar(1.0); }
    static FloatScalar from_int(long n) { return FloatScalar(double(n)); }

    std::complex<double> value() const { return v_; }
    double re_double() const { return v_.real(); }
    double im_double() const { return v_.imag(); }

    bool is_zero() const { return std::abs(v_) <= tolerance; }

    FloatScalar operator-() const { return FloatScalar(-v_); }
    FloatScalar& operator+=(const FloatScalar& o) { v_ += o.v_; return *this; }
    FloatScalar& operator-=(const FloatScalar& o) { v_ -= o.v_; return *this; }
    FloatScalar& operator*=(const FloatScalar& o) { v_ *= o.v_; return *this; }
    FloatScalar& operator/=(const FloatScalar& o) {
        if (o.is_zero()) throw std::domain_error("division by (near-)zero scalar");
        v_ /= o.v_;
        return *this;
    }

    friend FloatScalar operator+(FloatScalar a, const FloatScalar& b) { return a += b; }
    friend FloatScalar operator-(FloatScalar a, const FloatScalar& b) { return a -= b; }
    friend FloatScalar operator*(FloatScalar a, const FloatScalar& b) { return a *= b; }
    friend FloatScalar operator/(FloatScalar a, const FloatScalar& b) { return a /= b; }
    friend bool operator==(const FloatScalar& a, const FloatScalar& b) {
        return std::abs(a.v_ - b.v_) <= FloatScalar::tolerance;
    }
    friend bool operator!=(const FloatScalar& a, const FloatScalar& b) { return !(a == b); }

    FloatScalar conj() const { return FloatScalar(std::conj(v_)); }
    double abs_sq() const { return std::norm(v_); }
    FloatScalar inverse() const { return FloatScalar(1.0) / *this; }

private:
    std::complex<double> v_;
};

inline double FloatScalar::tolerance = 1e-9;

inline FloatScalar pow(const FloatScalar& a, unsigned n) {
    return FloatScalar(std::pow(a.value(), double(n)));
}

enum class ModulusClass { contractive, unimodular, expanding };

// The deformation parameter q with its modulus class. q is never 0 or 1.
template <class K>
class QParam {
public:
    explicit QParam(K value) : q_(std::move(value)) {
        if (q_.is_zero() || q_ == K::one())
            throw std::domain_error("q must lie in C \\ {0, 1}");
        auto m = q_.abs_sq();  // exact |q|^2 for the exact backend
        if (m < 1)
            cls_ = ModulusClass::contractive;
        else if (m > 1)
            cls_ = ModulusClass::expanding;
        else
            cls_ = ModulusClass::unimodular;
        // immutable table; const access is then safe to share across threads
        powers_.reserve(kTableSize);
        powers_.push_back(K::one());
        for (unsigned n = 1; n < kTableSize; ++n) powers_.push_back(powers_.back() * q_);
    }

    const K& value() const { return q_; }
    ModulusClass modulus_class() const { return cls_; }
    bool contractive() const { return cls_ == ModulusClass::contractive; }

    // q^n, exact; table lookups below kTableSize, multiplied out above it
    K power(unsigned n) const {
        if (n < powers_.size()) return powers_[n];
        K r = powers_.back();
        for (unsigned k = unsigned(powers_.size()) - 1; k < n; ++k) r *= q_;
        return r;
    }
    K power_inv(unsigned n) const { return K::one() / power(n); }

    auto modulus_sq() const { return q_.abs_sq(); }

private:
    static constexpr unsigned kTableSize = 513;
    K q_;
    ModulusClass cls_;
    std::vector<K> powers_;
};

template <class K>
QParam<K> make_q(K value) {
    return QParam<K>(std::move(value));
}

}  // namespace qplane
