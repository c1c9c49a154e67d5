#pragma once

#include <complex>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace orb {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class Mode { Exact, Float };

// A number that is either an exact rational or a complex double.
// Arithmetic between two rationals stays exact; anything touching a
// complex value is carried out in floating point.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int x) : v_(Rational(x)) {}
    Scalar(long x) : v_(Rational(x)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(const Complex& z) : v_(z) {}

    static Scalar real(double x) { return Scalar(Complex(x, 0.0)); }
    static Scalar ratio(long p, long q);

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    Complex complex() const;
    double abs() const;

    bool is_zero() const;
    bool is_one() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    // Structural equality: same representation and same value.
    bool identical(const Scalar& o) const;

    Scalar conj() const;
    Scalar pow(long e) const;
    Scalar to_float() const { return Scalar(complex()); }
    Scalar in_mode(Mode m) const { return m == Mode::Float ? to_float() : *this; }

    // "p/q" for rationals, 17 significant digits for floats ("a+bi" when
    // the imaginary part is nonzero).
    std::string str() const;

    // Accepts "p/q", integers and decimal literals (read exactly), and
    // floating literals with an exponent (read as doubles).
    static Scalar parse(const std::string& s);

private:
    std::variant<Rational, Complex> v_;
};

// Square root: exact when the argument is a perfect square rational,
// otherwise the principal branch in floating point.
Scalar sqrt(const Scalar& x);

// |a - b|; exactly 0 when both are exact and equal.
double distance(const Scalar& a, const Scalar& b);

std::string format_double(double x);

}  // namespace orb
