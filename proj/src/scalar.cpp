#include "orb/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>

#include "orb/error.hpp"

namespace orb {

Scalar Scalar::ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return Scalar(r);
}

Complex Scalar::complex() const {
    if (is_exact()) return Complex(rational().get_d(), 0.0);
    return std::get<Complex>(v_);
}

double Scalar::abs() const {
    if (is_exact()) return std::fabs(rational().get_d());
    return std::abs(std::get<Complex>(v_));
}

bool Scalar::is_zero() const {
    if (is_exact()) return sgn(rational()) == 0;
    return std::get<Complex>(v_) == Complex(0.0, 0.0);
}

bool Scalar::is_one() const {
    if (is_exact()) return rational() == 1;
    return std::get<Complex>(v_) == Complex(1.0, 0.0);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        std::get<Rational>(v_) += o.rational();
    } else {
        v_ = complex() + o.complex();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        std::get<Rational>(v_) -= o.rational();
    } else {
        v_ = complex() - o.complex();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        if (o.rational() == 1) return *this;
        std::get<Rational>(v_) *= o.rational();
    } else {
        v_ = complex() * o.complex();
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) fail("DivisionByZero", "scalar division by zero");
    if (is_exact() && o.is_exact()) {
        std::get<Rational>(v_) /= o.rational();
    } else {
        v_ = complex() / o.complex();
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(Rational(-rational()));
    return Scalar(-std::get<Complex>(v_));
}

bool Scalar::identical(const Scalar& o) const {
    if (is_exact() != o.is_exact()) return false;
    if (is_exact()) return rational() == o.rational();
    return std::get<Complex>(v_) == std::get<Complex>(o.v_);
}

Scalar Scalar::conj() const {
    if (is_exact()) return *this;
    return Scalar(std::conj(std::get<Complex>(v_)));
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return (Scalar(1) / *this).pow(-e);
    Scalar base = *this, acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string Scalar::str() const {
    if (is_exact()) return rational().get_str();
    Complex z = std::get<Complex>(v_);
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(z.imag());
    if (im[0] != '-') im = "+" + im;
    return format_double(z.real()) + im + "i";
}

Scalar Scalar::parse(const std::string& s) {
    if (s.empty()) fail("ParseError", "empty scalar");
    if (s.find_first_of("eEnN") != std::string::npos) {
        char* end = nullptr;
        double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') fail("ParseError", "bad scalar '" + s + "'");
        return Scalar::real(x);
    }
    auto dot = s.find('.');
    try {
        if (dot == std::string::npos) {
            Rational q(s, 10);
            if (q.get_den() == 0) fail("ParseError", "zero denominator in '" + s + "'");
            q.canonicalize();
            return Scalar(q);
        }
        // Decimal literal: read it as the exact rational it denotes.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") fail("ParseError", "bad scalar '" + s + "'");
        if (digits[0] == '+') digits.erase(0, 1);
        mpz_class den = 1;
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        Rational q{mpz_class(digits, 10), den};
        q.canonicalize();
        return Scalar(q);
    } catch (const std::invalid_argument&) {
        fail("ParseError", "bad scalar '" + s + "'");
    }
}

Scalar sqrt(const Scalar& x) {
    if (x.is_exact() && sgn(x.rational()) >= 0) {
        mpz_class n = x.rational().get_num(), d = x.rational().get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
            return Scalar(Rational(rn, rd));
        }
        return Scalar::real(std::sqrt(x.rational().get_d()));
    }
    Complex z = x.complex();
    if (z.imag() == 0.0 && z.real() >= 0.0) return Scalar::real(std::sqrt(z.real()));
    return Scalar(std::sqrt(z));
}

double distance(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        Rational d = a.rational() - b.rational();
        if (sgn(d) == 0) return 0.0;
        return std::max(std::fabs(d.get_d()), std::numeric_limits<double>::denorm_min());
    }
    return std::abs(a.complex() - b.complex());
}

}  // namespace orb
