#pragma once

#include "dihedralis/intmat.hpp"

#include <mpfr.h>

#include <string>

namespace dihedralis {

// Minimal RAII wrapper around mpfr_t; every result takes the precision of
// the left operand.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(mpfr_prec_t prec, long x) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(mpfr_prec_t prec, const Int& x) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    Real with_prec(mpfr_prec_t p) const { Real r(p); mpfr_set(r.v_, v_, MPFR_RNDN); return r; }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    Real operator+(const Real& o) const { Real r(prec()); mpfr_add(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    Real operator-(const Real& o) const { Real r(prec()); mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    Real operator*(const Real& o) const { Real r(prec()); mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    Real operator/(const Real& o) const { Real r(prec()); mpfr_div(r.v_, v_, o.v_, MPFR_RNDN); return r; }
    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real operator*(long s) const { Real r(prec()); mpfr_mul_si(r.v_, v_, s, MPFR_RNDN); return r; }

    Real abs() const { Real r(prec()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    Real sqrt() const { Real r(prec()); mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
    Real exp() const { Real r(prec()); mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }
    static Real pi(mpfr_prec_t p) { Real r(p); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

    // Nearest integer.
    Int round() const {
        Int z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // floor(log2|x|), or a very negative number for zero.
    long log2_abs() const { return mpfr_zero_p(v_) ? -(1L << 40) : (long)mpfr_get_exp(v_) - 1; }
    bool operator<(const Real& o) const { return mpfr_less_p(v_, o.v_) != 0; }
    std::string str(int digits = 20) const;

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t p) : re(p), im(p) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    mpfr_prec_t prec() const { return re.prec(); }

    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator/(const Complex& o) const {
        Real den = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
    }
    Complex operator*(long s) const { return {re * s, im * s}; }
    Complex with_prec(mpfr_prec_t p) const { return {re.with_prec(p), im.with_prec(p)}; }
    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const { return norm2().sqrt(); }
    // exp(2 pi i z)
    static Complex exp_2pi_i(const Complex& z);
};

} // namespace dihedralis
