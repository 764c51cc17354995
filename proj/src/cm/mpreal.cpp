#include "dihedralis/mpreal.hpp"

#include <vector>

namespace dihedralis {

std::string Real::str(int digits) const {
    std::vector<char> buf(digits + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return buf.data();
}

Complex Complex::exp_2pi_i(const Complex& z) {
    mpfr_prec_t p = z.prec();
    Real two_pi = Real::pi(p) * 2;
    Real mod = (-(two_pi * z.im)).exp();
    Real arg = two_pi * z.re;
    Real s(p), c(p);
    mpfr_sin_cos(s.get(), c.get(), arg.get(), MPFR_RNDN);
    return {mod * c, mod * s};
}

} // namespace dihedralis
