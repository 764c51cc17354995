#include "dihedralis/errors.hpp"
#include "dihedralis/numfield.hpp"

#include <cmath>
#include <tuple>

namespace dihedralis {

ZPoly cubic_field_of_discriminant(const Int& d) {
    if (d >= 0) fail("NotImplemented", "only complex cubic fields (d < 0)");
    long double ad = std::fabs((long double)d.get_d());
    bool found = false;
    std::tuple<Int, long, long, long> best;
    for (long s1 = 0; s1 <= 1; ++s1) {
        // T2(theta) <= s1^2/3 + gamma_2 (|d|/3)^(1/2) for some theta with Tr = s1
        long double U = s1 * s1 / 3.0L + 1.1547005383792515L * std::sqrt(ad / 3.0L) + 1e-9L;
        long s2lo = (long)std::ceil((s1 * s1 - U) / 2), s2hi = (long)std::floor((s1 * s1 + U) / 2);
        long s3max = (long)std::floor(std::pow(U / 3.0L, 1.5L));
        for (long s2 = s2lo; s2 <= s2hi; ++s2)
            for (long s3 = -s3max; s3 <= s3max; ++s3) {
                if (s3 == 0) continue;
                // x^3 + b x^2 + c x + e
                Int b = -s1, c = s2, e = -s3;
                Int disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * e - 27 * e * e + 18 * b * c * e;
                if (disc >= 0 || disc % d != 0) continue;
                Int k2 = disc / d, k;
                if (!is_square(k2, &k)) continue;
                // no rational root
                bool reducible = false;
                for (long r = 1; r * r <= std::labs(s3) && !reducible; ++r) {
                    if (s3 % r) continue;
                    for (long cand : {r, -r, s3 / r, -s3 / r}) {
                        Int v = Int(cand) * cand * cand + b * cand * cand + c * cand + e;
                        if (v == 0) reducible = true;
                    }
                }
                if (reducible) continue;
                auto key = std::make_tuple(abs(disc), s1, s2, s3);
                if (found && !(key < best)) continue;
                ZPoly g(std::vector<Int>{e, c, b, Int(1)});
                std::vector<u64> ps;
                for (auto& [p, m] : factor_integer(k)) ps.push_back(p.get_ui());
                Order o = maximalize_at(Order::from_polynomial(g), ps);
                if (o.discriminant() != d) continue;
                best = key;
                found = true;
            }
    }
    if (!found) fail("NotFound", "no cubic field of discriminant " + d.get_str());
    auto [D, s1, s2, s3] = best;
    return ZPoly(std::vector<Int>{Int(-s3), Int(s2), Int(-s1), Int(1)});
}

} // namespace dihedralis
