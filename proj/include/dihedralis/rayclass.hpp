#pragma once

#include "dihedralis/arith.hpp"
#include "dihedralis/intmat.hpp"

#include <string>
#include <vector>

namespace dihedralis {

// One prime of L dividing the modulus (always with exponent 1).
struct ModulusPrime {
    u64 l = 0;
    unsigned f = 1, e = 1;
    u64 residue_order = 0;  // |(O/q)^*| = N(q) - 1
};

// Ray class group of an imaginary quadratic field for the modulus made of all
// primes above a finite set S of rational primes.
//
// The ambient group is Z^k (prime ideals of the factor base, coprime to the
// modulus) times the residue generators of (O/m)^*; `full` is its quotient by
// the complete relation lattice.
struct RayClassData {
    Int d;
    std::vector<u64> S;
    u64 p = 0;
    std::vector<ModulusPrime> modulus;

    Int h;                // class number of L
    Int residue_order;    // |(O/m)^*|
    Int unit_image;       // |image of the roots of unity in (O/m)^*|
    AbelianGroupStructure full;

    // ambient layout
    struct FbPrime {
        u64 l;
        unsigned f, e;
        std::size_t conj;  // index of the conjugate prime in the factor base
    };
    std::vector<FbPrime> factor_base;
    std::size_t residue_components = 0;
    std::size_t ambient_dim() const { return factor_base.size() + residue_components; }
    // Row i is the image under complex conjugation of the i-th ambient basis vector.
    IntMatrix sigma;

    // p-part: cyclic factors Z/p^{e_i}, ascending, with ambient generators.
    std::vector<unsigned> p_exponents;
    std::vector<IntVec> p_generators;

    // Coordinates of the p-component of an ambient element w.r.t. p_generators.
    IntVec p_coordinates(const IntVec& ambient) const;
    IntVec apply_sigma(const IntVec& ambient) const;
    Int p_order() const;
};

// Fails PContainedInS when p is in S and NonFundamental for a bad d.
RayClassData ray_class_group_quadratic(const Int& d, const std::vector<u64>& S, u64 p,
                                       u64 seed = 1);

struct EigenSplit {
    std::vector<unsigned> minus, plus;          // exponents, ascending
    std::vector<IntVec> minus_gens, plus_gens;  // ambient generators
};

// Decomposition of the p-part under conjugation (p odd, else EvenPrime).
EigenSplit sigma_eigenspace_split(const RayClassData& rcd);

// W(F_{p^r})[X1..Xm]/((1+X1)^{p^e1}-1, ...), ASCII.
struct RingPresentation {
    u64 p = 0;
    unsigned r = 1;
    std::vector<unsigned> exponents;
    unsigned r_free = 0;

    std::size_t variables() const { return exponents.size() + r_free; }
    std::string coefficient_ring() const;
    std::string str() const;
    // Inverse of str(); fails BadPresentation.
    static RingPresentation parse(const std::string& s);
    bool operator==(const RingPresentation& o) const {
        return p == o.p && r == o.r && exponents == o.exponents && r_free == o.r_free;
    }
};

// Variables are ordered minus first, then plus.
RingPresentation universal_ring_presentation(u64 p, unsigned r, const EigenSplit& split);
RingPresentation universal_ring_presentation(u64 p, unsigned r, const std::vector<unsigned>& exponents,
                                             unsigned r_free = 0);
RingPresentation constant_det_presentation(u64 p, unsigned r, const EigenSplit& split);

} // namespace dihedralis
