#pragma once

#include "dihedralis/reptheory.hpp"

#include <unordered_set>

namespace dihedralis::detail {

// Subgroup of GL_2(A) grown one generator at a time.
class Closure {
public:
    Closure(const LocalRing& A, u64 cap) : A_(A), cap_(cap) {
        Mat2 one = m2::identity(A_);
        elems_.push_back(one);
        set_.insert(one);
    }
    bool contains(const Mat2& g) const { return set_.count(g) > 0; }
    // Returns false if g was already a member.
    bool add(const Mat2& g);
    const std::vector<Mat2>& elements() const { return elems_; }
    const std::vector<Mat2>& gens() const { return gens_; }
    std::size_t size() const { return elems_.size(); }

private:
    void push(const Mat2& z);
    LocalRing A_;
    u64 cap_;
    std::vector<Mat2> elems_, gens_;
    std::unordered_set<Mat2, Mat2Hash> set_;
};

VecP to_fp(const LocalRing& A, const Mat2& x);
Mat2 from_fp(const LocalRing& A, const VecP& v);

} // namespace dihedralis::detail
