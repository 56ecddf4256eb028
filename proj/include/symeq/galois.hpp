#pragma once

#include <cstdint>
#include <vector>

namespace symeq {

/// Arithmetic in GF(p^m) for small orders. Elements are integers in [0, p^m)
/// whose base-p digits are polynomial coefficients, lowest degree first.
class GaloisField {
public:
    /// `modulus` lists the low coefficients c_0..c_{m-1} of the monic
    /// reduction polynomial x^m + c_{m-1}x^{m-1} + ... + c_0, which must be
    /// primitive.
    GaloisField(int p, int m, std::vector<int> modulus);

    /// Fixed primitive polynomials for p = 2 (x^3+x+1, x^4+x+1, ...);
    /// for odd p the first primitive polynomial in coefficient order.
    static GaloisField standard(int order);

    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return m_; }
    int order() const noexcept { return q_; }

    int add(int a, int b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const;
    int inv(int a) const;
    /// alpha^e for the primitive element alpha = x; e may be any integer.
    int exp(long long e) const;
    /// Discrete log base alpha; a must be nonzero.
    int log(int a) const;

private:
    int p_;
    int m_;
    int q_;
    std::vector<int> add_;
    std::vector<int> neg_;
    std::vector<int> exp_;
    std::vector<int> log_;
};

}  // namespace symeq
