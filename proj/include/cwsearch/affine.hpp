#pragma once

// The affine group of Z_k (maps i -> u*i + v with gcd(u, k) = 1), its action
// on length-k sequences and the lift of a map mod d to a map mod n, d | n.

#include <span>
#include <vector>

namespace cwsearch {

int mod_floor(long long x, int k);
int euler_phi(int k);

struct AffineMap {
    int u = 1;
    int v = 0;
    int k = 1;

    /// Reduces u and v mod k; throws errc::invalid_argument unless
    /// k >= 1 and gcd(u, k) == 1.
    static AffineMap make(long long u, long long v, int k);
    static AffineMap identity(int k) { return make(1, 0, k); }

    int operator()(int i) const { return mod_floor(static_cast<long long>(u) * i + v, k); }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// out[sigma(i)] = in[i], i.e. out[i] = in[sigma^{-1}(i)].
std::vector<int> apply(const AffineMap& sigma, std::span<const int> seq);

/// sigma o tau, so apply(compose(s, t), x) == apply(s, apply(t, x)).
AffineMap compose(const AffineMap& sigma, const AffineMap& tau);
AffineMap invert(const AffineMap& sigma);

/// All k * phi(k) maps, ordered by (u, v).
std::vector<AffineMap> enumerate_group(int k);

/// Lift of sigma (mod d) to a map mod n agreeing with it mod d: the
/// smallest unit u' of Z_n with u' = u (mod d), and v' = v.
AffineMap lift_affine(const AffineMap& sigma, int n);

/// Total order on the value alphabet, given as the values in ascending order.
class ColorOrder {
public:
    explicit ColorOrder(std::vector<int> ascending);

    /// 0 < 1 < -1 < 2 < -2 < ... < m < -m.
    static ColorOrder standard(int m);

    int rank(int value) const;
    int value(int rank) const { return ascending_[rank]; }
    int size() const { return static_cast<int>(ascending_.size()); }
    int max_abs() const { return offset_; }

    /// Lexicographic comparison of equal-length sequences.
    bool less(std::span<const int> a, std::span<const int> b) const;

private:
    std::vector<int> ascending_;
    std::vector<int> rank_;  // indexed by value + offset_
    int offset_ = 0;
};

/// Lexicographic minimum of {apply(sigma, seq) : sigma in group}.
std::vector<int> orbit_canonical(std::span<const int> seq, std::span<const AffineMap> group,
                                 const ColorOrder& order);

}  // namespace cwsearch
