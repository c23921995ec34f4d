#include "cwsearch/affine.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "cwsearch/error.hpp"

namespace cwsearch {

int mod_floor(long long x, int k) {
    long long r = x % k;
    if (r < 0) r += k;
    return static_cast<int>(r);
}

int euler_phi(int k) {
    int result = k;
    int rest = k;
    for (int p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        result -= result / p;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

AffineMap AffineMap::make(long long u, long long v, int k) {
    if (k < 1) throw error(errc::invalid_argument, "affine modulus must be >= 1");
    AffineMap m{mod_floor(u, k), mod_floor(v, k), k};
    if (std::gcd(m.u, k) != 1) {
        throw error(errc::invalid_argument,
                    "u = " + std::to_string(u) + " is not a unit mod " + std::to_string(k));
    }
    return m;
}

namespace {

int inverse_unit(int u, int k) {
    if (k == 1) return 0;
    // Extended Euclid on (u, k).
    long long old_r = u, r = k, old_s = 1, s = 0;
    while (r != 0) {
        const long long q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    return mod_floor(old_s, k);
}

void require_same_modulus(const AffineMap& a, const AffineMap& b) {
    if (a.k != b.k) {
        throw error(errc::modulus_mismatch,
                    "affine maps mod " + std::to_string(a.k) + " and mod " + std::to_string(b.k));
    }
}

}  // namespace

std::vector<int> apply(const AffineMap& sigma, std::span<const int> seq) {
    if (static_cast<std::size_t>(sigma.k) != seq.size()) {
        throw error(errc::modulus_mismatch, "map modulus " + std::to_string(sigma.k) +
                                                " != sequence length " + std::to_string(seq.size()));
    }
    std::vector<int> out(seq.size());
    for (int i = 0; i < sigma.k; ++i) out[sigma(i)] = seq[i];
    return out;
}

AffineMap compose(const AffineMap& sigma, const AffineMap& tau) {
    require_same_modulus(sigma, tau);
    // [[u1 v1][0 1]] * [[u2 v2][0 1]] = [[u1 u2, u1 v2 + v1][0 1]]
    const long long u = static_cast<long long>(sigma.u) * tau.u;
    const long long v = static_cast<long long>(sigma.u) * tau.v + sigma.v;
    return AffineMap::make(u, v, sigma.k);
}

AffineMap invert(const AffineMap& sigma) {
    const int ui = inverse_unit(sigma.u, sigma.k);
    return AffineMap::make(ui, -static_cast<long long>(ui) * sigma.v, sigma.k);
}

std::vector<AffineMap> enumerate_group(int k) {
    if (k < 1) throw error(errc::invalid_argument, "group modulus must be >= 1");
    std::vector<AffineMap> out;
    out.reserve(static_cast<std::size_t>(k) * euler_phi(k));
    for (int u = 0; u < k; ++u) {
        if (std::gcd(u, k) != 1) continue;
        for (int v = 0; v < k; ++v) out.push_back({u, v, k});
    }
    return out;
}

AffineMap lift_affine(const AffineMap& sigma, int n) {
    const int d = sigma.k;
    if (n < 1 || n % d != 0) {
        throw error(errc::not_divisor, std::to_string(d) + " does not divide " + std::to_string(n));
    }
    for (int t = 0; t < n / d; ++t) {
        const int u = sigma.u + t * d;
        if (n == 1 || std::gcd(u, n) == 1) return AffineMap::make(u, sigma.v, n);
    }
    // Unreachable: reduction Z_n^* -> Z_d^* is surjective.
    throw error(errc::invalid_argument, "no unit lift for u = " + std::to_string(sigma.u));
}

ColorOrder::ColorOrder(std::vector<int> ascending) : ascending_(std::move(ascending)) {
    for (int x : ascending_) offset_ = std::max(offset_, std::abs(x));
    rank_.assign(2 * offset_ + 1, -1);
    for (std::size_t r = 0; r < ascending_.size(); ++r) {
        int& slot = rank_[ascending_[r] + offset_];
        if (slot != -1) throw error(errc::invalid_argument, "color order repeats a value");
        slot = static_cast<int>(r);
    }
}

ColorOrder ColorOrder::standard(int m) {
    std::vector<int> values{0};
    for (int i = 1; i <= m; ++i) {
        values.push_back(i);
        values.push_back(-i);
    }
    return ColorOrder(std::move(values));
}

int ColorOrder::rank(int value) const {
    const int idx = value + offset_;
    if (idx < 0 || idx >= static_cast<int>(rank_.size()) || rank_[idx] < 0) {
        throw error(errc::invalid_argument, "value " + std::to_string(value) + " not in color order");
    }
    return rank_[idx];
}

bool ColorOrder::less(std::span<const int> a, std::span<const int> b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] == b[i]) continue;
        return rank(a[i]) < rank(b[i]);
    }
    return a.size() < b.size();
}

std::vector<int> orbit_canonical(std::span<const int> seq, std::span<const AffineMap> group,
                                 const ColorOrder& order) {
    std::vector<int> best(seq.begin(), seq.end());
    for (const AffineMap& sigma : group) {
        auto candidate = apply(sigma, seq);
        if (order.less(candidate, best)) best = std::move(candidate);
    }
    return best;
}

}  // namespace cwsearch
