#include "cwsearch/seqcore.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cwsearch/error.hpp"

namespace cwsearch {

IntSeq::IntSeq(std::vector<int> entries, int bound) : entries_(std::move(entries)), bound_(bound) {
    if (bound < 0) throw error(errc::invalid_argument, "negative sequence bound");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (std::abs(entries_[i]) > bound) {
            throw error(errc::invalid_argument, "entry " + std::to_string(i) + " = " +
                                                    std::to_string(entries_[i]) + " exceeds bound " +
                                                    std::to_string(bound));
        }
    }
}

IntSeq IntSeq::tight(std::vector<int> entries) {
    int bound = 0;
    for (int x : entries) bound = std::max(bound, std::abs(x));
    return IntSeq(std::move(entries), bound);
}

std::optional<TernarySeq> TernarySeq::try_from(std::span<const int> entries) {
    for (int x : entries) {
        if (x < -1 || x > 1) return std::nullopt;
    }
    return TernarySeq(std::vector<int>(entries.begin(), entries.end()));
}

std::int64_t paf(std::span<const int> seq, std::size_t shift) {
    const std::size_t n = seq.size();
    if (n == 0) return 0;
    shift %= n;
    std::int64_t acc = 0;
    std::size_t j = shift;
    for (std::size_t i = 0; i < n; ++i) {
        acc += static_cast<std::int64_t>(seq[i]) * seq[j];
        if (++j == n) j = 0;
    }
    return acc;
}

std::vector<std::int64_t> paf_vector(std::span<const int> seq) {
    std::vector<std::int64_t> out(seq.size());
    for (std::size_t s = 0; s < seq.size(); ++s) out[s] = paf(seq, s);
    return out;
}

bool is_paf_zero(std::span<const int> seq) {
    const std::size_t n = seq.size();
    for (std::size_t s = 1; s <= n / 2; ++s) {
        if (paf(seq, s) != 0) return false;
    }
    return true;
}

std::complex<double> dft(std::span<const int> seq, std::size_t s) {
    const std::size_t n = seq.size();
    if (n == 0) return {};
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        if (seq[j] == 0) continue;
        // Reduce j*s mod n before scaling so the angle stays in [0, 2pi).
        const std::size_t e = (j * (s % n)) % n;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
        acc += static_cast<double>(seq[j]) * std::polar(1.0, angle);
    }
    return acc;
}

double psd(std::span<const int> seq, std::size_t s) {
    return std::norm(dft(seq, s));
}

WeightStats weight_stats(const TernarySeq& seq) {
    WeightStats st;
    for (int x : seq.entries()) {
        if (x == 0)
            ++st.p;
        else if (x == 1)
            ++st.q;
        else
            ++st.r;
    }
    st.a = st.q - st.r;
    st.w = st.q + st.r;
    return st;
}

std::optional<int> exact_sqrt(std::int64_t w) {
    if (w < 0) return std::nullopt;
    auto a = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(w))));
    while (a * a > w) --a;
    while ((a + 1) * (a + 1) <= w) ++a;
    if (a * a != w) return std::nullopt;
    return static_cast<int>(a);
}

namespace {

void require_square(int w) {
    if (!exact_sqrt(w)) {
        throw error(errc::not_square, "weight " + std::to_string(w) + " is not a perfect square");
    }
}

}  // namespace

bool verify_cw(const TernarySeq& seq, int w) {
    require_square(w);
    if (weight_stats(seq).w != w) return false;
    return is_paf_zero(seq.entries());
}

bool verify_cw_matrix(std::span<const int> seq, int w) {
    const std::size_t n = seq.size();
    // Row i of the circulant is seq rotated right by i: W[i][j] = seq[(j - i) mod n].
    auto entry = [&](std::size_t i, std::size_t j) { return seq[(j + n - i) % n]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            std::int64_t dot = 0;
            for (std::size_t j = 0; j < n; ++j) dot += static_cast<std::int64_t>(entry(i, j)) * entry(k, j);
            if (dot != (i == k ? w : 0)) return false;
        }
    }
    return true;
}

bool verify_int_paf(std::span<const int> seq, int w) {
    require_square(w);
    if (paf(seq, 0) != w) return false;
    return is_paf_zero(seq);
}

bool normalize_sign(std::vector<int>& seq) {
    std::int64_t sum = 0;
    for (int x : seq) sum += x;
    if (sum >= 0) return false;
    for (int& x : seq) x = -x;
    return true;
}

}  // namespace cwsearch
