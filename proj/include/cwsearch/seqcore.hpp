#pragma once

// Exact integer sequence algebra: periodic autocorrelation, spectral
// diagnostics and circulant weighing matrix verification.
//
// Every decision made by the search (PAF tests, weight checks, matrix
// checks) is exact integer arithmetic. dft/psd are floating point and exist
// only for cross-checks.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cwsearch {

/// Integer sequence with a declared bound: |entries[i]| <= bound.
class IntSeq {
public:
    IntSeq() = default;
    IntSeq(std::vector<int> entries, int bound);

    /// Bound is the largest absolute entry.
    static IntSeq tight(std::vector<int> entries);

    std::span<const int> entries() const noexcept { return entries_; }
    const std::vector<int>& vec() const noexcept { return entries_; }
    int bound() const noexcept { return bound_; }
    std::size_t size() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }

    friend bool operator==(const IntSeq& a, const IntSeq& b) { return a.entries_ == b.entries_; }

private:
    std::vector<int> entries_;
    int bound_ = 0;
};

/// Sequence over {-1, 0, +1}.
class TernarySeq : public IntSeq {
public:
    TernarySeq() = default;
    explicit TernarySeq(std::vector<int> entries) : IntSeq(std::move(entries), 1) {}

    /// Returns nullopt when some entry is outside {-1,0,1}.
    static std::optional<TernarySeq> try_from(std::span<const int> entries);
};

struct WeightStats {
    int p = 0;  // zeros
    int q = 0;  // +1 entries
    int r = 0;  // -1 entries
    int a = 0;  // row sum
    int w = 0;  // weight, q + r

    friend bool operator==(const WeightStats&, const WeightStats&) = default;
};

std::int64_t paf(std::span<const int> seq, std::size_t shift);
std::vector<std::int64_t> paf_vector(std::span<const int> seq);

/// paf(seq, s) == 0 for s = 1..n-1. Short-circuits at the first nonzero
/// shift; only shifts up to n/2 are evaluated since paf(s) = paf(n-s).
bool is_paf_zero(std::span<const int> seq);

std::complex<double> dft(std::span<const int> seq, std::size_t s);
double psd(std::span<const int> seq, std::size_t s);

WeightStats weight_stats(const TernarySeq& seq);

/// Returns the root a >= 0 with a*a == w, or nullopt.
std::optional<int> exact_sqrt(std::int64_t w);

/// Weight check plus PAF-zero check. Throws errc::not_square if w is not a
/// perfect square.
bool verify_cw(const TernarySeq& seq, int w);

/// Builds the circulant matrix W from seq and checks W W^T == w I entrywise.
bool verify_cw_matrix(std::span<const int> seq, int w);

/// Integer-sequence route used for compressed sequences: sum of squares
/// equals w and PAF vanishes off zero. Throws errc::not_square likewise.
bool verify_int_paf(std::span<const int> seq, int w);

/// Negates seq if its sum is negative. Returns true if it did.
bool normalize_sign(std::vector<int>& seq);

}  // namespace cwsearch
