#pragma once

// m-compression c_{n,d}: y[i] = x[i] + x[i+d] + ... + x[i+(m-1)d], and the
// mixed-radix indexing of its fibers over ternary sequences.

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <vector>

#include "cwsearch/seqcore.hpp"

namespace cwsearch {

using BigInt = boost::multiprecision::cpp_int;

IntSeq compress(std::span<const int> seq, std::size_t d);

/// For each b in [-m, m], every ternary m-tuple summing to b. Tuples are
/// ordered lexicographically under 0 < 1 < -1; position t of a tuple is the
/// entry placed at index i + t*d.
class FiberTable {
public:
    explicit FiberTable(int m);
    /// Process-wide table for m, built once; safe to call from any thread.
    static const FiberTable& shared(int m);

    int m() const noexcept { return m_; }

    /// Empty for |b| > m.
    std::span<const std::vector<int>> tuples(int b) const;
    std::size_t count(int b) const { return tuples(b).size(); }

private:
    int m_;
    std::vector<std::vector<std::vector<int>>> by_value_;  // index b + m
};

/// Per-position radices of the fiber over B: radix[j] = count(B[j]).
std::vector<std::uint64_t> fiber_radices(const IntSeq& b, const FiberTable& table);

/// Number of ternary sequences of length m * |B| compressing to B.
BigInt fiber_size(const IntSeq& b, int m);

/// Decodes index (position 0 most significant) into a ternary preimage of B.
/// Throws errc::out_of_range unless 0 <= index < fiber_size(B, m).
TernarySeq lift_at(const IntSeq& b, const FiberTable& table, const BigInt& index);

/// Writes the preimage for the given per-position digits into out
/// (length m * |B|).
void lift_digits(const IntSeq& b, const FiberTable& table, std::span<const std::uint64_t> digits,
                 std::span<int> out);

}  // namespace cwsearch
