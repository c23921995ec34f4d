#pragma once

// Contents of bounded integer sequences and the Diophantine system that
// every compressed zero-autocorrelation sequence's content must satisfy.

#include <span>
#include <vector>

namespace cwsearch {

/// Multiplicities in the order [mu_0, mu_1, mu_-1, mu_2, mu_-2, ..., mu_m, mu_-m].
struct Content {
    std::vector<int> mu;

    int m() const { return static_cast<int>(mu.size() / 2); }
    int total() const;
    int count(int value) const;

    static int slot(int value) { return value == 0 ? 0 : (value > 0 ? 2 * value - 1 : -2 * value); }
    static int value_at(int slot) { return slot == 0 ? 0 : (slot % 2 == 1 ? (slot + 1) / 2 : -slot / 2); }

    friend bool operator==(const Content&, const Content&) = default;
    friend auto operator<=>(const Content&, const Content&) = default;
};

/// All nonnegative mu with
///   sum_j mu_j = d,
///   sum_{i>=1} i (mu_i - mu_-i) = a,
///   sum_{i>=1} i^2 (mu_i + mu_-i) = w,
/// in lexicographic order of mu.
std::vector<Content> solve_content_system(int d, int w, int a, int m);

/// Throws errc::invalid_argument if some |entry| > m.
Content content_of(std::span<const int> seq, int m);

}  // namespace cwsearch
