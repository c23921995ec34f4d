#include "cwsearch/compress.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "cwsearch/error.hpp"

namespace cwsearch {

IntSeq compress(std::span<const int> seq, std::size_t d) {
    const std::size_t n = seq.size();
    if (d == 0 || n == 0 || n % d != 0) {
        throw error(errc::not_divisor, std::to_string(d) + " does not divide " + std::to_string(n));
    }
    std::vector<int> out(d, 0);
    for (std::size_t i = 0; i < n; ++i) out[i % d] += seq[i];
    int bound = 1;
    for (int x : seq) bound = std::max(bound, std::abs(x));
    return IntSeq(std::move(out), bound * static_cast<int>(n / d));
}

FiberTable::FiberTable(int m) : m_(m), by_value_(2 * static_cast<std::size_t>(m) + 1) {
    if (m < 1) throw error(errc::invalid_argument, "compression factor must be >= 1");
    // Odometer over {0, 1, -1}^m, most significant entry first, which visits
    // tuples in lexicographic order under 0 < 1 < -1.
    static constexpr int kDigitValue[3] = {0, 1, -1};
    std::vector<int> digits(m, 0);
    std::vector<int> tuple(m);
    while (true) {
        int sum = 0;
        for (int t = 0; t < m; ++t) {
            tuple[t] = kDigitValue[digits[t]];
            sum += tuple[t];
        }
        by_value_[sum + m].push_back(tuple);
        int pos = m - 1;
        while (pos >= 0 && digits[pos] == 2) digits[pos--] = 0;
        if (pos < 0) break;
        ++digits[pos];
    }
}

const FiberTable& FiberTable::shared(int m) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const FiberTable>> tables;
    std::lock_guard lock(mutex);
    auto& slot = tables[m];
    if (!slot) slot = std::make_unique<const FiberTable>(m);
    return *slot;
}

std::span<const std::vector<int>> FiberTable::tuples(int b) const {
    if (b < -m_ || b > m_) return {};
    return by_value_[b + m_];
}

std::vector<std::uint64_t> fiber_radices(const IntSeq& b, const FiberTable& table) {
    std::vector<std::uint64_t> radices(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) radices[j] = table.count(b[j]);
    return radices;
}

BigInt fiber_size(const IntSeq& b, int m) {
    const FiberTable& table = FiberTable::shared(m);
    BigInt size = 1;
    for (int x : b.entries()) size *= table.count(x);
    return size;
}

void lift_digits(const IntSeq& b, const FiberTable& table, std::span<const std::uint64_t> digits,
                 std::span<int> out) {
    const std::size_t d = b.size();
    const int m = table.m();
    for (std::size_t j = 0; j < d; ++j) {
        const auto& tuple = table.tuples(b[j])[digits[j]];
        for (int t = 0; t < m; ++t) out[j + t * d] = tuple[t];
    }
}

TernarySeq lift_at(const IntSeq& b, const FiberTable& table, const BigInt& index) {
    const auto radices = fiber_radices(b, table);
    BigInt total = 1;
    for (auto r : radices) total *= r;
    if (index < 0 || index >= total) {
        throw error(errc::out_of_range, "lift index " + index.str() + " outside fiber of size " + total.str());
    }
    std::vector<std::uint64_t> digits(b.size());
    BigInt rest = index;
    for (std::size_t j = b.size(); j-- > 0;) {
        digits[j] = static_cast<std::uint64_t>(rest % radices[j]);
        rest /= radices[j];
    }
    std::vector<int> out(b.size() * table.m());
    lift_digits(b, table, digits, out);
    return TernarySeq(std::move(out));
}

}  // namespace cwsearch
