#include "cwsearch/canon.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "cwsearch/error.hpp"

namespace cwsearch {

namespace {

constexpr std::uint64_t kPollMask = (1u << 22) - 1;

class BraceletSearch {
public:
    BraceletSearch(const Content& content, std::span<const AffineMap> group, const ColorOrder& order,
                   bool paf_zero_only, const BraceletSink& sink, const std::function<bool()>& interrupted)
        : order_(order), paf_zero_only_(paf_zero_only), sink_(sink), interrupted_(interrupted) {
        d_ = content.total();
        if (d_ < 1) throw error(errc::invalid_argument, "content is empty");
        half_ = d_ / 2;

        std::vector<bool> has_translation(d_, false);
        for (const AffineMap& sigma : group) {
            if (sigma.k != d_) {
                throw error(errc::modulus_mismatch, "group modulus " + std::to_string(sigma.k) +
                                                        " != content length " + std::to_string(d_));
            }
            if (sigma.u == 1 % d_) {
                has_translation[sigma.v] = true;
                continue;
            }
            std::vector<int> inv(d_);
            for (int i = 0; i < d_; ++i) inv[sigma(i)] = i;
            nontranslations_.push_back(std::move(inv));
        }
        if (!std::all_of(has_translation.begin(), has_translation.end(), [](bool b) { return b; })) {
            throw error(errc::invalid_argument, "group does not contain every translation mod " + std::to_string(d_));
        }

        remaining_.assign(order_.size(), 0);
        for (std::size_t s = 0; s < content.mu.size(); ++s) {
            if (content.mu[s] == 0) continue;
            const int value = Content::value_at(static_cast<int>(s));
            remaining_[order_.rank(value)] += content.mu[s];
            total_squares_ += static_cast<std::int64_t>(content.mu[s]) * value * value;
        }

        x_.assign(d_, 0);
        rank_.assign(d_, 0);
        sq_prefix_.assign(d_ + 1, 0);
        abs_prefix_.assign(d_ + 1, 0);
        known_.assign(static_cast<std::size_t>(d_ + 1) * (half_ + 1), 0);
    }

    BraceletStats run() {
        // A necklace starts with its smallest value.
        int first = 0;
        while (remaining_[first] == 0) ++first;
        place_value(0, first);
        descend(1, 1);
        return stats_;
    }

private:
    std::int64_t& known(int depth, int s) { return known_[static_cast<std::size_t>(depth) * (half_ + 1) + s]; }

    void place_value(int pos, int rank) {
        const int value = order_.value(rank);
        rank_[pos] = rank;
        x_[pos] = value;
        --remaining_[rank];
        sq_prefix_[pos + 1] = sq_prefix_[pos] + value * value;
        abs_prefix_[pos + 1] = abs_prefix_[pos] + std::abs(value);
        // Terms x[i] x[i+s] that become fully known once position pos is set.
        for (int s = 1; s <= half_; ++s) {
            std::int64_t k = known(pos, s);
            if (pos - s >= 0) k += static_cast<std::int64_t>(x_[pos - s]) * value;
            const int wrap = pos + s - d_;
            if (wrap >= 0 && wrap < pos) k += static_cast<std::int64_t>(value) * x_[wrap];
            known(pos + 1, s) = k;
        }
    }

    // Sound bound: can the unassigned positions still cancel every known
    // partial autocorrelation? depth positions are assigned.
    bool paf_feasible(int depth) const {
        const std::int64_t rem_squares = total_squares_ - sq_prefix_[depth];
        int max_abs = 0;
        for (int r = 0; r < order_.size(); ++r) {
            if (remaining_[r] > 0) max_abs = std::max(max_abs, std::abs(order_.value(r)));
        }
        const std::int64_t mm = max_abs;
        for (int s = 1; s <= half_; ++s) {
            const std::int64_t k = std::abs(known_[static_cast<std::size_t>(depth) * (half_ + 1) + s]);
            // Ordered terms t_i = x_i x_{i+s}, i in Z_d. Each position occurs
            // in exactly two of them. F: i assigned, i+s not; G: i+s assigned
            // (as position a), i = a-s not.
            const int f_lo = std::max(0, depth - s), f_hi = std::min(depth, d_ - s);
            const int g_lo = std::max(0, depth + s - d_), g_hi = std::min(depth, s);
            const int f_len = std::max(0, f_hi - f_lo), g_len = std::max(0, g_hi - g_lo);
            const std::int64_t sq_mixed = (f_len ? sq_prefix_[f_hi] - sq_prefix_[f_lo] : 0) +
                                          (g_len ? sq_prefix_[g_hi] - sq_prefix_[g_lo] : 0);
            const std::int64_t abs_mixed = (f_len ? abs_prefix_[f_hi] - abs_prefix_[f_lo] : 0) +
                                           (g_len ? abs_prefix_[g_hi] - abs_prefix_[g_lo] : 0);
            const int both_known = std::max(0, depth - s) + std::max(0, depth - d_ + s);
            const int both_unknown = d_ - both_known - f_len - g_len;
            // |x_i x_j| <= (x_i^2 + x_j^2) / 2 summed over unknown terms.
            const std::int64_t twice_amgm = 2 * rem_squares + sq_mixed;
            const std::int64_t max_bound = mm * abs_mixed + mm * mm * both_unknown;
            if (2 * k > twice_amgm || k > max_bound) return false;
        }
        return true;
    }

    bool minimal_under_nontranslations() const {
        for (const auto& inv : nontranslations_) {
            for (int i = 0; i < d_; ++i) {
                const int other = rank_[inv[i]];
                if (other == rank_[i]) continue;
                if (other < rank_[i]) return false;
                break;
            }
        }
        return true;
    }

    bool descend(int depth, int period) {
        if ((++stats_.nodes & kPollMask) == 0 && interrupted_ && interrupted_()) {
            stats_.complete = false;
            return false;
        }
        if (paf_zero_only_ && !paf_feasible(depth)) return true;
        if (depth == d_) {
            if (d_ % period != 0) return true;
            ++stats_.necklaces;
            if (!minimal_under_nontranslations()) return true;
            const bool zero = paf_zero_only_ || is_paf_zero(x_);
            ++stats_.emitted;
            return sink_(x_, zero);
        }
        const int lower = rank_[depth - period];
        for (int r = lower; r < order_.size(); ++r) {
            if (remaining_[r] == 0) continue;
            place_value(depth, r);
            const bool go_on = descend(depth + 1, r == lower ? period : depth + 1);
            ++remaining_[r];
            if (!go_on) return false;
        }
        return true;
    }

    const ColorOrder& order_;
    bool paf_zero_only_;
    const BraceletSink& sink_;
    const std::function<bool()>& interrupted_;
    int d_ = 0;
    int half_ = 0;
    std::int64_t total_squares_ = 0;
    std::vector<std::vector<int>> nontranslations_;  // inverse permutations
    std::vector<int> remaining_;                     // by rank
    std::vector<int> x_;
    std::vector<int> rank_;
    std::vector<std::int64_t> sq_prefix_;
    std::vector<std::int64_t> abs_prefix_;
    std::vector<std::int64_t> known_;  // known(depth, s)
    BraceletStats stats_;
};

}  // namespace

BraceletStats for_each_bracelet(const Content& content, std::span<const AffineMap> group,
                                const ColorOrder& order, bool paf_zero_only, const BraceletSink& sink,
                                const std::function<bool()>& interrupted) {
    BraceletSearch search(content, group, order, paf_zero_only, sink, interrupted);
    return search.run();
}

std::vector<IntSeq> bracelets(const Content& content, std::span<const AffineMap> group, const ColorOrder& order) {
    std::vector<IntSeq> out;
    for_each_bracelet(content, group, order, false, [&](std::span<const int> seq, bool) {
        out.emplace_back(std::vector<int>(seq.begin(), seq.end()), content.m());
        return true;
    });
    return out;
}

std::vector<IntSeq> paf_zero_bracelets(const Content& content, std::span<const AffineMap> group,
                                       const ColorOrder& order) {
    std::vector<IntSeq> out;
    for_each_bracelet(content, group, order, true, [&](std::span<const int> seq, bool) {
        out.emplace_back(std::vector<int>(seq.begin(), seq.end()), content.m());
        return true;
    });
    return out;
}

bool is_orbit_minimal(std::span<const int> seq, std::span<const AffineMap> group, const ColorOrder& order) {
    for (const AffineMap& sigma : group) {
        if (order.less(apply(sigma, seq), seq)) return false;
    }
    return true;
}

}  // namespace cwsearch
