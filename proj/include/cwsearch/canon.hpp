#pragma once

// Fixed-content orbit representatives ("charm bracelets"): for a content mu
// and the affine group of Z_d, the lexicographically smallest sequence (under
// a color order) of every orbit contained in X_mu.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cwsearch/affine.hpp"
#include "cwsearch/contents.hpp"
#include "cwsearch/seqcore.hpp"

namespace cwsearch {

/// Receives each representative and whether it has zero PAF. Return false
/// to stop the enumeration.
using BraceletSink = std::function<bool(std::span<const int> seq, bool paf_zero)>;

struct BraceletStats {
    std::uint64_t nodes = 0;          // DFS nodes visited
    std::uint64_t necklaces = 0;      // leaves minimal under rotation
    std::uint64_t emitted = 0;
    bool complete = true;             // false if interrupted
};

/// Streams representatives in increasing lexicographic order. With
/// paf_zero_only, subtrees that cannot reach zero PAF are pruned and only
/// zero-PAF representatives are emitted.
///
/// group must be the full affine group mod d = content.total(); the
/// rotation pruning relies on it containing every translation, and
/// errc::invalid_argument is thrown otherwise.
///
/// interrupted, if set, is polled every few million nodes; returning true
/// ends the enumeration with complete = false.
BraceletStats for_each_bracelet(const Content& content, std::span<const AffineMap> group,
                                const ColorOrder& order, bool paf_zero_only, const BraceletSink& sink,
                                const std::function<bool()>& interrupted = {});

std::vector<IntSeq> bracelets(const Content& content, std::span<const AffineMap> group, const ColorOrder& order);
std::vector<IntSeq> paf_zero_bracelets(const Content& content, std::span<const AffineMap> group,
                                       const ColorOrder& order);

/// True iff no element of group maps seq to a lexicographically smaller sequence.
bool is_orbit_minimal(std::span<const int> seq, std::span<const AffineMap> group, const ColorOrder& order);

}  // namespace cwsearch
