#include "cwsearch/contents.hpp"

#include <cstdlib>
#include <string>

#include "cwsearch/error.hpp"

namespace cwsearch {

int Content::total() const {
    int t = 0;
    for (int x : mu) t += x;
    return t;
}

int Content::count(int value) const {
    const int s = slot(value);
    return s < static_cast<int>(mu.size()) ? mu[s] : 0;
}

namespace {

struct ContentSolver {
    int d, w, a, m;
    std::vector<int> mu;
    std::vector<Content> out;

    // Assigns slot s given running totals of count, signed sum and squares.
    void descend(int s, int used, int sum, int squares) {
        const int slots = 2 * m + 1;
        if (s == slots) {
            if (used == d && sum == a && squares == w) out.push_back(Content{mu});
            return;
        }
        const int value = Content::value_at(s);
        const int sq = value * value;
        for (int c = 0; used + c <= d && squares + c * sq <= w; ++c) {
            mu[s] = c;
            descend(s + 1, used + c, sum + c * value, squares + c * sq);
        }
        mu[s] = 0;
    }
};

}  // namespace

std::vector<Content> solve_content_system(int d, int w, int a, int m) {
    if (d < 1 || w < 1 || m < 1) {
        throw error(errc::invalid_argument, "content system needs d, w, m >= 1");
    }
    ContentSolver solver{d, w, a, m, std::vector<int>(2 * m + 1, 0), {}};
    solver.descend(0, 0, 0, 0);
    return std::move(solver.out);
}

Content content_of(std::span<const int> seq, int m) {
    Content c{std::vector<int>(2 * m + 1, 0)};
    for (int x : seq) {
        if (std::abs(x) > m) {
            throw error(errc::invalid_argument,
                        "entry " + std::to_string(x) + " exceeds content bound " + std::to_string(m));
        }
        ++c.mu[Content::slot(x)];
    }
    return c;
}

}  // namespace cwsearch
