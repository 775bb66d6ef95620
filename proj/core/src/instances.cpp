#include "satphase/instances.hpp"

#include <cmath>
#include <numeric>

#include "satphase/rng.hpp"

namespace satphase {

namespace {

// k distinct variables via a partial Fisher-Yates pass over a persistent
// index pool; the pool stays a permutation across clauses.
void draw_clause(Rng& rng, std::vector<int>& pool, int k,
                 std::vector<int>& out) {
    const int n = static_cast<int>(pool.size());
    out.resize(k);
    for (int j = 0; j < k; ++j) {
        int pick = j + static_cast<int>(rng.below(n - j));
        std::swap(pool[j], pool[pick]);
        out[j] = rng.bernoulli(0.5) ? -pool[j] : pool[j];
    }
}

}  // namespace

CnfFormula gen_ksat(int n, int m, int k, std::uint64_t seed) {
    if (k < 1) throw domain_error("gen_ksat: k < 1");
    if (n < k) throw domain_error("gen_ksat: n < k");
    if (m < 0) throw domain_error("gen_ksat: m < 0");

    Rng rng(seed);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);

    CnfFormula f;
    f.n = n;
    f.clauses.resize(m);
    for (int i = 0; i < m; ++i) draw_clause(rng, pool, k, f.clauses[i]);
    return f;
}

CnfFormula gen_two_plus_p(int n, int m, double p, std::uint64_t seed) {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw domain_error("gen_two_plus_p: p outside [0, 1]");
    if (m < 0) throw domain_error("gen_two_plus_p: m < 0");
    const int m3 = static_cast<int>(std::llround(p * m));
    if (n < 2 || (m3 > 0 && n < 3))
        throw domain_error("gen_two_plus_p: n smaller than the clause width");

    Rng rng(seed);
    std::vector<int> widths(m, 2);
    for (int i = 0; i < m3; ++i) widths[i] = 3;
    for (int i = m - 1; i > 0; --i)
        std::swap(widths[i], widths[rng.below(i + 1)]);

    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);

    CnfFormula f;
    f.n = n;
    f.clauses.resize(m);
    for (int i = 0; i < m; ++i) draw_clause(rng, pool, widths[i], f.clauses[i]);
    return f;
}

GraphInstance gen_graph(int n, int m, std::uint64_t seed) {
    if (n < 2) throw domain_error("gen_graph: n < 2");
    if (m < 0) throw domain_error("gen_graph: m < 0");

    Rng rng(seed);
    GraphInstance g;
    g.n = n;
    g.edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int a = 1 + static_cast<int>(rng.below(n));
        int b = 1 + static_cast<int>(rng.below(n - 1));
        if (b >= a) ++b;
        g.edges.emplace_back(a, b);
    }
    return g;
}

}  // namespace satphase
