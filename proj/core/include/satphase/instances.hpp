#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "satphase/error.hpp"

namespace satphase {

struct CnfFormula {
    int n = 0;  // variables, 1-based indices in clauses
    std::vector<std::vector<int>> clauses;  // negative literal = negated
};

struct GraphInstance {
    int n = 0;  // vertices, 1-based
    std::vector<std::pair<int, int>> edges;  // no self-loops, multi-edges ok
};

// k distinct variables per clause, signs uniform, clauses drawn with
// replacement across the formula.
CnfFormula gen_ksat(int n, int m, int k, std::uint64_t seed);

// round(p*m) width-3 clauses, the rest width-2, shuffled
CnfFormula gen_two_plus_p(int n, int m, double p, std::uint64_t seed);

GraphInstance gen_graph(int n, int m, std::uint64_t seed);

}
