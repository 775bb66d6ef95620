#include "satphase/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace satphase {

namespace {

void check_formula(const CnfFormula& f, const char* who) {
    for (const auto& cl : f.clauses) {
        for (int lit : cl) {
            int v = lit > 0 ? lit : -lit;
            if (lit == 0 || v > f.n)
                throw domain_error(std::string(who) + ": literal out of range");
        }
    }
}

// -1 unknown, 0 false, 1 true
using Assign = std::vector<signed char>;

// 1 satisfied, -1 falsified, 0 open; *unit set when exactly one literal free
int clause_state(const std::vector<int>& cl, const Assign& asg, int* unit) {
    int free_count = 0;
    int last_free = 0;
    for (int lit : cl) {
        int v = lit > 0 ? lit : -lit;
        signed char a = asg[v];
        if (a < 0) {
            ++free_count;
            last_free = lit;
        } else if ((a == 1) == (lit > 0)) {
            return 1;
        }
    }
    if (free_count == 0) return -1;
    if (free_count == 1) *unit = last_free;
    return 0;
}

bool dpll(const CnfFormula& f, Assign& asg) {
    for (;;) {
        bool changed = false;
        for (const auto& cl : f.clauses) {
            int unit = 0;
            int st = clause_state(cl, asg, &unit);
            if (st == -1) return false;
            if (st == 0 && unit != 0) {
                asg[unit > 0 ? unit : -unit] = unit > 0 ? 1 : 0;
                changed = true;
            }
        }
        if (!changed) break;
    }
    int branch = 0;
    for (int v = 1; v <= f.n; ++v) {
        if (asg[v] < 0) {
            branch = v;
            break;
        }
    }
    if (branch == 0) return true;

    Assign saved = asg;
    asg[branch] = 1;
    if (dpll(f, asg)) return true;
    asg = saved;
    asg[branch] = 0;
    if (dpll(f, asg)) return true;
    asg = std::move(saved);
    return false;
}

}  // namespace

bool dpll_sat(const CnfFormula& f, int frozen_count) {
    if (frozen_count < 0 || frozen_count > f.n)
        throw domain_error("dpll_sat: frozen_count outside [0, n]");
    check_formula(f, "dpll_sat");
    Assign asg(f.n + 1, -1);
    for (int v = 1; v <= frozen_count; ++v) asg[v] = 1;
    return dpll(f, asg);
}

bool two_sat_solve(const CnfFormula& f) {
    check_formula(f, "two_sat_solve");
    const int nn = 2 * f.n;
    std::vector<std::vector<int>> adj(nn), radj(nn);
    auto node = [](int lit) {
        return lit > 0 ? 2 * (lit - 1) : 2 * (-lit - 1) + 1;
    };
    for (const auto& cl : f.clauses) {
        if (cl.size() > 2)
            throw domain_error("two_sat_solve: clause wider than 2");
        if (cl.empty()) return false;
        int a = node(cl[0]);
        int b = node(cl.size() == 2 ? cl[1] : cl[0]);
        adj[a ^ 1].push_back(b);
        adj[b ^ 1].push_back(a);
        radj[b].push_back(a ^ 1);
        radj[a].push_back(b ^ 1);
    }

    // Kosaraju, iterative on both passes
    std::vector<signed char> seen(nn, 0);
    std::vector<int> order;
    order.reserve(nn);
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < nn; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.push_back({s, 0});
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx < adj[v].size()) {
                int w = adj[v][idx++];
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(nn, -1);
    int nc = 0;
    std::vector<int> dfs;
    for (int i = nn - 1; i >= 0; --i) {
        int s = order[i];
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        dfs.push_back(s);
        while (!dfs.empty()) {
            int v = dfs.back();
            dfs.pop_back();
            for (int w : radj[v]) {
                if (comp[w] < 0) {
                    comp[w] = nc;
                    dfs.push_back(w);
                }
            }
        }
        ++nc;
    }
    for (int v = 0; v < f.n; ++v)
        if (comp[2 * v] == comp[2 * v + 1]) return false;
    return true;
}

bool col_solve(const GraphInstance& g, int colors) {
    if (colors < 1) throw domain_error("col_solve: need at least one color");
    std::vector<std::vector<int>> adj(g.n + 1);
    for (auto [a, b] : g.edges) {
        if (a < 1 || a > g.n || b < 1 || b > g.n)
            throw domain_error("col_solve: endpoint out of range");
        if (a == b) return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    // high-degree vertices first; cap the palette at used+1 to kill the
    // color-permutation symmetry without losing completeness
    std::vector<int> verts(g.n);
    for (int v = 1; v <= g.n; ++v) verts[v - 1] = v;
    std::sort(verts.begin(), verts.end(), [&](int a, int b) {
        return adj[a].size() > adj[b].size();
    });

    std::vector<int> color(g.n + 1, -1);
    auto rec = [&](auto&& self, int pos, int used) -> bool {
        if (pos == g.n) return true;
        int v = verts[pos];
        int limit = std::min(colors, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (int w : adj[v]) {
                if (color[w] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[v] = c;
            if (self(self, pos + 1, std::max(used, c + 1))) return true;
            color[v] = -1;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

std::optional<double> measure_frozen(const CnfFormula& f, int frozen_count) {
    if (f.n < 1 || f.n > 24)
        throw domain_error("measure_frozen: n must lie in [1, 24]");
    if (frozen_count < 0 || frozen_count > f.n)
        throw domain_error("measure_frozen: frozen_count outside [0, n]");
    check_formula(f, "measure_frozen");

    const int n = f.n;
    std::vector<std::uint32_t> pos(f.clauses.size(), 0), neg(f.clauses.size(), 0);
    for (size_t i = 0; i < f.clauses.size(); ++i) {
        for (int lit : f.clauses[i]) {
            if (lit > 0)
                pos[i] |= 1u << (lit - 1);
            else
                neg[i] |= 1u << (-lit - 1);
        }
    }

    const std::uint32_t full = (1u << n) - 1;
    const std::uint32_t prefix =
        frozen_count == 0 ? 0u : (1u << frozen_count) - 1;
    const int free_bits = n - frozen_count;

    bool any = false;
    std::uint32_t and_mask = full, or_mask = 0;
    const std::uint32_t combos = free_bits == 0 ? 1u : 1u << free_bits;
    for (std::uint32_t c = 0; c < combos; ++c) {
        std::uint32_t m = prefix | (c << frozen_count);
        bool sat = true;
        for (size_t i = 0; i < pos.size(); ++i) {
            if ((pos[i] & m) == 0 && (neg[i] & ~m) == 0) {
                sat = false;
                break;
            }
        }
        if (!sat) continue;
        any = true;
        and_mask &= m;
        or_mask |= m;
    }
    if (!any) return std::nullopt;

    int frozen = std::popcount(and_mask) + std::popcount(full & ~or_mask);
    return frozen / (2.0 * n);
}

}  // namespace satphase
