#pragma once

#include <utility>
#include <vector>

#include "monoeq/rational.hpp"

namespace monoeq::lp {

struct SparseColumn {
    std::vector<std::pair<int, Rational>> entries;  // (row, coefficient)
};

struct Feasibility {
    bool feasible = false;
    std::vector<Rational> x;  // a solution of A x = b, x >= 0, when feasible
    // Otherwise y with y.a_j <= 0 for every column and y.b = gap > 0.
    std::vector<Rational> y;
    Rational gap = 0;
    long pivots = 0;
};

// Phase-one revised simplex over the rationals with Bland's rule.
// Requires b >= 0.
inline Feasibility solve_feasibility(int rows, const std::vector<SparseColumn>& cols, const std::vector<Rational>& b) {
    const int m = rows;
    const int n = static_cast<int>(cols.size());
    for (const auto& v : b)
        if (v < 0) throw Error(Errc::PreconditionFailed, "right-hand side must be nonnegative");
    std::vector<int> basis(static_cast<std::size_t>(m));
    std::vector<char> is_basic(static_cast<std::size_t>(n + m), 0);
    std::vector<std::vector<Rational>> binv(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m), 0));
    std::vector<Rational> xb = b;
    for (int i = 0; i < m; ++i) {
        basis[static_cast<std::size_t>(i)] = n + i;
        is_basic[static_cast<std::size_t>(n + i)] = 1;
        binv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    std::vector<Rational> y(static_cast<std::size_t>(m));
    std::vector<Rational> u(static_cast<std::size_t>(m));
    Feasibility out;
    Rational d, t;
    for (;;) {
        for (int i = 0; i < m; ++i) {
            Rational s = 0;
            for (int r = 0; r < m; ++r)
                if (basis[static_cast<std::size_t>(r)] >= n) s += binv[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(i)] = s;
        }
        int enter = -1;
        for (int j = 0; j < n + m && enter < 0; ++j) {
            if (is_basic[static_cast<std::size_t>(j)]) continue;
            if (j < n) {
                d = 0;
                for (const auto& [r, v] : cols[static_cast<std::size_t>(j)].entries) d -= y[static_cast<std::size_t>(r)] * v;
            } else {
                d = 1 - y[static_cast<std::size_t>(j - n)];
            }
            if (d < 0) enter = j;
        }
        if (enter < 0) break;
        for (int r = 0; r < m; ++r) {
            Rational s = 0;
            const auto& row = binv[static_cast<std::size_t>(r)];
            if (enter < n) {
                for (const auto& [i, v] : cols[static_cast<std::size_t>(enter)].entries)
                    if (row[static_cast<std::size_t>(i)] != 0) s += row[static_cast<std::size_t>(i)] * v;
            } else {
                s = row[static_cast<std::size_t>(enter - n)];
            }
            u[static_cast<std::size_t>(r)] = s;
        }
        int leave = -1;
        Rational best;
        for (int r = 0; r < m; ++r) {
            if (u[static_cast<std::size_t>(r)] <= 0) continue;
            t = xb[static_cast<std::size_t>(r)] / u[static_cast<std::size_t>(r)];
            if (leave < 0 || t < best ||
                (t == best && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                leave = r;
                best = t;
            }
        }
        if (leave < 0) throw Error(Errc::Internal, "phase-one problem reported unbounded");
        const std::size_t L = static_cast<std::size_t>(leave);
        Rational piv = u[L];
        for (auto& v : binv[L]) v /= piv;
        xb[L] /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == leave) continue;
            const std::size_t R = static_cast<std::size_t>(r);
            if (u[R] == 0) continue;
            Rational f = u[R];
            for (int c = 0; c < m; ++c)
                if (binv[L][static_cast<std::size_t>(c)] != 0)
                    binv[R][static_cast<std::size_t>(c)] -= f * binv[L][static_cast<std::size_t>(c)];
            xb[R] -= f * xb[L];
        }
        is_basic[static_cast<std::size_t>(basis[L])] = 0;
        is_basic[static_cast<std::size_t>(enter)] = 1;
        basis[L] = enter;
        ++out.pivots;
    }
    Rational w = 0;
    for (int r = 0; r < m; ++r)
        if (basis[static_cast<std::size_t>(r)] >= n) w += xb[static_cast<std::size_t>(r)];
    if (w == 0) {
        out.feasible = true;
        out.x.assign(static_cast<std::size_t>(n), 0);
        for (int r = 0; r < m; ++r)
            if (basis[static_cast<std::size_t>(r)] < n)
                out.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] = xb[static_cast<std::size_t>(r)];
    } else {
        out.feasible = false;
        out.y = y;
        out.gap = w;
    }
    return out;
}

}  // namespace monoeq::lp
