#include "expcond/simplex.hpp"

#include <cassert>

namespace expcond {

bool nonneg_combination_exists(const RatMat& cols, const RatVec& b) {
    const int m = static_cast<int>(b.size());
    const int n = static_cast<int>(cols.size());
    for (const RatVec& c : cols) assert(static_cast<int>(c.size()) == m);

    // Tableau [A | I | b], artificial basis, minimize sum of artificials.
    RatMat t(m, RatVec(n + m + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
        int row_sign = b[i] >= 0 ? 1 : -1;
        for (int j = 0; j < n; ++j) t[i][j] = row_sign * cols[j][i];
        t[i][n + i] = 1;
        t[i][n + m] = row_sign * b[i];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced cost row for the phase-1 objective.
    RatVec cost(n + m + 1, Rat(0));
    for (int j = 0; j <= n + m; ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += t[i][j];
        cost[j] = (j >= n && j < n + m) ? s - 1 : s;
    }

    while (true) {
        int enter = -1;  // Bland: smallest improving index
        for (int j = 0; j < n + m; ++j)
            if (cost[j] > 0) { enter = j; break; }
        if (enter < 0) break;
        int leave = -1;
        Rat best_ratio = 0;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][n + m] / t[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) break;  // unbounded; cannot happen for phase 1 but be safe
        Rat inv = Rat(1) / t[leave][enter];
        for (int j = 0; j <= n + m; ++j) t[leave][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        Rat fc = cost[enter];
        for (int j = 0; j <= n + m; ++j) cost[j] -= fc * t[leave][j];
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) objective += t[i][n + m];
    return objective == 0;
}

bool in_convex_hull(const RatMat& points, const RatVec& p) {
    if (points.empty()) return false;
    const int m = static_cast<int>(p.size());
    RatMat cols;
    cols.reserve(points.size());
    for (const RatVec& q : points) {
        RatVec col = q;  // coordinates plus the convexity row
        col.push_back(Rat(1));
        cols.push_back(std::move(col));
    }
    RatVec b = p;
    b.push_back(Rat(1));
    (void)m;
    return nonneg_combination_exists(cols, b);
}

}  // namespace expcond
