#include "ctxlab/lp.hpp"

namespace ctxlab {

LPResult lp_feasible(std::vector<std::vector<BigRat>> A, std::vector<BigRat> b) {
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (auto& x : A[i]) x = -x;
            b[i] = -b[i];
        }

    // Tableau [A | I | b] with artificial basis; minimize the artificial sum.
    const int ncols = n + m;
    std::vector<std::vector<BigRat>> T(m, std::vector<BigRat>(ncols + 1, 0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][ncols] = b[i];
        basis[i] = n + i;
    }
    // obj[j] = z_j - c_j; a column may enter while obj[j] > 0.
    std::vector<BigRat> obj(ncols + 1, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= ncols; ++j) obj[j] += T[i][j];

    for (;;) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        BigRat best;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            BigRat ratio = T[i][ncols] / T[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) break;  // unbounded cannot happen with b >= 0; defensive
        const BigRat piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            const BigRat f = T[i][enter];
            for (int j = 0; j <= ncols; ++j) T[i][j] -= f * T[leave][j];
        }
        const BigRat f = obj[enter];
        for (int j = 0; j <= ncols; ++j) obj[j] -= f * T[leave][j];
        basis[leave] = enter;
    }

    LPResult r;
    r.feasible = obj[ncols] == 0;
    r.x.assign(n, 0);
    if (r.feasible)
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) r.x[basis[i]] = T[i][ncols];
    return r;
}

int matrix_rank(std::vector<std::vector<BigRat>> rows) {
    const int m = static_cast<int>(rows.size());
    const int n = m ? static_cast<int>(rows[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        const BigRat p = rows[r][c];
        for (auto& x : rows[r]) x /= p;
        for (int i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const BigRat f = rows[i][c];
            for (int j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace ctxlab
