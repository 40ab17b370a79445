#pragma once

#include <cstddef>
#include <vector>

namespace lpde {

template <class F>
using DenseRow = std::vector<typename F::Element>;

/// Reduced row echelon form. Pivots are taken leftmost-first; `pivots[i]`
/// is the pivot column of `rows[i]`, every pivot entry is 1 and the only
/// nonzero in its column.
template <class F>
struct Echelon {
    std::vector<DenseRow<F>> rows;
    std::vector<std::size_t> pivots;
    std::size_t cols = 0;

    std::size_t rank() const { return rows.size(); }
};

template <class F>
Echelon<F> rref(const F& field, std::vector<DenseRow<F>> m, std::size_t cols) {
    Echelon<F> e;
    e.cols = cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && field.is_zero(m[piv][c])) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        auto inv = field.inv(m[rank][c]);
        for (std::size_t j = c; j < cols; ++j)
            if (!field.is_zero(m[rank][j])) m[rank][j] = field.mul(m[rank][j], inv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || field.is_zero(m[r][c])) continue;
            auto f = m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!field.is_zero(m[rank][j])) m[r][j] = field.sub(m[r][j], field.mul(f, m[rank][j]));
        }
        e.pivots.push_back(c);
        ++rank;
    }
    m.resize(rank);
    e.rows = std::move(m);
    return e;
}

/// Kernel basis: one vector per free column (ascending), with that free
/// coordinate 1, other free coordinates 0.
template <class F>
std::vector<DenseRow<F>> kernel_basis(const F& field, const Echelon<F>& e) {
    std::vector<bool> is_pivot(e.cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<DenseRow<F>> out;
    for (std::size_t f = 0; f < e.cols; ++f) {
        if (is_pivot[f]) continue;
        DenseRow<F> v(e.cols, field.zero());
        v[f] = field.one();
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            if (!field.is_zero(e.rows[i][f])) v[e.pivots[i]] = field.neg(e.rows[i][f]);
        out.push_back(std::move(v));
    }
    return out;
}

template <class F>
std::vector<DenseRow<F>> kernel_basis(const F& field, const std::vector<DenseRow<F>>& m, std::size_t cols) {
    return kernel_basis(field, rref(field, m, cols));
}

/// Reduces v against an echelon form: afterwards v is zero in every pivot
/// column. Returns true if v became zero.
template <class F>
bool reduce_against(const F& field, const Echelon<F>& e, DenseRow<F>& v) {
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        auto c = v[e.pivots[i]];
        if (field.is_zero(c)) continue;
        for (std::size_t j = 0; j < e.cols; ++j)
            if (!field.is_zero(e.rows[i][j])) v[j] = field.sub(v[j], field.mul(c, e.rows[i][j]));
    }
    for (const auto& x : v)
        if (!field.is_zero(x)) return false;
    return true;
}

}  // namespace lpde
