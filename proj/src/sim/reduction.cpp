#include "tsa/sim/reduction.hpp"

#include <algorithm>

#include "tsa/common.hpp"

namespace tsa::sim {

ComplexMatrix kron_reduce(const ComplexMatrix& y_full, const std::vector<std::size_t>& keep) {
    const auto n = static_cast<std::size_t>(y_full.rows());
    if (y_full.rows() != y_full.cols()) throw ValidationError("kron_reduce needs a square matrix");

    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n) throw ValidationError("kron_reduce keep index out of range");
        kept[k] = true;
    }
    std::vector<std::size_t> elim;
    for (std::size_t i = 0; i < n; ++i) {
        if (!kept[i]) elim.push_back(i);
    }
    const auto nk = static_cast<Eigen::Index>(keep.size());
    const auto ne = static_cast<Eigen::Index>(elim.size());
    if (ne == 0) {
        ComplexMatrix out(nk, nk);
        for (Eigen::Index i = 0; i < nk; ++i)
            for (Eigen::Index j = 0; j < nk; ++j)
                out(i, j) = y_full(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(keep[j]));
        return out;
    }

    ComplexMatrix y_kk(nk, nk), y_ke(nk, ne), y_ek(ne, nk), y_ee(ne, ne);
    for (Eigen::Index i = 0; i < nk; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j)
            y_kk(i, j) = y_full(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(keep[j]));
        for (Eigen::Index j = 0; j < ne; ++j)
            y_ke(i, j) = y_full(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(elim[j]));
    }
    for (Eigen::Index i = 0; i < ne; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j)
            y_ek(i, j) = y_full(static_cast<Eigen::Index>(elim[i]), static_cast<Eigen::Index>(keep[j]));
        for (Eigen::Index j = 0; j < ne; ++j)
            y_ee(i, j) = y_full(static_cast<Eigen::Index>(elim[i]), static_cast<Eigen::Index>(elim[j]));
    }

    Eigen::FullPivLU<ComplexMatrix> lu(y_ee);
    if (!lu.isInvertible()) throw NumericalError("kron_reduce: eliminated block is singular");
    return y_kk - y_ke * lu.solve(y_ek);
}

}  // namespace tsa::sim
