#ifndef MOTCALC_INTLINALG_HPP
#define MOTCALC_INTLINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace motcalc {

// U * A * V = D with U, V unimodular and d1 | d2 | ... | dk >= 0.
struct SmithDecomposition {
    IntMatrix U, D, V;
};

namespace detail {

// Position of the nonzero entry of smallest absolute value in the trailing
// submatrix starting at (k, k); nullopt when that submatrix is zero.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& A,
                                                                         std::size_t k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = k; i < A.rows(); ++i)
        for (std::size_t j = k; j < A.cols(); ++j) {
            if (A(i, j) == 0) continue;
            Int a = abs_int(A(i, j));
            if (!best || a < best_abs) {
                best = {i, j};
                best_abs = a;
            }
        }
    return best;
}

}  // namespace detail

inline SmithDecomposition snf(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    IntMatrix D = A;
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);

    std::size_t k = 0;
    while (k < m && k < n) {
        auto piv = detail::smallest_pivot(D, k);
        if (!piv) break;
        D.swap_rows(k, piv->first);
        U.swap_rows(k, piv->first);
        D.swap_cols(k, piv->second);
        V.swap_cols(k, piv->second);

        bool clean = false;
        while (!clean) {
            clean = true;
            // clear column k below the pivot
            for (std::size_t i = k + 1; i < m; ++i) {
                if (D(i, k) == 0) continue;
                Int q = D(i, k) / D(k, k);
                D.add_row(i, k, -q);
                U.add_row(i, k, -q);
                if (D(i, k) != 0) {
                    // remainder strictly smaller: promote it to pivot and restart
                    D.swap_rows(k, i);
                    U.swap_rows(k, i);
                    clean = false;
                }
            }
            // clear row k
            for (std::size_t j = k + 1; j < n; ++j) {
                if (D(k, j) == 0) continue;
                Int q = D(k, j) / D(k, k);
                D.add_col(j, k, -q);
                V.add_col(j, k, -q);
                if (D(k, j) != 0) {
                    D.swap_cols(k, j);
                    V.swap_cols(k, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the whole trailing submatrix
            for (std::size_t i = k + 1; i < m && clean; ++i)
                for (std::size_t j = k + 1; j < n && clean; ++j)
                    if (D(i, j) % D(k, k) != 0) {
                        D.add_row(k, i, Int(1));
                        U.add_row(k, i, Int(1));
                        clean = false;
                    }
        }
        if (D(k, k) < 0) {
            D.negate_row(k);
            U.negate_row(k);
        }
        ++k;
    }
    return {U, D, V};
}

inline std::size_t snf_rank(const SmithDecomposition& s) {
    std::size_t r = 0;
    while (r < s.D.rows() && r < s.D.cols() && s.D(r, r) != 0) ++r;
    return r;
}

inline std::vector<Int> elementary_divisors(const IntMatrix& A) {
    auto s = snf(A);
    std::vector<Int> d;
    for (std::size_t r = 0; r < snf_rank(s); ++r) d.push_back(s.D(r, r));
    return d;
}

// --- rational elimination -------------------------------------------------

// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& A) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t sel = r;
        while (sel < A.rows() && A(sel, c) == 0) ++sel;
        if (sel == A.rows()) continue;
        A.swap_rows(r, sel);
        Rat inv = Rat(1) / A(r, c);
        for (std::size_t j = c; j < A.cols(); ++j) A(r, j) *= inv;
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == r || A(i, c) == 0) continue;
            Rat f = A(i, c);
            for (std::size_t j = c; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(const RatMatrix& A) {
    RatMatrix w = A;
    return rref(w).size();
}

inline std::size_t rank(const IntMatrix& A) { return rank(to_rational(A)); }

// Basis of {x : A x = 0} as columns.
inline RatMatrix kernel(const RatMatrix& A) {
    RatMatrix w = A;
    auto pivots = rref(w);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < A.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix K(A.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        K(free_cols[f], f) = 1;
        for (std::size_t p = 0; p < pivots.size(); ++p) K(pivots[p], f) = -w(p, free_cols[f]);
    }
    return K;
}

inline RatMatrix left_kernel(const RatMatrix& A) { return kernel(A.transpose()); }

// Solves A X = B columnwise; nullopt when inconsistent.
inline std::optional<RatMatrix> solve(const RatMatrix& A, const RatMatrix& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("solve shape mismatch");
    RatMatrix w = A.hstack(B);
    auto pivots = rref(w);
    // any pivot in the B block means inconsistency
    for (auto c : pivots)
        if (c >= A.cols()) return std::nullopt;
    RatMatrix X(A.cols(), B.cols());
    for (std::size_t p = 0; p < pivots.size(); ++p)
        for (std::size_t j = 0; j < B.cols(); ++j) X(pivots[p], j) = w(p, A.cols() + j);
    return X;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& A) {
    if (A.rows() != A.cols()) return std::nullopt;
    auto X = solve(A, RatMatrix::identity(A.rows()));
    if (!X) return std::nullopt;
    if ((A * *X) != RatMatrix::identity(A.rows())) return std::nullopt;
    return X;
}

// --- integer lattice operations -------------------------------------------

// Basis of the saturated lattice {x in Z^n : A x = 0}, as columns.
inline IntMatrix int_kernel(const IntMatrix& A) {
    auto s = snf(A);
    std::size_t r = snf_rank(s);
    IntMatrix K(A.cols(), A.cols() - r);
    for (std::size_t j = r; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.cols(); ++i) K(i, j - r) = s.V(i, j);
    return K;
}

inline IntMatrix unimodular_inverse(const IntMatrix& M) {
    auto X = solve(to_rational(M), RatMatrix::identity(M.rows()));
    if (!X || !is_integral(*X)) throw std::invalid_argument("matrix is not unimodular");
    return to_integral(*X);
}

// Solves A X = B over the integers; nullopt when no integral solution exists.
inline std::optional<IntMatrix> int_solve(const IntMatrix& A, const IntMatrix& B) {
    auto s = snf(A);
    std::size_t r = snf_rank(s);
    IntMatrix UB = s.U * B;
    IntMatrix Y(A.cols(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i < r) {
                if (UB(i, j) % s.D(i, i) != 0) return std::nullopt;
                if (i < A.cols()) Y(i, j) = UB(i, j) / s.D(i, i);
            } else if (UB(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.V * Y;
}

// Saturation of the column span: basis of {x : m x in span(L) for some m > 0}.
inline IntMatrix saturate(const IntMatrix& L) {
    if (L.cols() == 0) return IntMatrix(L.rows(), 0);
    auto s = snf(L);
    std::size_t r = snf_rank(s);
    IntMatrix Uinv = unimodular_inverse(s.U);
    IntMatrix S(L.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < L.rows(); ++i) S(i, j) = Uinv(i, j);
    return S;
}

// Left inverse over Z of a full-column-rank matrix with saturated image
// (all elementary divisors 1).
inline IntMatrix int_left_inverse(const IntMatrix& A) {
    auto s = snf(A);
    std::size_t r = snf_rank(s);
    if (r != A.cols()) throw std::invalid_argument("matrix has rank below column count");
    for (std::size_t i = 0; i < r; ++i)
        if (s.D(i, i) != 1)
            throw std::invalid_argument("image is not saturated, no integral left inverse");
    // A = Uinv [I;0] Vinv, so V [I 0] U works.
    IntMatrix P(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.cols(); ++i) P(i, i) = 1;
    return s.V * (P * s.U);
}

// Right inverse over Z of a surjective lattice map (rows x cols, rank = rows,
// all elementary divisors 1).
inline IntMatrix int_right_inverse(const IntMatrix& A) {
    auto s = snf(A);
    std::size_t r = snf_rank(s);
    if (r != A.rows()) throw std::invalid_argument("matrix has rank below row count");
    for (std::size_t i = 0; i < r; ++i)
        if (s.D(i, i) != 1) throw std::invalid_argument("lattice map is not surjective");
    IntMatrix P(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) P(i, i) = 1;
    IntMatrix Uinv = unimodular_inverse(s.U);
    return s.V * (P * Uinv);
}

// Whether coker(A) = Z^rows / im(A) is torsion-free.
inline bool coker_torsion_free(const IntMatrix& A) {
    for (const auto& d : elementary_divisors(A))
        if (d != 1) return false;
    return true;
}

// Columns of X lie in the column span of B over Z (B a lattice basis).
inline bool int_in_span(const IntMatrix& B, const IntMatrix& X) {
    return int_solve(B, X).has_value();
}

// Basis (as columns, size n x *) of {y in Z^n : C y = 0 mod 2}.
inline IntMatrix mod2_preimage_lattice(const IntMatrix& C) {
    const std::size_t d = C.rows(), n = C.cols();
    // kernel of [C | 2 I_d]; the first n rows biject onto the preimage lattice
    IntMatrix W(d, n + d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < n; ++j) W(i, j) = C(i, j);
        W(i, n + i) = 2;
    }
    IntMatrix K = int_kernel(W);
    IntMatrix P(n, K.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < K.cols(); ++j) P(i, j) = K(i, j);
    return P;
}

}  // namespace motcalc

#endif
