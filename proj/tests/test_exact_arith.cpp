#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "motcalc/factored.hpp"
#include "motcalc/intlinalg.hpp"

using namespace motcalc;

namespace {

// deterministic cross-platform uniform in [lo, hi]
long uniform(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, long bound) {
    IntMatrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = uniform(rng, -bound, bound);
    return A;
}

Int det(const IntMatrix& A) {
    // fraction-free via rational elimination; fine at test scale
    RatMatrix W = to_rational(A);
    Rat d(1);
    std::size_t n = A.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && W(sel, c) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            W.swap_rows(c, sel);
            d = -d;
        }
        d *= W(c, c);
        Rat inv = Rat(1) / W(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rat f = W(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) W(i, j) -= f * W(c, j);
        }
    }
    REQUIRE(is_integer(d));
    return rat_num(d);
}

// gcd of all k x k minors; the independent oracle for SNF invariant factors
Int minor_gcd(const IntMatrix& A, std::size_t k) {
    std::vector<std::size_t> ri(k), ci(k);
    Int g = 0;
    std::vector<std::size_t> rows(A.rows()), cols(A.cols());
    // enumerate k-subsets of rows and of columns
    std::vector<std::vector<std::size_t>> rsubs, csubs;
    std::vector<std::size_t> cur;
    auto gen = [](std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
        std::vector<std::size_t> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = i;
        while (true) {
            out.push_back(c);
            std::size_t i = k;
            while (i > 0 && c[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++c[i - 1];
            for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
        }
    };
    if (k == 0 || k > A.rows() || k > A.cols()) return 0;
    gen(A.rows(), k, rsubs);
    gen(A.cols(), k, csubs);
    for (const auto& rs : rsubs)
        for (const auto& cs : csubs) {
            IntMatrix M(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) M(i, j) = A(rs[i], cs[j]);
            g = gcd_int(g, det(M));
        }
    return g;
}

FactoredVector point1(long a) { return {FactoredRational::from_rat(Rat(a))}; }

}  // namespace

TEST_CASE("snf of diag(2,3) is diag(1,6)") {
    IntMatrix A{{Int(2), Int(0)}, {Int(0), Int(3)}};
    auto s = snf(A);
    REQUIRE(s.U * A * s.V == s.D);
    REQUIRE(s.D(0, 0) == 1);
    REQUIRE(s.D(1, 1) == 6);
}

TEST_CASE("snf of zero and identity") {
    IntMatrix Z(2, 2);
    auto sz = snf(Z);
    REQUIRE(sz.D.is_zero());
    IntMatrix I = IntMatrix::identity(3);
    auto si = snf(I);
    REQUIRE(si.D == I);
}

TEST_CASE("snf randomized: UAV=D, divisibility, minor gcd oracle") {
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = 1 + static_cast<std::size_t>(uniform(rng, 0, 5));
        std::size_t n = 1 + static_cast<std::size_t>(uniform(rng, 0, 5));
        IntMatrix A = random_int_matrix(rng, m, n, 20);
        auto s = snf(A);
        REQUIRE(s.U * A * s.V == s.D);
        REQUIRE(abs_int(det(s.U)) == 1);
        REQUIRE(abs_int(det(s.V)) == 1);
        std::size_t r = snf_rank(s);
        REQUIRE(r == rank(A));
        for (std::size_t i = 0; i + 1 < r; ++i) REQUIRE(s.D(i + 1, i + 1) % s.D(i, i) == 0);
        // d1...dk = gcd of k x k minors
        Int prod = 1;
        for (std::size_t k = 1; k <= r; ++k) {
            prod *= s.D(k - 1, k - 1);
            REQUIRE(minor_gcd(A, k) == prod);
        }
    }
}

TEST_CASE("saturate: span{(2,0)} in Z^2 becomes span{(1,0)}") {
    IntMatrix L{{Int(2)}, {Int(0)}};
    IntMatrix S = saturate(L);
    REQUIRE(S.cols() == 1);
    // brute force over vectors of height <= 4 that divide into the span
    std::vector<std::pair<long, long>> expected;
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b) {
            if (a == 0 && b == 0) continue;
            for (long mlt = 1; mlt <= 4; ++mlt)
                if (b * mlt == 0 && (a * mlt) % 2 == 0) {
                    expected.emplace_back(a, b);
                    break;
                }
        }
    for (auto [a, b] : expected) {
        IntMatrix v{{Int(a)}, {Int(b)}};
        REQUIRE(int_in_span(S, v));
    }
    REQUIRE_FALSE(int_in_span(S, IntMatrix{{Int(0)}, {Int(1)}}));
}

TEST_CASE("saturate: unimodular full-rank span unchanged, empty span empty") {
    IntMatrix L{{Int(1), Int(1)}, {Int(0), Int(1)}};
    IntMatrix S = saturate(L);
    REQUIRE(S.cols() == 2);
    REQUIRE(int_in_span(S, IntMatrix::identity(2)));
    REQUIRE(int_in_span(L, S));
    IntMatrix E(3, 0);
    REQUIRE(saturate(E).cols() == 0);
}

TEST_CASE("saturate is idempotent and quotient is torsion-free") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(uniform(rng, 0, 3));
        std::size_t k = static_cast<std::size_t>(uniform(rng, 0, 3));
        IntMatrix L = random_int_matrix(rng, n, k, 9);
        IntMatrix S = saturate(L);
        IntMatrix S2 = saturate(S);
        REQUIRE(S.cols() == S2.cols());
        REQUIRE(int_in_span(S, S2));
        REQUIRE(int_in_span(S2, S));
        REQUIRE(coker_torsion_free(S));
        REQUIRE(int_in_span(S, L));
    }
}

TEST_CASE("int_solve and inverses") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = 1 + static_cast<std::size_t>(uniform(rng, 0, 3));
        std::size_t n = 1 + static_cast<std::size_t>(uniform(rng, 0, 3));
        IntMatrix A = random_int_matrix(rng, m, n, 6);
        IntMatrix X = random_int_matrix(rng, n, 2, 6);
        IntMatrix B = A * X;
        auto Y = int_solve(A, B);
        REQUIRE(Y.has_value());
        REQUIRE(A * *Y == B);
    }
    // no integral solution
    IntMatrix A{{Int(2)}};
    REQUIRE_FALSE(int_solve(A, IntMatrix{{Int(1)}}).has_value());
}

TEST_CASE("mult_relations: (2),(4) gives span{(2,-1)}") {
    auto R = mult_relations({point1(2), point1(4)});
    REQUIRE(R.cols() == 1);
    IntMatrix expected{{Int(2)}, {Int(-1)}};
    REQUIRE(int_in_span(R, expected));
    REQUIRE(int_in_span(expected, R));
    // check 2^2 * 4^-1 = 1 in factored arithmetic
    auto w = eval_word({point1(2), point1(4)}, {Int(2), Int(-1)});
    REQUIRE(all_one(w));
}

TEST_CASE("mult_relations: single point 1 gives Z; (2),(3) gives 0") {
    auto R1 = mult_relations({point1(1)});
    REQUIRE(R1.cols() == 1);
    REQUIRE(int_in_span(R1, IntMatrix{{Int(1)}}));
    auto R0 = mult_relations({point1(2), point1(3)});
    REQUIRE(R0.cols() == 0);
}

TEST_CASE("mult_relations honors the sign coordinate") {
    // (-1): relations are the even multiples only
    auto R = mult_relations({point1(-1)});
    REQUIRE(R.cols() == 1);
    REQUIRE(int_in_span(R, IntMatrix{{Int(2)}}));
    REQUIRE_FALSE(int_in_span(R, IntMatrix{{Int(1)}}));
    // (-2),(2): relation needs even total sign exponent
    auto R2 = mult_relations({point1(-2), point1(2)});
    REQUIRE(R2.cols() == 1);
    IntMatrix v{{Int(2)}, {Int(-2)}};
    REQUIRE(int_in_span(R2, v));
    REQUIRE_FALSE(int_in_span(R2, IntMatrix{{Int(1)}, {Int(-1)}}));
}

TEST_CASE("mult_relations output relations hold and lattice is complete") {
    std::mt19937_64 rng(99);
    std::vector<Rat> pool = {Rat(2), Rat(3), Rat(-2), Rat(1, 2), Rat(6), Rat(-1), Rat(4),
                             Rat(9), Rat(-3, 4)};
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t k = 1 + static_cast<std::size_t>(uniform(rng, 0, 3));
        std::size_t d = 1 + static_cast<std::size_t>(uniform(rng, 0, 2));
        std::vector<FactoredVector> pts(k, FactoredVector(d));
        for (auto& p : pts)
            for (auto& c : p)
                c = FactoredRational::from_rat(pool[static_cast<std::size_t>(
                    uniform(rng, 0, static_cast<long>(pool.size()) - 1))]);
        IntMatrix R = mult_relations(pts);
        for (std::size_t j = 0; j < R.cols(); ++j) {
            std::vector<Int> n(k);
            for (std::size_t i = 0; i < k; ++i) n[i] = R(i, j);
            REQUIRE(all_one(eval_word(pts, n)));
        }
        // completeness: every small word that evaluates to 1 lies in the lattice
        if (k <= 2) {
            for (long a = -3; a <= 3; ++a)
                for (long b = (k == 2 ? -3 : 0); b <= (k == 2 ? 3 : 0); ++b) {
                    std::vector<Int> n = {Int(a)};
                    if (k == 2) n.push_back(Int(b));
                    if (all_one(eval_word(pts, n))) {
                        IntMatrix v(k, 1);
                        for (std::size_t i = 0; i < k; ++i) v(i, 0) = n[i];
                        REQUIRE(int_in_span(R, v));
                    }
                }
        }
    }
}

TEST_CASE("factored rational arithmetic round-trips") {
    std::vector<Rat> vals = {Rat(1),  Rat(-1), Rat(6, 35), Rat(-8, 9), Rat(100),
                             Rat(17), Rat(1, 1024)};
    for (const auto& v : vals) {
        auto f = FactoredRational::from_rat(v);
        REQUIRE(f.to_rat() == v);
        REQUIRE((f * f.inverse()).is_one());
        REQUIRE(f.pow(3).to_rat() == v * v * v);
    }
}
