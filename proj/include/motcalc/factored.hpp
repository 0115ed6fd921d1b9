#ifndef MOTCALC_FACTORED_HPP
#define MOTCALC_FACTORED_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "intlinalg.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace motcalc {

// An element of Q* as sign and prime factorization. Multiplication is
// exponent addition, so lattice computations on points of (Q*)^d reduce to
// integer linear algebra on the exponents.
class FactoredRational {
  public:
    FactoredRational() : sign_(1) {}  // the unit 1

    static FactoredRational one() { return FactoredRational(); }
    static FactoredRational minus_one() {
        FactoredRational f;
        f.sign_ = -1;
        return f;
    }

    static FactoredRational from_rat(const Rat& r) {
        if (r == 0) throw std::invalid_argument("0 is not a unit of Q");
        FactoredRational f;
        Int num = rat_num(r), den = rat_den(r);
        if (num < 0) {
            f.sign_ = -1;
            num = -num;
        }
        f.accumulate(num, 1);
        f.accumulate(den, -1);
        return f;
    }

    static FactoredRational from_int(long n) { return from_rat(Rat(n)); }

    Rat to_rat() const {
        Rat r(sign_);
        for (const auto& [p, e] : exps_) {
            Int power = pow_int(p, abs_int(e));
            if (e > 0)
                r *= Rat(power);
            else
                r /= Rat(power);
        }
        return r;
    }

    int sign() const { return sign_; }
    const std::map<Int, Int>& exponents() const { return exps_; }

    bool is_one() const { return sign_ == 1 && exps_.empty(); }
    bool operator==(const FactoredRational& o) const {
        return sign_ == o.sign_ && exps_ == o.exps_;
    }
    bool operator!=(const FactoredRational& o) const { return !(*this == o); }

    FactoredRational operator*(const FactoredRational& o) const {
        FactoredRational f;
        f.sign_ = sign_ * o.sign_;
        f.exps_ = exps_;
        for (const auto& [p, e] : o.exps_) f.add_exp(p, e);
        return f;
    }

    FactoredRational pow(const Int& n) const {
        FactoredRational f;
        f.sign_ = (sign_ == -1 && n % 2 != 0) ? -1 : 1;
        if (n != 0)
            for (const auto& [p, e] : exps_) f.exps_[p] = e * n;
        return f;
    }

    FactoredRational inverse() const { return pow(-1); }

  private:
    void add_exp(const Int& p, const Int& e) {
        auto it = exps_.find(p);
        if (it == exps_.end()) {
            exps_[p] = e;
        } else {
            it->second += e;
            if (it->second == 0) exps_.erase(it);
        }
    }

    // trial division; inputs here are desk-scale
    void accumulate(Int n, int direction) {
        for (Int p = 2; p * p <= n; ++p) {
            while (n % p == 0) {
                add_exp(p, direction);
                n /= p;
            }
        }
        if (n > 1) add_exp(n, direction);
    }

    static Int pow_int(Int base, Int e) {
        Int r = 1;
        while (e > 0) {
            if (e % 2 == 1) r *= base;
            base *= base;
            e /= 2;
        }
        return r;
    }

    int sign_;
    std::map<Int, Int> exps_;
};

using FactoredVector = std::vector<FactoredRational>;

// componentwise product of powers: prod_i points[i]^{n_i}
inline FactoredVector eval_word(const std::vector<FactoredVector>& points,
                                const std::vector<Int>& n) {
    if (points.size() != n.size()) throw std::invalid_argument("word length mismatch");
    std::size_t d = points.empty() ? 0 : points[0].size();
    FactoredVector out(d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != d) throw std::invalid_argument("point dimension mismatch");
        for (std::size_t j = 0; j < d; ++j) out[j] = out[j] * points[i][j].pow(n[i]);
    }
    return out;
}

inline bool all_one(const FactoredVector& v) {
    for (const auto& f : v)
        if (!f.is_one()) return false;
    return true;
}

// Applies an integer matrix multiplicatively: out_i = prod_j v_j^{N(i,j)}.
inline FactoredVector apply_mult(const IntMatrix& N, const FactoredVector& v) {
    if (N.cols() != v.size()) throw std::invalid_argument("apply_mult shape mismatch");
    FactoredVector out(N.rows());
    for (std::size_t i = 0; i < N.rows(); ++i)
        for (std::size_t j = 0; j < N.cols(); ++j) out[i] = out[i] * v[j].pow(N(i, j));
    return out;
}

// Basis (columns, k x *) of the relation lattice
// {n in Z^k : prod_i points[i]^{n_i} = 1 in (Q*)^d}.
// Prime exponents give integer kernel conditions; the sign coordinate is an
// order-2 condition solved as a mod-2 preimage lattice.
inline IntMatrix mult_relations(const std::vector<FactoredVector>& points) {
    const std::size_t k = points.size();
    if (k == 0) return IntMatrix(0, 0);
    const std::size_t d = points[0].size();

    std::map<std::pair<std::size_t, Int>, std::size_t> prime_rows;
    for (std::size_t i = 0; i < k; ++i) {
        if (points[i].size() != d) throw std::invalid_argument("point dimension mismatch");
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& [p, e] : points[i][j].exponents()) {
                auto key = std::make_pair(j, p);
                if (!prime_rows.count(key)) {
                    std::size_t next = prime_rows.size();
                    prime_rows[key] = next;
                }
            }
    }

    IntMatrix E(prime_rows.size(), k);
    IntMatrix S(d, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            for (const auto& [p, e] : points[i][j].exponents())
                E(prime_rows[{j, p}], i) = e;
            S(j, i) = points[i][j].sign() == -1 ? 1 : 0;
        }

    IntMatrix K = int_kernel(E);
    IntMatrix C = S * K;
    IntMatrix P = mod2_preimage_lattice(C);
    return K * P;
}

}  // namespace motcalc

#endif
