#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "jtwist/twist.hpp"

namespace jtwist {

// Square matrix with truncated-series entries, row-major.
class SeriesMatrix {
public:
    SeriesMatrix(int n, int order)
        : n_(n), order_(order), e_(static_cast<std::size_t>(n) * n, XiSeries::scalar(order, 0)) {}

    static SeriesMatrix identity(int n, int order) {
        SeriesMatrix m(n, order);
        for (int i = 0; i < n; ++i) m.at(i, i) = XiSeries::one(order);
        return m;
    }

    int n() const { return n_; }
    int order() const { return order_; }
    XiSeries& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const XiSeries& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const XiSeries& s) { return s.is_zero(); });
    }

    SeriesMatrix& operator+=(const SeriesMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
        return *this;
    }
    SeriesMatrix& operator-=(const SeriesMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
        return *this;
    }
    SeriesMatrix& operator*=(const XiSeries& s) {
        for (auto& x : e_) x = x * s;
        return *this;
    }
    friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix& b) { return a += b; }
    friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix& b) { return a -= b; }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
        a.check_same(b);
        SeriesMatrix out(a.n_, a.order_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const XiSeries& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < a.n_; ++j) {
                    const XiSeries& bkj = b.at(k, j);
                    if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
                }
            }
        return out;
    }

    bool operator==(const SeriesMatrix& o) const {
        return n_ == o.n_ && order_ == o.order_ && e_ == o.e_;
    }
    bool operator!=(const SeriesMatrix& o) const { return !(*this == o); }

    // Kronecker product; this matrix supplies the leftmost (slowest) index.
    friend SeriesMatrix kron(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.order_ != b.order_) throw OrderMismatch("kron of different truncation orders");
        SeriesMatrix out(a.n_ * b.n_, a.order_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (int k = 0; k < b.n_; ++k)
                    for (int l = 0; l < b.n_; ++l) {
                        if (b.at(k, l).is_zero()) continue;
                        out.at(i * b.n_ + k, j * b.n_ + l) = a.at(i, j) * b.at(k, l);
                    }
            }
        return out;
    }

    std::string str() const {
        std::string out;
        for (int i = 0; i < n_; ++i) {
            out += i == 0 ? "[[" : " [";
            for (int j = 0; j < n_; ++j) {
                out += at(i, j).str();
                if (j + 1 < n_) out += ", ";
            }
            out += i + 1 < n_ ? "]\n" : "]]";
        }
        return out;
    }

private:
    void check_same(const SeriesMatrix& o) const {
        if (n_ != o.n_) throw Error("matrix size mismatch");
        if (order_ != o.order_) throw OrderMismatch("matrix truncation orders differ");
    }

    int n_;
    int order_;
    std::vector<XiSeries> e_;
};

namespace detail {
using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix rat_identity(int n) {
    RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Image of one basis generator under the defining N x N representation,
// routed through the algebra's stored matrix realization.
inline RatMatrix fundamental_generator(const LieAlgebra& g, int idx) {
    const auto& embed = g.meta().gl_embedding;
    if (embed.empty()) throw ConstraintViolation("algebra carries no matrix realization");
    const int N = g.meta().N;
    RatMatrix m(N, std::vector<Rational>(N, Rational(0)));
    for (const auto& [p, c] : embed.at(idx)) m[p / N][p % N] += c;
    return m;
}

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
    const int n = static_cast<int>(a.size());
    RatMatrix out(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < n; ++j)
                if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline RatMatrix rat_kron(const RatMatrix& a, const RatMatrix& b) {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    RatMatrix out(static_cast<std::size_t>(na) * nb,
                  std::vector<Rational>(static_cast<std::size_t>(na) * nb, Rational(0)));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            if (a[i][j] == 0) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    if (b[k][l] != 0) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
        }
    return out;
}

// Constant matrix of one PBW word, factors multiplied in word order.
inline RatMatrix word_matrix(const LieAlgebra& g, const Monomial& m) {
    const int N = g.meta().N;
    RatMatrix acc = rat_identity(N);
    for (int idx = 0; idx < static_cast<int>(m.size()); ++idx)
        for (int rep = 0; rep < static_cast<int>(m[idx]); ++rep)
            acc = rat_mul(acc, fundamental_generator(g, idx));
    return acc;
}
} // namespace detail

// Evaluate in the defining representation: monomials map to matrix products.
inline SeriesMatrix evaluate(const UEAElement& a) {
    const auto& g = *a.algebra();
    const int N = g.meta().N;
    SeriesMatrix out(N, a.order());
    for (const auto& [m, s] : a.terms()) {
        const auto mat = detail::word_matrix(g, m);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (mat[i][j] != 0) out.at(i, j) += s * mat[i][j];
    }
    return out;
}

// Kronecker evaluation of a rank-1..3 tensor; leg 1 is the leftmost factor.
inline SeriesMatrix evaluate_tensor(const TensorElement& t) {
    const auto& g = *t.algebra();
    const int N = g.meta().N;
    const int rank = t.rank();
    int n = 1;
    for (int r = 0; r < rank; ++r) n *= N;
    SeriesMatrix out(n, t.order());
    std::map<Monomial, detail::RatMatrix> words;
    const auto word = [&](const Monomial& m) -> const detail::RatMatrix& {
        auto it = words.find(m);
        if (it == words.end()) it = words.emplace(m, detail::word_matrix(g, m)).first;
        return it->second;
    };
    for (const auto& [key, s] : t.terms()) {
        detail::RatMatrix acc = word(key[0]);
        for (int r = 1; r < rank; ++r) acc = detail::rat_kron(acc, word(key[r]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (acc[i][j] != 0) out.at(i, j) += s * acc[i][j];
    }
    return out;
}

// Permutation matrix exchanging the two tensor legs of C^N (x) C^N.
inline SeriesMatrix flip_matrix(int N, int order) {
    SeriesMatrix p(N * N, order);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) p.at(j * N + i, i * N + j) = XiSeries::one(order);
    return p;
}

namespace detail {
// Embed an N^2 x N^2 two-leg matrix into legs (l1,l2) of a three-leg space;
// legs are 0-based with stride N^(2-leg).
inline SeriesMatrix embed_matrix_pair(const SeriesMatrix& rm, int N, int l1, int l2) {
    const int n = N * N * N;
    SeriesMatrix out(n, rm.order());
    const int stride[3] = {N * N, N, 1};
    const int spare = 3 - l1 - l2;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int ap = 0; ap < N; ++ap)
                for (int bp = 0; bp < N; ++bp) {
                    const XiSeries& v = rm.at(a * N + b, ap * N + bp);
                    if (v.is_zero()) continue;
                    for (int c = 0; c < N; ++c) {
                        const int row = a * stride[l1] + b * stride[l2] + c * stride[spare];
                        const int col = ap * stride[l1] + bp * stride[l2] + c * stride[spare];
                        out.at(row, col) = v;
                    }
                }
    return out;
}
} // namespace detail

// Matrix-level quantum Yang-Baxter residual, rebuilt from the N^2 x N^2
// matrix alone (independent of the universal-tensor route).
inline SeriesMatrix matrix_qybe_residual(const SeriesMatrix& rm, int N) {
    const auto r12 = detail::embed_matrix_pair(rm, N, 0, 1);
    const auto r13 = detail::embed_matrix_pair(rm, N, 0, 2);
    const auto r23 = detail::embed_matrix_pair(rm, N, 1, 2);
    return r12 * r13 * r23 - r23 * r13 * r12;
}

inline SeriesMatrix matrix_triangularity_residual(const SeriesMatrix& rm, int N) {
    const auto p = flip_matrix(N, rm.order());
    return p * rm * p * rm - SeriesMatrix::identity(N * N, rm.order());
}

// ----- concrete R-matrix export ----------------------------------------------

struct RMatrixExport {
    int N = 0;
    int order = 0;
    SeriesMatrix entries{1, 0};
    bool stabilized = false;            // identical against the order+1 run
    std::vector<std::string> unstable;  // offending entries as "(i,j)"

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["N"] = N;
        j["order"] = order;
        j["stabilized"] = stabilized;
        if (!unstable.empty()) {
            j["unstable_entries"] = unstable;
            j["hint"] = "increase the truncation order";
        }
        auto rows = nlohmann::json::array();
        for (int i = 0; i < entries.n(); ++i) {
            auto row = nlohmann::json::array();
            for (int jj = 0; jj < entries.n(); ++jj) {
                auto poly = nlohmann::json::array();
                for (const auto& c : entries.at(i, jj).coeffs()) poly.push_back(rational_str(c));
                row.push_back(poly);
            }
            rows.push_back(row);
        }
        j["entries"] = rows;  // entry (i,j) as [c0, c1, ...] coefficients of xi^k
        return j;
    }

    std::string to_text() const {
        std::string out = "R-matrix, N=" + std::to_string(N) + ", truncation order " +
                          std::to_string(order) +
                          (stabilized ? " (entries stabilized)\n" : " (NOT stabilized)\n");
        out += entries.str();
        out += "\n";
        return out;
    }
};

// The fundamental-representation R-matrix with exact polynomial entries.
// Nilpotency of the leg images terminates every series; stabilization is
// asserted by recomputing at order+1 and comparing coefficientwise.
template <typename BuildR>
inline RMatrixExport export_r_matrix_with(int N, int K, const BuildR& build_r) {
    RMatrixExport out;
    out.N = N;
    out.order = K;
    out.entries = evaluate_tensor(build_r(K));
    const SeriesMatrix next = evaluate_tensor(build_r(K + 1));
    out.stabilized = true;
    for (int i = 0; i < out.entries.n(); ++i)
        for (int j = 0; j < out.entries.n(); ++j) {
            const auto& a = out.entries.at(i, j);
            const auto& b = next.at(i, j);
            bool same = b[K + 1] == 0;
            for (int k = 0; k <= K && same; ++k) same = a[k] == b[k];
            if (!same) {
                out.stabilized = false;
                out.unstable.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    return out;
}

// Standard chain-twist R-matrix in the defining representation.
inline RMatrixExport export_r_matrix(int N, int K) {
    return export_r_matrix_with(N, K, [&](int k) {
        TwistSpec s;
        s.variant = TwistVariant::extended_multi;
        s.N = N;
        s.order = k;
        return universal_r(build_extended_twist(s, false));
    });
}

} // namespace jtwist
