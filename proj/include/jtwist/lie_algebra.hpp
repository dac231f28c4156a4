#pragma once

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jtwist/rational.hpp"

namespace jtwist {

// PBW monomial key: one byte per basis generator holding its exponent.
using Monomial = std::string;
// Linear combination of PBW monomials with rational coefficients.
using MonomialMap = std::map<Monomial, Rational>;

namespace detail {
// Memo tables for the PBW normal-ordering kernel (see uea.hpp). Stored on
// the algebra so repeated products across one computation share work.
// unordered_map references are node-stable, so returning const& is safe.
struct NormalOrderCache {
    std::mutex mu;
    std::unordered_map<std::string, MonomialMap> gen_past; // key: monomial + byte(g)
    std::unordered_map<std::string, MonomialMap> mono_mul; // key: m1 + m2
    std::unordered_map<std::string, MonomialMap> antipode; // key: monomial
};
} // namespace detail

struct AlgebraMeta {
    std::string kind = "custom"; // gl | borel_restricted | abstract_L | dual_borel | semidirect | custom
    int N = 0;                   // matrix size for gl/borel_restricted/dual_borel
    Rational alpha = 0, gamma = 0; // abstract_L parameters
    int d = 0;                     // semidirect: dimension of the acting half
    // Expansion of each basis generator in the gl(N) basis, when meaningful.
    std::vector<std::vector<std::pair<int, Rational>>> gl_embedding;
    // Distinguished generators for twist construction.
    int h_index = -1, e_index = -1;
    std::vector<int> a_indices, b_indices;
};

// Finite-dimensional Lie algebra over the rationals, given by an ordered
// basis and dense structure constants [e_i, e_j] = sum_k c(i,j,k) e_k.
class LieAlgebra {
public:
    LieAlgebra(AlgebraMeta meta, std::vector<std::string> names, std::vector<Rational> c)
        : meta_(std::move(meta)), names_(std::move(names)), c_(std::move(c)) {
        dim_ = static_cast<int>(names_.size());
        if (dim_ <= 0) throw ConstraintViolation("algebra needs at least one generator");
        if (c_.size() != static_cast<std::size_t>(dim_) * dim_ * dim_)
            throw ConstraintViolation("structure constant table has wrong size");
        rows_.resize(static_cast<std::size_t>(dim_) * dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                auto& row = rows_[static_cast<std::size_t>(i) * dim_ + j];
                for (int k = 0; k < dim_; ++k)
                    if (this->c(i, j, k) != 0) row.emplace_back(k, this->c(i, j, k));
            }
    }

    int dim() const { return dim_; }
    const AlgebraMeta& meta() const { return meta_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    int index_of(const std::string& name) const {
        for (int i = 0; i < dim_; ++i)
            if (names_[i] == name) return i;
        throw ConstraintViolation("no generator named " + name);
    }
    const Rational& c(int i, int j, int k) const {
        return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
    }
    // Sparse bracket row: [e_i, e_j] as (index, coefficient) pairs.
    const std::vector<std::pair<int, Rational>>& bracket(int i, int j) const {
        return rows_[static_cast<std::size_t>(i) * dim_ + j];
    }

    detail::NormalOrderCache& cache() const { return cache_; }

private:
    AlgebraMeta meta_;
    std::vector<std::string> names_;
    std::vector<Rational> c_;
    std::vector<std::vector<std::pair<int, Rational>>> rows_;
    int dim_;
    mutable detail::NormalOrderCache cache_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

// ----- validity checks ------------------------------------------------------

inline std::vector<std::array<int, 2>> antisymmetry_violations(const LieAlgebra& g) {
    std::vector<std::array<int, 2>> out;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i; j < g.dim(); ++j)
            for (int k = 0; k < g.dim(); ++k)
                if (g.c(i, j, k) != -g.c(j, i, k)) {
                    out.push_back({i, j});
                    break;
                }
    return out;
}

struct JacobiReport {
    std::vector<std::array<int, 3>> violations;
    bool ok() const { return violations.empty(); }
};

// Scans [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0 over all triples.
inline JacobiReport check_jacobi(const LieAlgebra& g) {
    JacobiReport rep;
    const int d = g.dim();
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = j; k < d; ++k) {
                bool bad = false;
                for (int l = 0; l < d && !bad; ++l) {
                    Rational acc = 0;
                    for (int m = 0; m < d; ++m)
                        acc += g.c(i, j, m) * g.c(m, k, l) + g.c(j, k, m) * g.c(m, i, l) +
                               g.c(k, i, m) * g.c(m, j, l);
                    bad = (acc != 0);
                }
                if (bad) rep.violations.push_back({i, j, k});
            }
    return rep;
}

// ----- constructors ---------------------------------------------------------

namespace detail {
// Element compatibility is pointer-identity based, so the standard
// constructors intern their results: equal parameters give the same instance
// (which also shares the normal-ordering caches across call sites).
template <typename Build>
inline AlgebraPtr interned_algebra(const std::string& key, const Build& build) {
    static std::map<std::string, AlgebraPtr> pool;
    static std::mutex mx;
    {
        std::scoped_lock lk(mx);
        if (auto it = pool.find(key); it != pool.end()) return it->second;
    }
    AlgebraPtr alg = build();  // outside the lock: builders may intern dependencies
    std::scoped_lock lk(mx);
    return pool.emplace(key, std::move(alg)).first->second;
}
} // namespace detail

// 1-based (i,j) -> basis index of E_ij in the lexicographic gl(N) order.
inline int gl_index(int N, int i, int j) { return (i - 1) * N + (j - 1); }

namespace detail {
inline AlgebraPtr make_gl_fresh(int N) {
    const int d = N * N;
    std::vector<std::string> names(d);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            names[gl_index(N, i, j)] = "E" + std::to_string(i) + std::to_string(j);
    std::vector<Rational> c(static_cast<std::size_t>(d) * d * d, Rational(0));
    auto at = [&](int p, int q, int r) -> Rational& {
        return c[(static_cast<std::size_t>(p) * d + q) * d + r];
    };
    // [E_ik, E_lm] = delta_kl E_im - delta_im E_lk
    for (int i = 1; i <= N; ++i)
        for (int k = 1; k <= N; ++k)
            for (int l = 1; l <= N; ++l)
                for (int m = 1; m <= N; ++m) {
                    const int p = gl_index(N, i, k), q = gl_index(N, l, m);
                    if (k == l) at(p, q, gl_index(N, i, m)) += 1;
                    if (i == m) at(p, q, gl_index(N, l, k)) -= 1;
                }
    AlgebraMeta meta;
    meta.kind = "gl";
    meta.N = N;
    meta.gl_embedding.resize(d);
    for (int p = 0; p < d; ++p) meta.gl_embedding[p] = {{p, Rational(1)}};
    return std::make_shared<const LieAlgebra>(std::move(meta), std::move(names), std::move(c));
}
} // namespace detail

inline AlgebraPtr make_gl(int N) {
    if (N < 2) throw ConstraintViolation("gl(N) needs N >= 2");
    return detail::interned_algebra("gl:" + std::to_string(N),
                                    [&] { return detail::make_gl_fresh(N); });
}

namespace detail {
// Bracket of two gl(N)-vectors, expressed again as a gl(N)-vector.
inline std::map<int, Rational> gl_bracket_vec(const LieAlgebra& gl,
                                              const std::vector<std::pair<int, Rational>>& x,
                                              const std::vector<std::pair<int, Rational>>& y) {
    std::map<int, Rational> out;
    for (const auto& [p, a] : x)
        for (const auto& [q, b] : y)
            for (const auto& [r, cc] : gl.bracket(p, q)) {
                auto& acc = out[r];
                acc += a * b * cc;
                if (acc == 0) out.erase(r);
            }
    return out;
}
} // namespace detail

// Restricted Borel subalgebra of sl(N): span{H_1N, E_1N, E_1j, E_jN; j=2..N-1},
// basis order [H, E, A-type..., B-type...]. Structure constants inherited
// from gl(N) through the stored embedding.
namespace detail {
inline AlgebraPtr make_borel_fresh(int N) {
    const auto gl = make_gl(N);
    const int d = 2 * (N - 1);
    const std::string sN = std::to_string(N);
    std::vector<std::string> names;
    std::vector<std::vector<std::pair<int, Rational>>> embed;
    names.push_back("H1" + sN);
    embed.push_back({{gl_index(N, 1, 1), Rational(1)}, {gl_index(N, N, N), Rational(-1)}});
    names.push_back("E1" + sN);
    embed.push_back({{gl_index(N, 1, N), Rational(1)}});
    AlgebraMeta meta;
    meta.kind = "borel_restricted";
    meta.N = N;
    meta.h_index = 0;
    meta.e_index = 1;
    for (int j = 2; j <= N - 1; ++j) {
        meta.a_indices.push_back(static_cast<int>(names.size()));
        names.push_back("E1" + std::to_string(j));
        embed.push_back({{gl_index(N, 1, j), Rational(1)}});
    }
    for (int j = 2; j <= N - 1; ++j) {
        meta.b_indices.push_back(static_cast<int>(names.size()));
        names.push_back("E" + std::to_string(j) + sN);
        embed.push_back({{gl_index(N, j, N), Rational(1)}});
    }
    // Express gl-vectors back in this basis; every bracket must stay in span.
    auto to_basis = [&](std::map<int, Rational> v) {
        std::vector<Rational> coords(d, Rational(0));
        // H first: its gl-expansion has two entries; peel its E11 coefficient.
        const Rational hc = [&] {
            auto it = v.find(gl_index(N, 1, 1));
            return it == v.end() ? Rational(0) : it->second;
        }();
        if (hc != 0) {
            coords[0] = hc;
            for (const auto& [p, a] : embed[0]) {
                auto& cur = v[p];
                cur -= hc * a;
                if (cur == 0) v.erase(p);
            }
        }
        for (int b = 1; b < d; ++b) {
            const int p = embed[b][0].first;
            auto it = v.find(p);
            if (it != v.end()) {
                coords[b] = it->second;
                v.erase(it);
            }
        }
        if (!v.empty())
            throw ConstraintViolation("bracket left the restricted Borel span");
        return coords;
    };
    std::vector<Rational> c(static_cast<std::size_t>(d) * d * d, Rational(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto coords = to_basis(detail::gl_bracket_vec(*gl, embed[i], embed[j]));
            for (int k = 0; k < d; ++k)
                c[(static_cast<std::size_t>(i) * d + j) * d + k] = coords[k];
        }
    meta.gl_embedding = embed;
    return std::make_shared<const LieAlgebra>(std::move(meta), std::move(names), std::move(c));
}
} // namespace detail

inline AlgebraPtr make_borel_restricted(int N) {
    if (N < 2) throw ConstraintViolation("restricted Borel needs N >= 2");
    return detail::interned_algebra("borel:" + std::to_string(N),
                                    [&] { return detail::make_borel_fresh(N); });
}

namespace detail {
// Four-dimensional algebra {H, E, A, B}: [H,E]=2E, [H,A]=alpha A,
// [H,B]=(2-alpha) B, [E,A]=[E,B]=0, [A,B]=gamma E.
inline AlgebraPtr make_L_abstract_fresh(const Rational& alpha, const Rational& gamma) {
    const int d = 4;
    std::vector<std::string> names = {"H", "E", "A", "B"};
    std::vector<Rational> c(d * d * d, Rational(0));
    auto set = [&](int i, int j, int k, const Rational& v) {
        c[(static_cast<std::size_t>(i) * d + j) * d + k] = v;
        c[(static_cast<std::size_t>(j) * d + i) * d + k] = -v;
    };
    set(0, 1, 1, Rational(2));
    set(0, 2, 2, alpha);
    set(0, 3, 3, Rational(2) - alpha);
    set(2, 3, 1, gamma);
    AlgebraMeta meta;
    meta.kind = "abstract_L";
    meta.alpha = alpha;
    meta.gamma = gamma;
    meta.h_index = 0;
    meta.e_index = 1;
    meta.a_indices = {2};
    meta.b_indices = {3};
    return std::make_shared<const LieAlgebra>(std::move(meta), std::move(names), std::move(c));
}
} // namespace detail

// Four-dimensional algebra {H, E, A, B}: [H,E]=2E, [H,A]=alpha A,
// [H,B]=(2-alpha) B, [E,A]=[E,B]=0, [A,B]=gamma E.
inline AlgebraPtr make_L_abstract(const Rational& alpha, const Rational& gamma) {
    return detail::interned_algebra(
        "L:" + rational_str(alpha) + ":" + rational_str(gamma),
        [&] { return detail::make_L_abstract_fresh(alpha, gamma); });
}

namespace detail {
// Literal pattern table of the deformed dual multiplication on exponential
// coordinate functions Y_pq, for one orientation of the argument pair.
inline std::map<std::pair<int, int>, Rational> mu_prime_pattern(int N, std::pair<int, int> a,
                                                                std::pair<int, int> b) {
    std::map<std::pair<int, int>, Rational> out;
    auto add = [&](int p, int q, const Rational& c) {
        auto& cur = out[{p, q}];
        cur += c;
        if (cur == 0) out.erase({p, q});
    };
    const auto [p, q] = a;
    const auto [r, s] = b;
    if (p == 1 && q >= 2 && q <= N - 1 && r == 1 && s == N) {
        add(1, q, Rational(-1));
    } else if (p == 1 && q == N && r >= 2 && r <= N - 1 && s == N) {
        add(r, N, Rational(1));
    } else if ((p == 1 && q == 1 && r == 1 && s == N) ||
               (p == 1 && q == N && r == N && s == N)) {
        add(1, 1, Rational(-1));
        add(N, N, Rational(1));
    } else if (p == 1 && q < N && r == 1 && s < N) {
        if (q == 1) add(N, s, Rational(1));
    } else if (q == N && p > 1 && s == N && r > 1) {
        if (r == N) add(p, 1, Rational(-1));
    } else if (p == 1 && q < N && s == N && r > 1) {
        if (q == 1) add(r, 1, Rational(1));
        if (r == N) add(N, q, Rational(-1));
        if (q == r) {
            add(1, 1, Rational(-2));
            add(N, N, Rational(2));
        }
    }
    return out;
}

// The multiplication table lists each unordered pair in one orientation; the
// bracket is recovered by antisymmetry. When both orientations produce a
// value they must agree.
inline std::vector<std::pair<std::pair<int, int>, Rational>>
mu_prime_coord(int N, std::pair<int, int> a, std::pair<int, int> b) {
    using Term = std::pair<std::pair<int, int>, Rational>;
    if (a == b) return {};
    auto direct = mu_prime_pattern(N, a, b);
    auto flipped = mu_prime_pattern(N, b, a);
    for (auto& [coord, c] : flipped) c = -c;
    if (!direct.empty() && !flipped.empty() && direct != flipped)
        throw ConstraintViolation("dual multiplication table is orientation-inconsistent");
    const auto& use = direct.empty() ? flipped : direct;
    return std::vector<Term>(use.begin(), use.end());
}
} // namespace detail

namespace detail {
inline AlgebraPtr make_dual_borel_fresh(int N) {
    const int d = 2 * (N - 1);
    const std::string sN = std::to_string(N);
    using Coord = std::pair<int, int>;
    std::vector<std::string> names;
    std::vector<std::vector<std::pair<Coord, Rational>>> coords;
    names.push_back("Y1" + sN);
    coords.push_back({{{1, N}, Rational(1)}});
    for (int i = 2; i <= N - 1; ++i) {
        names.push_back("Y" + std::to_string(i) + sN);
        coords.push_back({{{i, N}, Rational(1)}});
    }
    const int d_index = static_cast<int>(names.size());
    names.push_back("D");
    coords.push_back({{{1, 1}, Rational(1)}, {{N, N}, Rational(-1)}});
    for (int i = 2; i <= N - 1; ++i) {
        names.push_back("Y1" + std::to_string(i));
        coords.push_back({{{1, i}, Rational(1)}});
    }

    auto to_basis = [&](std::map<Coord, Rational> v) {
        std::vector<Rational> out(d, Rational(0));
        const auto d11 = v.find(Coord{1, 1});
        if (d11 != v.end()) {
            const Rational dc = d11->second;
            out[d_index] = dc;
            v.erase(d11);
            auto& nn = v[Coord{N, N}];
            nn += dc;
            if (nn == 0) v.erase(Coord{N, N});
        }
        for (int b = 0; b < d; ++b) {
            if (b == d_index) continue;
            auto it = v.find(coords[b][0].first);
            if (it != v.end()) {
                out[b] = it->second;
                v.erase(it);
            }
        }
        if (!v.empty())
            throw ConstraintViolation("dual multiplication left the Y-sector");
        return out;
    };

    std::vector<Rational> c(static_cast<std::size_t>(d) * d * d, Rational(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::map<Coord, Rational> acc;
            for (const auto& [ca, wa] : coords[i])
                for (const auto& [cb, wb] : coords[j])
                    for (const auto& [cc, w] : detail::mu_prime_coord(N, ca, cb)) {
                        auto& cur = acc[cc];
                        cur += wa * wb * w;
                        if (cur == 0) acc.erase(cc);
                    }
            const auto row = to_basis(std::move(acc));
            for (int k = 0; k < d; ++k)
                c[(static_cast<std::size_t>(i) * d + j) * d + k] = row[k];
        }
    AlgebraMeta meta;
    meta.kind = "dual_borel";
    meta.N = N;
    return std::make_shared<const LieAlgebra>(std::move(meta), std::move(names), std::move(c));
}
} // namespace detail

// Lie algebra on {Y_1N, Y_iN (i=2..N-1), D = Y_11 - Y_NN, Y_1i (i=2..N-1)}
// with the deformed dual bracket; closure within the sector is verified.
inline AlgebraPtr make_dual_borel(int N) {
    if (N < 3) throw ConstraintViolation("dual Borel sector needs N >= 3");
    return detail::interned_algebra("dual:" + std::to_string(N),
                                    [&] { return detail::make_dual_borel_fresh(N); });
}

// ----- rank-2 / rank-3 Lie tensors and the classical Yang-Baxter residual ---

class TwoTensor {
public:
    explicit TwoTensor(AlgebraPtr alg) : alg_(std::move(alg)) {}

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<std::pair<int, int>, Rational>& terms() const { return t_; }

    void add(int i, int j, const Rational& c) {
        if (c == 0) return;
        auto& cur = t_[{i, j}];
        cur += c;
        if (cur == 0) t_.erase({i, j});
    }
    // c * (e_i ^ e_j) = c * (e_i (x) e_j - e_j (x) e_i)
    void add_wedge(int i, int j, const Rational& c) {
        add(i, j, c);
        add(j, i, -c);
    }
    bool is_zero() const { return t_.empty(); }
    bool is_antisymmetric() const {
        for (const auto& [ij, c] : t_) {
            const auto it = t_.find({ij.second, ij.first});
            if (ij.first == ij.second && c != 0) return false;
            if (it == t_.end() || it->second != -c) return false;
        }
        return true;
    }
    TwoTensor& operator-=(const TwoTensor& o) {
        for (const auto& [ij, c] : o.t_) add(ij.first, ij.second, -c);
        return *this;
    }
    TwoTensor& operator+=(const TwoTensor& o) {
        for (const auto& [ij, c] : o.t_) add(ij.first, ij.second, c);
        return *this;
    }
    bool operator==(const TwoTensor& o) const { return t_ == o.t_; }

    std::string str() const {
        std::string out;
        for (const auto& [ij, c] : t_) {
            if (!out.empty()) out += " + ";
            out += "(" + rational_str(c) + ")*" + alg_->name(ij.first) + "(x)" +
                   alg_->name(ij.second);
        }
        return out.empty() ? "0" : out;
    }

private:
    AlgebraPtr alg_;
    std::map<std::pair<int, int>, Rational> t_;
};

class ThreeTensor {
public:
    explicit ThreeTensor(AlgebraPtr alg) : alg_(std::move(alg)) {}
    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<std::array<int, 3>, Rational>& terms() const { return t_; }
    void add(int i, int j, int k, const Rational& c) {
        if (c == 0) return;
        auto& cur = t_[{i, j, k}];
        cur += c;
        if (cur == 0) t_.erase({i, j, k});
    }
    bool is_zero() const { return t_.empty(); }
    std::string str() const {
        std::string out;
        for (const auto& [idx, c] : t_) {
            if (!out.empty()) out += " + ";
            out += "(" + rational_str(c) + ")*" + alg_->name(idx[0]) + "(x)" +
                   alg_->name(idx[1]) + "(x)" + alg_->name(idx[2]);
        }
        return out.empty() ? "0" : out;
    }

private:
    AlgebraPtr alg_;
    std::map<std::array<int, 3>, Rational> t_;
};

// [[r,r]] = [r12,r13] + [r12,r23] + [r13,r23] in g (x) g (x) g.
inline ThreeTensor cybe_residual(const TwoTensor& r) {
    const auto& g = *r.algebra();
    ThreeTensor out(r.algebra());
    for (const auto& [ij, a] : r.terms())
        for (const auto& [kl, b] : r.terms()) {
            const Rational ab = a * b;
            const auto [i, j] = ij;
            const auto [k, l] = kl;
            for (const auto& [m, c] : g.bracket(i, k)) out.add(m, j, l, ab * c);
            for (const auto& [m, c] : g.bracket(j, k)) out.add(i, m, l, ab * c);
            for (const auto& [m, c] : g.bracket(j, l)) out.add(i, k, m, ab * c);
        }
    return out;
}

// r = -xi (H_1N ^ E_1N + 2 sum_k E_1k ^ E_kN), over the restricted Borel.
inline TwoTensor classical_r_borel(int N, const Rational& xi) {
    const auto alg = make_borel_restricted(N);
    const auto& m = alg->meta();
    TwoTensor r(alg);
    r.add_wedge(m.h_index, m.e_index, -xi);
    for (std::size_t j = 0; j < m.a_indices.size(); ++j)
        r.add_wedge(m.a_indices[j], m.b_indices[j], -2 * xi);
    return r;
}

// Two-parameter classical r-matrix on gl(N): Cartan part scaled by h/N,
// plus 2h sum_{k<l} E_lk (x) E_kl, plus the xi-wedge part above.
inline TwoTensor classical_r_gl(int N, const Rational& h, const Rational& xi) {
    const auto alg = make_gl(N);
    TwoTensor r(alg);
    // H_{k,k+1} = E_kk - E_{k+1,k+1} as index/coefficient pairs.
    auto cartan = [&](int k) {
        return std::array<std::pair<int, Rational>, 2>{
            std::pair<int, Rational>{gl_index(N, k, k), Rational(1)},
            std::pair<int, Rational>{gl_index(N, k + 1, k + 1), Rational(-1)}};
    };
    const Rational hN = h / N;
    for (int k = 1; k <= N - 1; ++k)
        for (const auto& [p, a] : cartan(k))
            for (const auto& [q, b] : cartan(k))
                r.add(p, q, hN * k * (N - k) * a * b);
    for (int k = 1; k <= N - 1; ++k)
        for (int l = k + 1; l <= N - 1; ++l)
            for (const auto& [p, a] : cartan(k))
                for (const auto& [q, b] : cartan(l)) {
                    r.add(p, q, hN * (N - l) * k * a * b);
                    r.add(q, p, hN * (N - l) * k * a * b);
                }
    for (int k = 1; k <= N; ++k)
        for (int l = k + 1; l <= N; ++l)
            r.add(gl_index(N, l, k), gl_index(N, k, l), 2 * h);
    r.add_wedge(gl_index(N, 1, 1), gl_index(N, 1, N), -xi);
    r.add_wedge(gl_index(N, N, N), gl_index(N, 1, N), xi);
    for (int k = 2; k <= N - 1; ++k)
        r.add_wedge(gl_index(N, 1, k), gl_index(N, k, N), -2 * xi);
    return r;
}

// ----- dual-to-Borel homomorphism check -------------------------------------

struct RHomReport {
    bool bijective = false;
    bool scale_consistent = false;
    Rational scale = 0;
    std::vector<std::string> notes;
    bool ok() const { return bijective && scale_consistent; }
};

// The contraction of the boundary r-matrix with the dual coordinates maps
// Y_1N -> -H_1N, Y_iN -> -2 E_1i, D -> E_1N, Y_1i -> E_iN (at xi = 1).
// Verifies this map is bijective and rescales brackets by one common factor.
inline RHomReport r_hom_check(int N) {
    RHomReport rep;
    const auto dual = make_dual_borel(N);
    const auto borel = make_borel_restricted(N);
    const int d = dual->dim();
    const auto& bm = borel->meta();
    // image[i] = image of dual basis vector i as a Borel coordinate vector
    std::vector<std::vector<Rational>> image(d, std::vector<Rational>(d, Rational(0)));
    image[0][bm.h_index] = -1;
    for (int i = 0; i < N - 2; ++i) image[1 + i][bm.a_indices[i]] = -2;
    image[N - 1][bm.e_index] = 1;
    for (int i = 0; i < N - 2; ++i) image[N + i][bm.b_indices[i]] = 1;

    // Bijectivity via Gaussian elimination.
    {
        auto mat = image;
        int rank = 0;
        for (int col = 0; col < d && rank < d; ++col) {
            int piv = -1;
            for (int row = rank; row < d; ++row)
                if (mat[row][col] != 0) {
                    piv = row;
                    break;
                }
            if (piv < 0) continue;
            std::swap(mat[rank], mat[piv]);
            for (int row = 0; row < d; ++row) {
                if (row == rank || mat[row][col] == 0) continue;
                const Rational f = mat[row][col] / mat[rank][col];
                for (int cc = 0; cc < d; ++cc) mat[row][cc] -= f * mat[rank][cc];
            }
            ++rank;
        }
        rep.bijective = (rank == d);
        if (!rep.bijective) rep.notes.push_back("image matrix is singular");
    }

    auto borel_bracket = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        std::vector<Rational> out(d, Rational(0));
        for (int p = 0; p < d; ++p) {
            if (x[p] == 0) continue;
            for (int q = 0; q < d; ++q) {
                if (y[q] == 0) continue;
                for (const auto& [k, c] : borel->bracket(p, q)) out[k] += x[p] * y[q] * c;
            }
        }
        return out;
    };

    bool have_scale = false;
    rep.scale_consistent = true;
    for (int i = 0; i < d && rep.scale_consistent; ++i)
        for (int j = i + 1; j < d && rep.scale_consistent; ++j) {
            // lhs = image of [y_i, y_j]; rhs = [image(y_i), image(y_j)]
            std::vector<Rational> lhs(d, Rational(0));
            for (const auto& [k, c] : dual->bracket(i, j))
                for (int t = 0; t < d; ++t) lhs[t] += c * image[k][t];
            const auto rhs = borel_bracket(image[i], image[j]);
            const bool rhs_zero = std::all_of(rhs.begin(), rhs.end(),
                                              [](const Rational& v) { return v == 0; });
            if (rhs_zero) {
                if (!std::all_of(lhs.begin(), lhs.end(),
                                 [](const Rational& v) { return v == 0; })) {
                    rep.scale_consistent = false;
                    rep.notes.push_back("bracket image nonzero where image bracket vanishes: (" +
                                        dual->name(i) + ", " + dual->name(j) + ")");
                }
                continue;
            }
            Rational lambda = 0;
            bool found = false;
            for (int t = 0; t < d && !found; ++t)
                if (rhs[t] != 0) {
                    lambda = lhs[t] / rhs[t];
                    found = true;
                }
            for (int t = 0; t < d; ++t)
                if (lhs[t] != lambda * rhs[t]) {
                    rep.scale_consistent = false;
                    rep.notes.push_back("no common scale on pair (" + dual->name(i) + ", " +
                                        dual->name(j) + ")");
                    break;
                }
            if (!rep.scale_consistent) break;
            if (!have_scale) {
                rep.scale = lambda;
                have_scale = true;
            } else if (lambda != rep.scale) {
                rep.scale_consistent = false;
                rep.notes.push_back("scale mismatch on pair (" + dual->name(i) + ", " +
                                    dual->name(j) + "): " + rational_str(lambda) + " vs " +
                                    rational_str(rep.scale));
            }
        }
    if (!have_scale) rep.scale_consistent = false;
    return rep;
}

// ----- real-form sign vectors ------------------------------------------------

// theta(E_ij) = -E_ij for i,j < N or i = j = N; +E_ij when exactly one index is N.
inline std::vector<Rational> theta_signs_gl(int N) {
    std::vector<Rational> s(static_cast<std::size_t>(N) * N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const bool plus = (i == N) != (j == N);
            s[gl_index(N, i, j)] = plus ? 1 : -1;
        }
    return s;
}

// Restriction to the Borel basis [H, E, A..., B...]: H -> -H, E -> +E,
// A-type -> -A, B-type -> +B.
inline std::vector<Rational> theta_signs_borel(int N) {
    std::vector<Rational> s(2 * (N - 1));
    s[0] = -1;
    s[1] = 1;
    for (int j = 0; j < N - 2; ++j) {
        s[2 + j] = -1;
        s[N + j] = 1;
    }
    return s;
}

// Violations of theta([x,y]) = [theta(y), theta(x)] for a sign map
// theta(e_i) = signs[i] e_i: needs signs[k] = -signs[i]signs[j] wherever
// c(i,j,k) is nonzero.
inline std::vector<std::array<int, 3>> anti_automorphism_violations(
    const LieAlgebra& g, const std::vector<Rational>& signs) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            for (const auto& [k, c] : g.bracket(i, j))
                if (signs[k] != -signs[i] * signs[j]) out.push_back({i, j, k});
    return out;
}

// ----- JSON ------------------------------------------------------------------

inline nlohmann::json algebra_to_json(const LieAlgebra& g) {
    nlohmann::json j;
    j["dim"] = g.dim();
    j["names"] = g.names();
    auto& c = j["c"] = nlohmann::json::array();
    for (int i = 0; i < g.dim(); ++i) {
        nlohmann::json plane = nlohmann::json::array();
        for (int jj = 0; jj < g.dim(); ++jj) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < g.dim(); ++k) row.push_back(rational_str(g.c(i, jj, k)));
            plane.push_back(std::move(row));
        }
        c.push_back(std::move(plane));
    }
    return j;
}

inline AlgebraPtr algebra_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("names") || !j.contains("c"))
        throw ParseError("algebra JSON needs dim, names, c");
    const int d = j.at("dim").get<int>();
    auto names = j.at("names").get<std::vector<std::string>>();
    if (static_cast<int>(names.size()) != d)
        throw ParseError("algebra JSON: names length != dim");
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(d) * d * d);
    const auto& cc = j.at("c");
    if (static_cast<int>(cc.size()) != d) throw ParseError("algebra JSON: bad c shape");
    for (const auto& plane : cc) {
        if (static_cast<int>(plane.size()) != d) throw ParseError("algebra JSON: bad c shape");
        for (const auto& row : plane) {
            if (static_cast<int>(row.size()) != d) throw ParseError("algebra JSON: bad c shape");
            for (const auto& entry : row) c.push_back(parse_rational(entry.get<std::string>()));
        }
    }
    AlgebraMeta meta;
    meta.kind = "custom";
    return std::make_shared<const LieAlgebra>(std::move(meta), std::move(names), std::move(c));
}

} // namespace jtwist
