#include "expcond/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace expcond {

RatVec vec_add(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vec_scale(const Rat& s, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    Rat r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

bool is_zero_vec(const RatVec& a) {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

bool lex_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

RatVec primitive(const RatVec& v, bool orient) {
    BigInt den_lcm = 1;
    for (const Rat& x : v) den_lcm = lcm(den_lcm, denominator(x));
    BigInt g = 0;
    std::vector<BigInt> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
        g = gcd(g, ints[i]);
    }
    if (g == 0) return RatVec(v.size(), Rat(0));
    int first_sign = 0;
    for (const BigInt& x : ints)
        if (x != 0) { first_sign = x > 0 ? 1 : -1; break; }
    if (orient && first_sign < 0) g = -g;
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(ints[i] / g);
    return r;
}

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rat inv = Rat(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

int rank_of(const RatMat& rows) {
    RatMat m = rows;
    return static_cast<int>(rref(m).size());
}

std::optional<RatVec> solve_linear(const RatMat& M, const RatVec& b) {
    const int rows = static_cast<int>(M.size());
    const int cols = rows ? static_cast<int>(M[0].size()) : static_cast<int>(b.size()) * 0;
    RatMat aug(M);
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> piv = rref(aug);
    RatVec x(cols, Rat(0));
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == cols) return std::nullopt;  // pivot in augmented column
        x[piv[i]] = aug[i][cols];
    }
    return x;
}

RatMat nullspace(const RatMat& M, int cols) {
    RatMat m = M;
    std::vector<int> piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : piv) is_pivot[p] = true;
    RatMat basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat determinant(RatMat m) {
    const int n = static_cast<int>(m.size());
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) return Rat(0);
        if (p != c) { std::swap(m[p], m[c]); det = -det; }
        det *= m[c][c];
        Rat inv = Rat(1) / m[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] * inv;
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

RatMat gram(const RatMat& A, const RatMat& B) {
    RatMat g(A.size(), RatVec(B.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < B.size(); ++j) g[i][j] = dot(A[i], B[j]);
    return g;
}

RatVec coords_in_basis(const RatMat& B, const RatVec& x) {
    const int m = static_cast<int>(x.size());
    RatMat cols(m, RatVec(B.size()));
    for (size_t i = 0; i < B.size(); ++i)
        for (int a = 0; a < m; ++a) cols[a][i] = B[i][a];
    auto sol = solve_linear(cols, x);
    if (!sol) throw std::logic_error("point not in span of basis");
    return *sol;
}

RatVec lift_functional(const RatMat& B, const RatVec& a_loc) {
    RatMat G = gram(B, B);
    auto mu = solve_linear(G, a_loc);
    if (!mu) throw std::logic_error("degenerate basis Gram matrix");
    RatVec a(B.empty() ? 0 : B[0].size(), Rat(0));
    for (size_t i = 0; i < B.size(); ++i) a = vec_add(a, vec_scale((*mu)[i], B[i]));
    return a;
}

SqrtRat parallelepiped_volume(const RatMat& rows) {
    if (rows.empty()) return SqrtRat(Rat(1));
    return SqrtRat(Rat(1), determinant(gram(rows, rows)));
}

GaussianVector::GaussianVector(int n_, RatVec c) : n(n_), coords(std::move(c)) {
    if (static_cast<int>(coords.size()) != 2 * n)
        throw std::invalid_argument("GaussianVector needs 2n coordinates");
}

RatVec complex_rotate(const RatVec& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("odd-dimensional vector has no complex structure");
    RatVec r(v.size());
    for (size_t k = 0; k + 1 < v.size(); k += 2) {
        r[k] = -v[k + 1];
        r[k + 1] = v[k];
    }
    return r;
}

GaussianVector complex_rotate(const GaussianVector& v) {
    return GaussianVector(v.n, complex_rotate(v.coords));
}

Subspace::Subspace(int ambient_dim, RatMat basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
    for (const RatVec& v : basis_)
        if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("basis vector dimension mismatch");
    if (rank_of(basis_) != static_cast<int>(basis_.size()))
        throw std::invalid_argument("dependent subspace basis");
}

Subspace Subspace::span_of(int ambient_dim, const RatMat& vectors) {
    RatMat m = vectors;
    rref(m);
    RatMat basis;
    for (RatVec& row : m)
        if (!is_zero_vec(row)) basis.push_back(std::move(row));
    return Subspace(ambient_dim, std::move(basis));
}

bool Subspace::contains(const RatVec& v) const {
    if (is_zero_vec(v)) return true;
    RatMat m = basis_;
    m.push_back(v);
    return rank_of(m) == dim();
}

bool Subspace::contains(const Subspace& other) const {
    for (const RatVec& v : other.basis_)
        if (!contains(v)) return false;
    return true;
}

Subspace Subspace::orthogonal_complement() const {
    if (basis_.empty()) {
        RatMat id(ambient_, RatVec(ambient_, Rat(0)));
        for (int i = 0; i < ambient_; ++i) id[i][i] = 1;
        return Subspace(ambient_, id);
    }
    return Subspace(ambient_, nullspace(basis_, ambient_));
}

Subspace Subspace::sum(const Subspace& other) const {
    RatMat all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span_of(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
    // x in both spans <=> x orthogonal to both complements
    RatMat constraints = orthogonal_complement().basis();
    RatMat oc = other.orthogonal_complement().basis();
    constraints.insert(constraints.end(), oc.begin(), oc.end());
    if (constraints.empty()) {
        RatMat id(ambient_, RatVec(ambient_, Rat(0)));
        for (int i = 0; i < ambient_; ++i) id[i][i] = 1;
        return Subspace(ambient_, id);
    }
    return Subspace(ambient_, nullspace(constraints, ambient_));
}

std::string Subspace::key() const {
    RatMat m = basis_;
    rref(m);
    std::ostringstream os;
    os << ambient_ << ":";
    for (const RatVec& row : m) {
        for (const Rat& x : row) os << format_rat(x) << ",";
        os << ";";
    }
    return os.str();
}

Subspace complex_rotate(const Subspace& s) {
    RatMat b;
    b.reserve(s.basis().size());
    for (const RatVec& v : s.basis()) b.push_back(complex_rotate(v));
    return Subspace(s.ambient_dim(), std::move(b));
}

Rat subspace_cosine_sq(const Subspace& A, const Subspace& B) {
    if (A.dim() != B.dim()) throw std::invalid_argument("subspace_cosine: dimension mismatch");
    if (A.dim() == 0) return Rat(1);
    Rat cross = determinant(gram(A.basis(), B.basis()));
    Rat ga = determinant(gram(A.basis(), A.basis()));
    Rat gb = determinant(gram(B.basis(), B.basis()));
    return (cross * cross) / (ga * gb);
}

double subspace_cosine(const Subspace& A, const Subspace& B) {
    return std::sqrt(rat_to_double(subspace_cosine_sq(A, B)));
}

}  // namespace expcond
