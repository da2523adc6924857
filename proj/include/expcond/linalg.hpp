#pragma once

#include "expcond/rational.hpp"

#include <optional>
#include <vector>

namespace expcond {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row major

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rat& s, const RatVec& a);
Rat dot(const RatVec& a, const RatVec& b);
bool is_zero_vec(const RatVec& a);

// Lexicographic order on coordinate vectors; the canonical order used for
// vertex lists everywhere.
bool lex_less(const RatVec& a, const RatVec& b);

// Scales a nonzero rational vector to the canonical primitive integer
// representative of its ray: integer entries, gcd 1, first nonzero > 0 when
// `orient` is set (rays keep their own sign).
RatVec primitive(const RatVec& v, bool orient = false);

int rank_of(const RatMat& rows);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(RatMat& m);

// One exact solution of M x = b, or nullopt when inconsistent. Solutions of
// underdetermined systems have zeros in the free coordinates.
std::optional<RatVec> solve_linear(const RatMat& M, const RatVec& b);

// Basis of { x : M x = 0 }.
RatMat nullspace(const RatMat& M, int cols);

Rat determinant(RatMat m);

// Gram matrix A * B^T of two row families.
RatMat gram(const RatMat& A, const RatMat& B);

// Coordinates of x in the row basis B; throws when x is outside the span.
RatVec coords_in_basis(const RatMat& B, const RatVec& x);

// Ambient covector lying in the row space of B whose restriction to the
// span acts as the local covector a_loc.
RatVec lift_functional(const RatMat& B, const RatVec& a_loc);

// Euclidean volume of the parallelepiped spanned by the rows: sqrt(det Gram).
SqrtRat parallelepiped_volume(const RatMat& rows);

// Point of C^n* = R^{2n}; coordinates ordered (Re z1, Im z1, ..., Re zn, Im zn).
struct GaussianVector {
    int n = 0;
    RatVec coords;  // length 2n

    GaussianVector() = default;
    GaussianVector(int n_, RatVec c);
};

// Multiplication by sqrt(-1): (x, y) -> (-y, x) in each complex coordinate.
RatVec complex_rotate(const RatVec& v);
GaussianVector complex_rotate(const GaussianVector& v);

/// Linear subspace of R^m spanned by an explicit independent basis.
class Subspace {
public:
    Subspace(int ambient_dim, RatMat basis);
    static Subspace zero(int ambient_dim) { return Subspace(ambient_dim, {}); }
    // Drops dependent vectors instead of rejecting them.
    static Subspace span_of(int ambient_dim, const RatMat& vectors);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const RatMat& basis() const { return basis_; }

    bool contains(const RatVec& v) const;
    bool contains(const Subspace& other) const;

    Subspace orthogonal_complement() const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    // Canonical identifier (rref of the basis); equal iff same subspace.
    std::string key() const;

private:
    int ambient_;
    RatMat basis_;
};

Subspace complex_rotate(const Subspace& s);

// Exact square of the projection-distortion cosine between equidimensional
// subspaces: det(G_AB)^2 / (det(G_AA) det(G_BB)).
Rat subspace_cosine_sq(const Subspace& A, const Subspace& B);

// |det(Qa^T Qb)| for orthonormalized bases; one floating square root at the end.
double subspace_cosine(const Subspace& A, const Subspace& B);

}  // namespace expcond
