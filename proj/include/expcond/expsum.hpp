#pragma once

#include "expcond/polytope_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace expcond {

struct ComplexRat {
    Rat re, im;
    bool is_zero() const { return re == 0 && im == 0; }
};

struct ExpTerm {
    ComplexRat coeff;
    RatVec exponent;  // 2n functional coordinates (Re a1, Im a1, ...)
};

/**
 * Exponential sum sum_k c_k exp(lambda_k(z)) with Gaussian-rational exponent
 * functionals. A sum may carry a global 2*pi scale marker: the actual
 * exponents are then 2*pi times the stored rational vectors, which keeps
 * inputs like exp(2*pi*i*z) - 1 exact.
 */
class ExpSum {
public:
    ExpSum(int n, std::vector<ExpTerm> terms, bool two_pi_scaled = false);

    int n() const { return n_; }
    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool two_pi_scaled() const { return two_pi_; }

    // Multiplies by the character exp(lambda(z)); shifts every exponent.
    ExpSum times_character(const RatVec& exponent) const;
    // Substitutes z -> t z for rational t > 0.
    ExpSum dilated(const Rat& t) const;

private:
    int n_;
    std::vector<ExpTerm> terms_;  // canonical: sorted by exponent, merged
    bool two_pi_;
};

// Expression syntax, e.g. "exp((2*pi*i)*z1) - 1", "exp(z) + exp(i*z) + 1",
// "(1/2+3/4*i)*exp((1+i)*z1 + 2*z2) - 2". Throws std::invalid_argument with
// the offending position on bad input.
ExpSum parse_expsum(const std::string& text);

// Convex hull of the exponent vectors in R^{2n} (plain coordinates; the
// 2*pi marker stays on the sum and scales results, not vertices).
Polytope newton_polytope(const ExpSum& f);

// true iff every exponent functional is real on Re C^n (all Im parts zero).
bool is_quasi_algebraic(const ExpSum& f);

// Exact value of the form coef / (2*pi)^power.
struct ExactScaled {
    SqrtRat coef;
    int two_pi_power = 0;
    double value() const;
    std::string str() const;
};

struct IndexResult {
    double value = 0;
    double error_bound = 0;
    int complex_rank = 0;
    bool vanishes_exactly = false;  // negative complex rank certificate
    std::optional<ExactScaled> exact;
    PseudoVolumeResult detail;
};

// n! times the mixed pseudovolume of the Newton polytopes; the BKK-type
// count of the hypersurface system.
IndexResult intersection_index(const std::vector<ExpSum>& fs, const AngleConfig& cfg = {});

struct HypersurfaceClass {
    Polytope newton;
};

// Weak density of a zero-dimensional complete intersection given by its
// Newton classes, realized through the ring pairing.
IndexResult weak_density(const std::vector<HypersurfaceClass>& classes,
                         const AngleConfig& cfg = {});

struct LatticeSpec {
    int n = 0;
    Subspace L{0, {}};  // common real kernel of the characters
    RatMat lambdas;     // basis of the orthogonal complement of L
    RatMat mus;         // dual basis: <mu_q, lambda_p> = i * delta (Hermitian)
};

// Builds the period lattice data of { z : exp<z, lambda_j> = a_j }. Throws
// std::domain_error naming a complex line inside L when degenerate.
LatticeSpec lattice_from_characters(const RatMat& lambdas);

struct LatticeDensity {
    double value = 0;
    ExactScaled exact;
};

// cos(L_perp, iL) * vol(Pi(lambda_1..lambda_n)) / (2*pi)^n
LatticeDensity lattice_density(const LatticeSpec& spec);

struct ZeroCountConfig {
    double max_step = 0.5;        // phase step threshold (radians)
    int max_depth = 32;
    double min_modulus = 1e-9;    // relative modulus floor on the contour
    int max_radius_retries = 8;
};

// Winding number of f along |z| = R via adaptive refinement of the phase
// increments, with certified integer rounding (residual must stay below
// 1/4). Auto-perturbs the radius when the contour passes nearly through a
// zero; throws std::runtime_error when certification fails.
long count_zeros_disk(const ExpSum& f, double radius, const ZeroCountConfig& cfg = {});

}  // namespace expcond
