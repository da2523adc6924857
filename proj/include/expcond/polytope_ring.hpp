#pragma once

#include "expcond/fan.hpp"
#include "expcond/pseudovolume.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace expcond {

/**
 * Virtual polytope: formal difference of translation classes. Both parts are
 * stored translation-normalized (lexicographically smallest vertex at the
 * origin); equality is Minkowski-cancellation equality.
 */
class VirtualPolytope {
public:
    explicit VirtualPolytope(const Polytope& plus);
    VirtualPolytope(const Polytope& plus, const Polytope& minus);

    const Polytope& plus() const { return plus_; }
    const Polytope& minus() const { return minus_; }
    int ambient_dim() const { return plus_.ambient_dim(); }

    // P - Q = P' - Q'  <=>  P + Q' = P' + Q  as translation classes
    bool same_class(const VirtualPolytope& o) const;
    bool is_zero() const { return plus_ == minus_; }

    VirtualPolytope operator+(const VirtualPolytope& o) const;
    VirtualPolytope operator-() const;
    VirtualPolytope scaled(const Rat& s) const;

private:
    Polytope plus_, minus_;
};

struct RingTerm {
    Rat coeff;
    int degree;
    VirtualPolytope base;  // the term is coeff * base^degree
};

/**
 * Element of the graded symmetric algebra on virtual polytopes, kept in
 * polarized normal form: a signed combination of pure powers.
 */
class RingElement {
public:
    explicit RingElement(int ambient_dim) : ambient_(ambient_dim) {}
    static RingElement from_polytope(const Polytope& p);
    static RingElement constant(int ambient_dim, const Rat& c);
    static RingElement power(const Rat& coeff, const VirtualPolytope& base, int degree);
    // Expands a product of degree-1 factors into pure powers; any multilinear
    // form evaluates equally on input and output.
    static RingElement polarize(const std::vector<VirtualPolytope>& monomial);

    int ambient_dim() const { return ambient_; }
    const std::vector<RingTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // degree when all terms agree; nullopt for mixed or zero elements
    std::optional<int> homogeneous_degree() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement scaled(const Rat& s) const;

    // Pure powers of honest polytopes realizing this element (virtual bases
    // expanded through nonnegative combinations).
    std::vector<std::tuple<Rat, Polytope, int>> honest_terms() const;

private:
    void normalize();
    int ambient_ = 0;
    std::vector<RingTerm> terms_;
};

enum class VolumeForm { vol, pseudo };

struct PairingValue {
    double value = 0;
    std::optional<Rat> exact;  // present for the vol form
    double error_bound = 0;
};

// I_nu: evaluates the top-degree component (degree = dim for vol, complex
// dim for pseudo) through the mixed (pseudo)volume; zero on other degrees.
PairingValue eval_I(VolumeForm nu, const RingElement& x, const AngleConfig& cfg = {});
// L_nu(x, y) = I_nu(x * y)
PairingValue eval_L(VolumeForm nu, const RingElement& x, const RingElement& y,
                    const AngleConfig& cfg = {});

// Signed sum of the dual skeleton fans of the pure-power bases; refined and
// merged, zero-weight cells retained.
WeightedFan weighted_fan_of(const RingElement& x);

// Membership in the volume-form kernel ideal: every top cell of the
// weighted fan carries weight zero (exact).
bool in_Jvol(const RingElement& x);

// Ring homomorphism induced by a linear map (rows: codomain x domain),
// applied vertexwise to every base polytope.
RingElement pushforward(const RatMat& map_rows, const RingElement& x);

}  // namespace expcond
