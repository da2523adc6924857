#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace expcond {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Always stored reduced with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p" (optional sign, arbitrary precision).
Rat parse_rat(const std::string& text);

// Inverse of parse_rat; integers print without the "/q" part.
std::string format_rat(const Rat& r);

double rat_to_double(const Rat& r);

inline int sign_of(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// true iff r = (root)^2 for a rational root >= 0
bool rational_square_root(const Rat& r, Rat& root);

/**
 * Exact value of the form coef * sqrt(radicand), with rational coef and
 * nonnegative rational radicand.
 *
 * Intrinsic volumes of rational polytopes always have this shape: the
 * volume measured in rational coordinates of the affine hull is rational
 * and the metric distortion of the hull basis is the square root of a
 * Gram determinant. Sums stay exact whenever the radicands agree up to a
 * rational square, which holds for quantities computed inside a common
 * subspace.
 */
class SqrtRat {
public:
    SqrtRat() : coef_(0), radicand_(1) {}
    explicit SqrtRat(Rat rational_value) : coef_(std::move(rational_value)), radicand_(1) {}
    SqrtRat(Rat coef, Rat radicand);

    const Rat& coef() const { return coef_; }
    const Rat& radicand() const { return radicand_; }

    bool is_zero() const { return coef_ == 0; }
    bool is_rational() const { return radicand_ == 1; }
    // requires is_rational()
    const Rat& rational() const;

    double value() const;

    SqrtRat operator-() const { return SqrtRat(-coef_, radicand_); }
    SqrtRat operator*(const SqrtRat& o) const { return SqrtRat(coef_ * o.coef_, radicand_ * o.radicand_); }
    SqrtRat operator*(const Rat& s) const { return SqrtRat(coef_ * s, radicand_); }

    // Exact addition; requires the radicands to differ by a rational
    // square (throws std::domain_error otherwise).
    SqrtRat operator+(const SqrtRat& o) const;
    SqrtRat operator-(const SqrtRat& o) const { return *this + (-o); }
    std::optional<SqrtRat> try_add(const SqrtRat& o) const;

    bool operator==(const SqrtRat& o) const;
    bool operator!=(const SqrtRat& o) const { return !(*this == o); }

    std::string str() const;

private:
    void normalize();

    Rat coef_;
    Rat radicand_;  // >= 0; 1 when the value is rational
};

}  // namespace expcond
