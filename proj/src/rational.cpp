#include "expcond/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace expcond {

namespace mp = boost::multiprecision;

Rat parse_rat(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

std::string format_rat(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

double rat_to_double(const Rat& r) {
    // Convert through a wide float so huge numerators/denominators round once.
    using F = mp::cpp_bin_float_quad;
    return static_cast<double>(static_cast<F>(numerator(r)) / static_cast<F>(denominator(r)));
}

bool rational_square_root(const Rat& r, Rat& root) {
    if (r < 0) return false;
    if (r == 0) { root = 0; return true; }
    BigInt n = numerator(r), d = denominator(r);
    BigInt sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    root = Rat(sn, sd);
    return true;
}

SqrtRat::SqrtRat(Rat coef, Rat radicand) : coef_(std::move(coef)), radicand_(std::move(radicand)) {
    if (radicand_ < 0) throw std::domain_error("negative radicand");
    normalize();
}

void SqrtRat::normalize() {
    if (coef_ == 0 || radicand_ == 0) {
        coef_ = 0;
        radicand_ = 1;
        return;
    }
    Rat root;
    if (rational_square_root(radicand_, root)) {
        coef_ *= root;
        radicand_ = 1;
    }
}

const Rat& SqrtRat::rational() const {
    if (!is_rational()) throw std::domain_error("irrational SqrtRat");
    return coef_;
}

double SqrtRat::value() const {
    if (is_zero()) return 0.0;
    return rat_to_double(coef_) * std::sqrt(rat_to_double(radicand_));
}

std::optional<SqrtRat> SqrtRat::try_add(const SqrtRat& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (radicand_ == o.radicand_) return SqrtRat(coef_ + o.coef_, radicand_);
    Rat ratio = o.radicand_ / radicand_, root;
    if (!rational_square_root(ratio, root)) return std::nullopt;
    // sqrt(o.radicand) = root * sqrt(radicand)
    return SqrtRat(coef_ + o.coef_ * root, radicand_);
}

SqrtRat SqrtRat::operator+(const SqrtRat& o) const {
    auto s = try_add(o);
    if (!s) throw std::domain_error("incommensurable radicals: " + str() + " + " + o.str());
    return *s;
}

bool SqrtRat::operator==(const SqrtRat& o) const {
    return sign_of(coef_) == sign_of(o.coef_) && coef_ * coef_ * radicand_ == o.coef_ * o.coef_ * o.radicand_;
}

std::string SqrtRat::str() const {
    if (is_rational()) return format_rat(coef_);
    return format_rat(coef_) + "*sqrt(" + format_rat(radicand_) + ")";
}

}  // namespace expcond
