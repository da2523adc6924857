#include "expcond/polytope_ring.hpp"

#include <cmath>
#include <map>

namespace expcond {

namespace {

Rat binomial(int n, int k) {
    Rat r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Rat factorial(int n) {
    Rat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Polytope origin_point(int ambient) { return Polytope::point(RatVec(ambient, Rat(0))); }

}  // namespace

VirtualPolytope::VirtualPolytope(const Polytope& plus)
    : plus_(plus.translation_normalized()), minus_(origin_point(plus.ambient_dim())) {}

VirtualPolytope::VirtualPolytope(const Polytope& plus, const Polytope& minus)
    : plus_(plus.translation_normalized()), minus_(minus.translation_normalized()) {
    if (plus.ambient_dim() != minus.ambient_dim())
        throw std::invalid_argument("virtual polytope ambient mismatch");
}

bool VirtualPolytope::same_class(const VirtualPolytope& o) const {
    if (ambient_dim() != o.ambient_dim()) return false;
    Polytope lhs = minkowski_sum({plus_, o.minus_}).translation_normalized();
    Polytope rhs = minkowski_sum({o.plus_, minus_}).translation_normalized();
    return lhs == rhs;
}

VirtualPolytope VirtualPolytope::operator+(const VirtualPolytope& o) const {
    return VirtualPolytope(minkowski_sum({plus_, o.plus_}), minkowski_sum({minus_, o.minus_}));
}

VirtualPolytope VirtualPolytope::operator-() const { return VirtualPolytope(minus_, plus_); }

VirtualPolytope VirtualPolytope::scaled(const Rat& s) const {
    if (s >= 0) return VirtualPolytope(plus_.scaled(s), minus_.scaled(s));
    return VirtualPolytope(minus_.scaled(-s), plus_.scaled(-s));
}

RingElement RingElement::from_polytope(const Polytope& p) {
    return power(Rat(1), VirtualPolytope(p), 1);
}

RingElement RingElement::constant(int ambient_dim, const Rat& c) {
    return power(c, VirtualPolytope(origin_point(ambient_dim)), 0);
}

RingElement RingElement::power(const Rat& coeff, const VirtualPolytope& base, int degree) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    RingElement x(base.ambient_dim());
    x.terms_.push_back(RingTerm{coeff, degree, base});
    x.normalize();
    return x;
}

RingElement RingElement::polarize(const std::vector<VirtualPolytope>& monomial) {
    if (monomial.empty()) throw std::invalid_argument("empty monomial");
    const int k = static_cast<int>(monomial.size());
    const int ambient = monomial[0].ambient_dim();
    bool diagonal = true;
    for (const VirtualPolytope& v : monomial)
        if (!v.same_class(monomial[0])) { diagonal = false; break; }
    if (diagonal) return power(Rat(1), monomial[0], k);

    RingElement x(ambient);
    Rat kfact = factorial(k);
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        VirtualPolytope sum(origin_point(ambient));
        int bits = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                sum = bits == 0 ? monomial[i] : sum + monomial[i];
                ++bits;
            }
        Rat sign = ((k - bits) % 2 == 0) ? Rat(1) : Rat(-1);
        x.terms_.push_back(RingTerm{sign / kfact, k, sum});
    }
    x.normalize();
    return x;
}

void RingElement::normalize() {
    std::vector<RingTerm> merged;
    for (RingTerm& t : terms_) {
        if (t.coeff == 0) continue;
        if (t.degree >= 1 && t.base.is_zero()) continue;  // zero virtual polytope
        bool found = false;
        for (RingTerm& m : merged) {
            if (m.degree != t.degree) continue;
            if (t.degree == 0 || m.base.same_class(t.base)) {
                m.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(t));
    }
    terms_.clear();
    for (RingTerm& t : merged)
        if (t.coeff != 0) terms_.push_back(std::move(t));
}

std::optional<int> RingElement::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_[0].degree;
    for (const RingTerm& t : terms_)
        if (t.degree != d) return std::nullopt;
    return d;
}

RingElement RingElement::operator+(const RingElement& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("ring ambient mismatch");
    RingElement x(ambient_);
    x.terms_ = terms_;
    x.terms_.insert(x.terms_.end(), o.terms_.begin(), o.terms_.end());
    x.normalize();
    return x;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + o.scaled(Rat(-1)); }

RingElement RingElement::scaled(const Rat& s) const {
    RingElement x(ambient_);
    for (const RingTerm& t : terms_) x.terms_.push_back(RingTerm{t.coeff * s, t.degree, t.base});
    x.normalize();
    return x;
}

RingElement RingElement::operator*(const RingElement& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("ring ambient mismatch");
    RingElement x(ambient_);
    for (const RingTerm& a : terms_) {
        for (const RingTerm& b : o.terms_) {
            Rat c = a.coeff * b.coeff;
            if (a.degree == 0) {
                x.terms_.push_back(RingTerm{c, b.degree, b.base});
                continue;
            }
            if (b.degree == 0) {
                x.terms_.push_back(RingTerm{c, a.degree, a.base});
                continue;
            }
            if (a.base.same_class(b.base)) {
                x.terms_.push_back(RingTerm{c, a.degree + b.degree, a.base});
                continue;
            }
            // (base_a)^p * (base_b)^q re-polarized into pure powers
            const int p = a.degree, q = b.degree, k = p + q;
            Rat kfact = factorial(k);
            for (int s = 0; s <= p; ++s) {
                for (int t = 0; t <= q; ++t) {
                    if (s == 0 && t == 0) continue;
                    Rat coeff = c * binomial(p, s) * binomial(q, t) / kfact;
                    if ((k - s - t) % 2 == 1) coeff = -coeff;
                    VirtualPolytope base =
                        a.base.scaled(Rat(s)) + b.base.scaled(Rat(t));
                    x.terms_.push_back(RingTerm{coeff, k, base});
                }
            }
        }
    }
    x.normalize();
    return x;
}

std::vector<std::tuple<Rat, Polytope, int>> RingElement::honest_terms() const {
    std::map<std::pair<int, std::string>, std::pair<Rat, Polytope>> merged;
    for (const RingTerm& t : terms_) {
        auto push = [&](const Rat& c, const Polytope& poly, int deg) {
            Polytope norm = poly.translation_normalized();
            auto key = std::make_pair(deg, norm.key());
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(key, std::make_pair(c, norm));
            else
                it->second.first += c;
        };
        if (t.degree == 0) {
            push(t.coeff, origin_point(ambient_), 0);
            continue;
        }
        const Polytope& P = t.base.plus();
        const Polytope& Q = t.base.minus();
        const int k = t.degree;
        if (Q.vertex_count() == 1) {  // honest base
            push(t.coeff, P, k);
            continue;
        }
        // (P - Q)^k expanded through monomials, each re-polarized into pure
        // powers of nonnegative combinations sP + tQ.
        Rat kfact = factorial(k);
        for (int j = 0; j <= k; ++j) {
            Rat mono_coeff = t.coeff * binomial(k, j);
            if ((k - j) % 2 == 1) mono_coeff = -mono_coeff;
            // monomial P^j Q^(k-j)
            for (int s = 0; s <= j; ++s) {
                for (int u = 0; u <= k - j; ++u) {
                    if (s == 0 && u == 0) continue;
                    Rat c = mono_coeff * binomial(j, s) * binomial(k - j, u) / kfact;
                    if ((k - s - u) % 2 == 1) c = -c;
                    std::vector<Polytope> parts;
                    if (s > 0) parts.push_back(P.scaled(Rat(s)));
                    if (u > 0) parts.push_back(Q.scaled(Rat(u)));
                    push(c, minkowski_sum(parts), k);
                }
            }
        }
    }
    std::vector<std::tuple<Rat, Polytope, int>> out;
    for (auto& [key, val] : merged)
        if (val.first != 0) out.emplace_back(val.first, val.second, key.first);
    return out;
}

PairingValue eval_I(VolumeForm nu, const RingElement& x, const AngleConfig& cfg) {
    PairingValue out;
    const int ambient = x.ambient_dim();
    if (nu == VolumeForm::vol) {
        Rat total = 0;
        for (const auto& [c, poly, deg] : x.honest_terms()) {
            if (deg != ambient) continue;
            if (poly.dim() < ambient) continue;
            total += c * poly.volume().rational();
        }
        out.exact = total;
        out.value = rat_to_double(total);
        return out;
    }
    if (ambient % 2 != 0) throw std::invalid_argument("pseudo form needs even ambient dimension");
    const int n = ambient / 2;
    double err_sq = 0;
    for (const auto& [c, poly, deg] : x.honest_terms()) {
        if (deg != n) continue;
        PseudoVolumeResult r = pseudovolume(poly, cfg);
        double cd = rat_to_double(c);
        out.value += cd * r.value;
        err_sq += cd * cd * r.error_bound * r.error_bound;
    }
    out.error_bound = std::sqrt(err_sq);
    return out;
}

PairingValue eval_L(VolumeForm nu, const RingElement& x, const RingElement& y,
                    const AngleConfig& cfg) {
    return eval_I(nu, x * y, cfg);
}

WeightedFan weighted_fan_of(const RingElement& x) {
    const int m = x.ambient_dim();
    auto deg = x.homogeneous_degree();
    if (x.is_zero()) return WeightedFan(m, m);  // empty fan
    if (!deg) throw std::invalid_argument("weighted fan needs a homogeneous element");
    if (*deg > m) throw std::invalid_argument("degree exceeds the ambient dimension");
    const int k = m - *deg;
    WeightedFan combined(m, k);
    for (const auto& [c, poly, d] : x.honest_terms()) {
        WeightedFan piece = fan_scale(dual_skeleton_fan(poly, k), c);
        for (const WeightedCone& wc : piece.cones()) combined.add_cone(wc);
    }
    return refine_merge(combined);
}

bool in_Jvol(const RingElement& x) {
    if (x.is_zero()) return true;
    auto deg = x.homogeneous_degree();
    if (!deg) throw std::invalid_argument("ideal membership needs a homogeneous element");
    if (*deg > x.ambient_dim()) return true;  // pairings vanish by grading
    WeightedFan fan = weighted_fan_of(x);
    for (const WeightedCone& wc : fan.cones())
        if (!wc.weight.is_zero()) return false;
    return true;
}

RingElement pushforward(const RatMat& map_rows, const RingElement& x) {
    const int b = static_cast<int>(map_rows.size());
    for (const RatVec& row : map_rows)
        if (static_cast<int>(row.size()) != x.ambient_dim())
            throw std::invalid_argument("map domain mismatch");
    auto apply = [&](const Polytope& p) {
        RatMat pts;
        for (const RatVec& v : p.vertices()) {
            RatVec q(b);
            for (int i = 0; i < b; ++i) q[i] = dot(map_rows[i], v);
            pts.push_back(std::move(q));
        }
        return Polytope::hull(b, pts);
    };
    RingElement out(b);
    for (const RingTerm& t : x.terms()) {
        VirtualPolytope base(apply(t.base.plus()), apply(t.base.minus()));
        out = out + RingElement::power(t.coeff, base, t.degree);
    }
    return out;
}

}  // namespace expcond
