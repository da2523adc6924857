#include "expcond/pseudovolume.hpp"

#include <cmath>
#include <sstream>

namespace expcond {

namespace {

constexpr double kPi = 3.14159265358979323846;

double two_pi_pow(int n) { return std::pow(2.0 * kPi, n); }

std::string face_label(const Face& f) {
    std::ostringstream os;
    for (size_t i = 0; i < f.vertex_indices.size(); ++i)
        os << (i ? "," : "") << f.vertex_indices[i];
    return os.str();
}

// Accumulates c(F) * A(F) * mv / (2pi)^n for one face of the sum polytope.
void accumulate_face(PseudoVolumeResult& res, const Face& face, const SqrtRat& mv,
                     const AngleConfig& cfg) {
    const int n = res.n;
    PseudoTerm term;
    term.face_id = face_label(face);
    term.c_squared = c_coefficient_sq(face.tangent);
    term.face_mixed_volume = mv;
    if (term.c_squared == 0 || mv.is_zero()) {
        res.terms.push_back(std::move(term));
        return;  // exactly zero contribution; no sampling spent
    }
    term.c = std::sqrt(rat_to_double(term.c_squared));
    term.angle = exterior_angle(face.dual_cone, cfg);
    double scale = term.c * mv.value() / two_pi_pow(n);
    term.contribution = scale * term.angle->value;
    term.error = std::abs(scale) * term.angle->std_error;
    res.value += term.contribution;
    res.error_bound = std::sqrt(res.error_bound * res.error_bound + term.error * term.error);

    if (res.exact_scaled) {
        if (term.angle->exact_fraction) {
            SqrtRat piece = mv * SqrtRat(*term.angle->exact_fraction) * SqrtRat(Rat(1), term.c_squared);
            auto sum = res.exact_scaled->try_add(piece);
            if (sum)
                res.exact_scaled = *sum;
            else
                res.exact_scaled.reset();
        } else {
            res.exact_scaled.reset();
        }
    }
    res.terms.push_back(std::move(term));
}

std::vector<Polytope> checked(const std::vector<Polytope>& ps) {
    if (ps.empty()) throw std::invalid_argument("empty polytope list");
    const int m = ps[0].ambient_dim();
    if (m % 2 != 0) throw std::invalid_argument("ambient dimension must be even");
    for (const Polytope& p : ps)
        if (p.ambient_dim() != m) throw std::invalid_argument("ambient dimension mismatch");
    if (static_cast<int>(ps.size()) != m / 2)
        throw std::invalid_argument("need exactly n polytopes in C^n*");
    return ps;
}

}  // namespace

Rat c_coefficient_sq(const Subspace& T) {
    const int m = T.ambient_dim();
    if (m % 2 != 0) throw std::invalid_argument("ambient dimension must be even");
    if (T.dim() != m / 2) throw std::invalid_argument("tangent space must have complex midpoint dimension");
    return subspace_cosine_sq(T.orthogonal_complement(), complex_rotate(T));
}

double c_coefficient(const Subspace& T) { return std::sqrt(rat_to_double(c_coefficient_sq(T))); }

PseudoVolumeResult pseudovolume(const Polytope& P, const AngleConfig& cfg) {
    const int m = P.ambient_dim();
    if (m % 2 != 0) throw std::invalid_argument("ambient dimension must be even");
    PseudoVolumeResult res;
    res.n = m / 2;
    res.exact_scaled = SqrtRat(Rat(0));
    if (P.dim() < res.n) return res;  // no n-faces
    for (const Face& face : P.faces(res.n))
        accumulate_face(res, face, face.as_polytope().volume(), cfg);
    return res;
}

PseudoVolumeResult mixed_pseudovolume(const std::vector<Polytope>& ps, const AngleConfig& cfg) {
    auto args = checked(ps);
    PseudoVolumeResult res;
    res.n = args[0].ambient_dim() / 2;
    res.exact_scaled = SqrtRat(Rat(0));
    Polytope sum = minkowski_sum(args);
    if (sum.dim() < res.n) return res;
    for (const Face& face : sum.faces(res.n)) {
        std::vector<Face> parts = face_summands_of_sum(args, sum, face);
        std::vector<Polytope> part_polys;
        part_polys.reserve(parts.size());
        for (const Face& f : parts) part_polys.push_back(f.as_polytope());
        accumulate_face(res, face, mixed_volume(part_polys), cfg);
    }
    return res;
}

PseudoVolumeResult mixed_pseudovolume_polarized(const std::vector<Polytope>& ps,
                                                const AngleConfig& cfg) {
    auto args = checked(ps);
    const int n = static_cast<int>(args.size());
    PseudoVolumeResult res;
    res.n = n;
    res.exact_scaled = SqrtRat(Rat(0));
    Rat nfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;
    double err_den = rat_to_double(nfact);
    double err_sq = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Polytope> subset;
        int bits = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                subset.push_back(args[i]);
                ++bits;
            }
        PseudoVolumeResult part = pseudovolume(minkowski_sum(subset), cfg);
        Rat sign = ((n - bits) % 2 == 0) ? Rat(1) : Rat(-1);
        double coeff = rat_to_double(sign / nfact);
        res.value += coeff * part.value;
        err_sq += (part.error_bound / err_den) * (part.error_bound / err_den);
        for (PseudoTerm& t : part.terms) {
            t.face_id = "S" + std::to_string(mask) + ":" + t.face_id;
            t.contribution *= coeff;
            t.error = std::abs(coeff) * t.error;
            res.terms.push_back(std::move(t));
        }
        if (res.exact_scaled) {
            if (part.exact_scaled) {
                auto s = res.exact_scaled->try_add(*part.exact_scaled * (sign / nfact));
                if (s)
                    res.exact_scaled = *s;
                else
                    res.exact_scaled.reset();
            } else {
                res.exact_scaled.reset();
            }
        }
    }
    res.error_bound = std::sqrt(err_sq);
    return res;
}

bool pseudovolume_vanishes(const std::vector<Polytope>& ps) { return complex_rank(checked(ps)) < 0; }

}  // namespace expcond
