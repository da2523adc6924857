#include "expcond/solid_angle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace expcond {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double planar_arc_fraction(const RatVec& a, const RatVec& b, std::optional<Rat>& fraction) {
    Rat d = dot(a, b);
    if (d == 0) {
        fraction = Rat(1, 4);
        return 0.25;
    }
    Rat cos_sq = (d * d) / (dot(a, a) * dot(b, b));
    double c = std::sqrt(rat_to_double(cos_sq));
    if (d < 0) c = -c;
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c) / (2.0 * kPi);
}

}  // namespace

AngleEstimate exterior_angle(const Cone& K, const AngleConfig& cfg) {
    if (K.dim() == 0) throw std::invalid_argument("exterior angle of the zero cone");
    AngleEstimate est;
    const int salient = K.salient_dim();

    if (salient == 0) {  // the cone is a subspace
        est.value = 1.0;
        est.exact_fraction = Rat(1);
        return est;
    }
    if (salient == 1) {  // half of S^0 in the quotient by the lineality
        est.value = 0.5;
        est.exact_fraction = Rat(1, 2);
        return est;
    }
    if (salient == 2) {
        const RatMat& rays = K.salient_rays();
        if (rays.size() != 2) throw std::logic_error("salient planar cone without two extreme rays");
        est.value = planar_arc_fraction(rays[0], rays[1], est.exact_fraction);
        return est;
    }

    // Monte Carlo over the unit sphere of the salient span. Directions are
    // isotropic Gaussians projected onto the span; membership uses the facet
    // inequalities of the salient part, with an exact recheck near ties.
    Cone salient_cone = Cone::from_generators(K.ambient_dim(), K.salient_rays());
    const Subspace& W = salient_cone.span();
    const RatMat& Bw = W.basis();
    const int m = K.ambient_dim();
    const int w = W.dim();

    RatMat G = gram(Bw, Bw);
    // rows of the exact orthogonal projector onto W
    RatMat proj(m, RatVec(m, Rat(0)));
    for (int j = 0; j < m; ++j) {
        RatVec col(w);
        for (int i = 0; i < w; ++i) col[i] = Bw[i][j];
        auto lam = solve_linear(G, col);
        for (int a = 0; a < m; ++a) {
            Rat s = 0;
            for (int i = 0; i < w; ++i) s += (*lam)[i] * Bw[i][a];
            proj[a][j] = s;
        }
    }
    std::vector<std::vector<double>> proj_d(m, std::vector<double>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) proj_d[i][j] = rat_to_double(proj[i][j]);

    const RatMat& normals = salient_cone.facet_normals();
    std::vector<std::vector<double>> normals_d;
    for (const RatVec& a : normals) {
        std::vector<double> v(m);
        double len = 0;
        for (int i = 0; i < m; ++i) {
            v[i] = rat_to_double(a[i]);
            len += v[i] * v[i];
        }
        len = std::sqrt(len);
        for (double& x : v) x /= len;
        normals_d.push_back(std::move(v));
    }

    std::mt19937_64 rng(fnv1a64(K.key()) ^ (cfg.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    const std::int64_t N = cfg.samples;
    std::int64_t hits = 0;
    std::vector<double> g(m), p(m);
    for (std::int64_t it = 0; it < N; ++it) {
        for (int i = 0; i < m; i += 2) {
            double u1 = uniform(), u2 = uniform();
            double r = std::sqrt(-2.0 * std::log(u1));
            g[i] = r * std::cos(2.0 * kPi * u2);
            if (i + 1 < m) g[i + 1] = r * std::sin(2.0 * kPi * u2);
        }
        double norm = 0;
        for (int i = 0; i < m; ++i) {
            p[i] = 0;
            for (int j = 0; j < m; ++j) p[i] += proj_d[i][j] * g[j];
            norm += p[i] * p[i];
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) { --it; continue; }

        bool inside = true, ambiguous = false;
        for (const auto& a : normals_d) {
            double s = 0;
            for (int i = 0; i < m; ++i) s += a[i] * p[i];
            if (s < -1e-9 * norm) { inside = false; break; }
            if (s < 1e-9 * norm) ambiguous = true;
        }
        if (inside && ambiguous) {
            // resolve the near-tie exactly on the dyadic sample
            RatVec ge(m);
            for (int i = 0; i < m; ++i) ge[i] = Rat(g[i]);
            RatVec pe(m, Rat(0));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) pe[i] += proj[i][j] * ge[j];
            for (const RatVec& a : normals)
                if (dot(a, pe) < 0) { inside = false; break; }
        }
        if (inside) ++hits;
    }
    double phat = static_cast<double>(hits) / static_cast<double>(N);
    est.value = phat;
    est.method = AngleEstimate::Method::monte_carlo;
    est.samples = N;
    est.std_error = std::sqrt(phat * (1.0 - phat) / static_cast<double>(N));
    return est;
}

}  // namespace expcond
