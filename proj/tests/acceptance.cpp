// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "expcond/expsum.hpp"
#include "expcond/json_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

using namespace expcond;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::mt19937_64 rng;

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

Rat small_rat(long spread = 4, long max_den = 4) {
    long num = static_cast<long>(rng() % (2 * spread + 1)) - spread;
    long den = 1 + static_cast<long>(rng() % max_den);
    return Rat(num, den);
}

Polytope random_polygon(int min_pts = 3, int max_pts = 6) {
    while (true) {
        int k = min_pts + static_cast<int>(rng() % (max_pts - min_pts + 1));
        RatMat pts;
        for (int i = 0; i < k; ++i) pts.push_back({small_rat(), small_rat()});
        Polytope p = Polytope::hull(2, pts);
        if (p.dim() == 2) return p;
    }
}

Polytope random_real_polytope(int n, int pts) {
    while (true) {
        RatMat m;
        for (int i = 0; i < pts; ++i) {
            RatVec v(2 * n, Rat(0));
            for (int j = 0; j < n; ++j) v[2 * j] = small_rat(4, 2);
            m.push_back(std::move(v));
        }
        Polytope p = Polytope::hull(2 * n, m);
        if (p.dim() == n) return p;
    }
}

Polytope random_low_polytope(int ambient, int max_pts) {
    int k = 2 + static_cast<int>(rng() % (max_pts - 1));
    RatMat pts;
    for (int i = 0; i < k; ++i) {
        RatVec v(ambient);
        for (int j = 0; j < ambient; ++j) v[j] = small_rat(3, 2);
        pts.push_back(std::move(v));
    }
    return Polytope::hull(ambient, pts);
}

struct Harness {
    int failures = 0;

    template <typename F>
    void run(int idx, const char* label, F&& body) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = body(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        std::printf("%s  criterion %d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", idx, label, ms,
                    note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

double semiperimeter(const Polytope& polygon) {
    if (polygon.dim() == 1) return polygon.volume().value();  // degenerate: counted twice
    double total = 0;
    for (const Face& e : polygon.faces(1)) {
        RatMat vc = e.vertex_coords();
        total += Polytope::segment(vc[0], vc[1]).volume().value();
    }
    return total / 2;
}

}  // namespace

int main() {
    Harness h;

    // 1. one-variable polygon rule: pseudovolume = semiperimeter / (2 pi)
    h.run(1, "C^1 polygon rule", [&](std::string& note) {
        rng.seed(101);
        for (int it = 0; it < 20; ++it) {
            Polytope p = random_polygon(3, 7);
            PseudoVolumeResult r = pseudovolume(p);
            if (r.error_bound != 0) { note = "sampling used in dimension <= 2"; return false; }
            double want = semiperimeter(p) / (2 * kPi);
            if (std::abs(r.value - want) > 1e-9) { note = "mismatch beyond 1e-9"; return false; }
        }
        return true;
    });

    // 2. real polytopes: (2 pi)^n * pseudovolume equals the volume
    h.run(2, "real specialization", [&](std::string& note) {
        rng.seed(202);
        for (int n : {2, 3}) {
            for (int it = 0; it < 10; ++it) {
                Polytope p = random_real_polytope(n, n + 3);
                PseudoVolumeResult r = pseudovolume(p);
                double vol = p.volume().value();
                if (std::abs(r.value * std::pow(2 * kPi, n) - vol) > 3 * r.error_bound + 1e-9) {
                    note = "float mismatch";
                    return false;
                }
                if (!r.exact_scaled || !(*r.exact_scaled == p.volume())) {
                    note = "exact value not reproduced";
                    return false;
                }
            }
        }
        return true;
    });

    // 3. definition vs polarization on segment/triangle pairs in C^2*
    h.run(3, "polarization identity", [&](std::string& note) {
        rng.seed(303);
        for (int it = 0; it < 10; ++it) {
            std::vector<Polytope> pair;
            for (int i = 0; i < 2; ++i) pair.push_back(random_low_polytope(4, 3));
            PseudoVolumeResult direct = mixed_pseudovolume(pair);
            PseudoVolumeResult polar = mixed_pseudovolume_polarized(pair);
            double tol = 3 * (direct.error_bound + polar.error_bound) + 1e-9;
            if (std::abs(direct.value - polar.value) > tol) {
                note = "routes disagree";
                return false;
            }
        }
        return true;
    });

    // 4. vanishing criteria for mixed volume and mixed pseudovolume
    h.run(4, "vanishing criteria", [&](std::string& note) {
        rng.seed(404);
        for (int it = 0; it < 50; ++it) {
            int m = 2 + static_cast<int>(rng() % 2);
            std::vector<Polytope> fam;
            for (int i = 0; i < m; ++i) fam.push_back(random_low_polytope(m, 3));
            if (it % 3 == 0 && m == 2) {  // force degenerate families regularly
                RatVec d{small_rat(), small_rat()};
                if (!is_zero_vec(d)) {
                    fam[0] = Polytope::segment(rv({0, 0}), d);
                    fam[1] = Polytope::segment(rv({0, 0}), vec_scale(Rat(2), d));
                }
            }
            bool mv_zero = mixed_volume(fam).is_zero();
            if (mv_zero != (polytope_rank(fam) < 0)) { note = "volume criterion broke"; return false; }
        }
        for (int it = 0; it < 50; ++it) {
            std::vector<Polytope> fam;
            bool degenerate = it % 2 == 0;
            for (int i = 0; i < 2; ++i) {
                RatVec a(4, Rat(0)), b(4, Rat(0));
                for (int j = 0; j < 4; ++j) b[j] = small_rat(3, 2);
                if (degenerate) { b[2] = 0; b[3] = 0; }  // keep inside the first axis
                if (is_zero_vec(b)) b[0] = 1;
                fam.push_back(Polytope::segment(a, b));
            }
            PseudoVolumeResult r = mixed_pseudovolume(fam);
            bool pseudo_zero = std::abs(r.value) <= 3 * r.error_bound;
            if (pseudo_zero != (complex_rank(fam) < 0)) {
                note = "pseudovolume criterion broke";
                return false;
            }
        }
        Polytope s1 = Polytope::segment(rv({0, 0, 0, 0}), rv({1, 0, 0, 0}));
        Polytope si = Polytope::segment(rv({0, 0, 0, 0}), rv({0, 1, 0, 0}));
        PseudoVolumeResult r = mixed_pseudovolume({s1, si});
        if (r.value != 0.0 || r.error_bound != 0.0) { note = "degenerate pair not exact"; return false; }
        for (const PseudoTerm& t : r.terms)
            if (t.angle) { note = "sampling spent on a skipped face"; return false; }
        return true;
    });

    // 5. stable tropical product reproduces the mixed area
    h.run(5, "tropical product = mixed volume", [&](std::string& note) {
        rng.seed(505);
        for (int it = 0; it < 20; ++it) {
            Polytope a = random_polygon(), b = random_polygon();
            WeightedFan prod =
                stable_product(dual_skeleton_fan(a, 1), dual_skeleton_fan(b, 1), it);
            SqrtRat w(Rat(0));
            for (const WeightedCone& wc : prod.cones())
                if (wc.cone.dim() == 0) w = w + wc.weight;
            if (!(w == mixed_volume({a, b}))) { note = "weight differs from the mixed area"; return false; }
        }
        return true;
    });

    // 6. ideal membership certificates and the pseudo-form spot check
    h.run(6, "volume ideal criterion", [&](std::string& note) {
        rng.seed(606);
        Polytope g = random_polygon();
        RingElement translate_diff = RingElement::from_polytope(g) -
                                     RingElement::from_polytope(g.translate({small_rat(), small_rat()}));
        if (!in_Jvol(translate_diff)) { note = "translate difference rejected"; return false; }

        Polytope A = random_polygon(), B = random_polygon(), C = random_polygon();
        std::vector<Polytope> family{A, B, minkowski_sum({A, B}), C, minkowski_sum({A, C})};
        const int k = static_cast<int>(family.size());
        RatMat gram_mv(k, RatVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                gram_mv[i][j] = mixed_volume({family[i], family[j]}).rational();
        RatMat kernel = nullspace(gram_mv, k);
        if (kernel.size() < 2) { note = "kernel of the Gram system too small"; return false; }
        std::vector<RingElement> members;
        for (const RatVec& coeffs : kernel) {
            RingElement x(2);
            for (int i = 0; i < k; ++i)
                x = x + RingElement::power(coeffs[i], VirtualPolytope(family[i]), 1);
            if (!in_Jvol(x)) { note = "Gram kernel element rejected"; return false; }
            members.push_back(std::move(x));
        }
        for (const RingElement& x : members) {
            for (int it = 0; it < 10; ++it) {
                Rat c = small_rat();
                PairingValue v =
                    eval_L(VolumeForm::pseudo, x, RingElement::constant(2, c == 0 ? Rat(1) : c));
                if (std::abs(v.value) > 3 * v.error_bound + 1e-9) {
                    note = "pseudo pairing does not vanish";
                    return false;
                }
            }
        }
        return true;
    });

    // 7. intersection index against the zero-counting oracle
    h.run(7, "index vs zero counting", [&](std::string& note) {
        const char* systems[4] = {"exp((2*pi*i)*z) - 1", "exp(z) - 1", "exp(z) + exp(i*z) + 1",
                                  "exp(z) + exp((1+i)*z) - 2"};
        int improved = 0;
        for (const char* text : systems) {
            ExpSum f = parse_expsum(text);
            double predicted = intersection_index({f}).value;
            double err40 = 0, err80 = 0;
            for (double R : {40.0, 80.0}) {
                long zeros = count_zeros_disk(f, R);
                double density = static_cast<double>(zeros) / (2 * R);
                double rel = std::abs(density - predicted) / predicted;
                if (rel > 0.05) { note = std::string("off by >5% for ") + text; return false; }
                (R == 40.0 ? err40 : err80) = rel;
            }
            if (err80 <= err40) ++improved;
        }
        if (improved < 3) { note = "R = 80 did not improve often enough"; return false; }
        return true;
    });

    // 8. lattice density against the mixed pseudovolume and the oracle
    h.run(8, "lattice density cross-check", [&](std::string& note) {
        rng.seed(808);
        for (int n : {1, 2}) {
            int done = 0;
            while (done < 10) {
                RatMat lambdas;
                for (int i = 0; i < n; ++i) {
                    RatVec l(2 * n);
                    for (int j = 0; j < 2 * n; ++j) l[j] = small_rat(3, 2);
                    lambdas.push_back(std::move(l));
                }
                LatticeSpec spec;
                try {
                    spec = lattice_from_characters(lambdas);
                } catch (const std::domain_error&) {
                    continue;  // degenerate draw
                }
                LatticeDensity d = lattice_density(spec);
                std::vector<Polytope> segs;
                for (const RatVec& l : lambdas)
                    segs.push_back(Polytope::segment(RatVec(2 * n, Rat(0)), l));
                PseudoVolumeResult p = mixed_pseudovolume(segs);
                double nfact = n == 1 ? 1.0 : 2.0;
                if (std::abs(d.value - nfact * p.value) > 3 * nfact * p.error_bound + 1e-9) {
                    note = "density and pseudovolume disagree";
                    return false;
                }
                if (n == 1) {
                    // oracle: zeros of exp(<z, lambda>) - 1; the exponent
                    // functional is the conjugate of lambda
                    std::vector<ExpTerm> terms{
                        {ComplexRat{Rat(1), Rat(0)}, {lambdas[0][0], -lambdas[0][1]}},
                        {ComplexRat{Rat(-1), Rat(0)}, {Rat(0), Rat(0)}}};
                    ExpSum f(1, terms);
                    double R = 90.0;
                    long zeros = count_zeros_disk(f, R);
                    double density = static_cast<double>(zeros) / (2 * R);
                    if (std::abs(density - d.value) / d.value > 0.05) {
                        note = "oracle density off by >5%";
                        return false;
                    }
                }
                ++done;
            }
        }
        return true;
    });

    // 9. support-function expansion of the mixed volume
    h.run(9, "support-function expansion", [&](std::string& note) {
        rng.seed(909);
        auto check_family = [&](const Polytope& Y, const RingElement& U, int m) {
            // m! vol(Y * U) = sum_v h_Y(v) vol_{m-1}(pi_v(U)) over unit normals,
            // with the projected volumes in the coefficient normalization,
            // i.e. (m-1)! times the diagonal-normalized cell weights.
            Rat mfact = m == 2 ? Rat(2) : Rat(6);
            Rat proj_norm = m == 2 ? Rat(1) : Rat(2);
            Rat lhs = *eval_L(VolumeForm::vol, RingElement::from_polytope(Y), U).exact * mfact;
            Rat rhs = 0;
            WeightedFan fan = weighted_fan_of(U);
            for (const WeightedCone& wc : fan.cones()) {
                if (wc.weight.is_zero()) continue;
                // a line cell covers two unit normal directions, a ray one
                RatMat dirs = wc.cone.is_subspace()
                                  ? RatMat{wc.cone.lineality().basis()[0],
                                           vec_scale(Rat(-1), wc.cone.lineality().basis()[0])}
                                  : RatMat{wc.cone.salient_rays()[0]};
                for (const RatVec& g : dirs) {
                    SqrtRat term = wc.weight * Y.support(g) * SqrtRat(Rat(1), Rat(1) / dot(g, g));
                    rhs += proj_norm * term.rational();
                }
            }
            return lhs == rhs;
        };
        for (int it = 0; it < 10; ++it) {
            if (!check_family(random_polygon(), RingElement::from_polytope(random_polygon()), 2)) {
                note = "plane case failed";
                return false;
            }
        }
        for (int it = 0; it < 10; ++it) {
            Polytope Y = random_low_polytope(3, 4), G1 = random_low_polytope(3, 4),
                     G2 = random_low_polytope(3, 4);
            RingElement U = RingElement::from_polytope(G1) * RingElement::from_polytope(G2);
            if (U.is_zero()) continue;
            if (!check_family(Y, U, 3)) {
                note = "space case failed";
                return false;
            }
        }
        return true;
    });

    if (h.failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", h.failures);
    return 1;
}
