#include "expcond/fan.hpp"

#include "expcond/solid_angle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace expcond {

void WeightedFan::add_cone(WeightedCone wc) {
    if (wc.cone.ambient_dim() != ambient_) throw std::invalid_argument("cone ambient mismatch");
    if (wc.cone.dim() > dim_) throw std::invalid_argument("cone exceeds fan dimension");
    cones_.push_back(std::move(wc));
}

WeightedFan dual_skeleton_fan(const Polytope& P, int k) {
    const int m = P.ambient_dim();
    if (k < 0 || k > m) throw std::invalid_argument("skeleton dimension out of range");
    WeightedFan fan(m, k);
    const int face_dim = m - k;
    if (face_dim > P.dim()) return fan;  // no faces of that dimension
    for (const Face& f : P.faces(face_dim)) {
        Polytope fp = f.as_polytope().translation_normalized();
        WeightedCone wc{f.dual_cone, fp.volume(), {}};
        // weight class is the (m-k)-th power of the face
        wc.lift.push_back(LiftTerm{Rat(1), std::vector<Polytope>(face_dim, fp)});
        fan.add_cone(std::move(wc));
    }
    return fan;
}

WeightedFan dual_fan(const Polytope& P) { return dual_skeleton_fan(P, P.ambient_dim()); }

WeightedFan fan_scale(const WeightedFan& F, const Rat& s) {
    WeightedFan out(F.ambient_dim(), F.dim());
    if (s == 0) return out;
    for (const WeightedCone& wc : F.cones()) {
        WeightedCone c{wc.cone, wc.weight * s, wc.lift};
        for (LiftTerm& t : c.lift) t.coeff *= s;
        out.add_cone(std::move(c));
    }
    return out;
}

namespace {

struct SpanGroup {
    Subspace span{0, {}};
    std::vector<const WeightedCone*> members;
};

std::map<std::string, SpanGroup> group_by_span(const std::vector<const WeightedFan*>& fans, int k) {
    std::map<std::string, SpanGroup> groups;
    for (const WeightedFan* f : fans) {
        for (const WeightedCone& wc : f->cones()) {
            if (wc.cone.dim() != k) continue;  // thin cones carry no weight
            auto [it, fresh] = groups.try_emplace(wc.cone.span().key());
            if (fresh) it->second.span = wc.cone.span();
            it->second.members.push_back(&wc);
        }
    }
    return groups;
}

// Splits every member cone of the group by all facet hyperplanes occurring in
// the group; returns the resulting cells with summed weights and merged lifts.
std::vector<WeightedCone> refine_group(const SpanGroup& g, int k) {
    RatMat hyperplanes;
    for (const WeightedCone* wc : g.members)
        for (const RatVec& a : wc->cone.facet_normals()) hyperplanes.push_back(a);
    std::sort(hyperplanes.begin(), hyperplanes.end(), lex_less);
    hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()), hyperplanes.end());

    std::map<std::string, Cone> cells;
    for (const WeightedCone* wc : g.members) {
        std::vector<Cone> pieces{wc->cone};
        for (const RatVec& h : hyperplanes) {
            std::vector<Cone> next;
            for (const Cone& p : pieces) {
                auto [lo, hi] = p.split(h);
                if (lo.dim() == k) next.push_back(lo);
                if (hi.dim() == k && !(hi == lo)) next.push_back(hi);
            }
            pieces = std::move(next);
        }
        for (Cone& p : pieces) cells.try_emplace(p.key(), std::move(p));
    }

    std::vector<WeightedCone> out;
    for (auto& [key, cell] : cells) {
        WeightedCone wc{cell, SqrtRat(Rat(0)), {}};
        RatVec probe = cell.relint_point();
        for (const WeightedCone* src : g.members) {
            if (!src->cone.contains(probe)) continue;
            wc.weight = wc.weight + src->weight;
            wc.lift.insert(wc.lift.end(), src->lift.begin(), src->lift.end());
        }
        out.push_back(std::move(wc));
    }
    return out;
}

std::vector<WeightedCone> joint_cells(const WeightedFan& A, const WeightedFan& B, bool from_A) {
    // Refine the chosen fan's cones by the hyperplanes of both fans.
    std::map<std::string, SpanGroup> groups = group_by_span({&A, &B}, A.dim());
    std::vector<WeightedCone> out;
    const WeightedFan& chosen = from_A ? A : B;
    for (auto& [key, g] : groups) {
        SpanGroup mine;
        mine.span = g.span;
        for (const WeightedCone* wc : g.members) {
            bool owned = false;
            for (const WeightedCone& c : chosen.cones())
                if (&c == wc) { owned = true; break; }
            if (owned) mine.members.push_back(wc);
        }
        if (mine.members.empty()) continue;
        // split by all hyperplanes in the full group
        RatMat hyperplanes;
        for (const WeightedCone* wc : g.members)
            for (const RatVec& a : wc->cone.facet_normals()) hyperplanes.push_back(a);
        std::sort(hyperplanes.begin(), hyperplanes.end(), lex_less);
        hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()), hyperplanes.end());

        std::map<std::string, Cone> cells;
        for (const WeightedCone* wc : mine.members) {
            std::vector<Cone> pieces{wc->cone};
            for (const RatVec& h : hyperplanes) {
                std::vector<Cone> next;
                for (const Cone& p : pieces) {
                    auto [lo, hi] = p.split(h);
                    if (lo.dim() == A.dim()) next.push_back(lo);
                    if (hi.dim() == A.dim() && !(hi == lo)) next.push_back(hi);
                }
                pieces = std::move(next);
            }
            for (Cone& p : pieces) cells.try_emplace(p.key(), std::move(p));
        }
        for (auto& [ck, cell] : cells) {
            WeightedCone wc{cell, SqrtRat(Rat(0)), {}};
            RatVec probe = cell.relint_point();
            for (const WeightedCone* src : mine.members) {
                if (!src->cone.contains(probe)) continue;
                wc.weight = wc.weight + src->weight;
                wc.lift.insert(wc.lift.end(), src->lift.begin(), src->lift.end());
            }
            out.push_back(std::move(wc));
        }
    }
    return out;
}

}  // namespace

namespace {

WeightedFan refine_impl(const WeightedFan& F, bool prune) {
    WeightedFan out(F.ambient_dim(), F.dim());
    auto groups = group_by_span({&F}, F.dim());
    std::vector<WeightedCone> cells;
    for (auto& [key, g] : groups) {
        auto refined = refine_group(g, F.dim());
        cells.insert(cells.end(), refined.begin(), refined.end());
    }
    std::sort(cells.begin(), cells.end(),
              [](const WeightedCone& a, const WeightedCone& b) { return a.cone.key() < b.cone.key(); });
    for (WeightedCone& c : cells)
        if (!prune || !c.weight.is_zero()) out.add_cone(std::move(c));
    return out;
}

}  // namespace

WeightedFan refine_merge(const WeightedFan& F) { return refine_impl(F, false); }

WeightedFan canonicalize(const WeightedFan& F) { return refine_impl(F, true); }

WeightedFan fan_add(const WeightedFan& K, const WeightedFan& L) {
    if (K.ambient_dim() != L.ambient_dim()) throw std::invalid_argument("fan ambient mismatch");
    if (K.dim() != L.dim()) throw std::invalid_argument("fan dimension mismatch");
    WeightedFan combined(K.ambient_dim(), K.dim());
    for (const WeightedCone& c : K.cones()) combined.add_cone(c);
    for (const WeightedCone& c : L.cones()) combined.add_cone(c);
    return canonicalize(combined);
}

bool fan_equivalent(const WeightedFan& K, const WeightedFan& L) {
    if (K.ambient_dim() != L.ambient_dim() || K.dim() != L.dim()) return false;
    auto cells_K = joint_cells(K, L, true);
    auto cells_L = joint_cells(K, L, false);
    std::map<std::string, SqrtRat> wk, wl;
    for (const WeightedCone& c : cells_K)
        if (!c.weight.is_zero()) wk.emplace(c.cone.key(), c.weight);
    for (const WeightedCone& c : cells_L)
        if (!c.weight.is_zero()) wl.emplace(c.cone.key(), c.weight);
    if (wk.size() != wl.size()) return false;
    for (const auto& [key, w] : wk) {
        auto it = wl.find(key);
        if (it == wl.end() || !(it->second == w)) return false;
    }
    return true;
}

bool supports_equal(const WeightedFan& K, const WeightedFan& L) {
    if (K.ambient_dim() != L.ambient_dim() || K.dim() != L.dim()) return false;
    auto cells_K = joint_cells(K, L, true);
    auto cells_L = joint_cells(K, L, false);
    std::set<std::string> sk, sl;
    for (const WeightedCone& c : cells_K) sk.insert(c.cone.key());
    for (const WeightedCone& c : cells_L) sl.insert(c.cone.key());
    return sk == sl;
}

namespace {

// All distinct proper subspaces spanned by subsets of the generator pool.
std::vector<Subspace> proper_generated_subspaces(const RatMat& pool, int m) {
    std::map<std::string, Subspace> spans;
    std::vector<Subspace> frontier;
    for (const RatVec& v : pool) {
        Subspace s = Subspace::span_of(m, {v});
        if (s.dim() > 0 && s.dim() < m && spans.try_emplace(s.key(), s).second) frontier.push_back(s);
    }
    while (!frontier.empty()) {
        std::vector<Subspace> next;
        for (const Subspace& s : frontier) {
            for (const RatVec& v : pool) {
                if (s.contains(v)) continue;
                RatMat b = s.basis();
                b.push_back(v);
                Subspace bigger = Subspace::span_of(m, b);
                if (bigger.dim() < m && spans.try_emplace(bigger.key(), bigger).second)
                    next.push_back(bigger);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Subspace> out;
    out.reserve(spans.size());
    for (auto& [k, s] : spans) out.push_back(std::move(s));
    return out;
}

RatMat generator_pool(const WeightedFan& K, const WeightedFan& L) {
    RatMat pool;
    for (const WeightedFan* f : {&K, &L})
        for (const WeightedCone& wc : f->cones())
            for (const RatVec& g : wc.cone.generators()) pool.push_back(primitive(g, true));
    std::sort(pool.begin(), pool.end(), lex_less);
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
}

}  // namespace

bool is_admissible(const WeightedFan& K, const WeightedFan& L, const RatVec& e) {
    const int m = K.ambient_dim();
    if (is_zero_vec(e)) return false;
    for (const Subspace& s : proper_generated_subspaces(generator_pool(K, L), m))
        if (s.contains(e)) return false;
    return true;
}

RatVec admissible_point(const WeightedFan& K, const WeightedFan& L, std::uint64_t seed) {
    const int m = K.ambient_dim();
    auto subspaces = proper_generated_subspaces(generator_pool(K, L), m);
    std::mt19937_64 rng(seed ^ 0xabcdef1234567890ull);
    long range = 3;
    for (int attempt = 0; attempt < 256; ++attempt) {
        RatVec e(m);
        bool nonzero = false;
        for (int i = 0; i < m; ++i) {
            long c = static_cast<long>(rng() % (2 * range + 1)) - range;
            e[i] = Rat(c);
            nonzero |= c != 0;
        }
        if (!nonzero) continue;
        bool ok = true;
        for (const Subspace& s : subspaces)
            if (s.contains(e)) { ok = false; break; }
        if (ok) return e;
        if (attempt % 8 == 7) range *= 3;
    }
    throw std::runtime_error("no admissible point found");
}

WeightedFan factorize(const WeightedFan& F, const Subspace& U) {
    const int m = F.ambient_dim();
    if (U.ambient_dim() != m) throw std::invalid_argument("subspace ambient mismatch");

    // anchor: minimal face whose span contains U
    bool found = false;
    Cone anchor = Cone::zero(m);
    for (const WeightedCone& wc : F.cones()) {
        if (!wc.cone.span().contains(U)) continue;
        for (const Cone& face : wc.cone.faces()) {
            if (!face.span().contains(U)) continue;
            if (!found || face.dim() < anchor.dim() ||
                (face.dim() == anchor.dim() && face.key() < anchor.key())) {
                anchor = face;
                found = true;
            }
        }
    }
    if (!found) throw std::invalid_argument("U is not contained in any cone span");

    // quotient coordinates: reduced basis of the orthogonal complement of U
    Subspace comp = U.orthogonal_complement();
    const RatMat& Bc = comp.basis();
    RatMat G = gram(Bc, Bc);
    // proj = G^{-1} * Bc: rows give the quotient coordinates of a point
    RatMat proj(Bc.size(), RatVec(m, Rat(0)));
    for (int j = 0; j < m; ++j) {
        RatVec col(Bc.size());
        for (size_t i = 0; i < Bc.size(); ++i) col[i] = Bc[i][j];
        auto x = solve_linear(G, col);
        for (size_t i = 0; i < Bc.size(); ++i) proj[i][j] = (*x)[i];
    }

    WeightedFan out(static_cast<int>(Bc.size()), F.dim() - U.dim());
    for (const WeightedCone& wc : F.cones()) {
        if (!wc.cone.contains(anchor)) continue;
        WeightedCone img{wc.cone.image(proj), wc.weight, {}};
        for (const LiftTerm& t : wc.lift) {
            LiftTerm mapped_term{t.coeff, {}};
            for (const Polytope& face : t.monomial) {
                RatMat mapped;
                for (const RatVec& v : face.vertices()) {
                    RatVec q(Bc.size());
                    for (size_t i = 0; i < Bc.size(); ++i) q[i] = dot(proj[i], v);
                    mapped.push_back(std::move(q));
                }
                mapped_term.monomial.push_back(
                    Polytope::hull(static_cast<int>(Bc.size()), mapped).translation_normalized());
            }
            img.lift.push_back(std::move(mapped_term));
        }
        out.add_cone(std::move(img));
    }
    return out;
}

WeightedFan e_intersection(const WeightedFan& K, const WeightedFan& L, const RatVec& e) {
    const int m = K.ambient_dim();
    if (L.ambient_dim() != m) throw std::invalid_argument("fan ambient mismatch");
    if (!is_admissible(K, L, e)) throw std::invalid_argument("point is not admissible for the fan pair");
    const int p = K.dim(), q = L.dim();
    WeightedFan out(m, std::max(p + q - m, 0));
    if (p + q < m) return out;

    for (const WeightedCone& wk : K.cones()) {
        if (wk.cone.dim() != p) continue;
        for (const WeightedCone& wl : L.cones()) {
            if (wl.cone.dim() != q) continue;
            Subspace joint = wk.cone.span().sum(wl.cone.span());
            if (joint.dim() < m) continue;  // admissibility keeps e off these pairs
            Subspace U = wk.cone.span().intersect(wl.cone.span());

            // qualification: e in L - K + U
            RatMat rays = wl.cone.salient_rays();
            for (const RatVec& r : wk.cone.salient_rays()) rays.push_back(vec_scale(Rat(-1), r));
            RatMat lines = U.basis();
            for (const RatVec& l : wk.cone.lineality().basis()) lines.push_back(l);
            for (const RatVec& l : wl.cone.lineality().basis()) lines.push_back(l);
            if (!Cone::from_generators(m, rays, lines).contains(e)) continue;

            Cone M = wk.cone.intersect(wl.cone);
            WeightedCone cell{M, SqrtRat(Rat(0)), {}};
            if (M.dim() == p + q - m) {
                for (const LiftTerm& a : wk.lift) {
                    for (const LiftTerm& b : wl.lift) {
                        LiftTerm prod{a.coeff * b.coeff, a.monomial};
                        prod.monomial.insert(prod.monomial.end(), b.monomial.begin(),
                                             b.monomial.end());
                        SqrtRat mv = prod.monomial.empty() ? SqrtRat(Rat(1))
                                                           : mixed_volume(prod.monomial);
                        cell.weight = cell.weight + mv * prod.coeff;
                        cell.lift.push_back(std::move(prod));
                    }
                }
            }
            out.add_cone(std::move(cell));
        }
    }
    return out;
}

WeightedFan stable_product(const WeightedFan& K, const WeightedFan& L, std::uint64_t seed) {
    WeightedFan first(K.ambient_dim(), std::max(K.dim() + L.dim() - K.ambient_dim(), 0));
    bool have_first = false;
    for (int i = 0; i < 3; ++i) {
        RatVec e = admissible_point(K, L, seed + static_cast<std::uint64_t>(i) * 7919u);
        WeightedFan F = e_intersection(K, L, e);
        if (!have_first) {
            first = F;
            have_first = true;
        } else if (!fan_equivalent(first, F)) {
            throw std::runtime_error(
                "e-intersection depends on the admissible point: input fans are not tropical");
        }
    }
    return canonicalize(first);
}

}  // namespace expcond
