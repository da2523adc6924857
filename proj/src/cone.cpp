#include "expcond/cone.hpp"

#include <algorithm>
#include <sstream>

namespace expcond {

namespace {

void sort_dedupe(RatMat& vecs) {
    std::sort(vecs.begin(), vecs.end(), lex_less);
    vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
}

// Extreme rays of the salient cone { x in R^w : A x >= 0 }.
RatMat extreme_rays_salient(const RatMat& A, int w) {
    RatMat rays;
    if (w == 0 || A.empty()) return rays;
    auto feasible = [&](const RatVec& r) {
        for (const RatVec& a : A)
            if (dot(a, r) < 0) return false;
        return true;
    };
    if (w == 1) {
        RatVec plus{Rat(1)}, minus{Rat(-1)};
        if (feasible(plus)) rays.push_back(plus);
        if (feasible(minus)) rays.push_back(minus);
        return rays;
    }
    const int f = static_cast<int>(A.size());
    std::vector<int> idx(w - 1);
    std::vector<bool> sel(f, false);
    std::fill(sel.begin(), sel.begin() + std::min(f, w - 1), true);
    if (f < w - 1) return rays;
    // iterate over all (w-1)-subsets of constraints
    std::vector<int> comb(w - 1);
    for (int i = 0; i < w - 1; ++i) comb[i] = i;
    while (true) {
        RatMat sub;
        for (int i : comb) sub.push_back(A[i]);
        RatMat ker = nullspace(sub, w);
        if (ker.size() == 1) {
            RatVec r = primitive(ker[0]);
            if (feasible(r)) rays.push_back(r);
            else {
                RatVec nr = vec_scale(Rat(-1), r);
                if (feasible(nr)) rays.push_back(std::move(nr));
            }
        }
        int i = w - 2;
        while (i >= 0 && comb[i] == f - (w - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < w - 1; ++j) comb[j] = comb[j - 1] + 1;
    }
    sort_dedupe(rays);
    return rays;
}

}  // namespace

Cone::Cone(int ambient, Subspace span, Subspace lineality, RatMat rays, RatMat facet_normals)
    : ambient_(ambient),
      span_(std::move(span)),
      lineality_(std::move(lineality)),
      rays_(std::move(rays)),
      facet_normals_(std::move(facet_normals)) {
    std::ostringstream os;
    os << span_.key() << "|" << lineality_.key() << "|";
    for (const RatVec& r : rays_) {
        for (const Rat& x : r) os << format_rat(x) << ",";
        os << ";";
    }
    key_ = os.str();
}

Cone Cone::zero(int ambient_dim) {
    return Cone(ambient_dim, Subspace::zero(ambient_dim), Subspace::zero(ambient_dim), {}, {});
}

Cone Cone::from_generators(int ambient_dim, const RatMat& rays_in, const RatMat& lines_in) {
    RatMat gens, lines;
    for (const RatVec& r : rays_in)
        if (!is_zero_vec(r)) gens.push_back(primitive(r));
    for (const RatVec& l : lines_in)
        if (!is_zero_vec(l)) lines.push_back(l);
    sort_dedupe(gens);

    RatMat all = gens;
    all.insert(all.end(), lines.begin(), lines.end());
    Subspace span = Subspace::span_of(ambient_dim, all);
    const int d = span.dim();
    if (d == 0) return zero(ambient_dim);
    const RatMat& B = span.basis();

    RatMat gens_loc, lines_loc;
    for (const RatVec& g : gens) gens_loc.push_back(coords_in_basis(B, g));
    for (const RatVec& l : lines) lines_loc.push_back(coords_in_basis(B, l));

    // facet hyperplanes of the (full-dimensional in span) cone
    RatMat facets_loc;
    if (d == 1) {
        bool pos = false, neg = false;
        for (const RatVec& g : gens_loc) (g[0] > 0 ? pos : neg) = true;
        if (lines_loc.empty() && !(pos && neg))
            facets_loc.push_back(RatVec{Rat(pos ? 1 : -1)});
    } else {
        RatMat pool = gens_loc;
        pool.insert(pool.end(), lines_loc.begin(), lines_loc.end());
        const int p = static_cast<int>(pool.size());
        std::vector<int> comb(d - 1);
        for (int i = 0; i < d - 1; ++i) comb[i] = i;
        while (p >= d - 1) {
            RatMat sub;
            for (int i : comb) sub.push_back(pool[i]);
            RatMat ker = nullspace(sub, d);
            if (ker.size() == 1) {
                RatVec a = primitive(ker[0]);
                bool ok = true, pos = false, neg = false;
                for (const RatVec& l : lines_loc)
                    if (dot(a, l) != 0) { ok = false; break; }
                if (ok) {
                    for (const RatVec& g : gens_loc) {
                        int s = sign_of(dot(a, g));
                        if (s > 0) pos = true;
                        if (s < 0) neg = true;
                    }
                    if (!(pos && neg)) facets_loc.push_back(neg ? vec_scale(Rat(-1), a) : a);
                }
            }
            int i = d - 2;
            while (i >= 0 && comb[i] == p - (d - 1) + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < d - 1; ++j) comb[j] = comb[j - 1] + 1;
        }
        for (RatVec& a : facets_loc) a = primitive(a);
        sort_dedupe(facets_loc);
    }

    RatMat facets_amb;
    for (const RatVec& a : facets_loc) facets_amb.push_back(primitive(lift_functional(B, a)));
    sort_dedupe(facets_amb);

    // lineality = common kernel of the facet constraints inside the span
    RatMat lin_basis_amb;
    if (facets_loc.empty()) {
        lin_basis_amb = B;
    } else {
        for (const RatVec& v : nullspace(facets_loc, d)) {
            RatVec amb(ambient_dim, Rat(0));
            for (int i = 0; i < d; ++i) amb = vec_add(amb, vec_scale(v[i], B[i]));
            lin_basis_amb.push_back(std::move(amb));
        }
    }
    Subspace lin = Subspace::span_of(ambient_dim, lin_basis_amb);

    RatMat salient;
    if (lin.dim() < d) {
        Subspace W = span.intersect(lin.orthogonal_complement());
        const RatMat& Bw = W.basis();
        const int w = W.dim();
        RatMat Aw;
        for (const RatVec& a : facets_amb) {
            RatVec row(w);
            bool nz = false;
            for (int i = 0; i < w; ++i) {
                row[i] = dot(a, Bw[i]);
                nz |= row[i] != 0;
            }
            if (nz) Aw.push_back(std::move(row));
        }
        for (const RatVec& r : extreme_rays_salient(Aw, w)) {
            RatVec amb(ambient_dim, Rat(0));
            for (int i = 0; i < w; ++i) amb = vec_add(amb, vec_scale(r[i], Bw[i]));
            salient.push_back(primitive(amb));
        }
        sort_dedupe(salient);
    }

    return Cone(ambient_dim, std::move(span), std::move(lin), std::move(salient), std::move(facets_amb));
}

Cone Cone::from_constraints(int ambient_dim, const Subspace& span, const RatMat& normals) {
    const int d = span.dim();
    if (d == 0) return zero(ambient_dim);
    const RatMat& B = span.basis();
    RatMat A_loc;
    for (const RatVec& a : normals) {
        RatVec row(d);
        bool nz = false;
        for (int i = 0; i < d; ++i) {
            row[i] = dot(a, B[i]);
            nz |= row[i] != 0;
        }
        if (nz) A_loc.push_back(std::move(row));
    }
    RatMat lines_amb;
    RatMat lin_loc = A_loc.empty() ? RatMat{} : nullspace(A_loc, d);
    if (A_loc.empty()) {
        lines_amb = B;
    } else {
        for (const RatVec& v : lin_loc) {
            RatVec amb(ambient_dim, Rat(0));
            for (int i = 0; i < d; ++i) amb = vec_add(amb, vec_scale(v[i], B[i]));
            lines_amb.push_back(std::move(amb));
        }
    }
    Subspace lin = Subspace::span_of(ambient_dim, lines_amb);
    RatMat rays_amb;
    if (lin.dim() < d && !A_loc.empty()) {
        Subspace W = span.intersect(lin.orthogonal_complement());
        const RatMat& Bw = W.basis();
        const int w = W.dim();
        RatMat Aw;
        for (const RatVec& a : normals) {
            RatVec row(w);
            bool nz = false;
            for (int i = 0; i < w; ++i) {
                row[i] = dot(a, Bw[i]);
                nz |= row[i] != 0;
            }
            if (nz) Aw.push_back(std::move(row));
        }
        for (const RatVec& r : extreme_rays_salient(Aw, w)) {
            RatVec amb(ambient_dim, Rat(0));
            for (int i = 0; i < w; ++i) amb = vec_add(amb, vec_scale(r[i], Bw[i]));
            rays_amb.push_back(std::move(amb));
        }
    }
    return from_generators(ambient_dim, rays_amb, lin.basis());
}

RatMat Cone::generators() const {
    RatMat g = rays_;
    for (const RatVec& l : lineality_.basis()) {
        g.push_back(l);
        g.push_back(vec_scale(Rat(-1), l));
    }
    return g;
}

bool Cone::contains(const RatVec& x) const {
    if (!span_.contains(x)) return false;
    for (const RatVec& a : facet_normals_)
        if (dot(a, x) < 0) return false;
    return true;
}

bool Cone::contains(const Cone& other) const {
    for (const RatVec& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

Cone Cone::intersect(const Cone& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("cone ambient mismatch");
    Subspace w = span_.intersect(other.span_);
    RatMat normals = facet_normals_;
    normals.insert(normals.end(), other.facet_normals_.begin(), other.facet_normals_.end());
    return from_constraints(ambient_, w, normals);
}

std::pair<Cone, Cone> Cone::split(const RatVec& h) const {
    bool cuts = false;
    for (const RatVec& b : span_.basis())
        if (dot(h, b) != 0) { cuts = true; break; }
    if (!cuts) return {*this, *this};
    RatMat plus = facet_normals_, minus = facet_normals_;
    plus.push_back(h);
    minus.push_back(vec_scale(Rat(-1), h));
    return {from_constraints(ambient_, span_, plus), from_constraints(ambient_, span_, minus)};
}

std::vector<Cone> Cone::faces() const {
    std::vector<Cone> out;
    std::vector<std::string> seen;
    const int f = static_cast<int>(facet_normals_.size());
    for (unsigned mask = 0; mask < (1u << f); ++mask) {
        Subspace s = span_;
        RatMat rest;
        for (int i = 0; i < f; ++i) {
            if (mask & (1u << i)) {
                RatMat one{facet_normals_[i]};
                s = s.intersect(Subspace::span_of(ambient_, one).orthogonal_complement());
            } else {
                rest.push_back(facet_normals_[i]);
            }
        }
        Cone face = mask == 0 ? *this : from_constraints(ambient_, s, rest);
        if (std::find(seen.begin(), seen.end(), face.key()) == seen.end()) {
            seen.push_back(face.key());
            out.push_back(std::move(face));
        }
    }
    return out;
}

Cone Cone::image(const RatMat& map_rows) const {
    const int q = static_cast<int>(map_rows.size());
    auto apply = [&](const RatVec& v) {
        RatVec r(q);
        for (int i = 0; i < q; ++i) r[i] = dot(map_rows[i], v);
        return r;
    };
    RatMat rays, lines;
    for (const RatVec& r : rays_) rays.push_back(apply(r));
    for (const RatVec& l : lineality_.basis()) lines.push_back(apply(l));
    return from_generators(q, rays, lines);
}

RatVec Cone::relint_point() const {
    RatVec p(ambient_, Rat(0));
    for (const RatVec& r : rays_) p = vec_add(p, r);
    return p;
}

}  // namespace expcond
