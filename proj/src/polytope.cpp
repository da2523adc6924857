#include "expcond/polytope.hpp"

#include "expcond/simplex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace expcond {

namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

struct Polytope::Core {
    int ambient = 0;
    RatMat verts;           // canonical
    int dim = 0;
    Subspace tangent{0, {}};
    RatMat local;           // vertex coordinates in tangent.basis(), relative to verts[0]
    Rat gram_det = 1;       // det of the tangent basis Gram matrix

    struct FacetRec {
        RatVec normal_loc;       // outer normal in local coordinates
        RatVec normal_amb;       // lifted into the tangent space
        std::vector<int> verts;  // sorted vertex indices on the facet
    };
    struct FaceRec {
        std::vector<int> verts;
        int dim = 0;
        std::vector<int> facets;  // facets containing this face
        // built on first use; guarded by face_mutex
        mutable std::unique_ptr<Subspace> face_tangent;
        mutable std::unique_ptr<Cone> dual;
    };
    mutable std::mutex face_mutex;

    mutable std::once_flag lattice_flag;
    mutable std::vector<FacetRec> facets;
    mutable std::vector<FaceRec> face_recs;

    mutable std::once_flag volume_flag;
    mutable SqrtRat vol;

    void build_lattice() const;
    void build_volume() const;
    void triangulate(const std::vector<int>& face_verts, int face_dim,
                     std::vector<std::vector<int>>& out) const;
    const std::vector<FaceRec>& lattice() const {
        std::call_once(lattice_flag, [this] { build_lattice(); });
        return face_recs;
    }
};

Polytope Polytope::hull(int ambient_dim, const RatMat& points) {
    if (points.empty()) throw std::invalid_argument("hull of empty point set");
    for (const RatVec& p : points)
        if (static_cast<int>(p.size()) != ambient_dim)
            throw std::invalid_argument("point dimension mismatch");

    RatMat pts = points;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    RatMat verts;
    if (pts.size() <= 2) {
        verts = pts;
    } else {
        for (size_t i = 0; i < pts.size(); ++i) {
            RatMat others;
            others.reserve(pts.size() - 1);
            for (size_t j = 0; j < pts.size(); ++j)
                if (j != i) others.push_back(pts[j]);
            if (!in_convex_hull(others, pts[i])) verts.push_back(pts[i]);
        }
    }

    auto core = std::make_shared<Core>();
    core->ambient = ambient_dim;
    core->verts = std::move(verts);

    RatMat diffs;
    for (size_t i = 1; i < core->verts.size(); ++i)
        diffs.push_back(vec_sub(core->verts[i], core->verts[0]));
    core->tangent = Subspace::span_of(ambient_dim, diffs);
    core->dim = core->tangent.dim();
    const RatMat& B = core->tangent.basis();
    core->gram_det = B.empty() ? Rat(1) : determinant(gram(B, B));
    for (const RatVec& v : core->verts)
        core->local.push_back(core->dim == 0 ? RatVec{} : coords_in_basis(B, vec_sub(v, core->verts[0])));
    return Polytope(std::move(core));
}

Polytope Polytope::point(const RatVec& p) { return hull(static_cast<int>(p.size()), {p}); }

Polytope Polytope::segment(const RatVec& a, const RatVec& b) {
    return hull(static_cast<int>(a.size()), {a, b});
}

int Polytope::ambient_dim() const { return core_->ambient; }
const RatMat& Polytope::vertices() const { return core_->verts; }
int Polytope::dim() const { return core_->dim; }
const Subspace& Polytope::tangent() const { return core_->tangent; }

bool Polytope::operator==(const Polytope& o) const {
    return core_ == o.core_ || (core_->ambient == o.core_->ambient && core_->verts == o.core_->verts);
}

bool Polytope::contains(const RatVec& p) const { return in_convex_hull(core_->verts, p); }

void Polytope::Core::build_lattice() const {
    const int d = dim;
    const int nv = static_cast<int>(verts.size());

    if (d > 0) {
        // Supporting hyperplanes spanned by d affinely independent vertices.
        std::vector<int> comb(d);
        for (int i = 0; i < d; ++i) comb[i] = i;
        std::set<std::vector<int>> seen;
        while (nv >= d) {
            RatMat rel;
            for (int i = 1; i < d; ++i) rel.push_back(vec_sub(local[comb[i]], local[comb[0]]));
            RatMat ker = nullspace(rel, d);
            if ((d == 1 && comb.size() == 1) || ker.size() == 1) {
                RatVec a = d == 1 ? RatVec{Rat(1)} : primitive(ker[0]);
                Rat c = dot(a, local[comb[0]]);
                bool pos = false, neg = false;
                for (int i = 0; i < nv; ++i) {
                    int s = sign_of(dot(a, local[i]) - c);
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                }
                if (!(pos && neg)) {
                    if (pos) { a = vec_scale(Rat(-1), a); c = -c; }
                    std::vector<int> on;
                    for (int i = 0; i < nv; ++i)
                        if (dot(a, local[i]) == c) on.push_back(i);
                    if (seen.insert(on).second) {
                        FacetRec f;
                        f.normal_loc = a;
                        f.normal_amb = primitive(lift_functional(tangent.basis(), a));
                        f.verts = std::move(on);
                        facets.push_back(std::move(f));
                    }
                }
            }
            int i = d - 1;
            while (i >= 0 && comb[i] == nv - d + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
        }
    }

    // Close the facet vertex sets under intersection; every proper face is
    // an intersection of facets.
    std::set<std::vector<int>> sets;
    std::vector<int> full(nv);
    for (int i = 0; i < nv; ++i) full[i] = i;
    sets.insert(full);
    for (const auto& f : facets) sets.insert(f.verts);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(sets.begin(), sets.end());
        for (const auto& s : current) {
            for (const auto& f : facets) {
                std::vector<int> inter;
                std::set_intersection(s.begin(), s.end(), f.verts.begin(), f.verts.end(),
                                      std::back_inserter(inter));
                if (!inter.empty() && sets.insert(inter).second) grew = true;
            }
        }
    }

    for (const auto& s : sets) {
        FaceRec rec;
        rec.verts = s;
        RatMat rel;
        for (size_t i = 1; i < s.size(); ++i) rel.push_back(vec_sub(local[s[i]], local[s[0]]));
        rec.dim = rank_of(rel);
        for (size_t fi = 0; fi < facets.size(); ++fi)
            if (std::includes(facets[fi].verts.begin(), facets[fi].verts.end(), s.begin(), s.end()))
                rec.facets.push_back(static_cast<int>(fi));
        face_recs.push_back(std::move(rec));
    }
}

// Triangulates a face of the lattice into dim-simplices (vertex index tuples),
// recursing through sub-faces.
void Polytope::Core::triangulate(const std::vector<int>& face_verts, int face_dim,
                                 std::vector<std::vector<int>>& out) const {
    if (face_dim == 0) {
        out.push_back({face_verts[0]});
        return;
    }
    int base = face_verts[0];
    for (const auto& rec : face_recs) {
        if (rec.dim != face_dim - 1) continue;
        if (!std::includes(face_verts.begin(), face_verts.end(), rec.verts.begin(), rec.verts.end()))
            continue;
        if (std::binary_search(rec.verts.begin(), rec.verts.end(), base)) continue;
        std::vector<std::vector<int>> sub;
        triangulate(rec.verts, face_dim - 1, sub);
        for (auto& s : sub) {
            s.insert(s.begin(), base);
            out.push_back(std::move(s));
        }
    }
}

void Polytope::Core::build_volume() const {
    if (dim == 0) {
        vol = SqrtRat(Rat(1));  // 0-dimensional volume convention: empty product
        return;
    }
    lattice();
    std::vector<int> full(verts.size());
    for (size_t i = 0; i < full.size(); ++i) full[i] = static_cast<int>(i);
    std::vector<std::vector<int>> simplices;
    triangulate(full, dim, simplices);
    Rat total = 0;
    Rat dfact = 1;
    for (int i = 2; i <= dim; ++i) dfact *= i;
    for (const auto& s : simplices) {
        RatMat edges;
        for (int i = 1; i <= dim; ++i) edges.push_back(vec_sub(local[s[i]], local[s[0]]));
        Rat det = determinant(edges);
        total += det < 0 ? -det : det;
    }
    vol = SqrtRat(total / dfact, gram_det);
}

SqrtRat Polytope::volume() const {
    std::call_once(core_->volume_flag, [this] { core_->build_volume(); });
    return core_->vol;
}

std::vector<Face> Polytope::faces(int d) const {
    if (d < 0 || d > dim()) throw std::out_of_range("face dimension out of range");
    const auto& recs = core_->lattice();
    std::vector<Face> out;
    std::lock_guard<std::mutex> lock(core_->face_mutex);
    for (const auto& rec : recs) {
        if (rec.dim != d) continue;
        if (!rec.face_tangent) {
            RatMat rel;
            for (size_t i = 1; i < rec.verts.size(); ++i)
                rel.push_back(vec_sub(core_->verts[rec.verts[i]], core_->verts[rec.verts[0]]));
            rec.face_tangent =
                std::make_unique<Subspace>(Subspace::span_of(ambient_dim(), rel));
            RatMat rays;
            for (int fi : rec.facets) rays.push_back(core_->facets[fi].normal_amb);
            rec.dual = std::make_unique<Cone>(Cone::from_generators(
                ambient_dim(), rays, core_->tangent.orthogonal_complement().basis()));
        }
        out.push_back(Face{*this, rec.verts, rec.dim, *rec.face_tangent, *rec.dual});
    }
    return out;
}

Face Polytope::face_at(const RatVec& functional) const {
    Rat best;
    bool first = true;
    std::vector<int> arg;
    for (int i = 0; i < vertex_count(); ++i) {
        Rat v = dot(functional, core_->verts[i]);
        if (first || v > best) {
            best = v;
            arg.clear();
            first = false;
        }
        if (v == best) arg.push_back(i);
    }
    RatMat rel;
    for (size_t i = 1; i < arg.size(); ++i)
        rel.push_back(vec_sub(core_->verts[arg[i]], core_->verts[arg[0]]));
    int d = rank_of(rel);
    for (const Face& f : faces(d))
        if (f.vertex_indices == arg) return f;
    throw std::logic_error("argmax set is not a face");
}

Polytope Polytope::translate(const RatVec& t) const {
    RatMat pts;
    pts.reserve(vertices().size());
    for (const RatVec& v : vertices()) pts.push_back(vec_add(v, t));
    return hull(ambient_dim(), pts);
}

Polytope Polytope::scaled(const Rat& s) const {
    RatMat pts;
    pts.reserve(vertices().size());
    for (const RatVec& v : vertices()) pts.push_back(vec_scale(s, v));
    return hull(ambient_dim(), pts);
}

Polytope Polytope::translation_normalized() const {
    return translate(vec_scale(Rat(-1), vertices()[0]));
}

Rat Polytope::support(const RatVec& v) const {
    Rat best = dot(v, vertices()[0]);
    for (const RatVec& w : vertices()) {
        Rat x = dot(v, w);
        if (x > best) best = x;
    }
    return best;
}

std::string Polytope::key() const {
    std::ostringstream os;
    os << ambient_dim() << ":";
    for (const RatVec& v : vertices()) {
        for (const Rat& x : v) os << format_rat(x) << ",";
        os << ";";
    }
    return os.str();
}

RatMat Face::vertex_coords() const {
    RatMat out;
    for (int i : vertex_indices) out.push_back(parent.vertices()[i]);
    return out;
}

Polytope Face::as_polytope() const { return Polytope::hull(parent.ambient_dim(), vertex_coords()); }

Polytope minkowski_sum(const std::vector<Polytope>& ps) {
    if (ps.empty()) throw std::invalid_argument("empty Minkowski sum");
    const int m = ps[0].ambient_dim();
    for (const Polytope& p : ps)
        if (p.ambient_dim() != m) throw std::invalid_argument("ambient dimension mismatch");
    RatMat sums = ps[0].vertices();
    for (size_t k = 1; k < ps.size(); ++k) {
        RatMat next;
        next.reserve(sums.size() * ps[k].vertices().size());
        for (const RatVec& a : sums)
            for (const RatVec& b : ps[k].vertices()) next.push_back(vec_add(a, b));
        std::sort(next.begin(), next.end(), lex_less);
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sums = std::move(next);
    }
    return Polytope::hull(m, sums);
}

std::vector<Face> face_summands_of_sum(const std::vector<Polytope>& ps, const Polytope& sum,
                                       const Face& F) {
    if (!(F.parent == sum)) throw std::invalid_argument("face does not belong to the sum");
    RatVec u = F.dual_cone.relint_point();
    std::vector<Face> out;
    out.reserve(ps.size());
    for (const Polytope& p : ps) out.push_back(p.face_at(u));

    std::vector<Polytope> parts;
    parts.reserve(out.size());
    for (const Face& f : out) parts.push_back(f.as_polytope());
    if (!(minkowski_sum(parts) == F.as_polytope()))
        throw std::logic_error("face summand decomposition failed");
    return out;
}

std::vector<Face> face_summands(const std::vector<Polytope>& ps, const Face& F) {
    return face_summands_of_sum(ps, minkowski_sum(ps), F);
}

SqrtRat mixed_volume(const std::vector<Polytope>& ps) {
    if (ps.empty()) throw std::invalid_argument("mixed volume of nothing");
    const int k = static_cast<int>(ps.size());
    const int m = ps[0].ambient_dim();
    Subspace span = Subspace::zero(m);
    for (const Polytope& p : ps) {
        if (p.ambient_dim() != m) throw std::invalid_argument("ambient dimension mismatch");
        span = span.sum(p.tangent());
    }
    if (span.dim() > k)
        throw std::invalid_argument("polytopes span more dimensions than their count");
    if (span.dim() < k) return SqrtRat(Rat(0));

    const RatMat& B = span.basis();
    RatVec base(m, Rat(0));
    for (const Polytope& p : ps) base = vec_add(base, p.vertices()[0]);

    Rat acc = 0;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        RatMat pts{RatVec(m, Rat(0))};
        int bits = 0;
        for (int i = 0; i < k; ++i) {
            if (!(mask & (1u << i))) continue;
            ++bits;
            RatMat next;
            const RatVec& v0 = ps[i].vertices()[0];
            for (const RatVec& a : pts)
                for (const RatVec& b : ps[i].vertices()) next.push_back(vec_add(a, vec_sub(b, v0)));
            std::sort(next.begin(), next.end(), lex_less);
            next.erase(std::unique(next.begin(), next.end()), next.end());
            pts = std::move(next);
        }
        RatMat loc;
        loc.reserve(pts.size());
        for (const RatVec& p : pts) loc.push_back(coords_in_basis(B, p));
        Polytope q = Polytope::hull(k, loc);
        if (q.dim() < k) continue;
        Rat v = q.volume().rational();
        acc += ((k - bits) % 2 == 0) ? v : -v;
    }
    Rat kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return SqrtRat(acc / kfact, determinant(gram(B, B)));
}

int polytope_rank(const std::vector<Polytope>& ps) {
    const int k = static_cast<int>(ps.size());
    if (k == 0) throw std::invalid_argument("rank of empty family");
    const int m = ps[0].ambient_dim();
    int best = 0;
    bool first = true;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        Subspace s = Subspace::zero(m);
        int bits = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                s = s.sum(ps[i].tangent());
                ++bits;
            }
        int val = s.dim() - bits;
        if (first || val < best) {
            best = val;
            first = false;
        }
    }
    return best;
}

int complex_rank(const std::vector<Polytope>& ps) {
    const int k = static_cast<int>(ps.size());
    if (k == 0) throw std::invalid_argument("complex rank of empty family");
    const int m = ps[0].ambient_dim();
    if (m % 2 != 0) throw std::invalid_argument("complex rank needs even ambient dimension");
    int best = 0;
    bool first = true;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        RatMat gens;
        int bits = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                for (const RatVec& b : ps[i].tangent().basis()) {
                    gens.push_back(b);
                    gens.push_back(complex_rotate(b));
                }
                ++bits;
            }
        int dim_c = rank_of(gens) / 2;
        int val = dim_c - bits;
        if (first || val < best) {
            best = val;
            first = false;
        }
    }
    return best;
}

}  // namespace expcond
