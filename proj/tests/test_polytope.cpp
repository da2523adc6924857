#include "expcond/polytope.hpp"

#include <doctest.h>

#include <random>

using namespace expcond;

namespace {

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

std::mt19937_64 rng(987654321);

RatVec random_point(int m, long denom = 1) {
    RatVec v(m);
    for (int i = 0; i < m; ++i) v[i] = Rat(static_cast<long>(rng() % 11) - 5, denom);
    return v;
}

Polytope random_polytope(int m, int pts, long denom = 1) {
    RatMat p;
    for (int i = 0; i < pts; ++i) p.push_back(random_point(m, denom));
    return Polytope::hull(m, p);
}

}  // namespace

TEST_CASE("hull drops interior points and canonicalizes") {
    Polytope p = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}),
                                    {Rat(1, 2), Rat(1, 4)}});
    CHECK(p.vertex_count() == 3);
    CHECK(p.dim() == 2);

    Polytope single = Polytope::point(rv({3, 4}));
    CHECK(single.vertex_count() == 1);
    CHECK(single.dim() == 0);

    RatMat cube;
    for (int i = 0; i < 8; ++i) cube.push_back(rv({i & 1, (i >> 1) & 1, (i >> 2) & 1}));
    cube.push_back({Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    CHECK(Polytope::hull(3, cube).vertex_count() == 8);

    CHECK_THROWS_AS(Polytope::hull(2, {}), std::invalid_argument);
}

TEST_CASE("faces of the unit square") {
    Polytope sq = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
    auto edges = sq.faces(1);
    CHECK(edges.size() == 4);
    for (const Face& e : edges) {
        CHECK(e.dim == 1);
        CHECK(e.dual_cone.dim() == 1);
        CHECK(e.dual_cone.salient_rays().size() == 1);  // outer-normal ray
    }
    auto verts = sq.faces(0);
    CHECK(verts.size() == 4);
    for (const Face& v : verts) CHECK(v.dual_cone.dim() == 2);
    CHECK(sq.faces(2).size() == 1);
    CHECK_THROWS_AS(sq.faces(3), std::out_of_range);
}

TEST_CASE("degenerate segment in the plane: dual cone of the top face is a line") {
    Polytope seg = Polytope::segment(rv({0, 0}), rv({1, 0}));
    auto top = seg.faces(1);
    REQUIRE(top.size() == 1);
    const Cone& k = top[0].dual_cone;
    CHECK(k.dim() == 1);
    CHECK(k.is_subspace());
    CHECK(k.span().contains(rv({0, 1})));
}

TEST_CASE("triangle vertices carry 2-dimensional dual cones") {
    Polytope tri = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
    auto verts = tri.faces(0);
    CHECK(verts.size() == 3);
    for (const Face& v : verts) CHECK(v.dual_cone.dim() == 2);
}

TEST_CASE("minkowski sums") {
    Polytope a = Polytope::segment(rv({0, 0}), rv({1, 0}));
    Polytope b = Polytope::segment(rv({0, 0}), rv({0, 1}));
    Polytope square = minkowski_sum({a, b});
    CHECK(square == Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})}));

    Polytope tri = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
    CHECK(minkowski_sum({tri, Polytope::point(rv({2, 3}))}) == tri.translate(rv({2, 3})));
    CHECK(minkowski_sum({tri, tri}) == tri.scaled(Rat(2)));
}

TEST_CASE("face summands of the square") {
    Polytope a = Polytope::segment(rv({0, 0}), rv({1, 0}));
    Polytope b = Polytope::segment(rv({0, 0}), rv({0, 1}));
    Polytope square = minkowski_sum({a, b});

    Face top_edge = square.face_at(rv({0, 1}));
    REQUIRE(top_edge.dim == 1);
    auto parts = face_summands({a, b}, top_edge);
    CHECK(parts[0].dim == 1);  // the horizontal segment itself
    CHECK(parts[1].dim == 0);  // the top vertex of the vertical segment
    CHECK(parts[1].vertex_coords()[0] == rv({0, 1}));

    Face corner = square.face_at(rv({1, 1}));
    REQUIRE(corner.dim == 0);
    auto cparts = face_summands({a, b}, corner);
    CHECK(cparts[0].vertex_coords()[0] == rv({1, 0}));
    CHECK(cparts[1].vertex_coords()[0] == rv({0, 1}));
}

TEST_CASE("hexagon edges decompose with exactly one edge summand") {
    // triangles with disjoint edge-normal directions
    Polytope t1 = Polytope::hull(2, {rv({0, 0}), rv({2, 0}), rv({0, 2})});
    Polytope t2 = Polytope::hull(2, {rv({0, 0}), rv({1, 3}), rv({-2, 1})});
    Polytope sum = minkowski_sum({t1, t2});
    auto edges = sum.faces(1);
    CHECK(edges.size() == 6);
    for (const Face& e : edges) {
        auto parts = face_summands({t1, t2}, e);
        int edge_count = (parts[0].dim == 1 ? 1 : 0) + (parts[1].dim == 1 ? 1 : 0);
        CHECK(edge_count == 1);
    }
}

TEST_CASE("volumes") {
    Polytope sq = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
    CHECK(sq.volume().rational() == Rat(1));

    Polytope seg = Polytope::segment(rv({0, 0}), rv({3, 4}));
    CHECK(seg.volume().rational() == Rat(5));  // sqrt of the Gram det 25

    CHECK(Polytope::point(rv({7, 8})).volume().rational() == Rat(1));

    RatMat cube;
    for (int i = 0; i < 8; ++i) cube.push_back(rv({i & 1, (i >> 1) & 1, (i >> 2) & 1}));
    CHECK(Polytope::hull(3, cube).volume().rational() == Rat(1));

    Polytope tri = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
    CHECK(tri.volume().rational() == Rat(1, 2));

    // intrinsic area of a tilted square in R^3
    Polytope tilted = Polytope::hull(3, {rv({0, 0, 0}), rv({1, 1, 0}), rv({0, 0, 1}),
                                         rv({1, 1, 1})});
    CHECK(tilted.volume() == SqrtRat(Rat(1), Rat(2)));
}

TEST_CASE("mixed volume examples") {
    Polytope a = Polytope::segment(rv({0, 0}), rv({1, 0}));
    Polytope b = Polytope::segment(rv({0, 0}), rv({0, 1}));
    CHECK(mixed_volume({a, b}).rational() == Rat(1, 2));

    Polytope sq = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
    CHECK(mixed_volume({sq, sq}).rational() == Rat(1));

    Polytope par = Polytope::segment(rv({0, 0}), rv({2, 0}));
    CHECK(mixed_volume({a, par}).rational() == Rat(0));
}

TEST_CASE("mixed volume is symmetric and multilinear on random polygons") {
    for (int it = 0; it < 5; ++it) {
        Polytope A = random_polytope(2, 4), B = random_polytope(2, 4), C = random_polytope(2, 3);
        SqrtRat ab = mixed_volume({A, B});
        CHECK(ab == mixed_volume({B, A}));
        // MV(A + C, B) = MV(A, B) + MV(C, B)
        SqrtRat lhs = mixed_volume({minkowski_sum({A, C}), B});
        CHECK(lhs == ab + mixed_volume({C, B}));
        // diagonal equals the volume
        CHECK(mixed_volume({A, A}) == A.volume());
    }
}

TEST_CASE("rank and complex rank") {
    Polytope e1 = Polytope::segment(rv({0, 0}), rv({1, 0}));
    Polytope e2 = Polytope::segment(rv({0, 0}), rv({0, 1}));
    CHECK(polytope_rank({e1, e2}) == 0);
    CHECK(polytope_rank({e1, Polytope::segment(rv({0, 0}), rv({2, 0}))}) == -1);
    Polytope sq = minkowski_sum({e1, e2});
    CHECK(polytope_rank({sq, e1}) == 0);

    // both segments inside the first complex axis of C^2
    Polytope s1 = Polytope::segment(rv({0, 0, 0, 0}), rv({1, 0, 0, 0}));
    Polytope si = Polytope::segment(rv({0, 0, 0, 0}), rv({0, 1, 0, 0}));
    CHECK(complex_rank({s1, si}) == -1);

    Polytope s2 = Polytope::segment(rv({0, 0, 0, 0}), rv({0, 0, 1, 0}));
    CHECK(complex_rank({s1, s2}) == 0);

    CHECK(complex_rank({Polytope::point(rv({1, 2, 3, 4}))}) == -1);
}

TEST_CASE("MV = 0 iff rank < 0 on random families") {
    int zero_cases = 0;
    for (int it = 0; it < 30; ++it) {
        int m = 2 + static_cast<int>(rng() % 2);
        std::vector<Polytope> fam;
        for (int i = 0; i < m; ++i) fam.push_back(random_polytope(m, 2 + static_cast<int>(rng() % 2)));
        bool zero = mixed_volume(fam).is_zero();
        CHECK(zero == (polytope_rank(fam) < 0));
        zero_cases += zero ? 1 : 0;
    }
    // force degenerate families too
    Polytope a = Polytope::segment(rv({0, 0, 0}), rv({1, 2, 0}));
    Polytope b = Polytope::segment(rv({0, 0, 0}), rv({2, 4, 0}));
    Polytope c = random_polytope(3, 4);
    CHECK(mixed_volume({a, b, c}).is_zero());
    CHECK(polytope_rank({a, b, c}) < 0);
}

TEST_CASE("product formula for split coordinate families") {
    // A_1 in a 1-dim coordinate subspace of R^3; arbitrary A_2, A_3. In the
    // coefficient normalization (diagonal = m! vol):
    //   3! MV(A_1, A_2, A_3) = 1! vol(A_1) * 2! MV(pi(A_2), pi(A_3))
    for (int it = 0; it < 5; ++it) {
        Rat len(1 + static_cast<long>(rng() % 5));
        Polytope a1 = Polytope::segment(rv({0, 0, 0}), {len, Rat(0), Rat(0)});
        Polytope a2 = random_polytope(3, 4);
        Polytope a3 = random_polytope(3, 4);
        SqrtRat lhs = mixed_volume({a1, a2, a3}) * Rat(6);

        auto project = [](const Polytope& p) {
            RatMat pts;
            for (const RatVec& v : p.vertices()) pts.push_back({v[1], v[2]});
            return Polytope::hull(2, pts);
        };
        SqrtRat rhs = mixed_volume({project(a2), project(a3)}) * Rat(2) * SqrtRat(len);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("translation invariance") {
    for (int it = 0; it < 5; ++it) {
        Polytope A = random_polytope(2, 4), B = random_polytope(2, 3);
        RatVec t = random_point(2, 3);
        CHECK(A.volume() == A.translate(t).volume());
        CHECK(mixed_volume({A, B}) == mixed_volume({A.translate(t), B}));
        CHECK(polytope_rank({A, B}) == polytope_rank({A.translate(t), B}));
    }
}

TEST_CASE("support function") {
    Polytope sq = Polytope::hull(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
    CHECK(sq.support(rv({1, 1})) == Rat(2));
    CHECK(sq.support(rv({0, 0})) == Rat(0));
    Polytope seg = Polytope::segment(rv({0, 0}), rv({2, 3}));
    CHECK(seg.support(rv({1, -1})) == Rat(0));

    // h_{P+Q} = h_P + h_Q
    for (int it = 0; it < 5; ++it) {
        Polytope A = random_polytope(2, 4), B = random_polytope(2, 4);
        RatVec v = random_point(2);
        CHECK(minkowski_sum({A, B}).support(v) == A.support(v) + B.support(v));
    }
}

TEST_CASE("desk-scale bound: simplex and cross-polytope in R^8") {
    RatMat pts{RatVec(8, Rat(0))};
    for (int i = 0; i < 8; ++i) {
        RatVec e(8, Rat(0));
        e[i] = 1;
        pts.push_back(e);
    }
    Polytope simplex = Polytope::hull(8, pts);
    CHECK(simplex.dim() == 8);
    CHECK(simplex.vertex_count() == 9);
    CHECK(simplex.volume().rational() == Rat(1, 40320));  // 1/8!
    CHECK(simplex.faces(7).size() == 9);
}

TEST_CASE("containment check") {
    Polytope tri = Polytope::hull(2, {rv({0, 0}), rv({2, 0}), rv({0, 2})});
    CHECK(tri.contains({Rat(1, 2), Rat(1, 2)}));
    CHECK(tri.contains(rv({2, 0})));
    CHECK_FALSE(tri.contains(rv({2, 1})));
}
