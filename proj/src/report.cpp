#include "expcond/json_io.hpp"

#include "expcond/solid_angle.hpp"

#include <iomanip>
#include <sstream>

namespace expcond {

namespace {

Json rat_vec_json(const RatVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(format_rat(x));
    return a;
}

RatVec rat_vec_from(const Json& j) {
    RatVec v;
    for (const auto& x : j) v.push_back(x.is_string() ? parse_rat(x.get<std::string>())
                                                      : Rat(x.get<long>()));
    return v;
}

}  // namespace

Json to_json(const Polytope& p) {
    Json j;
    j["ambient_dim"] = p.ambient_dim();
    Json verts = Json::array();
    for (const RatVec& v : p.vertices()) verts.push_back(rat_vec_json(v));
    j["vertices"] = verts;
    return j;
}

Polytope polytope_from_json(const Json& j) {
    const int m = j.at("ambient_dim").get<int>();
    RatMat pts;
    for (const auto& v : j.at("vertices")) pts.push_back(rat_vec_from(v));
    return Polytope::hull(m, pts);
}

Json to_json(const SqrtRat& v) {
    Json j;
    j["coef"] = format_rat(v.coef());
    j["radicand"] = format_rat(v.radicand());
    j["value"] = v.value();
    return j;
}

Json to_json(const WeightedFan& f) {
    Json j;
    j["ambient_dim"] = f.ambient_dim();
    j["dim"] = f.dim();
    j["normalization"] = f.normalization();
    Json cones = Json::array();
    for (const WeightedCone& wc : f.cones()) {
        Json c;
        Json gens = Json::array();
        for (const RatVec& g : wc.cone.generators()) gens.push_back(rat_vec_json(g));
        c["generators"] = gens;
        if (wc.weight.is_rational())
            c["weight"] = format_rat(wc.weight.rational());
        else
            c["weight"] = to_json(wc.weight);
        if (!wc.lift.empty()) {
            Json lifts = Json::array();
            for (const LiftTerm& t : wc.lift) {
                Json lt;
                lt["coeff"] = format_rat(t.coeff);
                Json mono = Json::array();
                for (const Polytope& p : t.monomial) mono.push_back(to_json(p));
                lt["monomial"] = mono;
                lifts.push_back(std::move(lt));
            }
            c["lift"] = lifts;
        }
        cones.push_back(std::move(c));
    }
    j["cones"] = cones;
    return j;
}

WeightedFan fan_from_json(const Json& j) {
    WeightedFan f(j.at("ambient_dim").get<int>(), j.at("dim").get<int>());
    for (const auto& c : j.at("cones")) {
        RatMat gens;
        for (const auto& g : c.at("generators")) gens.push_back(rat_vec_from(g));
        WeightedCone wc{Cone::from_generators(f.ambient_dim(), gens), SqrtRat(Rat(0)), {}};
        const auto& w = c.at("weight");
        if (w.is_string())
            wc.weight = SqrtRat(parse_rat(w.get<std::string>()));
        else if (w.is_object())
            wc.weight = SqrtRat(parse_rat(w.at("coef").get<std::string>()),
                                parse_rat(w.at("radicand").get<std::string>()));
        else
            wc.weight = SqrtRat(Rat(w.get<long>()));
        if (c.contains("lift")) {
            for (const auto& lt : c.at("lift")) {
                LiftTerm t{parse_rat(lt.at("coeff").get<std::string>()), {}};
                for (const auto& p : lt.at("monomial")) t.monomial.push_back(polytope_from_json(p));
                wc.lift.push_back(std::move(t));
            }
        }
        f.add_cone(std::move(wc));
    }
    return f;
}

Json to_json(const RingElement& x) {
    Json j;
    j["space"] = Json{{"ambient_dim", x.ambient_dim()}};
    Json terms = Json::array();
    for (const RingTerm& t : x.terms()) {
        Json jt;
        jt["degree"] = t.degree;
        jt["coeff"] = format_rat(t.coeff);
        jt["plus"] = to_json(t.base.plus());
        jt["minus"] = to_json(t.base.minus());
        terms.push_back(std::move(jt));
    }
    j["terms"] = terms;
    return j;
}

RingElement ring_element_from_json(const Json& j) {
    const int m = j.at("space").at("ambient_dim").get<int>();
    RingElement x(m);
    for (const auto& t : j.at("terms")) {
        Polytope plus = polytope_from_json(t.at("plus"));
        Polytope minus = t.contains("minus") ? polytope_from_json(t.at("minus"))
                                             : Polytope::point(RatVec(m, Rat(0)));
        x = x + RingElement::power(parse_rat(t.at("coeff").get<std::string>()),
                                   VirtualPolytope(plus, minus), t.at("degree").get<int>());
    }
    return x;
}

Json to_json(const ExpSum& f) {
    Json j;
    j["n"] = f.n();
    j["two_pi"] = f.two_pi_scaled();
    Json terms = Json::array();
    for (const ExpTerm& t : f.terms()) {
        Json jt;
        jt["coeff"] = Json::array({format_rat(t.coeff.re), format_rat(t.coeff.im)});
        Json ex = Json::array();
        for (int k = 0; k < f.n(); ++k)
            ex.push_back(Json::array(
                {format_rat(t.exponent[2 * k]), format_rat(t.exponent[2 * k + 1])}));
        jt["exp"] = ex;
        terms.push_back(std::move(jt));
    }
    j["terms"] = terms;
    return j;
}

ExpSum expsum_from_json(const Json& j) {
    const auto& jterms = j.at("terms");
    int n = j.contains("n") ? j.at("n").get<int>()
                            : static_cast<int>(jterms.at(0).at("exp").size());
    bool two_pi = j.contains("two_pi") && j.at("two_pi").get<bool>();
    std::vector<ExpTerm> terms;
    for (const auto& t : jterms) {
        ExpTerm e;
        e.coeff.re = parse_rat(t.at("coeff").at(0).get<std::string>());
        e.coeff.im = parse_rat(t.at("coeff").at(1).get<std::string>());
        e.exponent.assign(2 * n, Rat(0));
        const auto& ex = t.at("exp");
        for (int k = 0; k < n && k < static_cast<int>(ex.size()); ++k) {
            e.exponent[2 * k] = parse_rat(ex.at(k).at(0).get<std::string>());
            e.exponent[2 * k + 1] = parse_rat(ex.at(k).at(1).get<std::string>());
        }
        terms.push_back(std::move(e));
    }
    return ExpSum(n, std::move(terms), two_pi);
}

Json to_json(const PseudoVolumeResult& r) {
    Json j;
    j["n"] = r.n;
    j["value"] = r.value;
    j["error_bound"] = r.error_bound;
    if (r.exact_scaled) {
        j["exact"] = ExactScaled{*r.exact_scaled, r.n}.str();
        j["exact_scaled_by_2pi_n"] = to_json(*r.exact_scaled);
    }
    Json terms = Json::array();
    for (const PseudoTerm& t : r.terms) {
        Json jt;
        jt["face"] = t.face_id;
        jt["c_squared"] = format_rat(t.c_squared);
        jt["mixed_volume"] = to_json(t.face_mixed_volume);
        if (t.angle) {
            jt["angle"] = t.angle->value;
            jt["angle_exact"] = t.angle->method == AngleEstimate::Method::exact;
            jt["angle_std_error"] = t.angle->std_error;
        } else {
            jt["skipped"] = true;
        }
        jt["contribution"] = t.contribution;
        terms.push_back(std::move(jt));
    }
    j["terms"] = terms;
    return j;
}

Json to_json(const IndexResult& r) {
    Json j;
    j["value"] = r.value;
    j["error_bound"] = r.error_bound;
    j["complex_rank"] = r.complex_rank;
    j["vanishes_exactly"] = r.vanishes_exactly;
    if (r.exact) j["exact"] = r.exact->str();
    return j;
}

std::string digest_hex(const std::string& payload) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(payload);
    return os.str();
}

Json RunReport::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    j["seed"] = seed;
    j["samples"] = samples;
    j["error_bound_zero"] = exact_pipeline;
    j["results"] = results;
    return j;
}

}  // namespace expcond
