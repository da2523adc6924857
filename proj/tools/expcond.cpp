// Command-line front end: JSON reports on stdout, human summary on stderr.

#include "expcond/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace expcond;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad JSON input: ") + e.what());
    }
}

std::vector<Polytope> polytope_list(const Json& j) {
    std::vector<Polytope> ps;
    if (j.contains("polytopes"))
        for (const auto& p : j.at("polytopes")) ps.push_back(polytope_from_json(p));
    else
        ps.push_back(polytope_from_json(j));
    return ps;
}

// files may hold either a polytope (dual fan is taken) or a fan
WeightedFan load_fan(const std::string& path, int skeleton) {
    Json j = parse_json(read_file(path));
    if (j.contains("vertices")) {
        Polytope p = polytope_from_json(j);
        return dual_skeleton_fan(p, skeleton >= 0 ? skeleton : p.ambient_dim() - 1);
    }
    return fan_from_json(j);
}

struct Cli {
    std::uint64_t seed = 0;
    std::int64_t angle_samples = 200000;
    bool json_only = false;

    AngleConfig angle_cfg() const { return AngleConfig{angle_samples, seed}; }
};

void emit(const Cli& cli, RunReport report, double wall_ms, const std::string& summary) {
    std::cout << report.to_json().dump(2) << "\n";
    if (!cli.json_only)
        std::cerr << summary << "  [" << wall_ms << " ms]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed pseudovolumes, polytope rings and tropical fans of exponential systems"};
    app.require_subcommand(1);

    Cli cli;
    if (const char* env = std::getenv("EXPCOND_ANGLE_SAMPLES")) cli.angle_samples = std::atoll(env);
    app.add_option("--seed", cli.seed, "seed for all randomized paths");
    app.add_option("--angle-samples", cli.angle_samples, "Monte Carlo samples per cone");
    app.add_flag("--json", cli.json_only, "suppress the human summary on stderr");

    // pseudovolume
    std::string pv_file;
    bool pv_mixed = false, pv_polarized = false;
    auto* pv = app.add_subcommand("pseudovolume", "pseudovolume or mixed pseudovolume of polytopes");
    pv->add_option("file", pv_file, "polytope JSON (or {\"polytopes\": [...]})")->required();
    pv->add_flag("--mixed", pv_mixed, "mixed pseudovolume of the listed polytopes");
    pv->add_flag("--polarized", pv_polarized, "use the inclusion-exclusion route");

    // mixed-volume
    std::string mv_file;
    auto* mv = app.add_subcommand("mixed-volume", "exact mixed volume of polytopes");
    mv->add_option("file", mv_file, "{\"polytopes\": [...]} JSON")->required();

    // index
    std::vector<std::string> ix_exprs;
    std::string ix_file;
    auto* ix = app.add_subcommand("index", "intersection index of an exponential system");
    ix->add_option("--expr", ix_exprs, "exponential sum expression (repeatable)");
    ix->add_option("--file", ix_file, "JSON {\"system\": [<expr or term object>, ...]}");

    // fan
    std::string fan_sub, fan_a, fan_b;
    int fan_k = -1;
    auto* fan = app.add_subcommand("fan", "weighted fan operations");
    fan->add_option("op", fan_sub, "dual | add | multiply | equiv | of-element")->required();
    fan->add_option("a", fan_a, "first input file")->required();
    fan->add_option("b", fan_b, "second input file");
    fan->add_option("-k,--skeleton", fan_k, "skeleton dimension for dual fans");

    // rank
    std::string rank_file;
    bool rank_complex = false;
    auto* rk = app.add_subcommand("rank", "rank of a set of polytopes");
    rk->add_option("file", rank_file, "{\"polytopes\": [...]} JSON")->required();
    rk->add_flag("--complex", rank_complex, "complex rank");

    // oracle
    std::string oracle_sub, oracle_expr, oracle_file;
    double oracle_radius = 20.0;
    auto* orc = app.add_subcommand("oracle", "independent numeric oracles");
    orc->add_option("op", oracle_sub, "zeros-disk | lattice-density")->required();
    orc->add_option("--expr", oracle_expr, "exponential sum (zeros-disk)");
    orc->add_option("--radius", oracle_radius, "contour radius (zeros-disk)");
    orc->add_option("--file", oracle_file, "JSON {\"lambdas\": [[...2n rationals...], ...]}");

    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    };

    try {
        RunReport rep;
        rep.seed = cli.seed;
        rep.samples = cli.angle_samples;
        std::string summary;

        if (pv->parsed()) {
            std::string raw = read_file(pv_file);
            rep.command = "pseudovolume" + std::string(pv_mixed ? " --mixed" : "") +
                          std::string(pv_polarized ? " --polarized" : "");
            rep.inputs_digest = digest_hex(raw);
            std::vector<Polytope> ps = polytope_list(parse_json(raw));
            PseudoVolumeResult r;
            if (pv_mixed || ps.size() > 1)
                r = pv_polarized ? mixed_pseudovolume_polarized(ps, cli.angle_cfg())
                                 : mixed_pseudovolume(ps, cli.angle_cfg());
            else
                r = pseudovolume(ps[0], cli.angle_cfg());
            rep.exact_pipeline = r.error_bound == 0;
            rep.results = to_json(r);
            summary = "pseudovolume = " + std::to_string(r.value) +
                      " (error bound " + std::to_string(r.error_bound) + ")";
        } else if (mv->parsed()) {
            std::string raw = read_file(mv_file);
            rep.command = "mixed-volume";
            rep.inputs_digest = digest_hex(raw);
            SqrtRat v = mixed_volume(polytope_list(parse_json(raw)));
            rep.exact_pipeline = true;
            rep.results = Json{{"mixed_volume", to_json(v)}, {"exact", v.str()}};
            summary = "mixed volume = " + v.str();
        } else if (ix->parsed()) {
            std::vector<ExpSum> fs;
            std::string raw;
            for (const std::string& e : ix_exprs) {
                raw += e + "\n";
                fs.push_back(parse_expsum(e));
            }
            if (!ix_file.empty()) {
                std::string filedata = read_file(ix_file);
                raw += filedata;
                Json j = parse_json(filedata);
                for (const auto& item : j.at("system"))
                    fs.push_back(item.is_string() ? parse_expsum(item.get<std::string>())
                                                  : expsum_from_json(item));
            }
            if (fs.empty()) throw std::invalid_argument("no system given (--expr or --file)");
            rep.command = "index";
            rep.inputs_digest = digest_hex(raw);
            IndexResult r = intersection_index(fs, cli.angle_cfg());
            rep.exact_pipeline = r.error_bound == 0;
            rep.results = to_json(r);
            summary = "intersection index = " + std::to_string(r.value);
            if (r.exact) summary += " = " + r.exact->str();
            if (r.vanishes_exactly)
                summary += "  (vanishes: complex rank " + std::to_string(r.complex_rank) + " < 0)";
        } else if (fan->parsed()) {
            rep.command = "fan " + fan_sub;
            if (fan_sub == "dual") {
                std::string raw = read_file(fan_a);
                rep.inputs_digest = digest_hex(raw);
                Polytope p = polytope_from_json(parse_json(raw));
                WeightedFan f = dual_skeleton_fan(p, fan_k >= 0 ? fan_k : p.ambient_dim());
                rep.exact_pipeline = true;
                rep.results = to_json(f);
                summary = "dual fan with " + std::to_string(f.cones().size()) + " top cones";
            } else if (fan_sub == "add" || fan_sub == "multiply" || fan_sub == "equiv") {
                if (fan_b.empty()) throw std::invalid_argument("two input files required");
                std::string raw = read_file(fan_a) + read_file(fan_b);
                rep.inputs_digest = digest_hex(raw);
                WeightedFan A = load_fan(fan_a, fan_k), B = load_fan(fan_b, fan_k);
                rep.exact_pipeline = true;
                if (fan_sub == "add") {
                    WeightedFan f = fan_add(A, B);
                    rep.results = to_json(f);
                    summary = "sum fan with " + std::to_string(f.cones().size()) + " top cones";
                } else if (fan_sub == "multiply") {
                    WeightedFan f = stable_product(A, B, cli.seed);
                    rep.results = to_json(f);
                    summary = "product fan with " + std::to_string(f.cones().size()) + " top cones";
                } else {
                    bool eq = fan_equivalent(A, B);
                    rep.results = Json{{"equivalent", eq}};
                    summary = eq ? "fans are equivalent" : "fans differ";
                }
            } else if (fan_sub == "of-element") {
                std::string raw = read_file(fan_a);
                rep.inputs_digest = digest_hex(raw);
                RingElement x = ring_element_from_json(parse_json(raw));
                WeightedFan f = weighted_fan_of(x);
                rep.exact_pipeline = true;
                rep.results = to_json(f);
                rep.results["in_J_vol"] = in_Jvol(x);
                summary = "weighted fan with " + std::to_string(f.cones().size()) + " cells";
            } else {
                throw std::invalid_argument("unknown fan operation: " + fan_sub);
            }
        } else if (rk->parsed()) {
            std::string raw = read_file(rank_file);
            rep.command = rank_complex ? "rank --complex" : "rank";
            rep.inputs_digest = digest_hex(raw);
            std::vector<Polytope> ps = polytope_list(parse_json(raw));
            int r = rank_complex ? complex_rank(ps) : polytope_rank(ps);
            rep.exact_pipeline = true;
            rep.results = Json{{"rank", r}};
            summary = (rank_complex ? std::string("complex rank = ") : std::string("rank = ")) +
                      std::to_string(r);
        } else if (orc->parsed()) {
            rep.command = "oracle " + oracle_sub;
            if (oracle_sub == "zeros-disk") {
                if (oracle_expr.empty()) throw std::invalid_argument("--expr required");
                rep.inputs_digest = digest_hex(oracle_expr + "@" + std::to_string(oracle_radius));
                ExpSum f = parse_expsum(oracle_expr);
                long zeros = count_zeros_disk(f, oracle_radius);
                double density = static_cast<double>(zeros) / (2.0 * oracle_radius);
                rep.exact_pipeline = true;
                rep.results = Json{{"radius", oracle_radius},
                                   {"zeros", zeros},
                                   {"density_estimate", density}};
                summary = std::to_string(zeros) + " zeros in |z| < " + std::to_string(oracle_radius);
            } else if (oracle_sub == "lattice-density") {
                if (oracle_file.empty()) throw std::invalid_argument("--file required");
                std::string raw = read_file(oracle_file);
                rep.inputs_digest = digest_hex(raw);
                Json j = parse_json(raw);
                RatMat lambdas;
                for (const auto& row : j.at("lambdas")) {
                    RatVec l;
                    for (const auto& x : row) l.push_back(parse_rat(x.get<std::string>()));
                    lambdas.push_back(std::move(l));
                }
                LatticeSpec spec = lattice_from_characters(lambdas);
                LatticeDensity d = lattice_density(spec);
                rep.exact_pipeline = true;
                rep.results = Json{{"value", d.value}, {"exact", d.exact.str()}};
                summary = "lattice density = " + std::to_string(d.value);
            } else {
                throw std::invalid_argument("unknown oracle: " + oracle_sub);
            }
        }

        emit(cli, std::move(rep), wall(), summary);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
