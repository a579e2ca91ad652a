#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "varcap/io.hpp"

namespace {

using namespace varcap;

struct RunConfig {
    std::string command;
    std::string variety_path;
    std::string cloud_path;
    std::string demo_target;
    int k = 0;
    int kmax = 0;
    double gap_tol = kMinimaxGapTol;
    double residual_tol = 1e-9;
    double margin = 0;  // 0 selects the automatic margin
    unsigned seed = 1;
    int threads = 0;  // 0 selects the hardware count
    std::string out_dir = ".";
    std::string format = "json";
    std::string strategy = "greedy";
    int angles = 256;
    bool half_orbit = false;
    bool run_sandwich = false;
    bool run_integral = false;
    bool run_homogeneous = false;
    bool run_projection = false;
    bool run_circled = false;
};

bool logging_enabled() {
    const char* v = std::getenv("VARCAP_LOG");
    return v && *v && std::string(v) != "0";
}

void log(const std::string& msg) {
    if (logging_enabled()) std::cerr << "[varcap] " << msg << "\n";
}

// The resolved configuration embedded in every artifact. The thread count is
// an execution detail, not configuration: results are thread-count
// independent, so it stays out to keep artifacts byte-identical.
Json config_json(const RunConfig& cfg) {
    Json j;
    j["command"] = cfg.command;
    j["variety"] = cfg.variety_path;
    j["cloud"] = cfg.cloud_path;
    j["k"] = cfg.k;
    j["kmax"] = cfg.kmax;
    j["gap_tol"] = format_double(cfg.gap_tol);
    j["residual_tol"] = format_double(cfg.residual_tol);
    j["margin"] = format_double(cfg.margin);
    j["seed"] = cfg.seed;
    j["out"] = cfg.out_dir;
    j["format"] = cfg.format;
    j["strategy"] = cfg.strategy;
    if (cfg.command == "compare" || cfg.command == "demo") {
        j["angles"] = cfg.angles;
        j["half_orbit"] = cfg.half_orbit;
    }
    return j;
}

void save_json(const RunConfig& cfg, const std::string& name, Json artifact) {
    if (cfg.format == "csv") return;
    artifact["tool"] = kToolName;
    artifact["version"] = kToolVersion;
    artifact["config"] = config_json(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    std::string path = (std::filesystem::path(cfg.out_dir) / name).string();
    write_text(path, artifact.dump(2) + "\n");
    log("wrote " + path);
}

void save_csv(const RunConfig& cfg, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(cfg.out_dir);
    std::string path = (std::filesystem::path(cfg.out_dir) / name).string();
    std::string header = std::string("# ") + kToolName + " " + kToolVersion +
                         " config=" + config_json(cfg).dump() + "\n";
    write_text(path, header + body);
    log("wrote " + path);
}

FeketeConfig fekete_config(const RunConfig& cfg) {
    FeketeConfig fc;
    if (cfg.strategy == "greedy")
        fc.strategy = FeketeConfig::Strategy::Greedy;
    else if (cfg.strategy == "exchange")
        fc.strategy = FeketeConfig::Strategy::Exchange;
    else if (cfg.strategy == "exhaustive")
        fc.strategy = FeketeConfig::Strategy::Exhaustive;
    else
        throw std::invalid_argument("unknown strategy: " + cfg.strategy);
    return fc;
}

VarietyFile sphere_variety() {
    VarietyFile vf;
    vf.variables = {"z1", "z2", "z3"};
    vf.generators = {parse_polynomial("z1^2 + z2^2 + z3^2 - 1", vf.variables)};
    vf.split = NoetherSplit{{0, 1}, {2}};
    vf.base_point = {GaussianRational(0), GaussianRational(0), GaussianRational(1)};
    return vf;
}

// Fallback model when no variety file is given: the free polynomial ring on
// the cloud's ambient coordinates, local chart at the origin.
VarietyFile free_variety(std::size_t m) {
    VarietyFile vf;
    for (std::size_t i = 0; i < m; ++i) vf.variables.push_back("z" + std::to_string(i + 1));
    for (std::size_t i = 0; i < m; ++i) vf.split.x_indices.push_back(i);
    vf.base_point.assign(m, GaussianRational(0));
    return vf;
}

VarietyFile resolve_variety(const RunConfig& cfg, std::size_t cloud_dim) {
    if (!cfg.variety_path.empty()) return load_variety(cfg.variety_path);
    if (cloud_dim == 0) throw std::invalid_argument("need --variety or --cloud");
    return free_variety(cloud_dim);
}

VarietyPointCloud resolve_cloud(const RunConfig& cfg, const VarietyFile& vf) {
    if (cfg.cloud_path.empty()) throw std::invalid_argument("missing --cloud");
    VarietyPointCloud cloud = load_cloud(cfg.cloud_path);
    cloud.residual_tol = cfg.residual_tol;
    if (!vf.generators.empty()) validate_on_variety(cloud, vf.generators);
    return cloud;
}

// |N_k| must reproduce the standard monomial count at every level.
void gate_levels(const OkounkovResult& res) {
    for (std::size_t i = 0; i < res.levels.size(); ++i)
        if (res.levels[i].size() != res.dims[i])
            throw std::runtime_error("level gate failure: |N_" + std::to_string(i + 1) +
                                     "| = " + std::to_string(res.levels[i].size()) +
                                     " but dimension is " + std::to_string(res.dims[i]));
}

void cmd_parse(const RunConfig& cfg) {
    VarietyFile vf = load_variety(cfg.variety_path);
    for (const auto& g : vf.generators) std::cout << to_string(g) << "\n";
}

void cmd_groebner(const RunConfig& cfg) {
    VarietyFile vf = load_variety(cfg.variety_path);
    log("running basis completion");
    NormalFormAlgebra alg = vf.algebra();
    Json j;
    j["basis"] = Json::array();
    for (const auto& g : alg.basis().elements()) {
        j["basis"].push_back(to_string(g));
        std::cout << to_string(g) << "\n";
    }
    j["leading"] = Json::array();
    for (const auto& l : alg.basis().leading_monomials())
        j["leading"].push_back(exponent_to_json(l));
    save_json(cfg, "groebner.json", std::move(j));
}

OkounkovResult body_pipeline(const VarietyFile& vf, int kmax) {
    NormalFormAlgebra alg = vf.algebra();
    ImplicitChart chart(alg, vf.base_point, default_precision(kmax));
    log("computing N_k through k = " + std::to_string(kmax));
    OkounkovResult res = okounkov_body(alg, chart, kmax);
    gate_levels(res);
    return res;
}

void write_okounkov(const RunConfig& cfg, const OkounkovResult& res) {
    Json j = okounkov_to_json(res);
    j["lattice"] = Json::array();
    for (int k = 1; k <= static_cast<int>(res.levels.size()); ++k) {
        LatticeReport rep = lattice_check(res, k);
        Json lj;
        lj["k"] = k;
        lj["equality"] = rep.equality;
        lj["count"] = rep.nk_count;
        j["lattice"].push_back(std::move(lj));
    }
    save_json(cfg, "okounkov.json", std::move(j));
    save_csv(cfg, "okounkov.csv", okounkov_csv(res));
}

void cmd_okounkov(const RunConfig& cfg) {
    if (cfg.kmax < 2) throw std::invalid_argument("okounkov: --kmax must be >= 2");
    VarietyFile vf = load_variety(cfg.variety_path);
    write_okounkov(cfg, body_pipeline(vf, cfg.kmax));
}

void cmd_cheb(const RunConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("cheb: --k must be >= 1");
    VarietyPointCloud probe =
        cfg.variety_path.empty() ? load_cloud(cfg.cloud_path) : VarietyPointCloud{};
    VarietyFile vf = resolve_variety(cfg, probe.ambient_dim());
    VarietyPointCloud cloud = resolve_cloud(cfg, vf);
    OkounkovResult res = body_pipeline(vf, std::max(cfg.k, 2));
    std::optional<double> margin;
    if (cfg.margin > 0) margin = cfg.margin;
    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    log("transform grid at k = " + std::to_string(cfg.k));
    ChebyshevTransformGrid grid = chebyshev_transform(cloud, res.levels[cfg.k - 1],
                                                      res.body, margin, cfg.gap_tol,
                                                      std::max(threads, 1));
    save_json(cfg, "cheb_transform.json", transform_to_json(grid));
    save_csv(cfg, "cheb_transform.csv", transform_csv(grid));
    if (grid.certified_count < grid.total)
        throw std::runtime_error("transform not certified: " +
                                 std::to_string(grid.total - grid.certified_count) +
                                 " solve(s) missed the gap tolerance");
}

void cmd_fekete(const RunConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("fekete: --k must be >= 1");
    VarietyPointCloud probe =
        cfg.variety_path.empty() ? load_cloud(cfg.cloud_path) : VarietyPointCloud{};
    VarietyFile vf = resolve_variety(cfg, probe.ambient_dim());
    VarietyPointCloud cloud = resolve_cloud(cfg, vf);
    NormalFormAlgebra alg = vf.algebra();
    ImplicitChart chart(alg, vf.base_point, default_precision(cfg.k));
    NuSet basis = compute_Nk(alg, chart, cfg.k);
    log("searching " + std::to_string(basis.size()) + " points among " +
        std::to_string(cloud.size()));
    FeketeResult res = fekete_search(cloud, basis_polynomials(basis), cfg.k,
                                     fekete_config(cfg));
    save_json(cfg, "fekete.json", fekete_to_json(res, cloud));
}

void cmd_tdiam(const RunConfig& cfg) {
    if (cfg.kmax < 1) throw std::invalid_argument("tdiam: --kmax must be >= 1");
    VarietyPointCloud probe =
        cfg.variety_path.empty() ? load_cloud(cfg.cloud_path) : VarietyPointCloud{};
    VarietyFile vf = resolve_variety(cfg, probe.ambient_dim());
    VarietyPointCloud cloud = resolve_cloud(cfg, vf);
    NormalFormAlgebra alg = vf.algebra();
    ImplicitChart chart(alg, vf.base_point, default_precision(cfg.kmax));
    log("diameter table through k = " + std::to_string(cfg.kmax));
    auto rows = diameters(cloud, alg, chart, cfg.kmax, fekete_config(cfg));
    save_json(cfg, "diameter.json", diameter_to_json(rows));
    save_csv(cfg, "dk_sequence.csv", dk_sequence_csv(rows));
}

void cmd_compare(const RunConfig& cfg) {
    if (!cfg.run_sandwich && !cfg.run_integral && !cfg.run_homogeneous &&
        !cfg.run_projection && !cfg.run_circled)
        throw std::invalid_argument("compare: select at least one harness flag");

    Json j;
    std::vector<SandwichReport> sandwiches;
    if (cfg.run_sandwich || cfg.run_integral || cfg.run_homogeneous ||
        cfg.run_projection) {
        if (cfg.k < 1) throw std::invalid_argument("compare: --k must be >= 1");
        VarietyPointCloud probe =
            cfg.variety_path.empty() ? load_cloud(cfg.cloud_path) : VarietyPointCloud{};
        VarietyFile vf = resolve_variety(cfg, probe.ambient_dim());
        VarietyPointCloud cloud = resolve_cloud(cfg, vf);
        NormalFormAlgebra alg = vf.algebra();
        ImplicitChart chart(alg, vf.base_point, default_precision(cfg.k));

        if (cfg.run_sandwich || cfg.run_integral) {
            NuSet basis = compute_Nk(alg, chart, cfg.k);
            FeketeConfig fc;
            fc.strategy = FeketeConfig::Strategy::Exhaustive;
            log("exhaustive search for the sandwich bounds");
            FeketeResult fek =
                fekete_search(cloud, basis_polynomials(basis), cfg.k, fc);
            if (cfg.run_sandwich) {
                SandwichReport rep = sandwich_check(cloud, basis, fek, 1e-9, cfg.gap_tol);
                j["sandwich"] = sandwich_to_json(rep);
                sandwiches.push_back(rep);
            }
            if (cfg.run_integral)
                j["integral"] =
                    integral_to_json(integral_formula_compare(cloud, basis, fek));
        }
        if (cfg.run_homogeneous) {
            auto monos = detail::grevlex_monomials(cloud.ambient_dim(), cfg.k);
            if (cloud.size() < monos.size())
                throw std::invalid_argument("compare: need at least " +
                                            std::to_string(monos.size()) + " points");
            std::vector<CPoint> pts(cloud.points.begin(),
                                    cloud.points.begin() + monos.size());
            j["homogeneous"] = homogeneous_to_json(homogeneous_identity(pts, cfg.k));
        }
        if (cfg.run_projection)
            j["projection"] = projection_to_json(projection_invariance(cloud, cfg.k));
    }
    if (cfg.run_circled) {
        int k = cfg.k >= 1 ? cfg.k : 3;
        double m = cfg.margin > 0 ? cfg.margin : 0.0;
        log("orbit-union harness with " + std::to_string(cfg.angles) + " angles");
        j["circled"] = circled_to_json(
            circled_equality(cfg.angles, k, cfg.half_orbit, 5e-3, m, cfg.gap_tol));
    }
    save_json(cfg, "comparisons.json", std::move(j));
    if (!sandwiches.empty()) save_csv(cfg, "sandwich.csv", sandwich_csv(sandwiches));
}

void cmd_demo(const RunConfig& cfg) {
    if (cfg.demo_target != "sphere")
        throw std::invalid_argument("demo: unknown target '" + cfg.demo_target + "'");
    int kmax = cfg.kmax >= 2 ? cfg.kmax : 4;
    VarietyFile vf = sphere_variety();

    OkounkovResult body = body_pipeline(vf, kmax);
    write_okounkov(cfg, body);

    auto sampled = [&](int n) {
        VarietyPointCloud c = sample_real_sphere(n, cfg.seed);
        c.residual_tol = cfg.residual_tol;
        validate_on_variety(c, vf.generators);
        return c;
    };
    NormalFormAlgebra alg = vf.algebra();
    ImplicitChart chart(alg, vf.base_point, default_precision(std::max(kmax, 3)));

    std::vector<SandwichReport> sandwiches;
    Json comparisons;
    comparisons["integral"] = Json::array();
    for (int k : {1, 2}) {
        VarietyPointCloud c = sampled(k == 1 ? 8 : 11);
        NuSet basis = compute_Nk(alg, chart, k);
        FeketeConfig fc;
        fc.strategy = FeketeConfig::Strategy::Exhaustive;
        FeketeResult fek = fekete_search(c, basis_polynomials(basis), k, fc);
        sandwiches.push_back(sandwich_check(c, basis, fek, 1e-9, cfg.gap_tol));
        comparisons["integral"].push_back(
            integral_to_json(integral_formula_compare(c, basis, fek)));
    }
    save_csv(cfg, "sandwich.csv", sandwich_csv(sandwiches));

    VarietyPointCloud big = sampled(60);
    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    ChebyshevTransformGrid grid =
        chebyshev_transform(big, body.levels[1], body.body, std::nullopt, cfg.gap_tol,
                            std::max(threads, 1));
    save_json(cfg, "cheb_transform.json", transform_to_json(grid));
    save_csv(cfg, "cheb_transform.csv", transform_csv(grid));

    auto rows = diameters(big, alg, chart, std::min(kmax, 3), {});
    save_json(cfg, "diameter.json", diameter_to_json(rows));
    save_csv(cfg, "dk_sequence.csv", dk_sequence_csv(rows));

    comparisons["sandwich"] = Json::array();
    for (const auto& rep : sandwiches) comparisons["sandwich"].push_back(sandwich_to_json(rep));
    comparisons["projection"] = projection_to_json(projection_invariance(big, 2));
    save_json(cfg, "comparisons.json", std::move(comparisons));
}

void validate(const RunConfig& cfg) {
    if (cfg.gap_tol <= 0 || cfg.residual_tol <= 0)
        throw std::invalid_argument("tolerances must be positive");
    if (cfg.margin < 0) throw std::invalid_argument("margin must be nonnegative");
    if (cfg.k > 16 || cfg.kmax > 16)
        throw std::invalid_argument("k and kmax are capped at 16");
    if (cfg.k < 0 || cfg.kmax < 0) throw std::invalid_argument("k and kmax are nonnegative");
    if (cfg.format != "json" && cfg.format != "csv")
        throw std::invalid_argument("format must be json or csv");
    if (cfg.angles < 1) throw std::invalid_argument("angles must be >= 1");
}

int fail(int code, const std::string& message) {
    Json err;
    err["error"]["code"] = code;
    err["error"]["message"] = message;
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Okounkov bodies, Chebyshev transforms, and transfinite diameters on "
                 "algebraic varieties"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--variety", cfg.variety_path, "variety description file");
        sub->add_option("--cloud", cfg.cloud_path, "point cloud file (json or csv)");
        sub->add_option("--k", cfg.k, "working degree");
        sub->add_option("--kmax", cfg.kmax, "maximum degree");
        sub->add_option("--gap-tol", cfg.gap_tol, "certificate gap tolerance");
        sub->add_option("--residual-tol", cfg.residual_tol, "on-variety residual tolerance");
        sub->add_option("--margin", cfg.margin, "boundary margin for grid directions");
        sub->add_option("--seed", cfg.seed, "sampling seed");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "artifact format: json or csv");
        sub->add_option("--strategy", cfg.strategy,
                        "point search: greedy, exchange, or exhaustive");
    };

    CLI::App* parse = app.add_subcommand("parse", "echo canonical generator forms");
    CLI::App* groebner = app.add_subcommand("groebner", "write the reduced basis");
    CLI::App* okounkov = app.add_subcommand("okounkov", "compute the limit body");
    CLI::App* cheb = app.add_subcommand("cheb", "sampled transform grid");
    CLI::App* fekete = app.add_subcommand("fekete", "extremal point search");
    CLI::App* tdiam = app.add_subcommand("tdiam", "diameter sequence table");
    CLI::App* compare = app.add_subcommand("compare", "cross-check harnesses");
    CLI::App* demo = app.add_subcommand("demo", "end-to-end pipeline on a built-in model");
    for (CLI::App* sub : {parse, groebner, okounkov, cheb, fekete, tdiam, compare, demo})
        add_common(sub);
    parse->get_option("--variety")->required();
    groebner->get_option("--variety")->required();
    okounkov->get_option("--variety")->required();
    compare->add_flag("--sandwich", cfg.run_sandwich, "product bounds on the determinant");
    compare->add_flag("--integral", cfg.run_integral, "mean-value consistency");
    compare->add_flag("--homogeneous", cfg.run_homogeneous, "chart determinant identity");
    compare->add_flag("--projection", cfg.run_projection, "fiber-blind subfamily checks");
    compare->add_flag("--circled", cfg.run_circled, "orbit-union restricted vs full");
    compare->add_flag("--half-orbit", cfg.half_orbit, "negative control sampling");
    compare->add_option("--angles", cfg.angles, "points per orbit");
    demo->add_option("target", cfg.demo_target, "pipeline target")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(1, e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        validate(cfg);
        if (parse->parsed()) cmd_parse(cfg);
        else if (groebner->parsed()) cmd_groebner(cfg);
        else if (okounkov->parsed()) cmd_okounkov(cfg);
        else if (cheb->parsed()) cmd_cheb(cfg);
        else if (fekete->parsed()) cmd_fekete(cfg);
        else if (tdiam->parsed()) cmd_tdiam(cfg);
        else if (compare->parsed()) cmd_compare(cfg);
        else if (demo->parsed()) cmd_demo(cfg);
        return 0;
    } catch (const varcap::ParseError& e) {
        return fail(1, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(1, e.what());
    } catch (const std::domain_error& e) {
        return fail(3, e.what());
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        if (msg.find("not verifiable") != std::string::npos ||
            msg.find("not certified") != std::string::npos)
            return fail(2, msg);
        if (msg.find("infeasible") != std::string::npos) return fail(1, msg);
        return fail(3, msg);
    } catch (const std::exception& e) {
        return fail(3, e.what());
    }
}
