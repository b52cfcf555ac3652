#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hotspots/harness.hpp"
#include "json.hpp"

using namespace hotspots;
using nlohmann::json;

namespace {

// Flags as given on the command line; unset values fall back to catalog defaults.
struct Flags {
    std::string domain;
    std::string spec;
    std::vector<std::string> params;
    std::optional<int> nf;
    std::string nf_per_curve;
    std::optional<double> mu, radius, kappa, target_k;
    std::optional<int> ell;
    int contour_n = 24;
    std::uint64_t seed = 42;
    double rank_tol = 1e-4;
    double residual_tol = 1e-6;
    double imag_tol = 1e-6;
    int resolution = 100;
    std::string out = ".";
    std::string replay;
    std::string nf_list;
    std::string reference;
    std::vector<std::string> starts_max, starts_min;
    int boundary_samples = 2000;
    std::string dump_matrix;
};

// Fully resolved inputs; echoed into every report and accepted by --replay.
struct Inputs {
    std::string verb;
    DomainInput domain;
    int nf = 0;
    std::vector<int> nf_per_curve;
    double mu = 2.0, radius = 0.5;
    int ell = 10, contour_n = 24;
    std::uint64_t seed = 42;
    double rank_tol = 1e-4, residual_tol = 1e-6, imag_tol = 1e-6;
    double kappa = 1.1;
    int resolution = 100;
    std::vector<int> nf_list;
    std::string reference;
    std::optional<double> reference_value;
    std::vector<Point2> starts_max, starts_min;
    std::optional<double> target_k;
    int boundary_samples = 2000;
};

std::vector<int> parse_ints(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

Point2 parse_point(const std::string &text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected x,y but got '" + text + "'");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

ParamMap parse_params(const std::vector<std::string> &items) {
    ParamMap out;
    for (const auto &item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value but got '" + item + "'");
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

Inputs resolve(const std::string &verb, const Flags &f) {
    Inputs in;
    in.verb = verb;
    in.domain = {f.domain, parse_params(f.params), f.spec};
    if (in.domain.name.empty() && in.domain.spec_path.empty())
        throw std::invalid_argument("give --domain <name> or --spec <file>");
    const DomainInfo *info = in.domain.info();
    const RunDefaults d = info ? info->defaults : RunDefaults{};
    in.nf = f.nf.value_or(d.faces_per_curve);
    in.nf_per_curve = parse_ints(f.nf_per_curve);
    in.mu = f.mu.value_or(d.mu);
    in.radius = f.radius.value_or(d.radius);
    in.ell = f.ell.value_or(d.ell);
    in.contour_n = f.contour_n;
    in.seed = f.seed;
    in.rank_tol = f.rank_tol;
    in.residual_tol = f.residual_tol;
    in.imag_tol = f.imag_tol;
    in.kappa = f.kappa.value_or(d.kappa);
    in.resolution = f.resolution;
    in.nf_list = parse_ints(f.nf_list);
    in.reference = f.reference;
    for (const auto &s : f.starts_max) in.starts_max.push_back(parse_point(s));
    for (const auto &s : f.starts_min) in.starts_min.push_back(parse_point(s));
    if (in.starts_max.empty()) in.starts_max = d.starts_max;
    if (in.starts_min.empty()) in.starts_min = d.starts_min;
    in.target_k = f.target_k;
    in.boundary_samples = f.boundary_samples;
    return in;
}

json points_json(const std::vector<Point2> &pts) {
    json a = json::array();
    for (Point2 p : pts) a.push_back({p.x, p.y});
    return a;
}

std::vector<Point2> points_from(const json &a) {
    std::vector<Point2> out;
    for (const auto &p : a) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return out;
}

json inputs_json(const Inputs &in) {
    json j;
    j["verb"] = in.verb;
    j["domain"] = in.domain.name;
    j["params"] = in.domain.params;
    j["spec"] = in.domain.spec_path;
    j["nf"] = in.nf;
    j["nf_per_curve"] = in.nf_per_curve;
    j["mu"] = in.mu;
    j["radius"] = in.radius;
    j["ell"] = in.ell;
    j["contour_n"] = in.contour_n;
    j["seed"] = in.seed;
    j["rank_tol"] = in.rank_tol;
    j["residual_tol"] = in.residual_tol;
    j["imag_tol"] = in.imag_tol;
    j["kappa"] = in.kappa;
    j["resolution"] = in.resolution;
    j["nf_list"] = in.nf_list;
    j["reference"] = in.reference;
    j["starts_max"] = points_json(in.starts_max);
    j["starts_min"] = points_json(in.starts_min);
    j["target_k"] = in.target_k ? json(*in.target_k) : json(nullptr);
    j["boundary_samples"] = in.boundary_samples;
    return j;
}

Inputs inputs_from(const json &j) {
    Inputs in;
    in.verb = j.at("verb");
    in.domain.name = j.at("domain");
    in.domain.params = j.at("params").get<ParamMap>();
    in.domain.spec_path = j.at("spec");
    in.nf = j.at("nf");
    in.nf_per_curve = j.at("nf_per_curve").get<std::vector<int>>();
    in.mu = j.at("mu");
    in.radius = j.at("radius");
    in.ell = j.at("ell");
    in.contour_n = j.at("contour_n");
    in.seed = j.at("seed");
    in.rank_tol = j.at("rank_tol");
    in.residual_tol = j.at("residual_tol");
    in.imag_tol = j.at("imag_tol");
    in.kappa = j.at("kappa");
    in.resolution = j.at("resolution");
    in.nf_list = j.at("nf_list").get<std::vector<int>>();
    in.reference = j.at("reference");
    in.starts_max = points_from(j.at("starts_max"));
    in.starts_min = points_from(j.at("starts_min"));
    if (!j.at("target_k").is_null()) in.target_k = j.at("target_k").get<double>();
    in.boundary_samples = j.at("boundary_samples");
    return in;
}

SolverParams solver_params(const Inputs &in) {
    SolverParams p;
    p.contour = {in.mu, in.radius, in.contour_n};
    p.beyn.probe_cols = in.ell;
    p.beyn.seed = in.seed;
    p.beyn.rank_tol = in.rank_tol;
    p.beyn.residual_tol = in.residual_tol;
    p.beyn.imag_tol = in.imag_tol;
    return p;
}

json eigen_json(const BeynResult &r, const BeynConfig &cfg) {
    json a = json::array();
    for (const auto &p : r.pairs)
        a.push_back({{"k_re", p.k.real()},
                     {"k_im", p.k.imag()},
                     {"residual", p.residual},
                     {"cluster", p.cluster},
                     {"cluster_size", p.cluster_size},
                     {"inside_contour", p.inside_contour},
                     {"small_imag", p.small_imag},
                     {"accepted", p.accepted(cfg)}});
    return a;
}

json extremum_json(const ExtremumReport &e, int vector) {
    return {{"kind", e.kind == ExtremumReport::Kind::max ? "max" : "min"},
            {"x", e.location.x},
            {"y", e.location.y},
            {"value", e.value},
            {"boundary_value", e.boundary_value},
            {"interior", e.interior},
            {"aleph", e.aleph},
            {"converged", e.converged},
            {"eigenvector", vector}};
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

void print_eigenvalues(const BeynResult &r, const BeynConfig &cfg) {
    std::cout << "rank " << r.rank << '\n';
    for (const auto &p : r.pairs)
        std::cout << (p.accepted(cfg) ? "  accepted " : "  rejected ") << "k = " << p.k.real() << ' ' << std::showpos
                  << p.k.imag() << std::noshowpos << "i  residual " << p.residual << "  multiplicity "
                  << p.cluster_size << '\n';
    for (const auto &w : r.warnings) std::cerr << "warning: " << w << '\n';
}

int run(const Inputs &in, const std::filesystem::path &out_dir, const std::string &dump_matrix) {
    std::filesystem::create_directories(out_dir);
    json report;
    report["inputs"] = inputs_json(in);
    const SolverParams params = solver_params(in);
    std::cout.precision(15);

    if (in.verb == "solve") {
        const DomainSpec domain = in.domain.build();
        const auto outcome = run_solve(domain, faces_per_curve(domain, in.nf, in.nf_per_curve), params);
        if (!dump_matrix.empty()) {
            const double k = in.target_k.value_or(in.mu);
            write_matrix_binary(dump_matrix, BemOperator(outcome.mesh).assemble(k));
        }
        print_eigenvalues(outcome.result, params.beyn);
        report["eigenvalues"] = eigen_json(outcome.result, params.beyn);
        report["rank"] = outcome.result.rank;
        report["singular_values"] = std::vector<double>(outcome.result.singular_values.data(),
                                                        outcome.result.singular_values.data() +
                                                            outcome.result.singular_values.size());
        report["warnings"] = outcome.result.warnings;
        report["extrema"] = json::array();
        report["timings"] = {{"assemble_s", outcome.timings.assemble_s},
                             {"solve_s", outcome.timings.solve_s},
                             {"field_s", 0.0}};
    } else if (in.verb == "converge") {
        const DomainSpec domain = in.domain.build();
        double ref = 0.0;
        if (!in.reference.empty()) {
            try {
                ref = reference_value(in.reference).value;
            } catch (const std::invalid_argument &) {
                try {
                    ref = std::stod(in.reference);
                } catch (const std::exception &) {
                    throw std::invalid_argument("unknown reference '" + in.reference + "'");
                }
            }
        } else if (auto k = published_eigenvalue(in.domain.name, in.domain.params)) {
            ref = *k;
        } else {
            throw std::invalid_argument("converge needs --reference");
        }
        std::vector<int> list = in.nf_list.empty() ? std::vector<int>{in.nf, 2 * in.nf, 4 * in.nf} : in.nf_list;
        const auto rows = run_convergence(domain, list, params, ref);
        std::ostringstream csv;
        csv.imbue(std::locale::classic());
        csv.precision(17);
        csv << "n_f,n_c,k_re,k_im,multiplicity,error,eoc\n";
        json jrows = json::array();
        for (const auto &r : rows) {
            csv << r.n_f << ',' << r.n_c << ',' << r.k.real() << ',' << r.k.imag() << ',' << r.multiplicity << ','
                << r.error << ',';
            if (r.eoc) csv << *r.eoc;
            csv << '\n';
            std::cout << "n_f " << r.n_f << "  n_c " << r.n_c << "  error " << r.error;
            if (r.eoc) std::cout << "  eoc " << *r.eoc;
            std::cout << '\n';
            jrows.push_back({{"n_f", r.n_f},
                             {"n_c", r.n_c},
                             {"k_re", r.k.real()},
                             {"k_im", r.k.imag()},
                             {"multiplicity", r.multiplicity},
                             {"error", r.error},
                             {"eoc", r.eoc ? json(*r.eoc) : json(nullptr)}});
        }
        write_text(out_dir / "convergence.csv", csv.str());
        report["reference"] = ref;
        report["convergence"] = jrows;
        report["eigenvalues"] = json::array();
        for (const auto &r : rows)
            report["eigenvalues"].push_back(
                {{"k_re", r.k.real()}, {"k_im", r.k.imag()}, {"residual", nullptr}, {"cluster", 0}});
        report["extrema"] = json::array();
        report["timings"] = {{"assemble_s", 0.0}, {"solve_s", 0.0}, {"field_s", 0.0}};
    } else if (in.verb == "field" || in.verb == "hotspots") {
        HotspotRequest req;
        req.domain = in.domain;
        req.faces = in.nf;
        req.faces_per_curve = in.nf_per_curve;
        req.params = params;
        req.kappa = in.kappa;
        req.resolution = in.resolution;
        req.starts_max = in.starts_max;
        req.starts_min = in.starts_min;
        req.target_k = in.target_k;
        if (!req.target_k && req.domain.spec_path.empty())
            req.target_k = published_eigenvalue(req.domain.name, req.domain.params);
        req.options.boundary_samples = in.boundary_samples;
        if (in.verb == "field" && req.resolution <= 0) throw std::invalid_argument("field needs --resolution > 0");
        const HotspotRun run = run_hotspots(req);
        print_eigenvalues(run.solve.result, params.beyn);
        report["eigenvalues"] = eigen_json(run.solve.result, params.beyn);
        report["rank"] = run.solve.result.rank;
        report["warnings"] = run.solve.result.warnings;
        report["selected"] = {{"k_re", run.eigenvalue.k.real()},
                              {"k_im", run.eigenvalue.k.imag()},
                              {"multiplicity", run.eigenvalue.multiplicity}};
        json extrema = json::array();
        for (std::size_t v = 0; v < run.vectors.size(); ++v) {
            const auto &r = run.vectors[v].report;
            extrema.push_back(extremum_json(r.max, static_cast<int>(v)));
            extrema.push_back(extremum_json(r.min, static_cast<int>(v)));
            std::cout << "eigenvector " << v << ": max " << r.max.value << " at (" << r.max.location.x << ", "
                      << r.max.location.y << ") aleph_max - 1 = " << r.max.aleph - 1.0
                      << (r.max.interior ? " interior" : " boundary") << "\n               min " << r.min.value
                      << " at (" << r.min.location.x << ", " << r.min.location.y
                      << ") aleph_min - 1 = " << r.min.aleph - 1.0 << (r.min.interior ? " interior" : " boundary")
                      << '\n';
        }
        report["extrema"] = extrema;
        if (run.grid) {
            run.grid->write_csv((out_dir / "grid.csv").string());
            write_text(out_dir / "grid.json", run.grid->to_json());
        }
        report["timings"] = {{"assemble_s", run.timings.assemble_s},
                             {"solve_s", run.timings.solve_s},
                             {"field_s", run.timings.field_s}};
    } else {
        throw std::invalid_argument("unknown verb '" + in.verb + "'");
    }
    write_text(out_dir / "report.json", report.dump(2) + "\n");
    return 0;
}

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--domain", f.domain, "registry domain name");
    cmd->add_option("--spec", f.spec, "domain-spec JSON file");
    cmd->add_option("--param", f.params, "domain parameter key=value (repeatable)");
    cmd->add_option("--nf", f.nf, "faces per curve");
    cmd->add_option("--nf-per-curve", f.nf_per_curve, "comma-separated faces per curve");
    cmd->add_option("--mu", f.mu, "contour centre");
    cmd->add_option("--radius", f.radius, "contour radius");
    cmd->add_option("--ell", f.ell, "probe columns");
    cmd->add_option("--contour-n", f.contour_n, "contour quadrature points")->capture_default_str();
    cmd->add_option("--seed", f.seed, "probe seed")->capture_default_str();
    cmd->add_option("--rank-tol", f.rank_tol, "rank test tolerance")->capture_default_str();
    cmd->add_option("--residual-tol", f.residual_tol, "accepted residual")->capture_default_str();
    cmd->add_option("--imag-tol", f.imag_tol, "imaginary-part flag tolerance")->capture_default_str();
    cmd->add_option("--kappa", f.kappa, "grid window half-width");
    cmd->add_option("--resolution", f.resolution, "grid points per axis")->capture_default_str();
    cmd->add_option("--target-k", f.target_k, "eigenvalue to analyse");
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
    cmd->add_option("--replay", f.replay, "re-run the inputs of a report.json");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Neumann eigenvalues and hot spots of planar domains"};
    app.require_subcommand(1);
    Flags f;
    auto *solve_cmd = app.add_subcommand("solve", "eigenvalues inside a contour");
    auto *conv_cmd = app.add_subcommand("converge", "eigenvalue error and EOC over doubling meshes");
    auto *field_cmd = app.add_subcommand("field", "eigenfunction on a grid");
    auto *hot_cmd = app.add_subcommand("hotspots", "interior versus boundary extrema");
    auto *list_cmd = app.add_subcommand("list-domains", "registered domains");
    for (auto *cmd : {solve_cmd, conv_cmd, field_cmd, hot_cmd}) add_common(cmd, f);
    solve_cmd->add_option("--dump-matrix", f.dump_matrix, "write M(target-k or mu) as binary");
    conv_cmd->add_option("--nf-list", f.nf_list, "comma-separated doubling face counts");
    conv_cmd->add_option("--reference", f.reference, "reference name or value");
    for (auto *cmd : {field_cmd, hot_cmd}) {
        cmd->add_option("--start-max", f.starts_max, "Nelder-Mead start x,y for the maximum (repeatable)");
        cmd->add_option("--start-min", f.starts_min, "Nelder-Mead start x,y for the minimum (repeatable)");
        cmd->add_option("--boundary-samples", f.boundary_samples, "boundary samples per curve")
            ->capture_default_str();
    }
    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            std::cout << list_domains();
            return 0;
        }
        std::string verb;
        for (auto *cmd : {solve_cmd, conv_cmd, field_cmd, hot_cmd})
            if (cmd->parsed()) verb = cmd->get_name();
        Inputs in;
        if (!f.replay.empty()) {
            std::ifstream file(f.replay);
            if (!file) throw std::runtime_error("cannot open '" + f.replay + "'");
            in = inputs_from(json::parse(file).at("inputs"));
        } else {
            in = resolve(verb, f);
        }
        return run(in, f.out, f.dump_matrix);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
