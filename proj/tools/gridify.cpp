// gridify: map simple polygons to grid (pixel) polygons with certified
// Hausdorff or Frechet quality, measure similarity, and run experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridify/experiment.hpp"
#include "gridify/fixtures.hpp"
#include "gridify/frechet_construct.hpp"
#include "gridify/frechet_distance.hpp"
#include "gridify/hausdorff_construct.hpp"
#include "gridify/io.hpp"
#include "gridify/metrics.hpp"
#include "gridify/narrowness.hpp"

using nlohmann::json;
using namespace gridify;

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_file(out_path, content);
}

struct Options {
    std::string in, out, svg, report;
    std::string poly_path, cells_path, config_path;
    std::string strategy = "arbitrary";
    std::vector<std::string> post;
    double tol = 1e-4;
    double alpha = std::sqrt(2.0);
    unsigned seed = 1;
    int jobs = 1;
    // fixture parameters
    double beta = 2.0;
    int n = 20;
    double length = 10.0, width = 0.5;
    int turns = 0;
};

void write_cells_outputs(const Options& opt, const Polygon* p, const CellSet& cells) {
    emit(opt.out, cellset_to_json(cells).dump(2) + "\n");
    if (!opt.svg.empty()) write_file(opt.svg, render_svg(p, &cells));
}

int cmd_hausdorff(const Options& opt) {
    Polygon p = load_polygon(opt.in);
    Q4Strategy strat;
    if (opt.strategy == "arbitrary")
        strat = Q4Strategy::arbitrary;
    else if (opt.strategy == "greedy")
        strat = Q4Strategy::greedy_overlap;
    else
        throw std::invalid_argument("unknown strategy: " + opt.strategy);
    HausdorffBuild b = construct_hausdorff(p, strat);
    CellSet cells = b.result;
    if (!opt.post.empty()) {
        PostprocessConfig cfg;
        cfg.allow_add = cfg.allow_remove = cfg.allow_shift = false;
        for (const std::string& op : opt.post) {
            if (op == "add") cfg.allow_add = true;
            else if (op == "remove") cfg.allow_remove = true;
            else if (op == "shift") cfg.allow_shift = true;
            else throw std::invalid_argument("unknown post op: " + op);
        }
        cells = postprocess(b, p, cfg);
    }
    write_cells_outputs(opt, &p, cells);
    return 0;
}

int cmd_frechet(const Options& opt) {
    Polygon p = load_polygon(opt.in);
    FrechetBuild b = construct_frechet(p);
    write_cells_outputs(opt, &p, b.cells);
    if (!opt.report.empty()) {
        std::vector<Point> qring = boundary_cycle(b.cells).as_points();
        DistanceResult df = frechet_closed(p.vertices(), qring, opt.tol);
        json rep = {{"beta_measured", b.beta_used},
                    {"claimed_bound", b.claimed_bound},
                    {"measured_frechet", df.value}};
        write_file(opt.report, rep.dump(2) + "\n");
    }
    return 0;
}

int cmd_baseline(const Options& opt) {
    Polygon p = load_polygon(opt.in);
    CellSet cells = optimal_baseline(p);
    write_cells_outputs(opt, &p, cells);
    return 0;
}

int cmd_metrics(const Options& opt) {
    Polygon p = load_polygon(opt.poly_path);
    CellSet q = load_cellset(opt.cells_path);
    if (q.empty()) throw std::invalid_argument("empty cell set");
    json rep;
    rep["symmetric_difference"] = symmetric_difference_area(p, q);
    rep["normalized_symmetric_difference"] = normalized_symmetric_difference(p, q);
    RegionRef rp(p), rq(q);
    rep["hausdorff_region"] = {{"p_to_q", hausdorff_region_directed(rp, rq, opt.tol).value},
                               {"q_to_p", hausdorff_region_directed(rq, rp, opt.tol).value}};
    if (is_simply_connected(q) && point_contacts(q).empty()) {
        std::vector<Point> qring = boundary_cycle(q).as_points();
        double pq = hausdorff_boundary_directed(p.vertices(), qring, opt.tol).value;
        double qp = hausdorff_boundary_directed(qring, p.vertices(), opt.tol).value;
        rep["hausdorff_boundary"] = {
            {"p_to_q", pq}, {"q_to_p", qp}, {"undirected", std::max(pq, qp)}};
        rep["frechet"] = frechet_closed(p.vertices(), qring, opt.tol).value;
    } else {
        rep["hausdorff_boundary"] = nullptr;
        rep["frechet"] = nullptr;
        rep["note"] = "cell set is not a grid polygon; boundary metrics unavailable";
    }
    emit(opt.out, rep.dump(2) + "\n");
    return 0;
}

int cmd_narrowness(const Options& opt) {
    Polygon p = load_polygon(opt.in);
    NarrownessResult r = narrowness(p, opt.alpha);
    json rep = {{"alpha", opt.alpha},
                {"beta", r.beta},
                {"witness",
                 {{"p", {r.witness.p.x, r.witness.p.y}},
                  {"q", {r.witness.q.x, r.witness.q.y}},
                  {"p_arc", r.witness.p_pos.arc_length},
                  {"q_arc", r.witness.q_pos.arc_length},
                  {"euclid", r.witness.euclid},
                  {"along", r.witness.along}}}};
    emit(opt.out, rep.dump(2) + "\n");
    return 0;
}

int cmd_fixture(const Options& opt, const std::string& kind) {
    Polygon p = kind == "comb"     ? comb_polygon(opt.beta)
                : kind == "random" ? random_simple_polygon(opt.n, opt.seed)
                                   : thin_sliver(opt.length, opt.width, opt.turns);
    emit(opt.out, polygon_to_json(p).dump(2) + "\n");
    return 0;
}

int cmd_render(const Options& opt) {
    const Polygon* pp = nullptr;
    Polygon p({{0, 0}, {1, 0}, {0, 1}});
    if (!opt.in.empty()) {
        p = load_polygon(opt.in);
        pp = &p;
    }
    CellSet cells;
    if (!opt.cells_path.empty()) cells = load_cellset(opt.cells_path);
    emit(opt.out, render_svg(pp, opt.cells_path.empty() ? nullptr : &cells));
    return 0;
}

int cmd_nonogram(const Options& opt) {
    CellSet cells = load_cellset(opt.cells_path.empty() ? opt.in : opt.cells_path);
    emit(opt.out, nonogram_text(cells));
    return 0;
}

int cmd_experiment(const Options& opt) {
    std::ifstream f(opt.config_path);
    if (!f) throw IoError("cannot open " + opt.config_path);
    json j;
    f >> j;
    ExperimentConfig cfg;
    for (double r : j.value("resolutions", std::vector<double>{})) cfg.resolutions.push_back(r);
    if (j.contains("offsets"))
        for (const auto& o : j["offsets"])
            cfg.offsets.emplace_back(o[0].get<double>(), o[1].get<double>());
    cfg.random_offsets = j.value("random_offsets", 0);
    cfg.seed = j.value("seed", opt.seed);
    cfg.metric_tol = j.value("metric_tol", opt.tol);
    cfg.jobs = j.value("jobs", opt.jobs);
    cfg.measure_frechet_everywhere = j.value("measure_frechet_everywhere", false);
    for (const auto& a : j.value("algorithms", std::vector<std::string>{}))
        cfg.algorithms.push_back(algorithm_from_name(a));

    std::vector<std::pair<std::string, Polygon>> corpus;
    if (j.contains("corpus"))
        for (const auto& e : j["corpus"])
            corpus.emplace_back(e.at("id").get<std::string>(),
                                load_polygon(e.at("file").get<std::string>()));
    if (j.contains("generated")) {
        const json& g = j["generated"];
        int rc = g.value("random_count", 0);
        int rn = g.value("random_n", 20);
        unsigned rs = g.value("seed", 1u);
        for (int i = 0; i < rc; ++i)
            corpus.emplace_back("random_" + std::to_string(i), random_simple_polygon(rn, rs + i));
        for (double beta : g.value("combs", std::vector<double>{}))
            corpus.emplace_back("comb_" + std::to_string(beta), comb_polygon(beta));
        for (const auto& s : g.value("slivers", std::vector<std::vector<double>>{}))
            corpus.emplace_back("sliver_" + std::to_string(corpus.size()),
                                thin_sliver(s.at(0), s.at(1), s.size() > 2 ? int(s[2]) : 0));
    }
    std::vector<CaseResult> results = run_experiment(cfg, corpus);
    emit(opt.out, experiment_csv(results, j.value("record_runtime", true)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simple polygon -> grid polygon conversion with certified bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--in", opt.in, "input polygon (text or JSON)");
    app.add_option("--out", opt.out, "output file ('-' for stdout)");
    app.add_option("--seed", opt.seed, "random seed");
    app.add_option("--tol", opt.tol, "metric tolerance")->check(CLI::PositiveNumber);
    app.add_option("--jobs", opt.jobs, "worker threads");

    CLI::App* haus = app.add_subcommand("hausdorff", "Hausdorff-bounded construction");
    haus->add_option("--strategy", opt.strategy, "Q4 strategy: arbitrary|greedy");
    haus->add_option("--post", opt.post, "postprocess ops: add,remove,shift")->delimiter(',');
    haus->add_option("--svg", opt.svg, "also render an SVG");

    CLI::App* fre = app.add_subcommand("frechet", "Frechet-bounded construction");
    fre->add_option("--svg", opt.svg, "also render an SVG");
    fre->add_option("--report", opt.report, "write bound report JSON");

    app.add_subcommand("baseline", "50% coverage baseline cell set");

    CLI::App* met = app.add_subcommand("metrics", "similarity metrics between polygon and cells");
    met->add_option("--poly", opt.poly_path, "polygon file")->required();
    met->add_option("--cells", opt.cells_path, "cell set JSON")->required();

    CLI::App* nar = app.add_subcommand("narrowness", "measure alpha-narrowness");
    nar->add_option("--alpha", opt.alpha, "distance threshold (default sqrt 2)")
        ->check(CLI::PositiveNumber);

    CLI::App* fix = app.add_subcommand("fixture", "generate test polygons");
    fix->require_subcommand(1);
    CLI::App* fix_comb = fix->add_subcommand("comb", "narrow comb polygon");
    fix_comb->add_option("--beta", opt.beta, "target narrowness (> sqrt 2)");
    CLI::App* fix_rand = fix->add_subcommand("random", "random simple polygon");
    fix_rand->add_option("--n", opt.n, "vertex count");
    CLI::App* fix_sliver = fix->add_subcommand("sliver", "thin zigzag strip");
    fix_sliver->add_option("--length", opt.length, "centerline length");
    fix_sliver->add_option("--width", opt.width, "strip width");
    fix_sliver->add_option("--turns", opt.turns, "number of turns");

    CLI::App* exp = app.add_subcommand("experiment", "run the experiment protocol");
    exp->add_option("--config", opt.config_path, "experiment config JSON")->required();

    CLI::App* ren = app.add_subcommand("render", "render polygon and/or cells to SVG");
    ren->add_option("--cells", opt.cells_path, "cell set JSON");

    CLI::App* non = app.add_subcommand("nonogram", "emit nonogram clues for a cell set");
    non->add_option("--cells", opt.cells_path, "cell set JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(haus)) return cmd_hausdorff(opt);
        if (app.got_subcommand(fre)) return cmd_frechet(opt);
        if (app.got_subcommand("baseline")) return cmd_baseline(opt);
        if (app.got_subcommand(met)) return cmd_metrics(opt);
        if (app.got_subcommand(nar)) return cmd_narrowness(opt);
        if (app.got_subcommand(fix)) {
            for (const char* kind : {"comb", "random", "sliver"})
                if (fix->got_subcommand(kind)) return cmd_fixture(opt, kind);
        }
        if (app.got_subcommand(exp)) return cmd_experiment(opt);
        if (app.got_subcommand(ren)) return cmd_render(opt);
        if (app.got_subcommand(non)) return cmd_nonogram(opt);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
