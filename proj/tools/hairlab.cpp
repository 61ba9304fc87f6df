// hairlab: command-line front end for the exponential-map hair/measure
// library.  Every subcommand validates its inputs, writes CSV outputs plus a
// config echo into --out, and prints a short summary to stdout.
//
// Exit codes: 0 success, 2 domain error, 3 numerical-resolution failure,
// 64 usage error.

#include <CLI11.hpp>

#include <complex>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hairlab/gauge.hpp"
#include "hairlab/hairs.hpp"
#include "hairlab/itinerary.hpp"
#include "hairlab/measure.hpp"
#include "hairlab/params.hpp"
#include "hairlab/render.hpp"
#include "hairlab/schroeder.hpp"
#include "hairlab/tower.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace hairlab;

struct Echo {
    std::map<std::string, std::string> kv;
    void set(const std::string& k, const std::string& v) { kv[k] = v; }
    void set(const std::string& k, double v) { kv[k] = fmt17(v); }
    void set(const std::string& k, long long v) { kv[k] = std::to_string(v); }
    void write(const std::string& dir, const std::string& sub) const {
        std::filesystem::create_directories(dir);
        std::ofstream out(dir + "/config.txt");
        out << "version=" << kVersion << "\nsubcommand=" << sub << "\n";
        for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
    }
};

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

std::vector<double> parse_d_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

struct ItineraryFlags {
    std::string tail = "zeros";
    std::string block = "0";
    long long bound = 0;
    std::uint64_t seed = 0;
    double t_growth = 3.0;
    std::string prefix;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tail", tail, "tail rule: zeros|periodic|bounded|growth");
        cmd->add_option("--block", block, "periodic tail block, comma-separated");
        cmd->add_option("--bound", bound, "bounded tail symbol bound B");
        cmd->add_option("--seed", seed, "bounded tail seed");
        cmd->add_option("--t-growth", t_growth, "growth tail base point t");
        cmd->add_option("--prefix", prefix, "finite prefix, comma-separated");
    }
    Itinerary build() const {
        Itinerary s;
        if (tail == "zeros") s = Itinerary::zeros();
        else if (tail == "periodic") s = Itinerary::periodic(parse_ll_list(block));
        else if (tail == "bounded") s = Itinerary::bounded(bound, seed);
        else if (tail == "growth") s = Itinerary::growth(t_growth);
        else throw std::domain_error("unknown tail rule: " + tail);
        if (!prefix.empty()) s = s.with_prefix(parse_ll_list(prefix));
        return s;
    }
    void echo(Echo& e) const {
        e.set("tail", tail);
        e.set("block", block);
        e.set("bound", bound);
        e.set("seed", static_cast<long long>(seed));
        e.set("t_growth", t_growth);
        e.set("prefix", prefix.empty() ? std::string("-") : prefix);
    }
};

struct GaugeFlags {
    std::string kind = "power";
    double s = 2.0;
    double gamma = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gauge", kind,
                        "gauge kind: power|p-power|log-power|frac-iter|frac-iter-pow|const");
        cmd->add_option("--gauge-s", s, "gauge exponent/constant");
        cmd->add_option("--gauge-gamma", gamma, "gauge secondary exponent");
    }
    GaugeSpec build(const SchroederFn* f) const {
        if (kind == "power") return GaugeSpec::power(s);
        if (kind == "p-power") return GaugeSpec::from_p_power(s);
        if (kind == "log-power") return GaugeSpec::log_power(s);
        if (kind == "const") return GaugeSpec::from_p_const(s);
        if (!f) throw std::domain_error("fractional-iterate gauge needs a Schroeder build");
        if (kind == "frac-iter") return GaugeSpec::frac_iter(s, f);
        if (kind == "frac-iter-pow") return GaugeSpec::frac_iter_pow(s, gamma, f);
        throw std::domain_error("unknown gauge kind: " + kind);
    }
};

struct PsiFlags {
    std::string kind = "log-quotient";
    double eps = 0.5;

    void attach(CLI::App* cmd) {
        cmd->add_option("--psi", kind, "width profile: log-quotient|frac-iter");
        cmd->add_option("--eps", eps, "width profile exponent");
    }
    GaugeProfile build(const SchroederFn* f) const {
        if (kind == "log-quotient") return GaugeProfile::log_quotient_width(eps);
        if (kind == "frac-iter") {
            if (!f) throw std::domain_error("frac-iter width needs a Schroeder build");
            return GaugeProfile::frac_iter_width(eps, f);
        }
        throw std::domain_error("unknown width profile: " + kind);
    }
};

int run(int argc, char** argv) {
    CLI::App app{"exponential-map hairs, cells, and gauge measures"};
    app.require_subcommand(1);
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    double lambda = 0.25;
    double x0_override = 0.0;
    app.add_option("--lambda", lambda, "map parameter in (0, 1/e)")->capture_default_str();
    app.add_option("--x0", x0_override, "anchor override (> beta)");

    auto params = [&]() {
        return x0_override > 0.0 ? find_fixed_points(lambda, x0_override)
                                 : find_fixed_points(lambda);
    };

    // fixed-points
    auto* c_fp = app.add_subcommand("fixed-points", "fixed points alpha, beta and residuals");

    // schroeder
    auto* c_s = app.add_subcommand("schroeder", "Schroeder conjugacy coefficients");
    std::size_t n_coeffs = 192;
    c_s->add_option("--coeffs", n_coeffs, "number of Taylor coefficients");

    // frac-iter
    auto* c_fi = app.add_subcommand("frac-iter", "real fractional iterate E^r(x)");
    double fi_r = 0.5, fi_x = 10.0;
    bool fi_twice = false;
    c_fi->add_option("--r", fi_r, "iterate exponent (negative for L^|r|)");
    c_fi->add_option("--x", fi_x, "argument");
    c_fi->add_flag("--twice", fi_twice, "also compose two half-steps and compare");

    // hair-trace
    auto* c_ht = app.add_subcommand("hair-trace", "sample a finite-depth hair");
    ItineraryFlags ht_it;
    ht_it.attach(c_ht);
    double ht_ulo = 3.0, ht_uhi = 6.0;
    int ht_depth = 8, ht_samples = 64;
    c_ht->add_option("--u-lo", ht_ulo);
    c_ht->add_option("--u-hi", ht_uhi);
    c_ht->add_option("--depth", ht_depth);
    c_ht->add_option("--samples", ht_samples);

    // endpoint
    auto* c_ep = app.add_subcommand("endpoint", "extrapolated hair endpoint (estimate)");
    ItineraryFlags ep_it;
    ep_it.attach(c_ep);
    int ep_depth = 8;
    double ep_tol = 1e-6;
    c_ep->add_option("--depth", ep_depth);
    c_ep->add_option("--tol", ep_tol);

    // membership
    auto* c_mb = app.add_subcommand("membership", "horizon-certified membership in X(x0, psi)");
    PsiFlags mb_psi;
    mb_psi.attach(c_mb);
    std::string mb_z = "4,0";
    int mb_kmax = 6;
    c_mb->add_option("--z", mb_z, "point re,im");
    c_mb->add_option("--kmax", mb_kmax, "certification horizon");

    // gauge-check
    auto* c_gc = app.add_subcommand("gauge-check", "condp / condp2 predicate scan");
    GaugeFlags gc_g;
    PsiFlags gc_psi;
    gc_g.attach(c_gc);
    gc_psi.attach(c_gc);
    std::string gc_cond = "condp";
    double gc_delta = 0.1, gc_tlo = 10.0, gc_thi = 1e6;
    bool gc_logdom = false;
    c_gc->add_option("--cond", gc_cond, "condp|condp2");
    c_gc->add_option("--delta", gc_delta);
    c_gc->add_option("--t-lo", gc_tlo);
    c_gc->add_option("--t-hi", gc_thi);
    c_gc->add_flag("--log-domain", gc_logdom, "grid variable is ln t");

    // cell-tree
    auto* c_ct = app.add_subcommand("cell-tree", "nested pi-square cell construction");
    PsiFlags ct_psi;
    ct_psi.attach(c_ct);
    std::string ct_z0 = "9.5,0";
    int ct_depth = 3;
    std::size_t ct_cells = 512;
    c_ct->add_option("--z0", ct_z0, "root point re,im");
    c_ct->add_option("--depth", ct_depth);
    c_ct->add_option("--max-cells", ct_cells);

    // measure-check
    auto* c_mc = app.add_subcommand("measure-check", "ku inequalities and mass distribution");
    PsiFlags mc_psi;
    GaugeFlags mc_g;
    mc_psi.attach(c_mc);
    mc_g.attach(c_mc);
    std::string mc_z0 = "9.5,0";
    int mc_depth = 3;
    std::size_t mc_cells = 512, mc_sample = 16;
    c_mc->add_option("--z0", mc_z0);
    c_mc->add_option("--depth", mc_depth);
    c_mc->add_option("--max-cells", mc_cells);
    c_mc->add_option("--sample", mc_sample);

    // box-count
    auto* c_bc = app.add_subcommand("box-count", "gauge box counting on a depth sample");
    GaugeFlags bc_g;
    bc_g.attach(c_bc);
    double bc_eps = 1.0;
    std::string bc_z0 = "9.5,0";
    int bc_jlo = 4, bc_jhi = 14;
    c_bc->add_option("--eps", bc_eps, "width exponent for the sample");
    c_bc->add_option("--z0", bc_z0, "root point re,im");
    c_bc->add_option("--j-lo", bc_jlo, "coarsest scale 2^-j");
    c_bc->add_option("--j-hi", bc_jhi, "finest scale 2^-j");

    // vitali
    auto* c_vt = app.add_subcommand("vitali", "greedy 4r covering selection");
    std::size_t vt_balls = 100, vt_instances = 1;
    std::uint64_t vt_seed = 1;
    c_vt->add_option("--balls", vt_balls);
    c_vt->add_option("--instances", vt_instances);
    c_vt->add_option("--seed", vt_seed);

    // render
    auto* c_rd = app.add_subcommand("render", "escape-time grayscale image (P6)");
    RenderSpec rspec;
    std::string rd_window = "-2,6,-3,3", rd_file = "render.ppm";
    c_rd->add_option("--width", rspec.width);
    c_rd->add_option("--height", rspec.height);
    c_rd->add_option("--iters", rspec.max_iter);
    c_rd->add_option("--window", rd_window, "re_lo,re_hi,im_lo,im_hi");
    c_rd->add_option("--file", rd_file, "image filename inside --out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;  // usage error
    }

    Echo echo;
    echo.set("lambda", lambda);
    if (x0_override > 0.0) echo.set("x0", x0_override);

    if (*c_fp) {
        Params p = params();
        echo.write(out_dir, "fixed-points");
        CsvWriter csv(out_dir + "/fixed_points.csv");
        csv.row({"name", "value", "residual"});
        csv.row({"alpha", fmt17(p.alpha), fmt17(p.lambda * std::exp(p.alpha) - p.alpha)});
        csv.row({"beta", fmt17(p.beta), fmt17(p.lambda * std::exp(p.beta) - p.beta)});
        std::cout << "alpha=" << fmt17(p.alpha) << " beta=" << fmt17(p.beta) << "\n";
    } else if (*c_s) {
        Params p = params();
        SchroederFn f = build_schroeder(p, n_coeffs);
        echo.set("coeffs", static_cast<long long>(n_coeffs));
        echo.write(out_dir, "schroeder");
        CsvWriter csv(out_dir + "/schroeder_coeffs.csv");
        csv.row({"index", "coefficient"});
        for (std::size_t i = 0; i < f.coeffs.size(); ++i)
            csv.row({std::to_string(i), fmt17(f.coeffs[i])});
        std::cout << "radius=" << fmt17(f.radius) << " limit_depth=" << f.limit_depth << "\n";
    } else if (*c_fi) {
        Params p = params();
        SchroederFn f = build_schroeder(p);
        echo.set("r", fi_r);
        echo.set("x", fi_x);
        echo.write(out_dir, "frac-iter");
        TowerReal full = frac_iter(f, fi_r, fi_x);
        CsvWriter csv(out_dir + "/frac_iter.csv");
        csv.row({"r", "x", "value"});
        csv.row({fmt17(fi_r), fmt17(fi_x), tower_to_string(full)});
        std::cout << "E^" << fi_r << "(" << fi_x << ") = " << tower_to_string(full) << "\n";
        if (fi_twice) {
            TowerReal half = frac_iter(f, fi_r / 2.0, frac_iter(f, fi_r / 2.0, fi_x));
            double a = tower_value(p, full), b = tower_value(p, half);
            double rel = std::fabs(a - b) / std::max(1.0, std::fabs(a));
            csv.row({fmt17(fi_r / 2.0), "twice", tower_to_string(half)});
            std::cout << "two half-steps: " << tower_to_string(half)
                      << " rel-diff=" << fmt17(rel) << "\n";
            if (!(rel <= 1e-8)) throw resolution_error("half-step composition disagrees");
        }
    } else if (*c_ht) {
        Params p = params();
        Itinerary s = ht_it.build();
        ht_it.echo(echo);
        echo.set("u_lo", ht_ulo);
        echo.set("u_hi", ht_uhi);
        echo.set("depth", static_cast<long long>(ht_depth));
        echo.set("samples", static_cast<long long>(ht_samples));
        echo.write(out_dir, "hair-trace");
        HairTrace tr = trace_hair(p, s, ht_ulo, ht_uhi, ht_depth, ht_samples);
        CsvWriter csv(out_dir + "/hair_trace.csv");
        csv.row({"u", "depth", "re", "im", "level", "strips"});
        for (const auto& hp : tr.points) {
            std::string re = "-", im = "-", strips;
            if (rdc_is_hardware(p, hp.value)) {
                auto z = rdc_to_complex(p, hp.value);
                re = fmt17(z.real());
                im = fmt17(z.imag());
                auto it = itinerary_of(p, z, std::min(ht_depth, 4));
                for (std::size_t i = 0; i < it.symbols.size(); ++i)
                    strips += (i ? " " : "") + std::to_string(it.symbols[i]);
            }
            csv.row({fmt17(hp.u), std::to_string(hp.depth), re, im,
                     std::to_string(hp.value.magnitude.level), strips});
        }
        std::cout << "traced " << tr.points.size() << " points\n";
    } else if (*c_ep) {
        Params p = params();
        Itinerary s = ep_it.build();
        ep_it.echo(echo);
        echo.set("depth", static_cast<long long>(ep_depth));
        echo.set("tol", ep_tol);
        echo.write(out_dir, "endpoint");
        EndpointEstimate est = estimate_endpoint(p, s, ep_depth, ep_tol);
        CsvWriter csv(out_dir + "/endpoint.csv");
        csv.row({"re", "im", "error_bound", "depth", "status"});
        csv.row({fmt17(est.value.real()), fmt17(est.value.imag()), fmt17(est.error_bound),
                 std::to_string(est.depth), "NUMERICAL-ESTIMATE"});
        std::cout << "endpoint ~ " << fmt17(est.value.real()) << " + " << fmt17(est.value.imag())
                  << "i (error bound " << fmt17(est.error_bound) << ", numerical estimate)\n";
    } else if (*c_mb) {
        Params p = params();
        SchroederFn f = build_schroeder(p);
        GaugeProfile psi = mb_psi.build(&f);
        auto zc = parse_d_list(mb_z);
        if (zc.size() != 2) throw std::domain_error("--z needs re,im");
        echo.set("z", mb_z);
        echo.set("kmax", static_cast<long long>(mb_kmax));
        echo.set("psi", mb_psi.kind);
        echo.set("eps", mb_psi.eps);
        echo.write(out_dir, "membership");
        MembershipVerdict v = in_X(p, psi, {zc[0], zc[1]}, mb_kmax);
        CsvWriter csv(out_dir + "/membership.csv");
        csv.row({"verdict", "violation_k", "reason"});
        csv.row({v.in ? "IN" : "OUT", std::to_string(v.violation_k), v.reason});
        std::cout << (v.in ? "IN (horizon certificate, not a proof)\n"
                           : "OUT at k=" + std::to_string(v.violation_k) + ": " + v.reason + "\n");
    } else if (*c_gc) {
        Params p = params();
        SchroederFn f = build_schroeder(p);
        GaugeSpec g = gc_g.build(&f);
        GaugeProfile psi = gc_psi.build(&f);
        echo.set("cond", gc_cond);
        echo.set("delta", gc_delta);
        echo.set("t_lo", gc_tlo);
        echo.set("t_hi", gc_thi);
        echo.set("gauge", gc_g.kind);
        echo.set("gauge_s", gc_g.s);
        echo.set("psi", gc_psi.kind);
        echo.set("eps", gc_psi.eps);
        echo.write(out_dir, "gauge-check");
        PredicateReport rep;
        if (gc_cond == "condp")
            rep = gc_logdom ? check_condp_ln(g, psi, gc_delta, gc_tlo, gc_thi)
                            : check_condp(g, psi, gc_delta, gc_tlo, gc_thi);
        else if (gc_cond == "condp2")
            rep = gc_logdom ? check_condp2_ln(g, psi, gc_delta, gc_tlo, gc_thi)
                            : check_condp2(g, psi, gc_delta, gc_tlo, gc_thi);
        else
            throw std::domain_error("--cond must be condp or condp2");
        CsvWriter csv(out_dir + "/gauge_check.csv");
        csv.row({gc_logdom ? "ln_t" : "t", "lhs", "rhs", "margin"});
        for (const auto& r : rep.rows) csv.rowv({r.t, r.lhs, r.rhs, r.margin});
        std::cout << (rep.holds_everywhere ? "holds everywhere on the grid" : "has failures")
                  << (rep.t_star_found ? "; t*=" + fmt17(rep.t_star) : "") << "\n";
    } else if (*c_ct || *c_mc) {
        Params p = params();
        SchroederFn f = build_schroeder(p);
        const PsiFlags& pf = *c_ct ? ct_psi : mc_psi;
        const std::string& z0s = *c_ct ? ct_z0 : mc_z0;
        int depth = *c_ct ? ct_depth : mc_depth;
        std::size_t cells = *c_ct ? ct_cells : mc_cells;
        GaugeProfile psi = pf.build(&f);
        auto zc = parse_d_list(z0s);
        if (zc.size() != 2) throw std::domain_error("--z0 needs re,im");
        echo.set("z0", z0s);
        echo.set("depth", static_cast<long long>(depth));
        echo.set("max_cells", static_cast<long long>(cells));
        echo.set("psi", pf.kind);
        echo.set("eps", pf.eps);
        CellTree t = build_cell_tree(p, psi, {zc[0], zc[1]}, depth, cells);
        if (*c_ct) {
            echo.write(out_dir, "cell-tree");
            CsvWriter csv(out_dir + "/cell_tree.csv");
            csv.row({"depth", "row", "col", "x_left", "r", "ln_R_minus_ln_r", "ln_weight",
                     "ln_mu", "rep_re", "rep_im"});
            for (const auto& lvl : t.levels)
                for (const auto& c : lvl.cells)
                    csv.row({std::to_string(c.depth), std::to_string(c.row),
                             std::to_string(c.col), tower_to_string(c.x_left),
                             tower_to_string(c.r), fmt17(kLogRadiusRatio), fmt17(c.lnw_level),
                             fmt17(c.lnmu), fmt17(c.rep.real()), fmt17(c.rep.imag())});
            CsvWriter led(out_dir + "/mass_ledger.csv");
            led.row({"depth", "enumerated", "conservation_residual", "ln_retained",
                     "candidates"});
            for (std::size_t n = 0; n < t.levels.size(); ++n)
                led.row({std::to_string(n), t.levels[n].enumerated ? "1" : "0",
                         fmt17(t.levels[n].conservation_residual),
                         fmt17(t.levels[n].ln_retained),
                         std::to_string(t.levels[n].candidates_total)});
            std::cout << "built " << t.levels.size() - 1 << " levels\n";
        } else {
            GaugeSpec g = mc_g.build(&f);
            echo.set("gauge", mc_g.kind);
            echo.set("gauge_s", mc_g.s);
            echo.set("sample", static_cast<long long>(mc_sample));
            echo.write(out_dir, "measure-check");
            KuReport ku = check_ku_inequalities(t);
            CsvWriter csv(out_dir + "/ku_report.csv");
            csv.row({"depth", "M_hat", "c1_lo", "c1_hi", "eta_hat"});
            for (const auto& r : ku.rows)
                csv.rowv({static_cast<double>(r.depth), r.M_hat, r.c1_lo, r.c1_hi, r.eta_hat});
            MassCheckReport mr = mass_distribution_check(t, g, mc_sample);
            CsvWriter mcsv(out_dir + "/mass_check.csv");
            mcsv.row({"n", "ln_radius", "ln_mu", "ln_h", "ratio_ln"});
            for (const auto& r : mr.rows)
                mcsv.rowv({static_cast<double>(r.n), r.ln_radius, r.ln_mu, r.ln_h, r.ratio_ln});
            std::cout << "ku " << (ku.pass ? "PASS" : "FAIL") << "; mass trend " << mr.verdict
                      << "\n";
        }
    } else if (*c_bc) {
        Params p = params();
        SchroederFn f = build_schroeder(p);
        GaugeProfile psi = GaugeProfile::log_quotient_width(bc_eps);
        GaugeSpec g = bc_g.build(&f);
        auto zc = parse_d_list(bc_z0);
        if (zc.size() != 2) throw std::domain_error("--z0 needs re,im");
        echo.set("eps", bc_eps);
        echo.set("z0", bc_z0);
        echo.set("j_lo", static_cast<long long>(bc_jlo));
        echo.set("j_hi", static_cast<long long>(bc_jhi));
        echo.write(out_dir, "box-count");
        std::vector<double> scales;
        for (int j = bc_jlo; j <= bc_jhi; ++j) scales.push_back(std::ldexp(1.0, -j));
        auto pts = boxdim_sample(p, psi, {zc[0], zc[1]}, scales.back());
        BoxCountResult res = gauge_box_count(pts, g, scales);
        CsvWriter csv(out_dir + "/box_count.csv");
        csv.row({"delta", "boxes", "curve"});
        for (const auto& r : res.rows)
            csv.row({fmt17(r.delta), std::to_string(r.boxes), fmt17(r.curve)});
        std::cout << "points=" << pts.size() << " dimension=" << fmt17(res.dimension)
                  << " +- " << fmt17(res.stderr_dim) << "\n";
    } else if (*c_vt) {
        echo.set("balls", static_cast<long long>(vt_balls));
        echo.set("instances", static_cast<long long>(vt_instances));
        echo.set("seed", static_cast<long long>(vt_seed));
        echo.write(out_dir, "vitali");
        CsvWriter csv(out_dir + "/vitali.csv");
        csv.row({"instance", "input", "selected", "disjoint", "covered"});
        std::size_t passed = 0;
        for (std::size_t inst = 0; inst < vt_instances; ++inst) {
            std::vector<Ball> balls;
            std::uint64_t st = vt_seed + inst;
            auto rnd = [&]() {
                st = hairlab::detail::splitmix64(st);
                return static_cast<double>(st >> 11) / 9007199254740992.0;
            };
            for (std::size_t i = 0; i < vt_balls; ++i)
                balls.push_back({{rnd(), rnd()}, 0.01 + 0.09 * rnd()});
            auto sel = vitali_select(balls);
            bool disjoint = true;
            for (std::size_t a = 0; a < sel.size() && disjoint; ++a)
                for (std::size_t b = a + 1; b < sel.size() && disjoint; ++b)
                    if (std::abs(balls[sel[a]].center - balls[sel[b]].center) <=
                        balls[sel[a]].radius + balls[sel[b]].radius)
                        disjoint = false;
            bool covered = true;
            for (const auto& ball : balls) {
                bool hit = false;
                for (std::size_t j : sel)
                    if (std::abs(ball.center - balls[j].center) + ball.radius <=
                        4.0 * balls[j].radius) {
                        hit = true;
                        break;
                    }
                if (!hit) { covered = false; break; }
            }
            if (disjoint && covered) ++passed;
            csv.row({std::to_string(inst), std::to_string(balls.size()),
                     std::to_string(sel.size()), disjoint ? "1" : "0", covered ? "1" : "0"});
        }
        std::cout << passed << "/" << vt_instances << " instances pass\n";
        if (passed != vt_instances) throw resolution_error("vitali cover verification failed");
    } else if (*c_rd) {
        Params p = params();
        auto wc = parse_d_list(rd_window);
        if (wc.size() != 4) throw std::domain_error("--window needs re_lo,re_hi,im_lo,im_hi");
        rspec.re_lo = wc[0];
        rspec.re_hi = wc[1];
        rspec.im_lo = wc[2];
        rspec.im_hi = wc[3];
        echo.set("width", static_cast<long long>(rspec.width));
        echo.set("height", static_cast<long long>(rspec.height));
        echo.set("iters", static_cast<long long>(rspec.max_iter));
        echo.set("window", rd_window);
        echo.set("threads", static_cast<long long>(render_thread_count()));
        echo.write(out_dir, "render");
        auto img = render_escape(p, rspec);
        write_ppm(out_dir + "/" + rd_file, img, rspec.width, rspec.height);
        std::cout << "wrote " << out_dir << "/" << rd_file << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hairlab::resolution_error& e) {
        std::cerr << "resolution failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::range_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
