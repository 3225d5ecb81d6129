#include "noiselab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "noiselab/acceptance.hpp"
#include "noiselab/algorithms.hpp"
#include "noiselab/dynamical.hpp"
#include "noiselab/fpp.hpp"
#include "noiselab/fractal.hpp"
#include "noiselab/influence.hpp"
#include "noiselab/percolation.hpp"
#include "noiselab/spectral.hpp"
#include "noiselab/zoo.hpp"

namespace noiselab::experiments {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double param(const RunConfig& cfg, const std::string& key, double fallback,
             bool required = false) {
    auto it = cfg.params.find(key);
    if (it != cfg.params.end()) return it->second;
    if (required)
        throw std::invalid_argument("experiment '" + cfg.experiment + "' needs parameter '" +
                                    key + "'");
    return fallback;
}

BitFunction make_zoo(const RunConfig& cfg, int n) {
    const std::string& f = cfg.function;
    if (f == "maj") return zoo::majority(n | 1);
    if (f == "dict") return zoo::dictator(n);
    if (f == "par") return zoo::parity(n);
    if (f == "tribes") return zoo::tribes(n);
    if (f == "iter3maj") return zoo::iter3maj(std::max(1, int(std::log(n) / std::log(3.0) + 0.5)));
    if (f == "random") return zoo::random_function(n, cfg.seed);
    if (f == "clique") return zoo::clique(n, zoo::clique_tuning(std::max(3, n)));
    throw std::invalid_argument("unknown zoo function '" + f + "'");
}

perc::Lattice lattice_of(const RunConfig& cfg) {
    if (cfg.lattice == "tri") return perc::Lattice::TriSite;
    if (cfg.lattice == "z2") return perc::Lattice::Z2Bond;
    throw std::invalid_argument("unknown lattice '" + cfg.lattice + "' (tri|z2)");
}

std::vector<int> radius_grid(int rmax) {
    std::vector<int> radii;
    for (int r = 4; r <= rmax; r *= 2) radii.push_back(r);
    if (radii.size() < 3) throw std::invalid_argument("rmax too small (need >= 16)");
    return radii;
}

// ---- individual experiments -------------------------------------------------

void run_spectrum_zoo(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 9));
    BitFunction f = make_zoo(cfg, n).materialize();
    SpectrumTable spec = walsh_transform(f);
    auto energy = energy_spectrum(spec);
    out << "record,index,size,value\n";
    for (std::uint32_t s = 0; s < spec.size(); ++s)
        out << "coefficient," << s << "," << __builtin_popcount(s) << "," << fmt(spec[s])
            << "\n";
    for (std::size_t m = 0; m < energy.size(); ++m)
        out << "energy," << m << "," << m << "," << fmt(energy[m]) << "\n";
}

void run_noise_correlation(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 10));
    BitFunction f = make_zoo(cfg, n);
    SpectrumTable spec = walsh_transform(f);
    out << "eps,exact,mc_mean,mc_stderr,trials,seed\n";
    Rng seeds(cfg.seed);
    for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9}) {
        Estimate e = correlation_mc(f, eps, cfg.trials, seeds.next_u64());
        out << fmt(eps) << "," << fmt(correlation_exact(spec, eps)) << "," << fmt(e.mean)
            << "," << fmt(e.stderr_) << "," << cfg.trials << "," << cfg.seed << "\n";
    }
}

void run_stability_curve(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 101)) | 1;
    BitFunction f = zoo::majority(n);
    out << "eps,estimate,stderr,arccos_limit\n";
    Rng seeds(cfg.seed);
    for (int i = 1; i <= 9; ++i) {
        double eps = i / 10.0;
        Estimate e = stability_gap_mc(f, eps, cfg.trials, seeds.next_u64());
        out << fmt(eps) << "," << fmt(e.mean) << "," << fmt(e.stderr_) << ","
            << fmt(std::acos(1 - eps) / M_PI) << "\n";
    }
}

void run_threshold_curve(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 64));
    BitFunction f = make_zoo(cfg, n);
    BitFunction zo = f.range() == Range::ZO ? f : f.to_zo();
    double pmin = param(cfg, "pmin", 0.2), pmax = param(cfg, "pmax", 0.8);
    int steps = int(param(cfg, "steps", 25));
    std::vector<double> grid;
    for (int i = 0; i <= steps; ++i) grid.push_back(pmin + (pmax - pmin) * i / steps);
    auto curve = threshold_curve(zo, grid, cfg.trials, cfg.seed);
    out << "p,mean,stderr\n";
    for (const auto& pt : curve.points)
        out << fmt(pt.p) << "," << fmt(pt.value.mean) << "," << fmt(pt.value.stderr_) << "\n";
    auto w = curve.window_width();
    out << "window," << (w ? fmt(*w) : "nan") << ",\n";
}

void run_influence_vector(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 12));
    BitFunction f = make_zoo(cfg, n);
    out << "bit,value,stderr\n";
    if (f.arity() <= 16) {
        InfluenceVector iv = influence_vector_exact(f, param(cfg, "p", 0.5));
        for (int i = 0; i < f.arity(); ++i) out << i << "," << fmt(iv.values[i]) << ",0\n";
    } else {
        InfluenceVector iv = influence_vector_mc(f, param(cfg, "p", 0.5), cfg.trials, cfg.seed);
        for (int i = 0; i < f.arity(); ++i)
            out << i << "," << fmt(iv.values[i]) << "," << fmt(iv.stderrs[i]) << "\n";
    }
}

void run_cardy(const RunConfig& cfg, std::ostream& out) {
    int mesh = int(param(cfg, "mesh", 100));
    out << "x,mesh,estimate,stderr,trials,seed\n";
    Rng seeds(cfg.seed);
    std::vector<double> xs;
    if (cfg.params.count("x"))
        xs.push_back(param(cfg, "x", 0.5));
    else
        xs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (double x : xs) {
        Estimate e = perc::cardy_estimate(x, mesh, cfg.trials, seeds.next_u64(), cfg.threads);
        out << fmt(x) << "," << mesh << "," << fmt(e.mean) << "," << fmt(e.stderr_) << ","
            << cfg.trials << "," << cfg.seed << "\n";
    }
}

void run_arm_exponents(const RunConfig& cfg, std::ostream& out) {
    int arms = int(param(cfg, "arms", 4));
    int rmax = int(param(cfg, "rmax", 64));
    auto radii = radius_grid(rmax);
    auto fit = perc::arm_exponent_fit(lattice_of(cfg), arms, radii, cfg.trials, cfg.seed,
                                      cfg.threads);
    out << "experiment,lattice,n_or_R,estimate,stderr,trials,seed\n";
    for (std::size_t i = 0; i < radii.size(); ++i)
        out << "arm" << arms << "," << cfg.lattice << "," << radii[i] << ","
            << fmt(fit.probs[i].mean) << "," << fmt(fit.probs[i].stderr_) << "," << cfg.trials
            << "," << cfg.seed << "\n";
    out << "slope," << cfg.lattice << "," << rmax << "," << fmt(fit.slope) << ","
        << fmt(fit.stderr_) << "," << cfg.trials << "," << cfg.seed << "\n";
}

void run_quasi_mult(const RunConfig& cfg, std::ostream& out) {
    int r1 = int(param(cfg, "r1", 4, true));
    int r2 = int(param(cfg, "r2", 16, true));
    int r3 = int(param(cfg, "r3", 64, true));
    auto rep = perc::quasi_mult_check(lattice_of(cfg), r1, r2, r3, cfg.trials, cfg.seed,
                                      cfg.threads);
    out << "r1,r2,r3,a13,a12,a23,ratio,ratio_stderr,submult_ok\n";
    out << r1 << "," << r2 << "," << r3 << "," << fmt(rep.a13.mean) << "," << fmt(rep.a12.mean)
        << "," << fmt(rep.a23.mean) << "," << fmt(rep.ratio) << "," << fmt(rep.ratio_stderr)
        << "," << (rep.submultiplicative_within_3sigma ? 1 : 0) << "\n";
}

void run_pivotals(const RunConfig& cfg, std::ostream& out) {
    std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{16, 32} : cfg.sizes;
    out << "n,mean_pivotal,mean_pivotal_sq,center_second_ratio,trials,seed\n";
    Rng seeds(cfg.seed);
    for (int n : sizes) {
        auto st = perc::pivotal_stats_tri(perc::TriWindow{n, n}, cfg.trials, seeds.next_u64(),
                                          cfg.threads);
        out << n << "," << fmt(st.mean_pivotal) << "," << fmt(st.mean_pivotal_sq) << ","
            << fmt(st.center_second_ratio) << "," << cfg.trials << "," << cfg.seed << "\n";
    }
}

void run_crossing(const RunConfig& cfg, std::ostream& out) {
    out << "experiment,lattice,n_or_R,estimate,stderr,trials,seed\n";
    std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{16, 32} : cfg.sizes;
    Rng seeds(cfg.seed);
    for (int n : sizes) {
        Estimate e;
        if (lattice_of(cfg) == perc::Lattice::Z2Bond)
            e = perc::crossing_probability_z2(perc::Z2Rect{n + 1, n}, param(cfg, "p", 0.5),
                                              cfg.trials, seeds.next_u64(), cfg.threads);
        else
            e = perc::crossing_probability_tri(perc::TriWindow{n, n}, param(cfg, "p", 0.5),
                                               cfg.trials, seeds.next_u64(), cfg.threads);
        out << "crossing," << cfg.lattice << "," << n << "," << fmt(e.mean) << ","
            << fmt(e.stderr_) << "," << cfg.trials << "," << cfg.seed << "\n";
    }
}

void run_revealment(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 16));
    auto rep = alg::interface_crossing_revealment_mc(perc::TriWindow{n, n}, cfg.trials,
                                                     cfg.seed);
    json j;
    j["experiment"] = "revealment";
    j["window"] = n;
    j["trials"] = rep.trials;
    j["delta"] = rep.delta;
    j["cost"] = rep.cost;
    j["per_bit"] = rep.per_bit;
    out << j.dump(2) << "\n";
}

void run_dynamical_xr(const RunConfig& cfg, std::ostream& out) {
    int R = int(param(cfg, "R", 8));
    Rng seeds(cfg.seed);
    auto rep = dyn::second_moment_ratio(R, cfg.trials, seeds.next_u64(), cfg.threads);
    Estimate a1 = dyn::alpha1_origin(R, cfg.trials * 10, seeds.next_u64());
    out << "R,mean_x,stderr,alpha1,alpha1_stderr,second_moment_ratio,ratio_stderr,defined\n";
    out << R << "," << fmt(rep.mean.mean) << "," << fmt(rep.mean.stderr_) << "," << fmt(a1.mean)
        << "," << fmt(a1.stderr_) << "," << fmt(rep.ratio) << "," << fmt(rep.ratio_stderr)
        << "," << (rep.defined ? 1 : 0) << "\n";
}

void run_dynamical_switches(const RunConfig& cfg, std::ostream& out) {
    std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{8, 16, 32} : cfg.sizes;
    out << "n,median,mean,trials,seed\n";
    Rng seeds(cfg.seed);
    for (int n : sizes) {
        auto samples = dyn::switch_samples(n, cfg.trials, seeds.next_u64(), cfg.threads);
        std::vector<int> sorted = samples;
        std::sort(sorted.begin(), sorted.end());
        double mean = 0;
        for (int s : samples) mean += s;
        mean /= double(samples.size());
        out << n << "," << sorted[sorted.size() / 2] << "," << fmt(mean) << "," << cfg.trials
            << "," << cfg.seed << "\n";
    }
}

void run_dynamical_correlation(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 4));
    double tmax = param(cfg, "tmax", 2.0);
    int steps = int(param(cfg, "steps", 8));
    std::vector<double> grid;
    for (int i = 1; i <= steps; ++i) grid.push_back(tmax * i / steps);
    auto curve = dyn::time_correlation(perc::TriWindow{n, n}, grid, cfg.trials, cfg.seed);
    out << "t,estimate,stderr\n";
    for (const auto& pt : curve)
        out << fmt(pt.t) << "," << fmt(pt.value.mean) << "," << fmt(pt.value.stderr_) << "\n";
}

void run_trajectory_export(const RunConfig& cfg, std::ostream& out) {
    int n = int(param(cfg, "n", 6));
    double T = param(cfg, "T", 1.0);
    auto traj = dyn::simulate(perc::TriWindow{n, n}.size(), T, cfg.seed);
    out << "time,element,new_state\n";
    for (const auto& ev : traj.events)
        out << fmt(ev.time) << "," << ev.element << "," << (ev.new_open ? 1 : 0) << "\n";
}

void run_fractal_lower_tail(const RunConfig& cfg, std::ostream& out) {
    double p = param(cfg, "p", 0.35);
    int h = int(param(cfg, "h", param(cfg, "depth", 10)));
    int rmax = int(param(cfg, "rmax", 64));
    std::vector<int> radii;
    for (int r = 4; r <= rmax; r *= 2) radii.push_back(r);
    auto fit = fractal::lower_tail_fit(h, p, radii, cfg.trials, cfg.seed);
    out << "p,h,r_or_i,quantity,estimate,stderr,exact\n";
    for (std::size_t i = 0; i < radii.size(); ++i)
        out << fmt(p) << "," << h << "," << radii[i] << ",lower_tail,"
            << fmt(fit.probs[i].mean) << "," << fmt(fit.probs[i].stderr_) << ",\n";
    out << fmt(p) << "," << h << ",0,slope," << fmt(fit.slope) << "," << fmt(fit.stderr_) << ","
        << fmt(fit.expected) << "\n";
}

void run_fractal_survivor(const RunConfig& cfg, std::ostream& out) {
    double p = param(cfg, "p", 0.6);
    int imax = int(param(cfg, "imax", 45));
    auto ps = fractal::single_survivor_sequence(imax, p);
    fractal::GWParams gw = fractal::gw_params(p);
    out << "p,h,r_or_i,quantity,estimate,stderr,exact\n";
    for (int i = 0; i <= imax; ++i)
        out << fmt(p) << ",0," << i << ",p_i,," << "," << fmt(ps[i]) << "\n";
    out << fmt(p) << ",0," << imax << ",empirical_ratio_over_mu_i,,,"
        << fmt(ps[imax] / std::pow(gw.mu, imax)) << "\n";
    // diagnostic overlay (not asserted): P(|T^i| = k) against g(k) mu^i with
    // g(k) = 2^{theta log2^2(k+2)}, theta = 8
    int depth = std::min(8, imax);
    auto dist = fractal::population_distribution(depth, p, 40);
    for (int k = 1; k <= 40; ++k) {
        double g = std::exp2(8.0 * std::log2(double(k + 2)) * std::log2(double(k + 2)));
        double bound = std::min(1.0, g * std::pow(gw.mu, depth));
        out << fmt(p) << "," << depth << "," << k << ",population_vs_overlay,"
            << fmt(dist[k]) << ",," << fmt(bound) << "\n";
    }
}

void run_fractal_localized(const RunConfig& cfg, std::ostream& out) {
    double p = param(cfg, "p", 0.6);
    int m = int(param(cfg, "m", 3));
    int b = int(param(cfg, "b", 4));
    fractal::GWParams gw = fractal::gw_params(p);
    Estimate e = fractal::localized_prob(m, b, p, cfg.trials, cfg.seed);
    out << "p,h,r_or_i,quantity,estimate,stderr,exact\n";
    out << fmt(p) << "," << (m + b) << "," << m << ",p_mb," << fmt(e.mean) << ","
        << fmt(e.stderr_) << "," << fmt(std::pow(gw.mu, m)) << "\n";
}

void run_fpp_variance(const RunConfig& cfg, std::ostream& out) {
    std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{16, 32, 64} : cfg.sizes;
    double a = param(cfg, "a", 1.0), b = param(cfg, "b", 2.0);
    auto rows = fpp::fluctuation_experiment(sizes, a, b, cfg.trials, cfg.seed, cfg.threads);
    out << "m,trial_count,mean,variance,var_logm_over_m\n";
    for (const auto& r : rows)
        out << r.m << "," << r.trials << "," << fmt(r.mean) << "," << fmt(r.variance) << ","
            << fmt(r.bks_ratio) << "\n";
}

void run_fpp_geodesics(const RunConfig& cfg, std::ostream& out) {
    int m = int(param(cfg, "m", 16));
    double a = param(cfg, "a", 1.0), b = param(cfg, "b", 2.0);
    auto st = fpp::geodesic_edge_stats(m, a, b, cfg.trials, cfg.seed);
    out << "edge,orientation,frequency\n";
    for (int e = 0; e < 2 * m * m; ++e)
        out << e << "," << (e < m * m ? "h" : "v") << "," << fmt(st.edge_freq[e]) << "\n";
    out << "summary,vertical_sum," << fmt(st.vertical_freq_sum) << "\n";
    out << "summary,mean_length," << fmt(st.mean_length) << "\n";
}

void run_all_acceptance(const RunConfig& cfg, std::ostream& out) {
    std::vector<int> only;
    for (int c : cfg.sizes) only.push_back(c);
    std::ostringstream progress;
    auto results = acceptance::run_all(progress, only, cfg.threads);
    json j;
    j["suite"] = "acceptance";
    int fails = 0;
    for (const auto& r : results) {
        json row;
        row["id"] = r.id;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        j["criteria"].push_back(row);
        if (!r.pass) ++fails;
    }
    j["failures"] = fails;
    out << j.dump(2) << "\n";
    if (fails > 0) throw std::runtime_error(std::to_string(fails) + " acceptance criteria failed");
}

}  // namespace

const std::vector<ExperimentSpec>& registry() {
    static const std::vector<ExperimentSpec> specs = {
        {"all-acceptance", "run the acceptance suite, emit pass/fail JSON", {}},
        {"arm-exponents", "arm probabilities over a radius grid plus slope fit",
         {"lattice", "arms", "rmax", "trials", "seed"}},
        {"cardy", "triangle crossing probability vs x", {"mesh", "trials", "seed"}},
        {"crossing", "crossing probability on rectangles", {"lattice", "sizes", "trials"}},
        {"dynamical-correlation", "crossing time correlation curve", {"n", "tmax", "trials"}},
        {"dynamical-switches", "crossing switch counts per window", {"sizes", "trials"}},
        {"dynamical-xr", "exceptional-time functional moments", {"R", "trials", "seed"}},
        {"fpp-geodesics", "geodesic edge frequencies on the torus", {"m", "trials"}},
        {"fpp-variance", "circumference variance vs torus size", {"sizes", "a", "b", "trials"}},
        {"fractal-localized", "localized-population probability", {"p", "m", "b", "trials"}},
        {"fractal-lower-tail", "lower-tail probabilities and slope", {"p", "h", "rmax"}},
        {"fractal-survivor", "exact single-survivor recursion", {"p", "imax"}},
        {"influence-vector", "per-bit influences", {"f", "n"}},
        {"noise-correlation", "exact vs MC noise correlation", {"f", "n", "trials"}},
        {"pivotals", "pivotal-set statistics on crossing windows", {"sizes", "trials"}},
        {"quasi-mult", "four-arm quasi-multiplicativity ratio", {"r1", "r2", "r3", "trials"}},
        {"revealment", "crossing-algorithm revealment report (JSON)", {"n", "trials"}},
        {"spectrum-zoo", "Fourier coefficients and energy spectrum", {"f", "n"}},
        {"stability-curve", "majority stability vs the arccos limit", {"n", "trials"}},
        {"threshold-curve", "E_p with window width", {"f", "n", "trials"}},
        {"trajectory-export", "dynamical refresh events", {"n", "T", "seed"}},
    };
    return specs;
}

std::string list_experiments_text() {
    std::ostringstream os;
    for (const auto& s : registry()) {
        os << s.name << ": " << s.description << " (params:";
        for (const auto& p : s.required) os << " " << p;
        os << ")\n";
    }
    return os.str();
}

std::string list_experiments_json() {
    json j = json::array();
    for (const auto& s : registry()) {
        json row;
        row["name"] = s.name;
        row["description"] = s.description;
        row["required"] = s.required;
        j.push_back(row);
    }
    return j.dump(2) + "\n";
}

void run_experiment(const RunConfig& cfg, std::ostream& out, std::string* meta_json) {
    using Runner = std::function<void(const RunConfig&, std::ostream&)>;
    static const std::map<std::string, Runner> table = {
        {"spectrum-zoo", run_spectrum_zoo},
        {"noise-correlation", run_noise_correlation},
        {"stability-curve", run_stability_curve},
        {"threshold-curve", run_threshold_curve},
        {"influence-vector", run_influence_vector},
        {"cardy", run_cardy},
        {"arm-exponents", run_arm_exponents},
        {"quasi-mult", run_quasi_mult},
        {"pivotals", run_pivotals},
        {"crossing", run_crossing},
        {"revealment", run_revealment},
        {"dynamical-xr", run_dynamical_xr},
        {"dynamical-switches", run_dynamical_switches},
        {"dynamical-correlation", run_dynamical_correlation},
        {"trajectory-export", run_trajectory_export},
        {"fractal-lower-tail", run_fractal_lower_tail},
        {"fractal-survivor", run_fractal_survivor},
        {"fractal-localized", run_fractal_localized},
        {"fpp-variance", run_fpp_variance},
        {"fpp-geodesics", run_fpp_geodesics},
        {"all-acceptance", run_all_acceptance},
    };
    auto it = table.find(cfg.experiment);
    if (it == table.end())
        throw std::invalid_argument("unknown experiment '" + cfg.experiment +
                                    "' (see `noiselab list`)");
    auto t0 = std::chrono::steady_clock::now();
    it->second(cfg, out);
    auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              t0);
    if (meta_json) {
        json meta;
        meta["tool_version"] = tool_version();
        meta["experiment"] = cfg.experiment;
        meta["seed"] = cfg.seed;
        meta["trials"] = cfg.trials;
        meta["threads"] = cfg.threads;
        meta["wall_ms"] = wall.count();
        json params;
        for (const auto& [k, v] : cfg.params) params[k] = v;
        meta["params"] = params;
        *meta_json = meta.dump(2) + "\n";
    }
}

RunConfig parse_config_json(const std::string& text) {
    json j = json::parse(text);
    RunConfig cfg;
    if (!j.contains("experiment")) throw std::invalid_argument("config: missing 'experiment'");
    cfg.experiment = j["experiment"].get<std::string>();
    if (j.contains("lattice")) cfg.lattice = j["lattice"].get<std::string>();
    if (j.contains("f")) cfg.function = j["f"].get<std::string>();
    if (j.contains("function")) cfg.function = j["function"].get<std::string>();
    if (j.contains("sizes"))
        for (const auto& v : j["sizes"]) cfg.sizes.push_back(v.get<int>());
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    for (auto& [key, value] : j.items()) {
        if (key == "experiment" || key == "lattice" || key == "f" || key == "function" ||
            key == "sizes" || key == "trials" || key == "seed" || key == "format" ||
            key == "threads")
            continue;
        if (value.is_number()) cfg.params[key] = value.get<double>();
    }
    return cfg;
}

const char* tool_version() { return "noiselab 0.1.0"; }

}  // namespace noiselab::experiments
