// Copyright 2026 The qvlbi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>

#include "output.hpp"
#include "qvlbi/astro.hpp"
#include "qvlbi/cavity.hpp"
#include "qvlbi/constants.hpp"
#include "qvlbi/estimation.hpp"
#include "qvlbi/geodesy.hpp"
#include "qvlbi/gottesman.hpp"
#include "qvlbi/kernels.hpp"
#include "qvlbi/multiphoton.hpp"
#include "qvlbi/photometry.hpp"
#include "qvlbi/protocols.hpp"
#include "qvlbi/rng.hpp"
#include "qvlbi/source_model.hpp"
#include "reproduce.hpp"

namespace qvlbi::cli {
namespace {

using constants::pi;
using constants::two_pi;

constexpr double kNm = 1e-9;
constexpr double kMhz = 1e6;

struct Globals {
    std::uint64_t seed = kDefaultSeed;
    std::string format;
    std::string out;
};

class Context {
  public:
    Context(Globals& g, std::ostream& out) : g_(g), out_(out) {}

    const Globals& globals() const { return g_; }
    std::string format(const char* fallback) const { return g_.format.empty() ? fallback : g_.format; }

    void write(const std::string& text) const {
        if (g_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(g_.out, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot open output file " + g_.out);
        }
        f << text;
    }

    /// Scalar document: JSON by default; CSV flattens top-level fields into one row.
    void document(const Json& doc) const {
        if (format("json") == "json") {
            write(dump(doc));
            return;
        }
        Table t;
        std::vector<Cell> row;
        for (const auto& [key, value] : doc.items()) {
            t.columns.push_back(key);
            if (value.is_number_integer()) {
                row.emplace_back(value.get<std::int64_t>());
            } else if (value.is_number()) {
                row.emplace_back(value.get<double>());
            } else if (value.is_boolean()) {
                row.emplace_back(value.get<bool>());
            } else if (value.is_string()) {
                row.emplace_back(value.get<std::string>());
            } else {
                row.emplace_back(value.dump());
            }
        }
        t.add(std::move(row));
        write(t.to_csv());
    }

    /// Tabular artifact: `fallback` format unless --format is given. JSON
    /// wraps the rows together with `meta`.
    void table(const Table& t, Json meta, const char* fallback) const {
        if (format(fallback) == "csv") {
            write(t.to_csv());
            return;
        }
        meta["rows"] = t.to_json();
        write(dump(meta));
    }

  private:
    Globals& g_;
    std::ostream& out_;
};

using Action = std::function<int()>;

Json bound_json(const estimation::ParameterBound& b) {
    Json j;
    j["status"] = std::string(estimation::name(b.status));
    j["variance"] = b.status == estimation::ParameterBound::Status::Unidentifiable ? Json(nullptr)
                                                                                  : json_number(b.variance);
    return j;
}

Json matrix_json(const Eigen::MatrixXd& m) {
    auto rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(json_number(m(i, j)));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------- photometry

Action add_photometry(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("photometry", "Photon rate and occupation per bin from an AB magnitude");
    struct Opts {
        double magnitude = 11.0;
        double wavelength_nm = 760.0;
        double bandwidth_nm = 0.0;
        double bandwidth_ghz = 0.0;
        double area = 10.0;
        std::string table;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--magnitude", o->magnitude, "AB magnitude")->capture_default_str();
    sub->add_option("--wavelength-nm", o->wavelength_nm, "Central wavelength (nm)")->capture_default_str();
    auto* bl = sub->add_option("--bandwidth-nm", o->bandwidth_nm, "Wavelength bandwidth (nm)");
    auto* bf = sub->add_option("--bandwidth-ghz", o->bandwidth_ghz, "Frequency bandwidth (GHz)");
    sub->add_option("--area", o->area, "Collecting area (m^2)")->capture_default_str();
    sub->add_option("--table", o->table, "Regenerate a stored table")->check(CLI::IsMember({"appendix"}));
    return [sub, o, bl, bf, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        if (!o->table.empty()) {
            const auto a = photometry_table();
            ctx.table(a.table, {{"table", a.anchor}, {"pass", a.pass}}, "csv");
            return kExitOk;
        }
        std::optional<double> dl;
        std::optional<double> dnu;
        if (bl->count() > 0) {
            dl = o->bandwidth_nm * kNm;
        }
        if (bf->count() > 0) {
            dnu = o->bandwidth_ghz * 1e9;
        }
        const auto spec = photometry::make_spec(o->magnitude, o->wavelength_nm * kNm, dl, dnu, o->area);
        const auto r = photometry::evaluate(spec);
        Json doc;
        doc["m_ab"] = json_number(spec.m_ab);
        doc["wavelength_m"] = json_number(spec.wavelength);
        doc["area_m2"] = json_number(spec.area);
        doc["delta_nu_hz"] = json_number(1.0 / r.coherence_time);
        doc["flux_nu"] = json_number(r.flux_nu);
        doc["photon_rate"] = json_number(r.photon_rate);
        doc["coherence_time_s"] = json_number(r.coherence_time);
        doc["epsilon"] = json_number(r.epsilon);
        doc["epsilon_planet"] = json_number(r.epsilon * photometry::kPlanetContrast);
        ctx.document(doc);
        return kExitOk;
    };
}

// --------------------------------------------------------------------- state

Action add_state(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("state", "Covariance and weak-source representations of the two-site state");
    struct Opts {
        double epsilon = 1e-3;
        double gamma = 0.5;
        double phi = 0.0;
        bool allow_strong = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--epsilon", o->epsilon, "Mean photon number per bin")->capture_default_str();
    sub->add_option("--gamma", o->gamma, "Visibility modulus")->capture_default_str();
    sub->add_option("--phi", o->phi, "Visibility phase (rad)")->capture_default_str();
    sub->add_flag("--allow-strong", o->allow_strong, "Permit epsilon above the weak-source limit");
    return [sub, o, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        const auto params = source::SourceParams::make(o->epsilon, o->gamma, o->phi);
        const auto cov = source::covariance(params);
        const auto weak = source::weak_state(params, o->allow_strong);
        const auto nu = source::symplectic_eigenvalues(cov.sigma);
        Json doc;
        doc["epsilon"] = json_number(params.epsilon);
        doc["gamma"] = json_number(params.gamma);
        doc["phi"] = json_number(params.phi);
        doc["covariance"] = {{"sigma", matrix_json(cov.sigma)},
                             {"mean", matrix_json(cov.mean.transpose())[0]},
                             {"symplectic_eigenvalues", {json_number(nu[0]), json_number(nu[1])}},
                             {"uncertainty_margin", json_number(source::uncertainty_margin(cov.sigma))}};
        doc["weak_state"] = {{"p_vac", json_number(weak.p_vac)},
                             {"p_plus", json_number(weak.p_plus)},
                             {"p_minus", json_number(weak.p_minus)},
                             {"phi", json_number(weak.phi)},
                             {"beyond_weak_limit", weak.beyond_weak_limit}};
        auto pmf = Json::array();
        for (long n = 0; n <= 3; ++n) {
            pmf.push_back(json_number(source::thermal_pmf(params.epsilon, n)));
        }
        doc["thermal_pmf"] = std::move(pmf);
        ctx.document(doc);
        return kExitOk;
    };
}

// ----------------------------------------------------------------------- qfi

Action add_qfi(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("qfi", "Quantum Fisher information and Cramer-Rao bounds");
    struct Opts {
        double epsilon = 1e-7;
        double gamma = 0.5;
        double phi = 0.0;
        long copies = 1;
        double delta = 0.0;
        bool sweep = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--epsilon", o->epsilon, "Mean photon number per bin")->capture_default_str();
    sub->add_option("--gamma", o->gamma, "Visibility modulus")->capture_default_str();
    sub->add_option("--phi", o->phi, "Visibility phase (rad)")->capture_default_str();
    sub->add_option("--copies", o->copies, "Number of copies N in the bound")->capture_default_str();
    auto* delta = sub->add_option("--delta", o->delta, "Also report local detection with this reference phase");
    sub->add_flag("--sweep", o->sweep, "Closed form versus numerical oracle over the reference grid");
    return [sub, o, delta, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        if (o->sweep) {
            const auto axes = kernels::default_qfi_grid();
            const auto points = kernels::qfi_sweep(axes.epsilons, axes.gammas, axes.phis);
            Table t;
            t.columns = {"epsilon", "gamma", "phi", "parameter", "analytic", "numerical", "relative_error",
                         "tolerance", "pass"};
            bool all = true;
            for (const auto& p : points) {
                const double tol = kernels::qfi_tolerance(p.epsilon);
                const bool ok = p.relative_error <= tol;
                all = all && ok;
                t.add({p.epsilon, p.gamma, p.phi, std::string(estimation::name(p.parameter)), p.analytic,
                       p.numerical, p.relative_error, tol, ok});
            }
            ctx.table(t, {{"points", points.size()}, {"pass", all}}, "csv");
            return kExitOk;
        }
        const auto params = source::SourceParams::make(o->epsilon, o->gamma, o->phi);
        const auto j = estimation::qfi_matrix(params);
        const auto bound = estimation::crb(j, o->copies);
        Json doc;
        doc["j_phi"] = json_number(j.j_phi);
        doc["j_gamma"] = json_number(j.j_gamma);
        doc["j_cross"] = json_number(j.j_cross);
        doc["gamma_divergent"] = j.gamma_divergent;
        doc["copies"] = o->copies;
        doc["crb_phi"] = bound[estimation::Parameter::Phi].status == estimation::ParameterBound::Status::Unidentifiable
                             ? Json(nullptr)
                             : json_number(bound[estimation::Parameter::Phi].variance);
        doc["crb_gamma"] =
            bound[estimation::Parameter::Gamma].status == estimation::ParameterBound::Status::Unidentifiable
                ? Json(nullptr)
                : json_number(bound[estimation::Parameter::Gamma].variance);
        doc["crb_phi_status"] = std::string(estimation::name(bound[estimation::Parameter::Phi].status));
        doc["crb_gamma_status"] = std::string(estimation::name(bound[estimation::Parameter::Gamma].status));
        if (params.epsilon <= source::kWeakLimit && params.epsilon > 0.0) {
            const auto weak = source::weak_state(params);
            doc["numerical_j_phi"] = json_number(estimation::qfi_numerical(weak, estimation::Parameter::Phi));
            doc["numerical_j_gamma"] =
                j.gamma_divergent ? Json(nullptr)
                                  : json_number(estimation::qfi_numerical(weak, estimation::Parameter::Gamma));
        }
        if (delta->count() > 0) {
            const auto fi = estimation::local_fi(params, o->delta);
            const auto fb = estimation::crb(fi, o->copies);
            doc["local_fi"] = {{"delta", json_number(fi.delta)},
                               {"matrix", matrix_json(fi.matrix)},
                               {"nonzero_eigenvalue", json_number(fi.nonzero_eigenvalue)},
                               {"trace_norm", json_number(fi.trace_norm(o->copies))},
                               {"divergent", fi.divergent},
                               {"phi", bound_json(fb[estimation::Parameter::Phi])},
                               {"gamma", bound_json(fb[estimation::Parameter::Gamma])}};
        }
        ctx.document(doc);
        return kExitOk;
    };
}

// ------------------------------------------------------------------ protocol

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ";" : "") + std::to_string(v[i]);
    }
    return s;
}

Json distribution_json(const protocols::CoincidenceDistribution& d) {
    auto patterns = Json::array();
    for (const auto& p : d.patterns) {
        patterns.push_back({{"ports", std::string(protocols::name(p.first)) + std::string(protocols::name(p.second))},
                            {"probability", json_number(p.probability)}});
    }
    return {{"coincidence", json_number(d.coincidence)},
            {"correlated", json_number(d.correlated)},
            {"anticorrelated", json_number(d.anticorrelated)},
            {"total", json_number(d.total)},
            {"patterns", std::move(patterns)}};
}

Action add_protocol(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("protocol", "Run a photon-localisation protocol or the repeater protocol");
    struct Opts {
        std::string scheme;
        double epsilon = 1e-3;
        std::size_t bins = 1024;
        std::size_t shots = 1;
        double gamma = 1.0;
        double phi = 0.0;
        double delta = 0.0;
        std::size_t photon_bin = 1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("scheme", o->scheme, "gottesman | unary | binary-search | binary")
        ->required()
        ->check(CLI::IsMember({"gottesman", "unary", "binary-search", "binary"}));
    sub->add_option("--epsilon", o->epsilon, "Mean photon number per bin")->capture_default_str();
    sub->add_option("--bins", o->bins, "Time bins M per block")->capture_default_str();
    sub->add_option("--shots", o->shots, "Sampled blocks")->capture_default_str();
    sub->add_option("--gamma", o->gamma, "Visibility modulus")->capture_default_str();
    sub->add_option("--phi", o->phi, "Visibility phase (rad)")->capture_default_str();
    sub->add_option("--delta", o->delta, "Reference phase (rad)")->capture_default_str();
    auto* pb = sub->add_option("--photon-bin", o->photon_bin, "Place a single photon in this bin (1-based)");
    return [sub, o, pb, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        if (o->scheme == "gottesman") {
            const auto published = protocols::gottesman_probs(o->phi, o->delta, o->gamma);
            const auto oracle = protocols::gottesman_oracle(o->phi, o->delta, o->gamma);
            Json doc;
            doc["phi"] = json_number(o->phi);
            doc["delta"] = json_number(o->delta);
            doc["gamma"] = json_number(o->gamma);
            doc["correlated"] = json_number(published.correlated);
            doc["anticorrelated"] = json_number(published.anticorrelated);
            doc["oracle_correlated"] = json_number(oracle.correlated);
            doc["oracle_anticorrelated"] = json_number(oracle.anticorrelated);
            doc["fock_direct"] = distribution_json(oracle.direct);
            doc["fock_conjugate"] = distribution_json(oracle.conjugate);
            ctx.document(doc);
            return kExitOk;
        }
        if (o->bins == 0) {
            throw std::invalid_argument("bins must be positive");
        }
        std::vector<protocols::ArrivalTrace> traces;
        if (pb->count() > 0) {
            traces.push_back(protocols::ArrivalTrace::single_photon(o->bins, o->photon_bin, +1, o->phi));
        } else {
            for (std::size_t s = 0; s < o->shots; ++s) {
                traces.push_back(protocols::sample_arrivals(o->epsilon, o->bins, o->gamma, o->phi,
                                                            lane_seed(ctx.globals().seed, s)));
            }
        }
        Table t;
        std::int64_t consumed = 0;
        if (o->scheme == "unary") {
            t.columns = {"shot", "shared", "multi", "consumed", "flips", "located"};
        } else if (o->scheme == "binary-search") {
            t.columns = {"shot", "shared", "multi", "status", "index", "consumed", "message"};
        } else {
            t.columns = {"shot", "shared", "multi", "width", "codeword", "register_a", "register_b", "sign",
                         "depolarized", "memory_qubits"};
        }
        for (std::size_t s = 0; s < traces.size(); ++s) {
            const auto& tr = traces[s];
            const auto shot = static_cast<std::int64_t>(s);
            const auto shared = static_cast<std::int64_t>(tr.count_shared());
            const auto multi = static_cast<std::int64_t>(tr.count_multi());
            if (o->scheme == "unary") {
                const auto r = protocols::unary_run(tr);
                consumed += static_cast<std::int64_t>(r.ledger.consumed());
                t.add({shot, shared, multi, static_cast<std::int64_t>(r.ledger.consumed()),
                       static_cast<std::int64_t>(r.ledger.flips()), join_indices(r.located)});
            } else if (o->scheme == "binary-search") {
                const auto r = protocols::binary_search_run(tr);
                consumed += static_cast<std::int64_t>(r.ledger.consumed());
                t.add({shot, shared, multi, std::string(r.ok() ? "located" : "precondition_violated"),
                       static_cast<std::int64_t>(r.index), static_cast<std::int64_t>(r.ledger.consumed()),
                       r.message});
            } else {
                const auto m = protocols::binary_encode(tr);
                const auto regs = m.branch(protocols::LogicalMemory::Station::A);
                t.add({shot, shared, multi, static_cast<std::int64_t>(m.width),
                       static_cast<std::int64_t>(m.codeword), regs.a, regs.b, static_cast<std::int64_t>(m.sign),
                       m.depolarized,
                       static_cast<std::int64_t>(
                           protocols::memory_requirements(o->bins, 1, protocols::MemoryScheme::Binary))});
            }
        }
        Json meta;
        meta["scheme"] = o->scheme;
        meta["bins"] = o->bins;
        meta["epsilon"] = pb->count() > 0 ? Json(nullptr) : json_number(o->epsilon);
        meta["seed"] = ctx.globals().seed;
        if (o->scheme != "binary") {
            meta["consumed"] = consumed;
            meta["expected_per_run"] =
                o->scheme == "unary" ? o->bins : protocols::search_rounds(o->bins);
        }
        ctx.table(t, meta, "json");
        return kExitOk;
    };
}

// --------------------------------------------------------------- consumption

Action add_consumption(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("consumption", "Bell-pair consumption rate and memory size");
    struct Opts {
        double delta_nu_ghz = 1000.0;
        double epsilon = 1e-7;
        double overhead = 1.0;
        bool multiphoton = false;
        bool table = false;
        std::size_t bins = 0;
        std::size_t bands = 1;
        std::string scheme = "binary";
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--delta-nu-ghz", o->delta_nu_ghz, "Bandwidth (GHz)")->capture_default_str();
    sub->add_option("--epsilon", o->epsilon, "Mean photon number per bin")->capture_default_str();
    sub->add_option("--overhead", o->overhead, "Extra multiplier on the rate")->capture_default_str();
    sub->add_flag("--multiphoton", o->multiphoton, "Apply the multiphoton mitigation overhead");
    sub->add_flag("--table", o->table, "Regenerate the consumption table with discrepancy flags");
    auto* bins = sub->add_option("--bins", o->bins, "Time bins per block, to report memory qubits");
    sub->add_option("--bands", o->bands, "Frequency bands")->capture_default_str();
    sub->add_option("--scheme", o->scheme, "unary | binary | broadband-binary")
        ->capture_default_str()
        ->check(CLI::IsMember({"unary", "binary", "broadband", "broadband-binary"}));
    return [sub, o, bins, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        if (o->table) {
            const auto a = consumption_table();
            ctx.table(a.table, {{"table", a.anchor}, {"pass", a.pass}}, "csv");
            return kExitOk;
        }
        const double overhead = o->overhead * (o->multiphoton ? protocols::kMultiphotonOverhead : 1.0);
        Json doc;
        doc["delta_nu_hz"] = json_number(o->delta_nu_ghz * 1e9);
        doc["epsilon"] = json_number(o->epsilon);
        doc["overhead"] = json_number(overhead);
        doc["pairs_per_s"] = json_number(protocols::consumption_rate(o->delta_nu_ghz * 1e9, o->epsilon, overhead));
        if (bins->count() > 0) {
            doc["scheme"] = o->scheme;
            doc["memory_qubits"] =
                protocols::memory_requirements(o->bins, o->bands, protocols::parse_memory_scheme(o->scheme));
            doc["c"] = json_number(protocols::multiphoton_fidelity(o->bins, o->epsilon));
        }
        ctx.document(doc);
        return kExitOk;
    };
}

// ------------------------------------------------------------------- geodesy

Action add_geodesy(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("geodesy", "Baseline precision bound and phase-estimation Monte Carlo");
    struct Opts {
        std::string mode;
        double lambda_nm = 1550.0;
        double theta_deg = 90.0;
        long photons = 0;
        long shots = 200;
        double phi_true = 1.0;
        std::vector<double> deltas_deg{0.0, 90.0};
        double delta_phi = 1.0;
        bool serial = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("mode", o->mode, "crb | mc")->required()->check(CLI::IsMember({"crb", "mc"}));
    sub->add_option("--lambda-nm", o->lambda_nm, "Wavelength (nm)")->capture_default_str();
    sub->add_option("--theta-deg", o->theta_deg, "Source angle (deg)")->capture_default_str();
    auto* photons = sub->add_option("--photons", o->photons, "Detected photons (default 1e6 for crb, 1e4 for mc)");
    sub->add_option("--shots", o->shots, "Monte Carlo repetitions")->capture_default_str();
    sub->add_option("--phi-true", o->phi_true, "True phase (rad)")->capture_default_str();
    sub->add_option("--delta-deg", o->deltas_deg, "Reference phases (deg)")->capture_default_str();
    sub->add_option("--delta-phi", o->delta_phi, "Phase uncertainty per photon (rad)")->capture_default_str();
    sub->add_flag("--serial", o->serial, "Use the serial reference kernel");
    return [sub, o, photons, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        const double lambda = o->lambda_nm * kNm;
        const double theta = o->theta_deg * pi / 180.0;
        Json doc;
        if (o->mode == "crb") {
            const long n = photons->count() > 0 ? o->photons : 1000000;
            const auto b = geodesy::baseline_crb(theta, lambda, n, o->delta_phi);
            doc["lambda_m"] = json_number(lambda);
            doc["theta_rad"] = json_number(theta);
            doc["photons"] = n;
            doc["delta_phi"] = json_number(o->delta_phi);
            doc["identifiable"] = b.identifiable;
            doc["delta_b_m"] = json_number(b.delta_b);
            ctx.document(doc);
            return kExitOk;
        }
        geodesy::PhaseMcConfig cfg;
        cfg.phi_true = o->phi_true;
        cfg.n_photons = photons->count() > 0 ? o->photons : 10000;
        cfg.shots = o->shots;
        cfg.seed = ctx.globals().seed;
        cfg.deltas.clear();
        for (const double d : o->deltas_deg) {
            cfg.deltas.push_back(d * pi / 180.0);
        }
        const auto r =
            geodesy::phase_mc(cfg, o->serial ? geodesy::Execution::Serial : geodesy::Execution::Parallel);
        const double n = static_cast<double>(cfg.n_photons);
        if (ctx.format("json") == "csv") {
            Table t;
            t.columns = {"shot", "estimate"};
            for (std::size_t s = 0; s < r.estimates.size(); ++s) {
                t.add({static_cast<std::int64_t>(s), r.estimates[s]});
            }
            ctx.write(t.to_csv());
            return kExitOk;
        }
        doc["phi_true"] = json_number(cfg.phi_true);
        doc["photons"] = cfg.n_photons;
        doc["shots"] = cfg.shots;
        doc["seed"] = cfg.seed;
        auto deltas = Json::array();
        for (const double d : cfg.deltas) {
            deltas.push_back(json_number(d));
        }
        doc["deltas"] = std::move(deltas);
        doc["phi_hat"] = json_number(r.phi_hat);
        doc["bias"] = json_number(r.bias);
        doc["standard_error"] = json_number(r.standard_error);
        doc["variance"] = json_number(r.variance);
        doc["crb_variance"] = json_number(1.0 / n);
        doc["variance_ratio"] = json_number(r.variance * n);
        doc["stddev"] = json_number(r.stddev);
        ctx.document(doc);
        return kExitOk;
    };
}

// -------------------------------------------------------------------- stirap

Action add_stirap(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("stirap", "Three-level adiabatic passage trajectory");
    struct Opts {
        cavity::StirapConfig cfg;
        double g_mhz = 400.0;
        double kappa_mhz = 20.0;
        double gamma_mhz = 6.0;
        bool captioned = false;
    };
    auto o = std::make_shared<Opts>();
    auto& c = o->cfg;
    sub->add_option("--total-time", c.total_time, "Duration T (units of 1/g)")->capture_default_str();
    sub->add_option("--omega-peak", c.omega_peak, "Drive peak (units of g)")->capture_default_str();
    sub->add_option("--coupling-peak", c.coupling_peak, "Coupling peak (units of g)")->capture_default_str();
    sub->add_option("--width", c.width, "Pulse width (units of 1/g)")->capture_default_str();
    sub->add_option("--omega-centre", c.omega_centre, "Drive centre (fraction of T)")->capture_default_str();
    sub->add_option("--coupling-centre", c.coupling_centre, "Coupling centre (fraction of T)")
        ->capture_default_str();
    sub->add_option("--steps", c.steps, "RK4 steps")->capture_default_str();
    sub->add_option("--record-every", c.record_every, "Output stride in steps")->capture_default_str();
    sub->add_flag("--decay", c.include_decay, "Include cavity and atomic decay");
    sub->add_flag("--captioned-detuning", o->captioned, "Use the literal g^2 + Omega^2 detuning in rad/ns");
    sub->add_option("--g-mhz", o->g_mhz, "g / 2pi (MHz)")->capture_default_str();
    sub->add_option("--kappa-mhz", o->kappa_mhz, "kappa / 2pi (MHz)")->capture_default_str();
    sub->add_option("--gamma-mhz", o->gamma_mhz, "gamma / 2pi (MHz)")->capture_default_str();
    return [sub, o, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        auto cfg = o->cfg;
        cfg.g = two_pi * o->g_mhz * kMhz;
        cfg.kappa = two_pi * o->kappa_mhz * kMhz;
        cfg.gamma = two_pi * o->gamma_mhz * kMhz;
        cfg.detuning = o->captioned ? cavity::DetuningModel::Captioned : cavity::DetuningModel::Scaled;
        const auto traj = cavity::stirap_simulate(cfg);
        Table t;
        t.columns = {"t", "P_0R", "P_e", "P_1R"};
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto& p = traj.populations[i];
            t.add({traj.times[i], p[0], p[1], p[2]});
        }
        Json meta;
        meta["final_transfer"] = json_number(traj.final_transfer);
        meta["max_excited"] = json_number(traj.max_excited);
        meta["norm_loss"] = json_number(traj.norm_loss);
        meta["decay_fidelity"] = json_number(cavity::decay_fidelity(cfg.total_time / cfg.g, cfg.kappa));
        ctx.table(t, meta, "csv");
        return kExitOk;
    };
}

// -------------------------------------------------------------------- cavity

Action add_cavity(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("cavity", "Cooperativity, decay and coupling of the memory cavity");
    struct Opts {
        double lambda_nm = 780.0;
        double finesse = 2e5;
        double waist_um = 2.0;
        double length_um = 40.0;
        double gamma_mhz = 6.0;
        double transfer_time_g = 50.0;
        double improvement = 5.0;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--lambda-nm", o->lambda_nm, "Transition wavelength (nm)")->capture_default_str();
    sub->add_option("--finesse", o->finesse, "Cavity finesse")->capture_default_str();
    sub->add_option("--waist-um", o->waist_um, "Mode waist (um)")->capture_default_str();
    sub->add_option("--length-um", o->length_um, "Cavity length (um)")->capture_default_str();
    sub->add_option("--gamma-mhz", o->gamma_mhz, "Atomic linewidth gamma / 2pi (MHz)")->capture_default_str();
    sub->add_option("--transfer-time-g", o->transfer_time_g, "Transfer time (units of 1/g)")->capture_default_str();
    sub->add_option("--improvement", o->improvement, "Factor by which kappa is reduced in the improved case")
        ->capture_default_str();
    return [sub, o, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        cavity::CavitySpec spec{o->lambda_nm * kNm, o->finesse, o->waist_um * 1e-6, o->length_um * 1e-6,
                                two_pi * o->gamma_mhz * kMhz};
        if (!(o->improvement > 0.0)) {
            throw std::invalid_argument("improvement factor must be positive");
        }
        const auto r = cavity::evaluate(spec);
        const double duration = o->transfer_time_g / cavity::kQuotedCoupling;
        Json doc;
        doc["cooperativity"] = json_number(r.cooperativity);
        doc["kappa_rad_s"] = json_number(r.kappa);
        doc["kappa_over_2pi_mhz"] = json_number(r.kappa / two_pi / kMhz);
        doc["gamma_over_2pi_mhz"] = json_number(r.gamma / two_pi / kMhz);
        doc["g_over_2pi_mhz"] = json_number(r.coupling / two_pi / kMhz);
        doc["gamma_over_kappa"] = json_number(r.gamma_over_kappa);
        doc["transfer_time_s"] = json_number(duration);
        doc["decay_fidelity"] = json_number(cavity::decay_fidelity(duration, cavity::kQuotedKappa));
        doc["decay_fidelity_improved"] =
            json_number(cavity::decay_fidelity(duration, cavity::kQuotedKappa / o->improvement));
        ctx.document(doc);
        return kExitOk;
    };
}

// ------------------------------------------------------------------- targets

Action add_targets(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("targets", "Exoplanet separations and matching baselines");
    struct Opts {
        std::string table;
        double a_au = 0.0;
        double d_pc = 0.0;
        double wavelength_nm = 600.0;
        double baseline_km = 100.0;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--table", o->table, "Regenerate a stored table")->check(CLI::IsMember({"exoplanets"}));
    auto* a = sub->add_option("--semi-major-au", o->a_au, "Orbit semi-major axis (AU)");
    auto* d = sub->add_option("--distance-pc", o->d_pc, "Distance (pc)");
    a->needs(d);
    d->needs(a);
    sub->add_option("--wavelength-nm", o->wavelength_nm, "Observing wavelength (nm)")->capture_default_str();
    sub->add_option("--baseline-km", o->baseline_km, "Baseline (km)")->capture_default_str();
    return [sub, o, a, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        if (!o->table.empty()) {
            const auto art = exoplanet_table();
            ctx.table(art.table, {{"table", art.anchor}, {"pass", art.pass}}, "csv");
            return kExitOk;
        }
        const double lambda = o->wavelength_nm * kNm;
        Json doc;
        if (a->count() > 0) {
            doc["separation_arcsec"] = json_number(astro::angular_separation(o->a_au, o->d_pc));
            doc["separation_uas"] = json_number(astro::angular_separation_microarcsec(o->a_au, o->d_pc));
        }
        doc["wavelength_m"] = json_number(lambda);
        doc["baseline_m"] = json_number(o->baseline_km * 1e3);
        doc["resolution_uas"] = json_number(astro::angular_resolution_microarcsec(lambda, o->baseline_km * 1e3));
        doc["radio_matching_baseline_m"] =
            json_number(astro::baseline_for_wavelength(astro::kEhtBaseline, astro::kEhtWavelength, lambda));
        ctx.document(doc);
        return kExitOk;
    };
}

// ---------------------------------------------------------------- precession

Action add_precession(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("precession", "Relativistic precession per orbit and the baseline to resolve it");
    struct Opts {
        std::string preset = "s2";
        double mass_solar = 0.0;
        double a_au = 0.0;
        double eccentricity = 0.0;
        double spin = 0.0;
        double reference_baseline = astro::kNearInfraredBaseline;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--preset", o->preset, "Starting orbit")->capture_default_str()->check(
        CLI::IsMember({"s2", "mercury"}));
    auto* m = sub->add_option("--mass-solar", o->mass_solar, "Central mass (solar masses)");
    auto* a = sub->add_option("--semi-major-au", o->a_au, "Semi-major axis (AU)");
    auto* e = sub->add_option("--eccentricity", o->eccentricity, "Eccentricity");
    auto* s = sub->add_option("--spin", o->spin, "Dimensionless spin");
    sub->add_option("--reference-baseline", o->reference_baseline, "Baseline of the current instrument (m)")
        ->capture_default_str();
    return [sub, o, m, a, e, s, &ctx]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        auto orbit = o->preset == "s2" ? astro::s2_orbit() : astro::mercury_orbit();
        if (m->count() > 0) {
            orbit.central_mass = o->mass_solar * constants::solar_mass;
        }
        if (a->count() > 0) {
            orbit.semi_major = o->a_au * constants::astronomical_unit;
        }
        if (e->count() > 0) {
            orbit.eccentricity = o->eccentricity;
        }
        if (s->count() > 0) {
            orbit.spin = o->spin;
        }
        orbit.validate();
        const auto p = astro::precession(orbit);
        Json doc;
        doc["central_mass_kg"] = json_number(orbit.central_mass);
        doc["semi_major_m"] = json_number(orbit.semi_major);
        doc["eccentricity"] = json_number(orbit.eccentricity);
        doc["spin"] = json_number(orbit.spin);
        doc["schwarzschild_radius_m"] = json_number(orbit.schwarzschild_radius());
        doc["schwarzschild_rad"] = json_number(p.schwarzschild);
        doc["schwarzschild_arcsec"] = json_number(astro::radians_to_arcsec(p.schwarzschild));
        doc["lense_thirring_rad"] = json_number(p.lense_thirring);
        doc["lense_thirring_arcmin"] = json_number(astro::radians_to_arcmin(p.lense_thirring));
        doc["ratio"] = json_number(p.ratio);
        doc["required_baseline_m"] = std::isfinite(p.ratio)
                                         ? json_number(astro::required_baseline(o->reference_baseline, p.ratio))
                                         : Json(nullptr);
        ctx.document(doc);
        return kExitOk;
    };
}

// ----------------------------------------------------------------- reproduce

Action add_reproduce(CLI::App& app, const Context& ctx, std::ostream& err) {
    auto* sub = app.add_subcommand("reproduce", "Regenerate stored tables and figures with tolerance checks");
    struct Opts {
        bool all = false;
        std::string table;
        std::string figure;
        std::string out_dir = "artifacts";
    };
    auto o = std::make_shared<Opts>();
    auto* all = sub->add_flag("--all", o->all, "Every table and figure, written under --out-dir");
    auto* table = sub->add_option("--table", o->table, "One table")->check(CLI::IsMember(table_names()));
    auto* figure = sub->add_option("--figure", o->figure, "One figure")->check(CLI::IsMember(figure_names()));
    sub->add_option("--out-dir", o->out_dir, "Directory for --all")->capture_default_str();
    all->excludes(table)->excludes(figure);
    table->excludes(figure);
    return [sub, o, &ctx, &err]() -> int {
        if (!sub->parsed()) {
            return -1;
        }
        if (!o->all && o->table.empty() && o->figure.empty()) {
            err << "reproduce needs one of --all, --table or --figure\n";
            return kExitUsage;
        }
        if (!o->all) {
            const auto a = generate(o->table.empty() ? o->figure : o->table);
            ctx.table(a.table, {{"artifact", a.name}, {"anchor", a.anchor}, {"pass", a.pass}, {"check", a.check}},
                      "csv");
            if (!a.pass) {
                err << "tolerance check failed: " << a.check << "\n";
                return kExitTolerance;
            }
            return kExitOk;
        }
        const auto artifacts = generate_all();
        const std::filesystem::path dir(o->out_dir);
        std::filesystem::create_directories(dir);
        for (const auto& a : artifacts) {
            std::ofstream f(dir / a.file, std::ios::binary);
            if (!f) {
                throw std::runtime_error("cannot write " + (dir / a.file).string());
            }
            f << a.table.to_csv();
        }
        const Json doc = manifest(artifacts, ctx.globals().seed);
        {
            std::ofstream f(dir / "manifest.json", std::ios::binary);
            if (!f) {
                throw std::runtime_error("cannot write manifest");
            }
            f << dump(doc);
        }
        ctx.write(dump(doc));
        for (const auto& a : artifacts) {
            if (!a.pass) {
                err << "tolerance check failed for " << a.name << ": " << a.check << "\n";
            }
        }
        return doc["pass"].get<bool>() ? kExitOk : kExitTolerance;
    };
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Globals globals;
    const Context ctx(globals, out);
    CLI::App app{"Quantum-assisted optical interferometry toolkit", "qvlbi"};
    app.set_version_flag("--version", std::string("qvlbi ") + QVLBI_VERSION);
    app.set_config("--config", "", "File of key=value lines preloading options");
    app.add_option("--seed", globals.seed, "Random seed")->envname("QVLBI_SEED")->capture_default_str();
    app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", globals.out, "Write the document to this file instead of standard output");
    app.require_subcommand(1);
    app.fallthrough();

    std::vector<Action> actions{
        add_photometry(app, ctx), add_state(app, ctx),   add_qfi(app, ctx),     add_protocol(app, ctx),
        add_consumption(app, ctx), add_geodesy(app, ctx), add_stirap(app, ctx),  add_cavity(app, ctx),
        add_targets(app, ctx),    add_precession(app, ctx), add_reproduce(app, ctx, err),
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (const auto& action : actions) {
            const int code = action();
            if (code >= 0) {
                return code;
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace qvlbi::cli
