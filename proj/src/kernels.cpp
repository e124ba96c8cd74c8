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

#include "qvlbi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qvlbi/protocols.hpp"
#include "qvlbi/source_model.hpp"

namespace qvlbi::kernels {
namespace {

std::size_t batch_count(std::size_t work, std::size_t per_batch) {
    return (work + per_batch - 1) / per_batch;
}

std::size_t batch_size(std::size_t work, std::size_t per_batch, std::size_t b) {
    return std::min(per_batch, work - b * per_batch);
}

ClassCounts trinomial_batch(std::size_t bins, double epsilon, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    ClassCounts c;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto trace = protocols::sample_arrivals(epsilon, bins, 1.0, 0.0, rng);
        if (trace.count_multi() > 0 || trace.count_shared() > 1) {
            ++c.multi;
        } else if (trace.count_shared() == 1) {
            ++c.single;
        } else {
            ++c.vacuum;
        }
    }
    return c;
}

ClassCounts bin_batch(double epsilon, std::size_t bins, std::uint64_t seed) {
    const auto trace = protocols::sample_arrivals(epsilon, bins, 1.0, 0.0, seed);
    ClassCounts c;
    c.single = trace.count_shared();
    c.multi = trace.count_multi();
    c.vacuum = bins - c.single - c.multi;
    return c;
}

void add(ClassCounts& into, const ClassCounts& c) {
    into.vacuum += c.vacuum;
    into.single += c.single;
    into.multi += c.multi;
}

void check_trinomial_args(std::size_t bins, double epsilon) {
    if (bins == 0) {
        throw std::invalid_argument("block must contain at least one bin");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite and non-negative");
    }
}

double phase_shot(const geodesy::PhaseMcConfig& config, std::size_t shot) {
    Rng rng(lane_seed(config.seed, shot));
    const auto counts = geodesy::simulate_counts(config.phi_true, config.n_photons, config.deltas, rng);
    return geodesy::mle_phase(counts);
}

struct GridIndex {
    double epsilon;
    double gamma;
    double phi;
};

std::vector<GridIndex> grid(const std::vector<double>& epsilons, const std::vector<double>& gammas,
                            const std::vector<double>& phis) {
    std::vector<GridIndex> g;
    for (const double e : epsilons) {
        for (const double ga : gammas) {
            for (const double p : phis) {
                g.push_back({e, ga, p});
            }
        }
    }
    return g;
}

void qfi_point(const GridIndex& at, QfiGridPoint* out) {
    const auto params = source::SourceParams::make(at.epsilon, at.gamma, at.phi);
    const auto state = source::weak_state(params);
    const auto analytic = estimation::qfi_matrix(params);
    const estimation::Parameter which[2] = {estimation::Parameter::Phi, estimation::Parameter::Gamma};
    const double closed[2] = {analytic.j_phi, analytic.j_gamma};
    for (int k = 0; k < 2; ++k) {
        const double num = estimation::qfi_numerical(state, which[k]);
        const double diff = std::abs(num - closed[k]);
        out[k] = {at.epsilon, at.gamma, params.phi, which[k], closed[k], num,
                  closed[k] != 0.0 ? diff / std::abs(closed[k]) : diff};
    }
}

void fuzz_one_m(std::size_t m, std::size_t positions, std::uint64_t seed, LedgerFuzzReport& r) {
    Rng rng(lane_seed(seed, m));
    std::uniform_int_distribution<std::size_t> pos(1, m);
    const std::size_t rounds = protocols::search_rounds(m);
    for (std::size_t k = 0; k < positions; ++k) {
        const std::size_t where = pos(rng);
        const auto result = protocols::binary_search_run(protocols::ArrivalTrace::single_photon(m, where));
        ++r.runs;
        if (result.ledger.consumed() != rounds) {
            ++r.ledger_violations;
        }
        if (!result.ok() || result.index != where) {
            ++r.location_errors;
        }
    }
    std::uniform_int_distribution<std::size_t> photons(0, std::min<std::size_t>(m, 8));
    const std::size_t n = photons(rng);
    std::vector<std::size_t> where;
    while (where.size() < n) {
        const std::size_t w = pos(rng);
        if (std::find(where.begin(), where.end(), w) == where.end()) {
            where.push_back(w);
        }
    }
    std::sort(where.begin(), where.end());
    std::vector<protocols::OccupiedBin> occ;
    for (const std::size_t w : where) {
        occ.push_back({w, protocols::Shared{+1, 0.0}});
    }
    const auto unary = protocols::unary_run(protocols::ArrivalTrace(m, std::move(occ)));
    ++r.runs;
    if (unary.ledger.consumed() != m) {
        ++r.ledger_violations;
    }
    if (unary.located != where) {
        ++r.location_errors;
    }
}

void check_fuzz_args(std::size_t max_bins) {
    if (max_bins == 0) {
        throw std::invalid_argument("max_bins must be positive");
    }
}

}  // namespace

QfiGridAxes default_qfi_grid() {
    return {{1e-4, 1e-3, 1e-2}, {0.0, 0.3, 0.7, 0.99}, {0.0, 1.0, 3.0}};
}

ClassCounts trinomial_counts(std::size_t bins, double epsilon, std::size_t trials, std::uint64_t seed) {
    check_trinomial_args(bins, epsilon);
    const auto nb = static_cast<long>(batch_count(trials, kTrialsPerBatch));
    std::uint64_t vac = 0, single = 0, multi = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : vac, single, multi)
    for (long b = 0; b < nb; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        const auto c = trinomial_batch(bins, epsilon, batch_size(trials, kTrialsPerBatch, ub), lane_seed(seed, ub));
        vac += c.vacuum;
        single += c.single;
        multi += c.multi;
    }
    return {vac, single, multi};
}

ClassCounts bin_counts(double epsilon, std::size_t bins, std::uint64_t seed) {
    check_trinomial_args(1, epsilon);
    const auto nb = static_cast<long>(batch_count(bins, kBinsPerBatch));
    std::uint64_t vac = 0, single = 0, multi = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : vac, single, multi)
    for (long b = 0; b < nb; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        const auto c = bin_batch(epsilon, batch_size(bins, kBinsPerBatch, ub), lane_seed(seed, ub));
        vac += c.vacuum;
        single += c.single;
        multi += c.multi;
    }
    return {vac, single, multi};
}

std::vector<double> phase_estimates(const geodesy::PhaseMcConfig& config) {
    config.validate();
    std::vector<double> out(static_cast<std::size_t>(config.shots));
    const long shots = config.shots;
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < shots; ++s) {
        out[static_cast<std::size_t>(s)] = phase_shot(config, static_cast<std::size_t>(s));
    }
    return out;
}

std::vector<QfiGridPoint> qfi_sweep(const std::vector<double>& epsilons, const std::vector<double>& gammas,
                                    const std::vector<double>& phis) {
    const auto g = grid(epsilons, gammas, phis);
    std::vector<QfiGridPoint> out(2 * g.size());
    const auto n = static_cast<long>(g.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        qfi_point(g[static_cast<std::size_t>(i)], &out[2 * static_cast<std::size_t>(i)]);
    }
    return out;
}

LedgerFuzzReport ledger_fuzz(std::size_t max_bins, std::size_t positions, std::uint64_t seed) {
    check_fuzz_args(max_bins);
    std::uint64_t runs = 0, violations = 0, errors = 0;
    const auto n = static_cast<long>(max_bins);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : runs, violations, errors)
    for (long m = 1; m <= n; ++m) {
        LedgerFuzzReport r;
        fuzz_one_m(static_cast<std::size_t>(m), positions, seed, r);
        runs += r.runs;
        violations += r.ledger_violations;
        errors += r.location_errors;
    }
    return {runs, violations, errors, max_bins};
}

namespace reference {

ClassCounts trinomial_counts(std::size_t bins, double epsilon, std::size_t trials, std::uint64_t seed) {
    check_trinomial_args(bins, epsilon);
    ClassCounts total;
    for (std::size_t b = 0; b < batch_count(trials, kTrialsPerBatch); ++b) {
        add(total, trinomial_batch(bins, epsilon, batch_size(trials, kTrialsPerBatch, b), lane_seed(seed, b)));
    }
    return total;
}

ClassCounts bin_counts(double epsilon, std::size_t bins, std::uint64_t seed) {
    check_trinomial_args(1, epsilon);
    ClassCounts total;
    for (std::size_t b = 0; b < batch_count(bins, kBinsPerBatch); ++b) {
        add(total, bin_batch(epsilon, batch_size(bins, kBinsPerBatch, b), lane_seed(seed, b)));
    }
    return total;
}

std::vector<double> phase_estimates(const geodesy::PhaseMcConfig& config) {
    config.validate();
    std::vector<double> out;
    for (long s = 0; s < config.shots; ++s) {
        out.push_back(phase_shot(config, static_cast<std::size_t>(s)));
    }
    return out;
}

std::vector<QfiGridPoint> qfi_sweep(const std::vector<double>& epsilons, const std::vector<double>& gammas,
                                    const std::vector<double>& phis) {
    const auto g = grid(epsilons, gammas, phis);
    std::vector<QfiGridPoint> out(2 * g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        qfi_point(g[i], &out[2 * i]);
    }
    return out;
}

LedgerFuzzReport ledger_fuzz(std::size_t max_bins, std::size_t positions, std::uint64_t seed) {
    check_fuzz_args(max_bins);
    LedgerFuzzReport r;
    r.max_bins = max_bins;
    for (std::size_t m = 1; m <= max_bins; ++m) {
        fuzz_one_m(m, positions, seed, r);
    }
    return r;
}

}  // namespace reference

}  // namespace qvlbi::kernels
