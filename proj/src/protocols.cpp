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

#include "qvlbi/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qvlbi::protocols {

ArrivalTrace::ArrivalTrace(std::size_t bins, std::vector<OccupiedBin> occupied, double epsilon,
                           std::uint64_t seed)
    : bins_(bins), occupied_(std::move(occupied)), epsilon_(epsilon), seed_(seed) {
    if (bins_ == 0) {
        throw std::invalid_argument("trace needs at least one bin");
    }
    std::size_t previous = 0;
    for (const auto& o : occupied_) {
        if (o.index <= previous || o.index > bins_) {
            throw std::invalid_argument("occupied bins must be strictly increasing and within [1, M]");
        }
        if (is_vacuum(o.state)) {
            throw std::invalid_argument("occupied list may not contain vacuum bins");
        }
        if (const auto* s = std::get_if<Shared>(&o.state); s && s->sign != 1 && s->sign != -1) {
            throw std::invalid_argument("shared photon sign must be +1 or -1");
        }
        previous = o.index;
    }
}

ArrivalTrace ArrivalTrace::from_bins(const std::vector<BinState>& bins) {
    std::vector<OccupiedBin> occupied;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (!is_vacuum(bins[i])) {
            occupied.push_back({i + 1, bins[i]});
        }
    }
    return ArrivalTrace(bins.size(), std::move(occupied));
}

ArrivalTrace ArrivalTrace::single_photon(std::size_t bins, std::size_t photon_bin, int sign, double phase) {
    return ArrivalTrace(bins, {OccupiedBin{photon_bin, Shared{sign, phase}}});
}

BinState ArrivalTrace::at(std::size_t index) const {
    if (index == 0 || index > bins_) {
        throw std::out_of_range("bin index out of range");
    }
    const auto it = std::lower_bound(occupied_.begin(), occupied_.end(), index,
                                     [](const OccupiedBin& o, std::size_t i) { return o.index < i; });
    if (it != occupied_.end() && it->index == index) {
        return it->state;
    }
    return Vacuum{};
}

std::vector<BinState> ArrivalTrace::dense() const {
    std::vector<BinState> out(bins_, Vacuum{});
    for (const auto& o : occupied_) {
        out[o.index - 1] = o.state;
    }
    return out;
}

std::size_t ArrivalTrace::count_shared() const {
    return static_cast<std::size_t>(std::count_if(occupied_.begin(), occupied_.end(), [](const OccupiedBin& o) {
        return std::holds_alternative<Shared>(o.state);
    }));
}

std::size_t ArrivalTrace::count_multi() const {
    return occupied_.size() - count_shared();
}

ArrivalTrace sample_arrivals(double epsilon, std::size_t bins, double gamma, double phi, Rng& rng) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite and non-negative");
    }
    if (bins == 0) {
        throw std::invalid_argument("need at least one bin");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1]");
    }
    std::vector<OccupiedBin> occupied;
    if (epsilon == 0.0) {
        return ArrivalTrace(bins, std::move(occupied), epsilon);
    }
    // Bins are i.i.d., so the gap to the next non-vacuum bin is geometric with
    // success probability q = eps / (1 + eps). A non-vacuum bin holds exactly
    // one photon with conditional probability 1 / (1 + eps).
    const double q = epsilon / (1.0 + epsilon);
    const double log_fail = std::log1p(-q);
    const double p_single_given_occupied = 1.0 / (1.0 + epsilon);
    const double p_plus = (1.0 + gamma) / 2.0;
    std::size_t position = 0;  // last consumed bin
    while (true) {
        const double u = 1.0 - uniform01(rng);  // (0, 1]
        const double gap = std::floor(std::log(u) / log_fail);
        if (!(gap < static_cast<double>(bins - position))) {
            break;
        }
        position += static_cast<std::size_t>(gap) + 1;
        if (uniform01(rng) < p_single_given_occupied) {
            const int sign = uniform01(rng) < p_plus ? +1 : -1;
            occupied.push_back({position, Shared{sign, phi}});
        } else {
            occupied.push_back({position, Multi{}});
        }
        if (position == bins) {
            break;
        }
    }
    return ArrivalTrace(bins, std::move(occupied), epsilon);
}

ArrivalTrace sample_arrivals(double epsilon, std::size_t bins, double gamma, double phi, std::uint64_t seed) {
    Rng rng(seed);
    auto trace = sample_arrivals(epsilon, bins, gamma, phi, rng);
    return ArrivalTrace(trace.size(), trace.occupied(), epsilon, seed);
}

std::size_t BellLedger::flips() const {
    return static_cast<std::size_t>(std::count(outcomes_.begin(), outcomes_.end(), Parity::Flipped));
}

UnaryResult unary_run(const ArrivalTrace& trace) {
    UnaryResult out;
    auto next = trace.occupied().begin();
    for (std::size_t bin = 1; bin <= trace.size(); ++bin) {
        const bool occupied = next != trace.occupied().end() && next->index == bin;
        out.ledger.record(occupied ? Parity::Flipped : Parity::Kept);
        if (occupied) {
            out.located.push_back(bin);
            ++next;
        }
    }
    return out;
}

std::size_t search_rounds(std::size_t bins) {
    if (bins == 0) {
        throw std::invalid_argument("need at least one bin");
    }
    return static_cast<std::size_t>(std::bit_width(bins - 1));
}

BinarySearchResult binary_search_run(const ArrivalTrace& trace) {
    BinarySearchResult out;
    if (trace.count_multi() != 0 || trace.count_shared() != 1) {
        out.message = "search precondition violated: need exactly one shared photon and no multiphoton bins, got " +
                      std::to_string(trace.count_shared()) + " shared and " + std::to_string(trace.count_multi()) +
                      " multiphoton";
        return out;
    }
    const std::size_t photon = trace.occupied().front().index;
    const std::size_t rounds = search_rounds(trace.size());
    std::size_t lo = 1;
    std::size_t span = std::size_t{1} << rounds;
    for (std::size_t r = 0; r < rounds; ++r) {
        span /= 2;
        // Parity check over bins [lo, lo + span) of the padded block.
        const bool in_left = photon >= lo && photon < lo + span;
        out.ledger.record(in_left ? Parity::Flipped : Parity::Kept);
        if (!in_left) {
            lo += span;
        }
    }
    out.status = BinarySearchResult::Status::Located;
    out.index = lo;
    return out;
}

std::size_t register_width(std::size_t bins) {
    if (bins == 0) {
        throw std::invalid_argument("need at least one bin");
    }
    return static_cast<std::size_t>(std::bit_width(bins));
}

std::string codeword_bits(std::uint64_t value, std::size_t width) {
    std::string bits(width, '0');
    for (std::size_t i = 0; i < width && i < 64; ++i) {
        if ((value >> i) & 1U) {
            bits[i] = '1';
        }
    }
    return bits;
}

LogicalMemory::Registers LogicalMemory::branch(Station holder) const {
    const std::string zeros(width, '0');
    const std::string code = codeword_bits(codeword, width);
    return holder == Station::A ? Registers{code, zeros} : Registers{zeros, code};
}

LogicalMemory binary_encode(const ArrivalTrace& trace) {
    LogicalMemory mem;
    mem.width = register_width(trace.size());
    if (mem.width > 64) {
        throw std::invalid_argument("register wider than 64 bits");
    }
    for (const auto& o : trace.occupied()) {
        if (const auto* s = std::get_if<Shared>(&o.state)) {
            mem.codeword ^= static_cast<std::uint64_t>(o.index);
            mem.photons += 1;
            mem.sign = s->sign;
            mem.phase = s->phase;
        } else {
            mem.photons += 2;
            mem.depolarized = true;
        }
    }
    if (mem.photons > 1) {
        mem.depolarized = true;
    }
    return mem;
}

}  // namespace qvlbi::protocols
