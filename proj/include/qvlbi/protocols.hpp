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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qvlbi/rng.hpp"

namespace qvlbi::protocols {

// Symbolic occupation of one time bin shared between the two stations.
struct Vacuum {
    friend bool operator==(const Vacuum&, const Vacuum&) = default;
};

/// One photon in (|1,vac> + sign e^{i phase}|vac,1>)/sqrt(2).
struct Shared {
    int sign = +1;
    double phase = 0.0;
    friend bool operator==(const Shared&, const Shared&) = default;
};

/// Two or more photons. Absorbing: every protocol treats it as depolarizing.
struct Multi {
    friend bool operator==(const Multi&, const Multi&) = default;
};

using BinState = std::variant<Vacuum, Shared, Multi>;

inline bool is_vacuum(const BinState& b) { return std::holds_alternative<Vacuum>(b); }

/// A non-vacuum bin; `index` is 1-based.
struct OccupiedBin {
    std::size_t index;
    BinState state;
    friend bool operator==(const OccupiedBin&, const OccupiedBin&) = default;
};

/// Arrival pattern over M time bins. Stored sparsely since almost every bin
/// is vacuum for astronomical sources.
class ArrivalTrace {
  public:
    ArrivalTrace(std::size_t bins, std::vector<OccupiedBin> occupied, double epsilon = 0.0,
                 std::uint64_t seed = 0);

    /// Trace from an explicit dense list of bins (bin 1 first).
    static ArrivalTrace from_bins(const std::vector<BinState>& bins);
    /// M bins, a single shared photon at `photon_bin` (1-based).
    static ArrivalTrace single_photon(std::size_t bins, std::size_t photon_bin, int sign = +1,
                                      double phase = 0.0);

    std::size_t size() const { return bins_; }
    double epsilon() const { return epsilon_; }
    std::uint64_t seed() const { return seed_; }
    /// Non-vacuum bins in ascending index order.
    const std::vector<OccupiedBin>& occupied() const { return occupied_; }

    /// State of bin `index` (1-based).
    BinState at(std::size_t index) const;
    std::vector<BinState> dense() const;

    std::size_t count_shared() const;
    std::size_t count_multi() const;

    friend bool operator==(const ArrivalTrace&, const ArrivalTrace&) = default;

  private:
    std::size_t bins_;
    std::vector<OccupiedBin> occupied_;
    double epsilon_;
    std::uint64_t seed_;
};

/// Samples M independent thermal bins: vacuum w.p. 1/(1+eps), one shared
/// photon w.p. eps/(1+eps)^2, multiphoton otherwise. Shared photons carry
/// sign + w.p. (1+gamma)/2 and phase phi.
ArrivalTrace sample_arrivals(double epsilon, std::size_t bins, double gamma, double phi, std::uint64_t seed);
/// Same distribution, drawing from a caller-owned engine.
ArrivalTrace sample_arrivals(double epsilon, std::size_t bins, double gamma, double phi, Rng& rng);

enum class Parity : std::uint8_t { Kept, Flipped };  // Phi+ stays, or becomes Phi-

/// Entangled pairs consumed during one protocol run.
class BellLedger {
  public:
    void record(Parity outcome) { outcomes_.push_back(outcome); }
    std::size_t consumed() const { return outcomes_.size(); }
    const std::vector<Parity>& outcomes() const { return outcomes_; }
    std::size_t flips() const;

  private:
    std::vector<Parity> outcomes_;
};

struct UnaryResult {
    /// 1-based bins whose parity check flipped.
    std::vector<std::size_t> located;
    BellLedger ledger;
};

/// One parity check per bin against a fresh Bell pair.
UnaryResult unary_run(const ArrivalTrace& trace);

struct BinarySearchResult {
    enum class Status { Located, PreconditionViolated };
    Status status = Status::PreconditionViolated;
    std::size_t index = 0;  // 1-based, valid when Located
    BellLedger ledger;
    std::string message;

    bool ok() const { return status == Status::Located; }
};

/// Number of halving rounds for an M-bin block: ceil(log2 M).
std::size_t search_rounds(std::size_t bins);

/// Locates the single shared photon by repeated halving. The block is padded
/// to the next power of two so that the left half of every split holds the
/// extra real bin and every run uses exactly ceil(log2 M) Bell pairs.
BinarySearchResult binary_search_run(const ArrivalTrace& trace);

/// Width of one binary register: ceil(log2(M + 1)), reserving all-zeros for
/// vacuum.
std::size_t register_width(std::size_t bins);

/// Binary-encoded memory pair. A shared photon in bin m leaves the registers
/// in (|0, m> + sign e^{i phase}|m, 0>)/sqrt(2); `codeword` holds m.
struct LogicalMemory {
    std::size_t width = 0;
    std::uint64_t codeword = 0;
    std::size_t photons = 0;
    int sign = +1;
    double phase = 0.0;
    bool depolarized = false;

    enum class Station { A, B };
    struct Registers {
        std::string a;
        std::string b;
    };
    /// Register contents (least significant bit first) in the branch where
    /// `holder` absorbed the photon; the other register stays all-zeros.
    Registers branch(Station holder) const;
};

/// Bits of `value`, least significant first, padded with zeros to `width`.
std::string codeword_bits(std::uint64_t value, std::size_t width);

/// Applies the encoded CX_m for every bin. Vacuum leaves the registers
/// untouched; a second photon or a multiphoton bin depolarizes the memory.
LogicalMemory binary_encode(const ArrivalTrace& trace);

}  // namespace qvlbi::protocols
