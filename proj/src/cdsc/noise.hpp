// Copyright 2026 The cdsc Authors
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

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cdsc/pauli.hpp"
#include "cdsc/random.hpp"

namespace cdsc {

inline constexpr double kInfiniteBias = std::numeric_limits<double>::infinity();

/// Total error rate p and bias eta = p_Z / (p_X + p_Y). Infinite bias is the
/// IEEE infinity, tested with infinite_bias(); it is never approximated by a
/// large finite value.
struct BiasedNoiseParams {
    double p = 0.0;
    double eta = 0.5;

    bool infinite_bias() const { return std::isinf(eta); }
    void validate() const;
};

/// Parses a bias: a decimal number or the literal "inf".
double parse_eta(std::string_view text);
/// Decimal form with enough digits to round-trip, or "inf".
std::string format_eta(double eta);

/// Probabilities of the four letters on one qubit, indexed by Letter value.
struct QubitChannel {
    std::array<double, 4> prob{1.0, 0.0, 0.0, 0.0};

    double operator[](Letter l) const { return prob[static_cast<size_t>(l)]; }
    double p_i() const { return (*this)[Letter::I]; }
    double p_x() const { return (*this)[Letter::X]; }
    double p_y() const { return (*this)[Letter::Y]; }
    double p_z() const { return (*this)[Letter::Z]; }

    static QubitChannel from_xyz(double px, double py, double pz);
    bool operator==(const QubitChannel&) const = default;
};

QubitChannel rates_from(const BiasedNoiseParams& params);

/// Channel seen through a deformation: the letter l is assigned the
/// probability of apply(d, l). SwapXZ maps (pX, pY, pZ) to (pZ, pY, pX).
QubitChannel permute_channel(const QubitChannel& base, Deformation d);

/// One channel per qubit.
class NoiseField {
   public:
    NoiseField() = default;
    explicit NoiseField(std::vector<QubitChannel> channels);
    static NoiseField uniform(const QubitChannel& channel, size_t num_qubits);

    size_t size() const { return channels_.size(); }
    const QubitChannel& operator[](size_t q) const { return channels_[q]; }
    const std::vector<QubitChannel>& channels() const { return channels_; }
    /// True when every qubit carries the same channel.
    bool is_uniform() const { return uniform_; }

   private:
    std::vector<QubitChannel> channels_;
    bool uniform_ = true;
};

/// Per-qubit permuted copy of a uniform base channel. For an undeformed code
/// this is the noise that acts on the physical errors of the deformed code.
NoiseField permute_field(const QubitChannel& base, const DeformationPattern& pattern);
/// Per-qubit permutation of an arbitrary field.
NoiseField permute_field(const NoiseField& field, const DeformationPattern& pattern);

/// One uniform draw per qubit in index order; letters are chosen in the order
/// X, Y, Z, I along the unit interval.
PauliOp sample_error(const NoiseField& field, Rng& rng);

/// Sum of per-qubit log probabilities; -inf when a letter has zero rate.
double log_prob(const NoiseField& field, const PauliOp& e);

/// Base-2 Shannon entropy of a channel.
double channel_entropy(const QubitChannel& ch);

/// Error rate at which the channel entropy reaches one bit.
double hashing_bound(double eta);

}  // namespace cdsc
