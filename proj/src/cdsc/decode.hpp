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
#include <climits>
#include <string>
#include <string_view>

#include "cdsc/code.hpp"
#include "cdsc/noise.hpp"

namespace cdsc {

inline constexpr double kTieTolerance = 1e-9;

/// Normalized likelihoods of the four logical classes given a syndrome,
/// indexed by LogicalClass value. log_weight holds the unnormalized log coset
/// probabilities (only differences between entries are meaningful for the
/// tensor-network decoder, which rescales during contraction).

struct CosetProbabilities {
    std::array<double, 4> prob{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> log_weight{};

    double operator[](LogicalClass c) const { return prob[static_cast<size_t>(c)]; }
    /// Highest-probability class; ties (within kTieTolerance, relative) are
    /// resolved in the order I < X < Z < Y.
    LogicalClass argmax() const;
    /// Fills prob from log_weight. Returns false if every coset is empty.
    bool normalize();
};

struct DecodeOutcome {
    LogicalClass chosen = LogicalClass::I;
    PauliOp correction;
    CosetProbabilities cosets;
    /// False when the syndrome had zero probability, or (tensor network) when
    /// the two bond dimensions of the convergence check disagree.
    bool converged = true;
};

enum class DecoderKind : uint8_t { Exact, TensorNetwork };

DecoderKind decoder_from_string(std::string_view name);
std::string decoder_name(DecoderKind k);

inline constexpr int kUnboundedChi = INT_MAX;

struct DecoderSpec {
    DecoderKind kind = DecoderKind::TensorNetwork;
    int chi = 56;
    /// Tensor network only: also contract at a smaller bond dimension and
    /// record whether the chosen classes agree.
    bool check_convergence = true;
};

/// Physical-frame operator with the given syndrome: the product of the fixed
/// per-generator boundary strings, mapped through the code's deformation.
PauliOp pure_error(const DeformedCode& code, const Syndrome& s);

/// All decoders take the noise acting on physical qubits. For the usual
/// IID model this is NoiseField::uniform(rates_from(params), n).

/// Exact coset sums over the 2^(n-1) stabilizer group. Refuses n > 25.
DecodeOutcome exact_ml_decode(const DeformedCode& code, const NoiseField& field, const Syndrome& s);

/// Boundary-MPS contraction of the planar network whose exact value is each
/// coset probability, keeping at most chi singular values per bond.
DecodeOutcome tn_ml_decode(const DeformedCode& code, const NoiseField& field, const Syndrome& s, int chi,
                           bool check_convergence = true);

/// The bond dimension used for the convergence comparison run.
int convergence_reference_chi(int chi);

DecodeOutcome decode(const DeformedCode& code, const NoiseField& field, const Syndrome& s,
                     const DecoderSpec& spec);

/// True iff the decoder's correction times e is a nontrivial logical.
bool decode_failure(const DeformedCode& code, const NoiseField& field, const PauliOp& e, const DecoderSpec& spec);

}  // namespace cdsc
