#pragma once

#include <optional>

#include "tvqc/channel.hpp"

namespace tvqc {

struct CapacityValue {
  double value;                    // qubits per channel use
  std::optional<double> argmax_xi; // maximizing input parameter, AD only
};

// Quantum capacity of the static amplitude damping channel:
// max over xi in [0,1] of H2((1-gamma) xi) - H2(gamma xi) for gamma < 1/2,
// exactly zero for gamma in [1/2, 1]. The inner maximization uses
// golden-section search to 1e-10 in xi.
CapacityValue ad_capacity(double gamma);

// Hashing bound C_H = 1 - H(p) of a Pauli channel. The raw value is
// returned, negative included; treating <= 0 as zero achievable rate is the
// caller's concern (the noise-limit inversion needs the monotone
// continuation through zero).
CapacityValue hashing_bound(const PauliPmf& pmf);

// Capacity of the given channel family at damping parameter gamma:
// ad_capacity for AD, hashing_bound of the twirled pmf otherwise.
double channel_capacity(ChannelKind kind, double gamma);

// Classical block-fading reference: outage probability of a Rayleigh fading
// AWGN channel, 1 - exp(-(2^rate - 1)/snr). Requires rate >= 0, snr > 0.
double rayleigh_outage(double rate, double snr);

}  // namespace tvqc
