#ifndef SIDEBAND_CAVITY_RESPONSE_HPP
#define SIDEBAND_CAVITY_RESPONSE_HPP

#include <complex>
#include <utility>

namespace sideband {

// Resonator description. Detunings are dimensionless (units of the cavity
// bandwidth gamma) throughout the API; the MHz conversion lives in scan_io.
struct CavityParams {
    double d = 1.0;           // impedance matching parameter, in [0, 1]
    double omega_ratio = 1.75;  // analysis frequency over bandwidth, > 0

    void validate() const;
};

// Coefficients of the resonator noise model
//   S_RD = c_alpha*alpha + c_beta*beta + c_gamma*gamma + c_delta*delta + c_v.
// Identities (all exact in the model):
//   c_alpha + c_beta + c_v = 1
//   c_v = (t(D+W)^2 + t(D-W)^2)/2
//   c_gamma^2 + c_delta^2 = 4 c_alpha c_beta
struct CoefficientSet {
    double c_alpha = 1.0;
    double c_beta = 0.0;
    double c_gamma = 0.0;
    double c_delta = 0.0;
    double c_v = 0.0;
    std::complex<double> g_plus{1.0, 0.0};   // diagnostic
    std::complex<double> g_minus{0.0, 0.0};  // diagnostic
};

// Two-beam correlation coefficients, demodulation-phase referenced and
// normalized so that each is bounded by 1 in magnitude (half the raw
// product 2 g+*(1) g+(2) etc.; the far-detuned limit gives c_mu = 1).
struct TwoBeamCoefficientSet {
    double c_mu = 1.0;
    double c_eta = 0.0;
    double c_nu = 0.0;
    double c_tau = 0.0;
    double c_xi = 0.0;
    double c_kappa = 0.0;
    double c_zeta = 0.0;
    double c_lambda = 0.0;
};

// Complex reflection response r(D) = -(sqrt(d) + 2iD)/(1 - 2iD).
// |r|^2 = d at D = 0 and -> 1 far from resonance.
std::complex<double> reflection(double d, double delta);

// Transmission amplitude t = sqrt(1 - |r|^2).
double transmission(double d, double delta);

// Sideband response pair
//   g+ = [u(D) r*(D+W) + u*(D) r(D-W)]/2
//   g- = i[u(D) r*(D+W) - u*(D) r(D-W)]/2
// with u = r/|r| (unit-modulus convention, no 1/sqrt(2) prefactor; this is
// what makes the vacuum normalization c_alpha + c_beta + c_v = 1 exact).
// Throws when |r(D)| = 0 (d = 0 at exact resonance).
std::pair<std::complex<double>, std::complex<double>> sideband_coeffs(
    const CavityParams& p, double delta);

// Antisymmetric part of the sideband phase response (group-delay phase of
// the demodulated photocurrent), continuous in the detuning:
//   chi = [arg r(D-W) - arg r(D+W)]/2
// computed without branch wrapping.
double group_delay_phase(const CavityParams& p, double delta);

// g pair with the group-delay phase factored out, exp(-i chi) * g+-.
// Single-beam coefficients are invariant under this referencing; it matters
// only for two-beam correlation coefficients, where it plays the role of a
// per-beam demodulation phase calibration.
std::pair<std::complex<double>, std::complex<double>> referenced_sideband_coeffs(
    const CavityParams& p, double delta);

// Single-beam noise coefficients:
//   c_alpha = |g+|^2, c_beta = |g-|^2, c_gamma + i c_delta = 2 g+* g-,
//   c_v = 1 - c_alpha - c_beta.
CoefficientSet noise_coefficients(const CavityParams& p, double delta);

// Two-beam correlation coefficients from the referenced g pairs:
//   c_mu   - i c_eta    = G+*(1) G+(2)
//   c_nu   - i c_tau    = G-*(1) G-(2)
//   c_xi   - i c_kappa  = G+*(1) G-(2)
//   c_zeta - i c_lambda = G-*(1) G+(2)
TwoBeamCoefficientSet cross_coefficients(const CavityParams& p1, double delta1,
                                         const CavityParams& p2, double delta2);

// Lossless-resonator (d = 1) effective homodyne phase: the continuous phase
// phi(D) with c_alpha = cos^2 phi, c_beta = sin^2 phi, c_gamma = sin 2phi.
// Throws unless d = 1.
double hd_limit_phase(const CavityParams& p, double delta);

}  // namespace sideband

#endif
