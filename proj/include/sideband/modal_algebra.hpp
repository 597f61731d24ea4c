#ifndef SIDEBAND_MODAL_ALGEBRA_HPP
#define SIDEBAND_MODAL_ALGEBRA_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sideband {

// Quadrature ordering is (p, q) per mode, modes in declared order.
//
// SidebandLU:  all lower-sideband mode pairs first, then all upper-sideband
//              pairs: (p_l1, q_l1, ..., p_ln, q_ln, p_u1, q_u1, ..., p_un, q_un).
// SymAsymSA:   all symmetric-mode pairs first, then all anti-symmetric pairs:
//              (p_s1, q_s1, ..., p_sn, q_sn, p_a1, q_a1, ..., p_an, q_an).
//
// The two bases are related mode-wise by
//   p_s = (p_u + p_l)/sqrt(2),   p_a = (p_u - p_l)/sqrt(2)   (same for q),
// an orthogonal congruence implemented by change_basis.
enum class QuadratureBasis { SidebandLU, SymAsymSA };

std::string to_string(QuadratureBasis basis);
QuadratureBasis basis_from_string(const std::string& s);

// The four single-beam moments of a stationary state, SQL units
// (vacuum variance = 1, commutator convention [p, q] = 2i).
//
//   alpha = Var(p_s) = Var(q_a)        beta  = Var(q_s) = Var(p_a)
//   gamma = C(p_s, q_s) = -C(p_a, q_a) delta = C(p_s, p_a) = C(q_s, q_a)
//
// In the sideband basis delta is half the energy imbalance:
// 2*delta = (upper-sideband energy) - (lower-sideband energy).
struct StationaryBeamMoments {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
};

// The eight cross moments of a stationary two-beam state.
// Symmetric sector (visible to in-phase homodyne correlation):
//   mu   = C(p_s1, p_s2)   nu   = C(q_s1, q_s2)
//   xi   = C(p_s1, q_s2)   zeta = C(q_s1, p_s2)
// Hidden sector (S/A cross correlations between the beams):
//   kappa = C(p_s1, p_a2)  eta  = -C(p_s1, q_a2)
//   tau   = C(q_s1, p_a2)  lambda = -C(q_s1, q_a2)
struct TwoBeamCrossMoments {
    double mu = 0.0;
    double nu = 0.0;
    double xi = 0.0;
    double zeta = 0.0;
    double kappa = 0.0;
    double lambda = 0.0;
    double tau = 0.0;
    double eta = 0.0;
};

// Real symmetric 2n x 2n second-moment matrix in SQL units.
// Construction validates symmetry (1e-12) and even dimension.
struct CovarianceMatrix {
    Eigen::MatrixXd mat;
    QuadratureBasis basis = QuadratureBasis::SymAsymSA;

    CovarianceMatrix() = default;
    CovarianceMatrix(Eigen::MatrixXd m, QuadratureBasis b);

    int dim() const { return static_cast<int>(mat.rows()); }
    int modes() const { return dim() / 2; }
};

// Complex Hermitian 2n x 2n spectral second-moment matrix, SQL units.
// Construction validates Hermiticity (1e-12) and a real positive diagonal.
struct SpectralMatrix {
    Eigen::MatrixXcd mat;

    SpectralMatrix() = default;
    explicit SpectralMatrix(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(mat.rows()); }
    int modes() const { return dim() / 2; }
};

struct PhysicalityReport {
    double min_symplectic_eigenvalue = 0.0;
    bool positive_semidefinite = false;
    bool pass = false;
    Eigen::VectorXd symplectic_eigenvalues;  // one per mode, ascending
    double tolerance = 1e-9;
};

// Stationary 4x4 covariance of one beam in the requested basis.
//
// SymAsymSA:                      SidebandLU:
//   [ a  g  d  0 ]                  [ a'  0   g'  d' ]
//   [ g  b  0  d ]                  [ 0   a'  d' -g' ]
//   [ d  0  b -g ]                  [ g'  d'  b'  0  ]
//   [ 0  d -g  a ]                  [ d' -g'  0   b' ]
// with a' = (a+b)/2 - d, b' = (a+b)/2 + d, g' = (a-b)/2, d' = g.
CovarianceMatrix build_stationary_covariance(const StationaryBeamMoments& m,
                                             QuadratureBasis basis);

// Orthogonal congruence between the two bases. Dimension must be a multiple
// of 4 (paired sidebands). Round trip returns the input.
CovarianceMatrix change_basis(const CovarianceMatrix& v, QuadratureBasis target);

// Symplectic spectrum of V under the [p,q] = 2i convention (vacuum -> 1).
// pass requires V positive semidefinite and min eigenvalue >= 1 - tol.
PhysicalityReport check_physicality(const CovarianceMatrix& v, double tol = 1e-9);
PhysicalityReport check_physicality(const Eigen::MatrixXd& v, double tol = 1e-9);

// 2x2 Hermitian spectral matrix [[alpha, gamma + i delta], [conj, beta]].
SpectralMatrix spectral_from_moments(const StationaryBeamMoments& m);
StationaryBeamMoments moments_from_spectral(const SpectralMatrix& s);

// Real embedding V = [[Re S, -Im S], [Im S, Re S]] (dimension doubles).
// The anti-symmetric sector carries the local rotation p_a' = q_a,
// q_a' = -p_a; this rotation lives only here, every other interface uses
// unrotated a-mode quadratures.
CovarianceMatrix covariance_from_spectral(const SpectralMatrix& s);

// Relates the rotated embedding to the plain s/a covariance:
// rotate_asym_sector(V_sa) applies p_a -> q_a, q_a -> -p_a to every
// anti-symmetric mode, giving the matrix covariance_from_spectral produces.
CovarianceMatrix rotate_asym_sector(const CovarianceMatrix& v_sa);

// Noise power below SQL in an S/A combination witnesses upper/lower
// sideband entanglement.
bool duan_witness(double noise_power);

// Uniform detection loss: V -> eta V + (1 - eta) I.
CovarianceMatrix apply_loss(const CovarianceMatrix& v, double efficiency);

// Joint s/a covariance of n beams (dimension 4n) from per-beam stationary
// moments and per-pair cross moments. Pair keys are (i, j) with i < j,
// required for every unordered pair.
CovarianceMatrix assemble_multibeam(
    const std::vector<StationaryBeamMoments>& beams,
    const std::map<std::pair<int, int>, TwoBeamCrossMoments>& crosses);

// Pattern extraction (averages the symmetry-equivalent entries).
StationaryBeamMoments extract_beam_moments(const CovarianceMatrix& v_sa, int beam,
                                           int n_beams);
TwoBeamCrossMoments extract_cross_moments(const CovarianceMatrix& v_sa, int beam_i,
                                          int beam_j, int n_beams);

// Largest deviation of V (s/a basis, one beam per 4 dims not required; any
// 2n x 2n) from the stationary block pattern; 0 iff exactly stationary.
double stationary_pattern_residual(const CovarianceMatrix& v);

// Symplectic form for n modes, ordering (p1, q1, p2, q2, ...):
// block-diagonal [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// Quadrature labels for CSV headers, e.g. "p_s1" or "q_u2".
std::vector<std::string> quadrature_labels(QuadratureBasis basis, int n_beams);

// CSV round trip: header line "# basis: <tag>", then a label row, then the
// matrix rows. Throws on malformed input with the offending line number.
void write_matrix_csv(const std::string& path, const CovarianceMatrix& v);
CovarianceMatrix read_matrix_csv(const std::string& path);

}  // namespace sideband

#endif
