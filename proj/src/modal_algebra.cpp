#include "sideband/modal_algebra.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sideband {

namespace {

constexpr double kSymTol = 1e-12;

void require_symmetric(const Eigen::MatrixXd& m, double tol, const char* what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix not square");
    double dev = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (dev > tol) {
        std::ostringstream os;
        os << what << ": matrix not symmetric (deviation " << dev << ")";
        throw std::invalid_argument(os.str());
    }
}

// X_sa = T X_lu with the lower/upper blocks stacked as in QuadratureBasis.
Eigen::MatrixXd lu_to_sa_transform(int dim) {
    const int h = dim / 2;
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
    t.topLeftCorner(h, h) = s * Eigen::MatrixXd::Identity(h, h);
    t.topRightCorner(h, h) = s * Eigen::MatrixXd::Identity(h, h);
    t.bottomLeftCorner(h, h) = -s * Eigen::MatrixXd::Identity(h, h);
    t.bottomRightCorner(h, h) = s * Eigen::MatrixXd::Identity(h, h);
    return t;
}

}  // namespace

std::string to_string(QuadratureBasis basis) {
    return basis == QuadratureBasis::SidebandLU ? "sideband_lu" : "sym_asym_sa";
}

QuadratureBasis basis_from_string(const std::string& s) {
    if (s == "sideband_lu") return QuadratureBasis::SidebandLU;
    if (s == "sym_asym_sa") return QuadratureBasis::SymAsymSA;
    throw std::invalid_argument("unknown basis tag: " + s);
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd m, QuadratureBasis b)
    : mat(std::move(m)), basis(b) {
    require_symmetric(mat, kSymTol, "CovarianceMatrix");
    if (mat.rows() % 2 != 0)
        throw std::invalid_argument("CovarianceMatrix: dimension must be even");
}

SpectralMatrix::SpectralMatrix(Eigen::MatrixXcd m) : mat(std::move(m)) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("SpectralMatrix: matrix not square");
    double dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kSymTol)
        throw std::invalid_argument("SpectralMatrix: matrix not Hermitian");
    for (int i = 0; i < mat.rows(); ++i) {
        if (mat(i, i).real() <= 0.0)
            throw std::invalid_argument("SpectralMatrix: diagonal must be positive");
    }
}

CovarianceMatrix build_stationary_covariance(const StationaryBeamMoments& m,
                                             QuadratureBasis basis) {
    const double a = m.alpha, b = m.beta, g = m.gamma, d = m.delta;
    Eigen::MatrixXd v(4, 4);
    if (basis == QuadratureBasis::SymAsymSA) {
        v << a, g, d, 0,
             g, b, 0, d,
             d, 0, b, -g,
             0, d, -g, a;
    } else {
        const double ap = 0.5 * (a + b) - d;
        const double bp = 0.5 * (a + b) + d;
        const double gp = 0.5 * (a - b);
        const double dp = g;
        v << ap, 0, gp, dp,
             0, ap, dp, -gp,
             gp, dp, bp, 0,
             dp, -gp, 0, bp;
    }
    return CovarianceMatrix(std::move(v), basis);
}

CovarianceMatrix change_basis(const CovarianceMatrix& v, QuadratureBasis target) {
    if (v.dim() % 4 != 0)
        throw std::invalid_argument(
            "change_basis: dimension must be a multiple of 4 (paired sidebands)");
    if (v.basis == target) return v;
    const Eigen::MatrixXd t = lu_to_sa_transform(v.dim());
    Eigen::MatrixXd out;
    if (target == QuadratureBasis::SymAsymSA)
        out = t * v.mat * t.transpose();
    else
        out = t.transpose() * v.mat * t;
    return CovarianceMatrix(std::move(out), target);
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        s(2 * k, 2 * k + 1) = 1.0;
        s(2 * k + 1, 2 * k) = -1.0;
    }
    return s;
}

PhysicalityReport check_physicality(const Eigen::MatrixXd& v, double tol) {
    require_symmetric(v, 1e-9, "check_physicality");
    const int n = static_cast<int>(v.rows()) / 2;
    PhysicalityReport rep;
    rep.tolerance = tol;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    rep.positive_semidefinite = es.eigenvalues().minCoeff() >= -tol;

    // moduli of eigenvalues of Sigma*V come in pairs (nu_k, nu_k)
    Eigen::EigenSolver<Eigen::MatrixXd> ges(symplectic_form(n) * v, false);
    Eigen::VectorXd abs_all = ges.eigenvalues().cwiseAbs();
    std::sort(abs_all.data(), abs_all.data() + abs_all.size());
    rep.symplectic_eigenvalues.resize(n);
    for (int k = 0; k < n; ++k) rep.symplectic_eigenvalues[k] = abs_all[2 * k];
    rep.min_symplectic_eigenvalue = rep.symplectic_eigenvalues[0];
    rep.pass = rep.positive_semidefinite &&
               rep.min_symplectic_eigenvalue >= 1.0 - tol;
    return rep;
}

PhysicalityReport check_physicality(const CovarianceMatrix& v, double tol) {
    return check_physicality(v.mat, tol);
}

SpectralMatrix spectral_from_moments(const StationaryBeamMoments& m) {
    Eigen::MatrixXcd s(2, 2);
    const std::complex<double> c(m.gamma, m.delta);
    s << m.alpha, c, std::conj(c), m.beta;
    return SpectralMatrix(std::move(s));
}

StationaryBeamMoments moments_from_spectral(const SpectralMatrix& s) {
    if (s.dim() != 2)
        throw std::invalid_argument("moments_from_spectral: expected a 2x2 matrix");
    StationaryBeamMoments m;
    m.alpha = s.mat(0, 0).real();
    m.beta = s.mat(1, 1).real();
    m.gamma = s.mat(0, 1).real();
    m.delta = s.mat(0, 1).imag();
    return m;
}

CovarianceMatrix covariance_from_spectral(const SpectralMatrix& s) {
    const int d = s.dim();
    Eigen::MatrixXd re = s.mat.real();
    Eigen::MatrixXd im = s.mat.imag();
    Eigen::MatrixXd v(2 * d, 2 * d);
    v.topLeftCorner(d, d) = re;
    v.topRightCorner(d, d) = -im;
    v.bottomLeftCorner(d, d) = im;
    v.bottomRightCorner(d, d) = re;
    return CovarianceMatrix(std::move(v), QuadratureBasis::SymAsymSA);
}

CovarianceMatrix rotate_asym_sector(const CovarianceMatrix& v_sa) {
    if (v_sa.basis != QuadratureBasis::SymAsymSA)
        throw std::invalid_argument("rotate_asym_sector: expects the s/a basis");
    const int dim = v_sa.dim();
    if (dim % 4 != 0)
        throw std::invalid_argument("rotate_asym_sector: dimension not a multiple of 4");
    const int h = dim / 2;
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(dim, dim);
    for (int k = 0; k < h / 2; ++k) {
        const int i = h + 2 * k;
        rot(i, i) = 0.0;
        rot(i, i + 1) = 1.0;   // p_a' = q_a
        rot(i + 1, i) = -1.0;  // q_a' = -p_a
        rot(i + 1, i + 1) = 0.0;
    }
    return CovarianceMatrix(rot * v_sa.mat * rot.transpose(), QuadratureBasis::SymAsymSA);
}

bool duan_witness(double noise_power) {
    if (noise_power < 0.0)
        throw std::invalid_argument("duan_witness: noise power must be nonnegative");
    return noise_power < 1.0;
}

CovarianceMatrix apply_loss(const CovarianceMatrix& v, double efficiency) {
    if (efficiency < 0.0 || efficiency > 1.0)
        throw std::invalid_argument("apply_loss: efficiency must be in [0, 1]");
    Eigen::MatrixXd out = efficiency * v.mat +
        (1.0 - efficiency) * Eigen::MatrixXd::Identity(v.dim(), v.dim());
    return CovarianceMatrix(std::move(out), v.basis);
}

CovarianceMatrix assemble_multibeam(
    const std::vector<StationaryBeamMoments>& beams,
    const std::map<std::pair<int, int>, TwoBeamCrossMoments>& crosses) {
    const int n = static_cast<int>(beams.size());
    if (n == 0) throw std::invalid_argument("assemble_multibeam: no beams");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (crosses.find({i, j}) == crosses.end()) {
                std::ostringstream os;
                os << "assemble_multibeam: missing cross moments for pair (" << i
                   << ", " << j << ")";
                throw std::invalid_argument(os.str());
            }

    const int dim = 4 * n;
    const int h = 2 * n;  // a-sector offset
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
        const auto& m = beams[j];
        const int s = 2 * j, a = h + 2 * j;
        v(s, s) = m.alpha;
        v(s + 1, s + 1) = m.beta;
        v(s, s + 1) = v(s + 1, s) = m.gamma;
        v(a, a) = m.beta;
        v(a + 1, a + 1) = m.alpha;
        v(a, a + 1) = v(a + 1, a) = -m.gamma;
        v(s, a) = v(a, s) = m.delta;
        v(s + 1, a + 1) = v(a + 1, s + 1) = m.delta;
    }
    for (const auto& [key, x] : crosses) {
        const auto [i, j] = key;
        if (i < 0 || j >= n || i >= j)
            throw std::invalid_argument("assemble_multibeam: bad pair key");
        const int si = 2 * i, sj = 2 * j, ai = h + 2 * i, aj = h + 2 * j;
        // symmetric sector: C(s_i, s_j) = [[mu, xi], [zeta, nu]]
        Eigen::Matrix2d cs;
        cs << x.mu, x.xi, x.zeta, x.nu;
        v.block<2, 2>(si, sj) = cs;
        v.block<2, 2>(sj, si) = cs.transpose();
        // a-sector carries the pi/2-rotated copy: R cs R^T
        Eigen::Matrix2d r;
        r << 0, 1, -1, 0;
        Eigen::Matrix2d ca = r * cs * r.transpose();
        v.block<2, 2>(ai, aj) = ca;
        v.block<2, 2>(aj, ai) = ca.transpose();
        // hidden sector: C(s_i, a_j) and C(s_j, a_i)
        Eigen::Matrix2d bij, bji;
        bij << x.kappa, -x.eta, x.tau, -x.lambda;
        bji << -x.lambda, x.eta, -x.tau, x.kappa;
        v.block<2, 2>(si, aj) = bij;
        v.block<2, 2>(aj, si) = bij.transpose();
        v.block<2, 2>(sj, ai) = bji;
        v.block<2, 2>(ai, sj) = bji.transpose();
    }
    return CovarianceMatrix(std::move(v), QuadratureBasis::SymAsymSA);
}

StationaryBeamMoments extract_beam_moments(const CovarianceMatrix& v_sa, int beam,
                                           int n_beams) {
    if (v_sa.basis != QuadratureBasis::SymAsymSA)
        throw std::invalid_argument("extract_beam_moments: expects the s/a basis");
    if (v_sa.dim() != 4 * n_beams || beam < 0 || beam >= n_beams)
        throw std::invalid_argument("extract_beam_moments: bad beam index");
    const int s = 2 * beam, a = 2 * n_beams + 2 * beam;
    const Eigen::MatrixXd& v = v_sa.mat;
    StationaryBeamMoments m;
    m.alpha = 0.5 * (v(s, s) + v(a + 1, a + 1));
    m.beta = 0.5 * (v(s + 1, s + 1) + v(a, a));
    m.gamma = 0.5 * (v(s, s + 1) - v(a, a + 1));
    m.delta = 0.5 * (v(s, a) + v(s + 1, a + 1));
    return m;
}

TwoBeamCrossMoments extract_cross_moments(const CovarianceMatrix& v_sa, int beam_i,
                                          int beam_j, int n_beams) {
    if (v_sa.basis != QuadratureBasis::SymAsymSA)
        throw std::invalid_argument("extract_cross_moments: expects the s/a basis");
    if (v_sa.dim() != 4 * n_beams || beam_i < 0 || beam_j >= n_beams ||
        beam_i >= beam_j)
        throw std::invalid_argument("extract_cross_moments: bad beam indices");
    const int si = 2 * beam_i, sj = 2 * beam_j;
    const int ai = 2 * n_beams + 2 * beam_i, aj = 2 * n_beams + 2 * beam_j;
    const Eigen::MatrixXd& v = v_sa.mat;
    TwoBeamCrossMoments x;
    // each moment appears once in the s sector and once (rotated) in the a
    // sector; average the two copies
    x.mu = 0.5 * (v(si, sj) + v(ai + 1, aj + 1));
    x.nu = 0.5 * (v(si + 1, sj + 1) + v(ai, aj));
    x.xi = 0.5 * (v(si, sj + 1) - v(ai + 1, aj));
    x.zeta = 0.5 * (v(si + 1, sj) - v(ai, aj + 1));
    x.kappa = 0.5 * (v(si, aj) + v(sj + 1, ai + 1));
    x.eta = 0.5 * (-v(si, aj + 1) + v(sj, ai + 1));
    x.tau = 0.5 * (v(si + 1, aj) - v(sj + 1, ai));
    x.lambda = 0.5 * (-v(si + 1, aj + 1) - v(sj, ai));
    return x;
}

double stationary_pattern_residual(const CovarianceMatrix& v) {
    if (v.dim() % 4 != 0)
        throw std::invalid_argument(
            "stationary_pattern_residual: dimension not a multiple of 4");
    CovarianceMatrix sa =
        v.basis == QuadratureBasis::SymAsymSA ? v : change_basis(v, QuadratureBasis::SymAsymSA);
    const int n = sa.dim() / 4;
    std::vector<StationaryBeamMoments> beams;
    std::map<std::pair<int, int>, TwoBeamCrossMoments> crosses;
    for (int i = 0; i < n; ++i) beams.push_back(extract_beam_moments(sa, i, n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            crosses[{i, j}] = extract_cross_moments(sa, i, j, n);
    CovarianceMatrix fitted = assemble_multibeam(beams, crosses);
    return (sa.mat - fitted.mat).cwiseAbs().maxCoeff();
}

std::vector<std::string> quadrature_labels(QuadratureBasis basis, int n_beams) {
    const char* first = basis == QuadratureBasis::SidebandLU ? "l" : "s";
    const char* second = basis == QuadratureBasis::SidebandLU ? "u" : "a";
    std::vector<std::string> labels;
    for (const char* sect : {first, second})
        for (int j = 1; j <= n_beams; ++j) {
            labels.push_back(std::string("p_") + sect + std::to_string(j));
            labels.push_back(std::string("q_") + sect + std::to_string(j));
        }
    return labels;
}

void write_matrix_csv(const std::string& path, const CovarianceMatrix& v) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_matrix_csv: cannot open " + path);
    f << "# basis: " << to_string(v.basis) << "\n";
    auto labels = quadrature_labels(v.basis, v.dim() / 4 > 0 ? v.dim() / 4 : 1);
    if (static_cast<int>(labels.size()) != v.dim()) {
        labels.clear();
        for (int i = 0; i < v.dim(); ++i) labels.push_back("x" + std::to_string(i));
    }
    for (int i = 0; i < v.dim(); ++i) f << (i ? "," : "") << labels[i];
    f << "\n";
    f.precision(17);
    for (int i = 0; i < v.dim(); ++i) {
        for (int j = 0; j < v.dim(); ++j) f << (j ? "," : "") << v.mat(i, j);
        f << "\n";
    }
}

CovarianceMatrix read_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_matrix_csv: cannot open " + path);
    std::string line;
    int lineno = 0;
    QuadratureBasis basis = QuadratureBasis::SymAsymSA;
    std::vector<std::vector<double>> rows;
    bool saw_header = false;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.rfind("# basis:", 0) == 0) {
            std::string tag = line.substr(8);
            tag.erase(0, tag.find_first_not_of(" \t"));
            basis = basis_from_string(tag);
            continue;
        }
        if (!saw_header) {  // label row
            saw_header = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
                if (pos != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                std::ostringstream os;
                os << "read_matrix_csv: " << path << ":" << lineno
                   << ": not a number: '" << cell << "'";
                throw std::runtime_error(os.str());
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("read_matrix_csv: no data rows");
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) {
            std::ostringstream os;
            os << "read_matrix_csv: row " << i + 1 << " has " << rows[i].size()
               << " columns, expected " << n;
            throw std::runtime_error(os.str());
        }
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return CovarianceMatrix(std::move(m), basis);
}

}  // namespace sideband
