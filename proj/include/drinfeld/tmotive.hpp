#ifndef DRINFELD_TMOTIVE_HPP
#define DRINFELD_TMOTIVE_HPP

#include <string>
#include <vector>

#include "drinfeld/module.hpp"
#include "drinfeld/relations.hpp"
#include "drinfeld/tate.hpp"

namespace drinfeld {

/// Verification outcome of one difference-equation identity: either the
/// residual is exactly zero (`infinite`) or its minimum coefficient valuation
/// num/den is compared against the target valuation.
struct ResidualReport {
    std::string identity;
    bool pass = false;
    bool infinite = false;
    std::int64_t num = 0, den = 1;                // attained residual valuation
    std::int64_t target_num = 0, target_den = 1;  // required valuation
};

/// The difference-equation data attached to a module: the companion matrix
/// Phi (sigma-action on the motive), the Anderson-generating-function matrix
/// Upsilon, the auxiliary exact matrices Theta and V, and the rigid analytic
/// trivialization Psi = V^{-1} [Upsilon^{(1)}]^{-1}.
struct TMotiveData {
    FieldPtr fld;
    int r = 0;
    int N = 0;
    std::vector<Puiseux> periods;
    TateMatrix Phi, Theta, V, Upsilon, Psi;
    /// Set when Upsilon^{(1)} had a non-unit constant term and Psi could not
    /// be formed; the two equivalent identities are still verified.
    bool psi_fallback = false;
    std::vector<ResidualReport> reports;
};

/// Companion matrix of the sigma-action: superdiagonal 1s and bottom row
/// ((t - theta), -kappa_1^{(-1)}, ..., -kappa_{r-1}^{(-r+1)}).
/// Requires kappa_r = 1 (NotNormalized otherwise).
TateMatrix build_phi(const DrinfeldModule& rho);
/// Theta with (1, r) entry t - theta, subdiagonal 1s, last column -kappa_i.
TateMatrix build_theta(const DrinfeldModule& rho);
/// Anti-triangular V with V_{ij} = kappa_{i+j-1}^{(-(j-1))} (kappa_r = 1).
TateMatrix build_v(const DrinfeldModule& rho);
/// Upsilon_{ij} = f_i^{(j-1)} where f_i is the Anderson generating function
/// of the i-th period, truncated at N. Throws SingularUpsilon when det
/// vanishes to precision.
TateMatrix build_upsilon(const DrinfeldModule& rho, const std::vector<Puiseux>& periods, int N);

/// Assemble everything above, form Psi, and verify
///   V^{(-1)} Phi = Theta V   (exact polynomial identity),
///   Upsilon^{(1)} = Upsilon Theta, and Psi^{(-1)} = Phi Psi
/// (residual valuations against target = joint precision cap - 4 slots).
/// The twisted identities are checked in the equivalent forward-twisted form.
TMotiveData build_psi(const DrinfeldModule& rho, const std::vector<Puiseux>& periods, int N);

/// Extension block attached to u: alpha = exp(u), h = (alpha, 0, ..., 0)^T,
/// the column g built from twists of the Anderson generating function of u,
/// the (r+1)-square matrices Phi_alpha and Psi_alpha, and residual reports
/// for Phi^T g^{(-1)} = g + h, Psi_alpha^{(-1)} = Phi_alpha Psi_alpha, and
/// g_1(theta) = u - alpha.
struct ExtBlock {
    Puiseux u, alpha;
    std::vector<Puiseux> h;
    std::vector<TateSeries> g;
    TateMatrix Phi_alpha, Psi_alpha;
    std::vector<ResidualReport> reports;
};

ExtBlock build_ext(const DrinfeldModule& rho, const TMotiveData& td, const Puiseux& u);

/// A full set of rank() periods whose generating-function matrix is
/// invertible, found by scanning torsion branches in the deterministic order
/// and discarding combinations with singular Upsilon (lattice-dependent
/// choices). Throws SingularUpsilon when no combination works within the
/// first rank()+4 branches.
std::vector<Puiseux> independent_periods(const DrinfeldModule& rho, int depth = 4,
                                         int max_de = 12, int N = 32);

/// Push-out of an extension row along the endomorphism matrix E (row -> row E)
/// and Baer sum of two extension rows (entrywise sum). ShapeMismatch on
/// incompatible sizes.
std::vector<TateSeries> pushout_row(const std::vector<TateSeries>& row, const TateMatrix& E);
std::vector<TateSeries> baer_sum(const std::vector<TateSeries>& a,
                                 const std::vector<TateSeries>& b);

/// eta = Psi^{-1} E Psi for the endomorphism b, where E is the matrix of the
/// induced map on the motive basis m_1, sigma m_1, ..., sigma^{r-1} m_1
/// (computed by reducing b^* m_1 = sum c_i^{(-i)} sigma^i m_1 with the
/// companion relations). Certifies: (i) eta^{(-1)} = eta to precision,
/// (ii) every eta entry rationally reconstructs in t over F_q with degree cap
/// `recon_deg` (default 2r; ReconstructFailed otherwise), (iii) the first
/// column of E at t = theta vanishes below the (1,1) entry and E_{11}(theta)
/// lies in the span of `kbasis` over F_q[theta] (relation certificate).
struct EtaResult {
    TateMatrix E;
    TateMatrix eta;
    std::vector<std::vector<RationalFn>> eta_rational;
    std::vector<Puiseux> E_first_col_at_theta;
    std::vector<RelationCertificate> k_certificate;
    std::vector<ResidualReport> reports;
};

EtaResult eta_of_endo(const DrinfeldModule& rho, const TMotiveData& td, const TwistedPoly& b,
                      std::vector<Puiseux> kbasis = {}, int recon_deg = -1);

} // namespace drinfeld

#endif
