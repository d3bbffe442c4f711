#pragma once

// Hard-wall well on [0, L] with the variable-mass profile: closed-form
// eigenstates, spectra, moments and Fisher values, plus the Cramer-Rao
// parameter sweep behind the three-panel figure.

#include <cmath>
#include <string>
#include <vector>

#include "qbohm/field.hpp"
#include "qbohm/fisher.hpp"
#include "qbohm/parallel.hpp"
#include "qbohm/potential.hpp"

namespace qbohm {

struct WellSpec {
  double L = 1.0;
  double gamma = 0.0;
  double hbar = 1.0;
  double m0 = 1.0;

  WellSpec() = default;
  WellSpec(double width, double g, double hb = 1.0, double mass = 1.0)
      : L(width), gamma(g), hbar(hb), m0(mass) {
    if (!(L > 0.0)) throw domain_error("WellSpec: width must be positive");
    if (!(hbar > 0.0) || !(m0 > 0.0)) throw domain_error("WellSpec: hbar and m0 must be positive");
    if (deformation_factor(gamma, L) <= 0.0) throw singularity_error(gamma, L);
  }

  // Width of the well in the deformed coordinate.
  double deformed_width() const { return gamma == 0.0 ? L : std::log1p(gamma * L) / gamma; }

  double wavenumber(int n) const {
    if (n < 1) throw domain_error("WellSpec: quantum number must be >= 1");
    return static_cast<double>(n) * 3.14159265358979323846264338327950288 / deformed_width();
  }

  double amplitude() const { return std::sqrt(2.0 / deformed_width()); }

  double energy(int n) const {
    const double k = wavenumber(n);
    return hbar * hbar * k * k / (2.0 * m0);
  }

  double phi_value(int n, double x) const {
    const double u = deformed_coordinate(x, gamma);
    return amplitude() * std::sin(wavenumber(n) * u);
  }

  double psi_value(int n, double x) const {
    return phi_value(n, x) / std::sqrt(deformation_factor(gamma, x));
  }

  DeformationParams params() const { return DeformationParams::from_gamma(gamma); }

  SpatialGrid grid(std::size_t n_points) const {
    return SpatialGrid(0.0, L, n_points, params());
  }

  Potential potential() const { return Potential::infinite_well(L); }
};

inline ComplexField sample_phi(const WellSpec& w, int n, const SpatialGrid& g) {
  return ComplexField::sample(g, [&](double x) { return cplx{w.phi_value(n, x), 0.0}; },
                              WaveKind::phi_q);
}

inline ComplexField sample_psi(const WellSpec& w, int n, const SpatialGrid& g) {
  return ComplexField::sample(g, [&](double x) { return cplx{w.psi_value(n, x), 0.0}; },
                              WaveKind::psi);
}

// ---------------------------------------------------------------------------
// Closed-form moments over the stationary densities.

struct WellMoments {
  double mean_x = 0.0;
  double mean_x_sq = 0.0;
  double mean_p = 0.0;
  double mean_p_sq = 0.0;
  double var_x = 0.0;
};

inline WellMoments well_moments(const WellSpec& w, int n) {
  constexpr double pi = 3.14159265358979323846264338327950288;
  WellMoments m;
  const double k = w.wavenumber(n);
  if (w.gamma == 0.0) {
    const double L = w.L, npi = static_cast<double>(n) * pi;
    m.mean_x = 0.5 * L;
    m.mean_x_sq = L * L * (1.0 / 3.0 - 1.0 / (2.0 * npi * npi));
    m.mean_p = 0.0;
    m.mean_p_sq = w.hbar * w.hbar * k * k;
  } else {
    const double g = w.gamma, L = w.L, a = g * L;
    const double lam = std::log1p(a);
    const double npi = static_cast<double>(n) * pi;
    m.mean_x = (a - lam) / (g * lam) - L * lam / (lam * lam + 4.0 * npi * npi);
    m.mean_x_sq = (a * a - 2.0 * a + 2.0 * lam) / (2.0 * g * g * lam) +
                  (1.0 - (1.0 + a) * (1.0 + a)) * lam /
                      (2.0 * g * g * (lam * lam + npi * npi)) +
                  2.0 * a * lam / (g * g * (lam * lam + 4.0 * npi * npi));
    m.mean_p = 0.0;
    const double fl = 1.0 + a;
    m.mean_p_sq = w.hbar * w.hbar * k * k * (fl * fl - 1.0) / (2.0 * fl * fl * lam) *
                  (1.0 + g * g / (4.0 * (k * k + g * g)));
  }
  m.var_x = m.mean_x_sq - m.mean_x * m.mean_x;
  return m;
}

struct WellFisherValues {
  double I_q = 0.0;    // 4 k^2
  double I_pdm = 0.0;  // 4 k^2 + gamma^2
  double I_F = 0.0;    // <p^2> / (hbar/2)^2
};

inline WellFisherValues well_fisher_values(const WellSpec& w, int n) {
  WellFisherValues f;
  const double k = w.wavenumber(n);
  f.I_q = 4.0 * k * k;
  f.I_pdm = 4.0 * k * k + w.gamma * w.gamma;
  f.I_F = well_moments(w, n).mean_p_sq / ((w.hbar / 2.0) * (w.hbar / 2.0));
  return f;
}

// Closed-form report row; the quadrature route lives in fisher.hpp.
inline FisherReport well_report(const WellSpec& w, int n) {
  const WellMoments m = well_moments(w, n);
  const WellFisherValues f = well_fisher_values(w, n);
  FisherReport r;
  r.gamma = w.gamma;
  r.gamma_L = w.gamma * w.L;
  r.n = n;
  r.I_pdm = f.I_pdm;
  r.I_q = f.I_q;
  r.I_F = f.I_F;
  r.mean_x = m.mean_x;
  r.var_x = m.var_x;
  r.cr_q_lhs = r.I_q * r.var_x;
  r.cr_q_rhs = 1.0 + 2.0 * r.gamma * r.mean_x;
  r.margin_q = r.cr_q_lhs - r.cr_q_rhs;
  r.cr_pdm = r.I_pdm * r.var_x;
  r.cr_std = r.I_F * r.var_x;
  r.deformed_bound_ok = r.margin_q >= -1e-10;
  r.E_n = w.energy(n);
  r.L_q = w.deformed_width();
  r.k_qn = w.wavenumber(n);
  return r;
}

// ---------------------------------------------------------------------------
// Parameter sweep over gamma*L.

// 41 default abscissas: 14 linear through the contracting branch
// [-0.95, -0.05], the undeformed point 0, and 26 log-spaced on [0.01, 10].
inline std::vector<double> default_sweep_gamma_l() {
  std::vector<double> v;
  v.reserve(41);
  for (int i = 0; i < 14; ++i)
    v.push_back(-0.95 + 0.9 * static_cast<double>(i) / 13.0);
  v.push_back(0.0);
  for (int j = 0; j < 26; ++j)
    v.push_back(std::pow(10.0, -2.0 + 3.0 * static_cast<double>(j) / 25.0));
  return v;
}

// Closed-form report rows for each (gamma*L, n) pair, n = 1..n_max, ordered
// by sweep value then quantum number.  Rows are computed independently in
// parallel and merged by index, so results are deterministic.
inline std::vector<FisherReport> sweep_reports(const std::vector<double>& gamma_l_values,
                                               int n_max, double L, double hbar, double m0) {
  if (n_max < 1) throw domain_error("sweep_reports: n_max must be >= 1");
  const std::size_t rows = gamma_l_values.size() * static_cast<std::size_t>(n_max);
  std::vector<FisherReport> out(rows);
  parallel_for(rows, [&](std::size_t i) {
    const double gl = gamma_l_values[i / n_max];
    const int n = static_cast<int>(i % n_max) + 1;
    out[i] = well_report(WellSpec(L, gl / L, hbar, m0), n);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Report CSV.

namespace detail {

inline std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

inline constexpr const char* kReportHeader =
    "gamma_L,n,I_pdm,I_q,I_F,mean_x,var_x,cr_q_lhs,cr_q_rhs,cr_pdm,cr_std,margin_q";
inline constexpr const char* kWellReportExtra = ",E_n,L_q,k_qn";

inline void write_report_csv(std::ostream& os, const std::vector<FisherReport>& rows,
                             bool well_columns) {
  os << kReportHeader << (well_columns ? kWellReportExtra : "") << '\n';
  for (const auto& r : rows) {
    os << detail::fmt12(r.gamma_L) << ',' << r.n << ',' << detail::fmt12(r.I_pdm) << ','
       << detail::fmt12(r.I_q) << ',' << detail::fmt12(r.I_F) << ',' << detail::fmt12(r.mean_x)
       << ',' << detail::fmt12(r.var_x) << ',' << detail::fmt12(r.cr_q_lhs) << ','
       << detail::fmt12(r.cr_q_rhs) << ',' << detail::fmt12(r.cr_pdm) << ','
       << detail::fmt12(r.cr_std) << ',' << detail::fmt12(r.margin_q);
    if (well_columns)
      os << ',' << detail::fmt12(r.E_n) << ',' << detail::fmt12(r.L_q) << ','
         << detail::fmt12(r.k_qn);
    os << '\n';
  }
}

}  // namespace qbohm
