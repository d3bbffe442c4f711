#pragma once

// Sampled real and complex fields on a SpatialGrid, the pointwise maps
// between the two wavefunction pictures, polar decomposition with phase
// unwrapping, and CSV serialization.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qbohm/errors.hpp"
#include "qbohm/grid.hpp"

namespace qbohm {

using cplx = std::complex<double>;

enum class RealKind {
  rho,               // probability density in x
  varrho_q,          // deformed density, (1+gamma*x) * rho
  phase_S,           // action-valued phase
  potential,
  quantum_potential,
  current,
  mass,
  generic
};

enum class WaveKind {
  psi,    // solves the variable-mass equation, normalized with dx
  phi_q   // solves the deformed equation, normalized with dx/(1+gamma*x)
};

struct RealField {
  SpatialGrid grid;
  std::vector<double> values;
  RealKind kind = RealKind::generic;

  RealField() = default;
  RealField(SpatialGrid g, std::vector<double> v, RealKind k)
      : grid(std::move(g)), values(std::move(v)), kind(k) {
    if (values.size() != grid.n_points)
      throw domain_error("RealField: value count does not match grid");
  }

  static RealField sample(const SpatialGrid& g, const std::function<double(double)>& f,
                          RealKind k = RealKind::generic) {
    std::vector<double> v(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) v[i] = f(g.node(i));
    return RealField(g, std::move(v), k);
  }
};

struct ComplexField {
  SpatialGrid grid;
  std::vector<cplx> values;
  WaveKind kind = WaveKind::psi;

  ComplexField() = default;
  ComplexField(SpatialGrid g, std::vector<cplx> v, WaveKind k)
      : grid(std::move(g)), values(std::move(v)), kind(k) {
    if (values.size() != grid.n_points)
      throw domain_error("ComplexField: value count does not match grid");
  }

  static ComplexField sample(const SpatialGrid& g, const std::function<cplx(double)>& f,
                             WaveKind k) {
    std::vector<cplx> v(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) v[i] = f(g.node(i));
    return ComplexField(g, std::move(v), k);
  }
};

// phi = sqrt(1+gamma*x) * psi.  Both pictures share the grid; the map keeps
// |phi|^2 dx/(1+gamma*x) = |psi|^2 dx pointwise.
inline ComplexField psi_to_phi(const ComplexField& psi) {
  if (psi.kind != WaveKind::psi) throw domain_error("psi_to_phi: input must be psi kind");
  if (psi.grid.kind != CoordinateKind::physical_x)
    throw domain_error("psi_to_phi: field must live on a physical grid");
  std::vector<cplx> v(psi.grid.n_points);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::sqrt(deformation_factor(psi.grid.params.gamma, psi.grid.node(i))) * psi.values[i];
  return ComplexField(psi.grid, std::move(v), WaveKind::phi_q);
}

inline ComplexField phi_to_psi(const ComplexField& phi) {
  if (phi.kind != WaveKind::phi_q) throw domain_error("phi_to_psi: input must be phi kind");
  if (phi.grid.kind != CoordinateKind::physical_x)
    throw domain_error("phi_to_psi: field must live on a physical grid");
  std::vector<cplx> v(phi.grid.n_points);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = phi.values[i] / std::sqrt(deformation_factor(phi.grid.params.gamma, phi.grid.node(i)));
  return ComplexField(phi.grid, std::move(v), WaveKind::psi);
}

// |f|^2 with the density kind matching the picture of f.
inline RealField density(const ComplexField& f) {
  std::vector<double> v(f.grid.n_points);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::norm(f.values[i]);
  return RealField(f.grid, std::move(v), f.kind == WaveKind::psi ? RealKind::rho : RealKind::varrho_q);
}

inline RealField varrho_from_rho(const RealField& rho) {
  if (rho.kind != RealKind::rho) throw domain_error("varrho_from_rho: input must be rho kind");
  std::vector<double> v(rho.grid.n_points);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = deformation_factor(rho.grid.params.gamma, rho.grid.node(i)) * rho.values[i];
  return RealField(rho.grid, std::move(v), RealKind::varrho_q);
}

inline RealField rho_from_varrho(const RealField& varrho) {
  if (varrho.kind != RealKind::varrho_q)
    throw domain_error("rho_from_varrho: input must be varrho_q kind");
  std::vector<double> v(varrho.grid.n_points);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = varrho.values[i] / deformation_factor(varrho.grid.params.gamma, varrho.grid.node(i));
  return RealField(varrho.grid, std::move(v), RealKind::rho);
}

// Square root of a density with signs restored, so differentiating it is
// well conditioned across the density's zeros.  Each sign is chosen to keep
// the samples on the linear extrapolation of the previous two, which flips
// the branch exactly where the underlying amplitude crossed zero.
inline RealField signed_sqrt(const RealField& density) {
  const std::size_t n = density.grid.n_points;
  double peak = 0.0;
  for (double v : density.values) peak = std::max(peak, v);
  if (!(peak > 0.0)) throw domain_error("signed_sqrt: density is not positive anywhere");
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = density.values[i];
    if (v < -1e-12 * peak) throw domain_error("signed_sqrt: negative density sample");
    s[i] = std::sqrt(std::max(v, 0.0));
  }
  std::vector<double> out(n);
  out[0] = s[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double pred = i == 1 ? out[0] : 2.0 * out[i - 1] - out[i - 2];
    out[i] = std::abs(s[i] - pred) <= std::abs(-s[i] - pred) ? s[i] : -s[i];
  }
  return RealField(density.grid, std::move(out), RealKind::generic);
}

// ---------------------------------------------------------------------------
// Polar decomposition f = sqrt(amplitude_sq) * exp(i*phase/hbar).

inline constexpr double kNodeThreshold = 1e-8;  // relative to the peak amplitude

struct PolarDecomposition {
  RealField amplitude_sq;
  RealField amplitude;                   // signed root of amplitude_sq
  RealField phase;                       // NaN at masked nodes
  std::vector<unsigned char> node_mask;  // 1 where |f| fell below threshold
};

// The phase is measured against the signed amplitude, so it stays smooth
// across the sign changes of (nearly) real states where arg(f) alone would
// jump by pi.  It is unwrapped left to right over unmasked points; the
// overall 2*pi*hbar branch is fixed at the leftmost unmasked point (its
// angle is a principal value there), so a global factor exp(i*alpha) with
// |alpha| < pi shifts the phase by hbar*alpha.
inline PolarDecomposition polar_decompose(const ComplexField& f, double hbar,
                                          double node_eps = kNodeThreshold) {
  const std::size_t n = f.grid.n_points;
  std::vector<double> amp2(n), phase(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<unsigned char> mask(n, 0);
  double peak2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    amp2[i] = std::norm(f.values[i]);
    peak2 = std::max(peak2, amp2[i]);
  }
  const double cut2 = node_eps * node_eps * peak2;
  const RealKind density_kind = f.kind == WaveKind::psi ? RealKind::rho : RealKind::varrho_q;
  RealField amp2_field(f.grid, std::move(amp2), density_kind);
  RealField amp = signed_sqrt(amp2_field);
  constexpr double two_pi = 6.28318530717958647692528676655900577;
  bool have_prev = false;
  double prev_theta = 0.0;  // unwrapped phase angle at the previous unmasked point
  for (std::size_t i = 0; i < n; ++i) {
    if (amp2_field.values[i] < cut2) {
      mask[i] = 1;
      continue;
    }
    double theta = std::arg(f.values[i] / amp.values[i]);
    if (have_prev) theta += two_pi * std::round((prev_theta - theta) / two_pi);
    phase[i] = hbar * theta;
    prev_theta = theta;
    have_prev = true;
  }
  return PolarDecomposition{std::move(amp2_field), std::move(amp),
                            RealField(f.grid, std::move(phase), RealKind::phase_S),
                            std::move(mask)};
}

// Inverse of polar_decompose.  Masked (NaN) phase entries borrow the nearest
// value to the left (or the first valid one for a leading block); the
// amplitude there is below threshold, so the choice is immaterial.
inline ComplexField from_polar(const RealField& amplitude_sq, const RealField& phase,
                               double hbar, WaveKind kind) {
  if (!(amplitude_sq.grid == phase.grid))
    throw domain_error("from_polar: amplitude and phase must share a grid");
  const std::size_t n = amplitude_sq.grid.n_points;
  double first_valid = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    if (!std::isnan(phase.values[i])) {
      first_valid = phase.values[i];
      found = true;
    }
  std::vector<cplx> v(n);
  double carry = first_valid;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isnan(phase.values[i])) carry = phase.values[i];
    const double a = amplitude_sq.values[i];
    if (a < 0.0) throw domain_error("from_polar: negative amplitude");
    v[i] = std::polar(std::sqrt(a), carry / hbar);
  }
  return ComplexField(amplitude_sq.grid, std::move(v), kind);
}

// Exact inverse including the amplitude's sign, f = amplitude * exp(i S/hbar).
inline ComplexField from_polar(const PolarDecomposition& polar, double hbar, WaveKind kind) {
  const std::size_t n = polar.amplitude.grid.n_points;
  double first_valid = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    if (!std::isnan(polar.phase.values[i])) {
      first_valid = polar.phase.values[i];
      found = true;
    }
  std::vector<cplx> v(n);
  double carry = first_valid;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isnan(polar.phase.values[i])) carry = polar.phase.values[i];
    v[i] = polar.amplitude.values[i] * std::polar(1.0, carry / hbar);
  }
  return ComplexField(polar.amplitude.grid, std::move(v), kind);
}

// Removes spurious 2*pi*hbar branch offsets between consecutive time slices
// by matching phases at the leftmost commonly unmasked point, so finite
// differences in time of the phase are meaningful.
inline void align_phase_series(std::vector<PolarDecomposition>& series, double hbar) {
  constexpr double two_pi = 6.28318530717958647692528676655900577;
  const double branch = two_pi * hbar;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const auto& prev = series[t - 1];
    auto& cur = series[t];
    const std::size_t n = cur.phase.values.size();
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (prev.node_mask[i] || cur.node_mask[i]) continue;
      shift = branch * std::round((prev.phase.values[i] - cur.phase.values[i]) / branch);
      break;
    }
    if (shift != 0.0)
      for (std::size_t i = 0; i < n; ++i)
        if (!cur.node_mask[i]) cur.phase.values[i] += shift;
  }
}

// ---------------------------------------------------------------------------
// CSV serialization.  Fields are written as three columns with metadata in
// '#' comments; real fields store zero in value_im.

namespace detail {

inline const char* kind_name(RealKind k) {
  switch (k) {
    case RealKind::rho: return "rho";
    case RealKind::varrho_q: return "varrho_q";
    case RealKind::phase_S: return "phase_S";
    case RealKind::potential: return "potential";
    case RealKind::quantum_potential: return "quantum_potential";
    case RealKind::current: return "current";
    case RealKind::mass: return "mass";
    default: return "generic";
  }
}

inline const char* kind_name(WaveKind k) { return k == WaveKind::psi ? "psi" : "phi_q"; }

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_field_rows(std::ostream& os, const SpatialGrid& g,
                             const std::vector<cplx>& values) {
  os << "x,value_re,value_im\n";
  for (std::size_t i = 0; i < g.n_points; ++i)
    os << fmt(g.node(i)) << ',' << fmt(values[i].real()) << ',' << fmt(values[i].imag()) << '\n';
}

inline void write_field_header(std::ostream& os, const SpatialGrid& g, const char* kind) {
  os << "# kind=" << kind << " coordinate=" << (g.kind == CoordinateKind::physical_x ? "x" : "u")
     << " gamma=" << fmt(g.params.gamma) << " x_min=" << fmt(g.x_min)
     << " x_max=" << fmt(g.x_max) << " n_points=" << g.n_points << '\n';
}

}  // namespace detail

inline void write_csv(std::ostream& os, const ComplexField& f) {
  detail::write_field_header(os, f.grid, detail::kind_name(f.kind));
  detail::write_field_rows(os, f.grid, f.values);
}

inline void write_csv(std::ostream& os, const RealField& f) {
  detail::write_field_header(os, f.grid, detail::kind_name(f.kind));
  std::vector<cplx> v(f.values.begin(), f.values.end());
  detail::write_field_rows(os, f.grid, v);
}

template <typename FieldT>
void write_csv_file(const std::string& path, const FieldT& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(os, f);
}

namespace detail {

struct CsvFieldData {
  std::string kind;
  SpatialGrid grid;
  std::vector<cplx> values;
};

inline CsvFieldData read_field_csv(std::istream& is, const std::string& what) {
  std::string line, kind, coordinate = "x";
  double gamma = 0.0, x_min = 0.0, x_max = 0.0;
  std::size_t n_points = 0;
  std::vector<cplx> values;
  bool saw_meta = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "kind") kind = val;
        else if (key == "coordinate") coordinate = val;
        else if (key == "gamma") gamma = std::stod(val);
        else if (key == "x_min") x_min = std::stod(val);
        else if (key == "x_max") x_max = std::stod(val);
        else if (key == "n_points") n_points = std::stoul(val);
      }
      saw_meta = true;
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;  // column header
    std::istringstream ls(line);
    std::string cell;
    double cols[3] = {0.0, 0.0, 0.0};
    int c = 0;
    while (std::getline(ls, cell, ',') && c < 3) cols[c++] = std::stod(cell);
    if (c < 2) throw std::runtime_error(what + ": malformed CSV row: " + line);
    values.emplace_back(cols[1], cols[2]);
  }
  if (!saw_meta || n_points == 0 || values.size() != n_points)
    throw std::runtime_error(what + ": missing or inconsistent CSV metadata");
  SpatialGrid g(x_min, x_max, n_points, DeformationParams::from_gamma(gamma),
                coordinate == "u" ? CoordinateKind::deformed_u : CoordinateKind::physical_x);
  return CsvFieldData{kind, g, std::move(values)};
}

}  // namespace detail

inline ComplexField read_complex_field_csv(std::istream& is, const std::string& what = "csv") {
  auto data = detail::read_field_csv(is, what);
  const WaveKind k = data.kind == "psi" ? WaveKind::psi : WaveKind::phi_q;
  return ComplexField(data.grid, std::move(data.values), k);
}

inline ComplexField read_complex_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_complex_field_csv(is, path);
}

inline RealField read_real_field_csv(std::istream& is, const std::string& what = "csv") {
  auto data = detail::read_field_csv(is, what);
  std::vector<double> v(data.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = data.values[i].real();
  RealKind k = RealKind::generic;
  for (RealKind cand : {RealKind::rho, RealKind::varrho_q, RealKind::phase_S, RealKind::potential,
                        RealKind::quantum_potential, RealKind::current, RealKind::mass})
    if (data.kind == detail::kind_name(cand)) k = cand;
  return RealField(data.grid, std::move(v), k);
}

inline RealField read_real_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_real_field_csv(is, path);
}

}  // namespace qbohm
