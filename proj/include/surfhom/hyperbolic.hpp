#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfhom/error.hpp"

namespace surfhom::hyperbolic {

struct PentagonParams {
  double s = 0;
  double t = 0;
};

struct CrownParams {
  int h = 0;
  int n = 0;
  double theta = 0;
  double tau = 0;
  double w = 0;
  double geodesic_len = 0;
  double boundary_len = 0;
};

struct AssemblyStats {
  int tilde_genus = 0;
  int tilde_boundaries = 0;
  int crown_genus = 0;
  int closed_genus = 0;
  double s = 0;
  double t = 0;
  double curve_len = 0;
  double boundary_len = 0;
  CrownParams crown;
  bool collar_ok = false;
  bool systoles_shorter = false;
};

/// Right-angled pentagon with two adjacent sides s: the opposite side t has cosh t = sinh^2 s.
inline double pentagon_opposite(double s) {
  double c = std::sinh(s) * std::sinh(s);
  if (!(c >= 1.0)) {
    // Allow the boundary point s = arcsinh(1) up to rounding.
    if (c > 1.0 - 1e-12) return 0.0;
    throw DomainError("pentagon_opposite: no right-angled pentagon for s below arcsinh(1)");
  }
  return std::acosh(c);
}

/// The s with pentagon_opposite(s) = s: cosh s is the positive root of y^2 - 1 = y.
inline double solve_arm_parameter() { return std::acosh(std::numbers::phi); }

/// Side data of the right-angled 2v-gon placed at a vertex of valence v. Only v = 4 is supported.
inline PentagonParams vertex_polygon(int valence) {
  if (valence != 4) throw DomainError("vertex_polygon: only valence 4 is supported");
  PentagonParams p;
  p.s = solve_arm_parameter();
  p.t = pentagon_opposite(p.s);
  return p;
}

/// Trirectangle with side tau and acute angle theta/2: sinh(w) sinh(tau) = cos(theta/2).
inline double trirectangle_width(double tau, double theta) {
  if (!(tau > 0)) throw DomainError("trirectangle_width: tau must be positive");
  if (!(theta > 0 && theta < std::numbers::pi)) throw DomainError("trirectangle_width: theta must lie in (0, pi)");
  return std::asinh(std::cos(theta / 2) / std::sinh(tau));
}

/// Crown of signature (h; 1): a regular 4h-gon with sides glued alternately, boundary geodesic of
/// length boundary_len, cut into 8h trirectangles.
inline CrownParams build_crown(int h, double boundary_len) {
  if (h < 1) throw DomainError("build_crown: h must be at least 1");
  if (!(boundary_len > 0)) throw DomainError("build_crown: boundary length must be positive");
  CrownParams c;
  c.h = h;
  c.n = 4 * h;
  c.theta = 2 * std::numbers::pi / c.n;
  c.boundary_len = boundary_len;
  c.tau = boundary_len / (2 * c.n);
  c.w = trirectangle_width(c.tau, c.theta);
  double ch = std::sinh(2 * c.tau) * std::sinh(c.w);
  if (ch < 1.0) throw DomainError("build_crown: crown too thin for a closed geodesic a_k");
  c.geodesic_len = 2 * std::acosh(ch);
  return c;
}

/// Limit of the crown geodesic length as the polygon sides shrink: 2 arccosh(2).
inline double crown_limit_length() { return 2 * std::acosh(2.0); }

struct ConvergenceStep {
  int h;
  double geodesic_len;
  double gap;  // |geodesic_len - limit|
};

/// Crown geodesic lengths for growing h at a fixed boundary length; gaps must shrink monotonically.
inline std::vector<ConvergenceStep> crown_convergence(const std::vector<int>& hs, double boundary_len) {
  std::vector<ConvergenceStep> out;
  for (int h : hs) {
    double l = build_crown(h, boundary_len).geodesic_len;
    out.push_back({h, l, std::fabs(l - crown_limit_length())});
  }
  return out;
}

inline bool converges_monotonically(const std::vector<ConvergenceStep>& steps) {
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!(steps[i].gap < steps[i - 1].gap)) return false;
  return true;
}

/// Genus-12 surface from the octagon ribbon surface (genus 2, two boundary geodesics of length 8t)
/// and two genus-5 crowns.
inline AssemblyStats example3_assembly() {
  AssemblyStats a;
  a.s = solve_arm_parameter();
  a.t = pentagon_opposite(a.s);
  a.tilde_genus = 2;
  a.tilde_boundaries = 2;
  a.crown_genus = 5;
  a.closed_genus = a.tilde_genus + a.tilde_boundaries * a.crown_genus;
  a.curve_len = 4 * a.s;
  a.boundary_len = 8 * a.t;
  a.crown = build_crown(a.crown_genus, a.boundary_len);
  a.collar_ok = a.crown.w > 2 * a.t;
  a.systoles_shorter = a.crown.geodesic_len < a.curve_len;
  return a;
}

struct Residuals {
  double pentagon = 0;      // cosh t - sinh^2 s
  double golden = 0;        // sinh^2 s - cosh s
  double trirectangle = 0;  // sinh w sinh tau - cos(theta/2)
  double geodesic = 0;      // cosh(l/2) - sinh(2 tau) sinh w
  double angle_sum = 0;     // n theta - 2 pi
  double limit = 0;         // cosh(limit/2) - 2
};

inline Residuals residuals(const AssemblyStats& a) {
  Residuals r;
  const CrownParams& c = a.crown;
  r.pentagon = std::cosh(a.t) - std::sinh(a.s) * std::sinh(a.s);
  r.golden = std::sinh(a.s) * std::sinh(a.s) - std::cosh(a.s);
  r.trirectangle = std::sinh(c.w) * std::sinh(c.tau) - std::cos(c.theta / 2);
  r.geodesic = std::cosh(c.geodesic_len / 2) - std::sinh(2 * c.tau) * std::sinh(c.w);
  r.angle_sum = c.n * c.theta - 2 * std::numbers::pi;
  r.limit = std::cosh(crown_limit_length() / 2) - 2;
  return r;
}

/// Rounds to the given number of significant digits, for stable report output.
inline double sig(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::stod(buf);
}

inline nlohmann::json quantity(const std::string& name, double value, const std::string& identity, double residual) {
  return {{"name", name}, {"value", sig(value)}, {"identity", identity}, {"residual", sig(residual, 3)}};
}

inline nlohmann::json report(const AssemblyStats& a) {
  Residuals r = residuals(a);
  const CrownParams& c = a.crown;
  nlohmann::json q = nlohmann::json::array();
  q.push_back(quantity("s", a.s, "sinh(s)^2 = cosh(s)", r.golden));
  q.push_back(quantity("t", a.t, "cosh(t) = sinh(s)^2", r.pentagon));
  q.push_back(quantity("theta", c.theta, "n * theta = 2 pi", r.angle_sum));
  q.push_back(quantity("tau", c.tau, "tau = boundary_len / (2 n)", c.tau - c.boundary_len / (2 * c.n)));
  q.push_back(quantity("w", c.w, "sinh(w) sinh(tau) = cos(theta / 2)", r.trirectangle));
  q.push_back(quantity("crown_geodesic", c.geodesic_len, "cosh(l / 2) = sinh(2 tau) sinh(w)", r.geodesic));
  q.push_back(quantity("crown_limit", crown_limit_length(), "cosh(l / 2) = 2", r.limit));
  q.push_back(quantity("curve_len", a.curve_len, "4 s", a.curve_len - 4 * a.s));
  q.push_back(quantity("boundary_len", a.boundary_len, "8 t", a.boundary_len - 8 * a.t));
  nlohmann::json j;
  j["quantities"] = q;
  j["crown"] = {{"h", c.h}, {"n", c.n}};
  j["genus"] = {{"tilde", a.tilde_genus},
                {"tilde_boundaries", a.tilde_boundaries},
                {"crown", a.crown_genus},
                {"closed", a.closed_genus}};
  j["collar_ok"] = a.collar_ok;
  j["crown_systoles_shorter"] = a.systoles_shorter;
  return j;
}

}  // namespace surfhom::hyperbolic
