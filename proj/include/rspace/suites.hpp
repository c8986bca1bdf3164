#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rspace/algebras.hpp"
#include "rspace/classical.hpp"
#include "rspace/grassmann.hpp"
#include "rspace/isotropic.hpp"
#include "rspace/quadric.hpp"
#include "rspace/random.hpp"
#include "rspace/sphere.hpp"

namespace rspace {

struct TrialRecord {
  std::string config;
  int trial = 0;
  bool pass = false;
  double residual = 0;
  std::string message;
};

struct ConfigSummary {
  std::string config;
  double threshold = 0;
  int trials = 0;
  int passed = 0;
  double max_residual = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials_per_config = 0;
  std::vector<ConfigSummary> configs;
  std::vector<TrialRecord> records;
  double seconds = 0;

  int total() const { return static_cast<int>(records.size()); }
  int failed() const {
    int f = 0;
    for (const auto& r : records) f += r.pass ? 0 : 1;
    return f;
  }
  bool all_pass() const { return total() > 0 && failed() == 0; }
  double max_residual() const {
    double m = 0;
    for (const auto& c : configs) m = std::max(m, c.max_residual);
    return m;
  }
};

struct TrialOutcome {
  bool pass = false;
  double residual = 0;
  std::string message;
};

/// Acceptance thresholds shrink with eq_abs below its default, so a
/// corrupted tolerance makes rounding-level residuals fail.
inline double scaled_threshold(double nominal, const Tolerance& tol) {
  return nominal * std::min(1.0, tol.eq_abs / Tolerance{}.eq_abs);
}

namespace detail {

// FNV-1a: a stable per-configuration stream id.
inline std::uint64_t stream_id(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <class Fn>
void run_config(SuiteReport& rep, const std::string& config, double threshold, int trials, Fn&& fn) {
  ConfigSummary sum{config, threshold, trials, 0, 0};
  const std::uint64_t base = rep.seed ^ stream_id(config);
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(base, static_cast<std::uint64_t>(t));
    TrialOutcome out;
    try {
      out = fn(rng, t, threshold);
    } catch (const std::exception& e) {
      out = {false, std::numeric_limits<double>::infinity(), e.what()};
    }
    if (out.pass) ++sum.passed;
    if (std::isfinite(out.residual)) sum.max_residual = std::max(sum.max_residual, out.residual);
    else sum.max_residual = std::numeric_limits<double>::infinity();
    rep.records.push_back({config, t, out.pass, out.residual, out.message});
  }
  rep.configs.push_back(sum);
}

inline SuiteReport start(const std::string& name, std::uint64_t seed, int trials) {
  SuiteReport r;
  r.suite = name;
  r.seed = seed;
  r.trials_per_config = trials;
  return r;
}

inline void finish(SuiteReport& r, std::chrono::steady_clock::time_point t0) {
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Half-dimensional coordinate subspaces of F^{2n}.
inline FMatrix half_space(Field f, Index n, bool second) {
  FMatrix m = FMatrix::zero(f, 2 * n, n);
  m.set_block(second ? n : 0, 0, FMatrix::identity(f, n));
  return m;
}

template <class Rng>
OrientedPlane random_plane(Index n, Rng& rng) {
  return OrientedPlane::from_frame(random_normal_vector(n, rng), random_normal_vector(n, rng));
}

// A plane with equal characteristic angles against a: not opposite to it.
template <class Rng>
OrientedPlane equal_angle_plane(const OrientedPlane& a, Rng& rng) {
  const Index n = a.dim();
  RMat f(n, 4);
  f << a.u, a.v, random_normal_vector(n, rng), random_normal_vector(n, rng);
  const RMat q = Eigen::HouseholderQR<RMat>(f).householderQ() * RMat::Identity(n, 4);
  const double th = random_uniform(0.1, 1.4, rng);
  return OrientedPlane::from_frame(std::cos(th) * a.u + std::sin(th) * q.col(2),
                                   std::cos(th) * a.v + std::sin(th) * q.col(3));
}

inline std::vector<Index> isotropic_sizes(const SplitForm& f, const std::vector<Index>& sizes) {
  std::vector<Index> out;
  for (Index n : sizes)
    if (!f.symplectic_branch() || n % 2 == 0) out.push_back(n);
  return out;
}

inline std::string iso_config(FormFamily fam, Index n) { return "isotropic/" + family_name(fam) + "/n=" + std::to_string(n); }

// Points of a model realized as F-subspaces stabilized by g.
struct LieModel {
  std::string name;
  AlgebraBasis g;
  FMatrix p, q;
  std::function<bool(const FMatrix&, const FMatrix&, const Tolerance&)> opposite;
  // a non-prevalent element of q-polar
  std::function<FMatrix(std::mt19937_64&)> degenerate;
};

inline bool null_lines_opposite(const FMatrix& x, const FMatrix& y, const CMat& gram, const Tolerance& tol) {
  const CVec a = x.part_a().col(0), b = y.part_a().col(0);
  return std::abs(cd(a.transpose() * gram * b)) > tol.eq_abs * a.norm() * b.norm();
}

// Random element of the subspace {y in s : y w = 0}.
inline FMatrix annihilating_element(const SubalgebraRep& s, const FMatrix& w, std::mt19937_64& rng) {
  RMat m(2 * w.realization().size(), s.dim());
  for (Index j = 0; j < s.dim(); ++j) {
    const CMat r = (s.element(j) * w).realization();
    const Eigen::Map<const CVec> flat(r.data(), r.size());
    m.col(j) << flat.real(), flat.imag();
  }
  const RMat ker = real_kernel(m, Tolerance{});
  if (ker.cols() == 0) return FMatrix::zero(w.field(), s.tag().size, s.tag().size);
  const RVec c = ker * random_normal_vector(ker.cols(), rng);
  FMatrix y = FMatrix::zero(w.field(), s.tag().size, s.tag().size);
  for (Index j = 0; j < s.dim(); ++j) y = y + c(j) * s.element(j);
  return y;
}

inline std::vector<LieModel> prevalence_models() {
  std::vector<LieModel> out;
  {
    const Index n = 2;
    RVec north = RVec::Unit(n + 1, 0);
    const CMat eta = lorentz_gram(n + 2).cast<cd>();
    LieModel m{"sphere/n=2", lorentz_algebra(n), FMatrix::real(null_lift(north)), FMatrix::real(null_lift(-north)),
               [eta](const FMatrix& a, const FMatrix& b, const Tolerance& t) { return null_lines_opposite(a, b, eta, t); },
               [n](std::mt19937_64&) { return FMatrix::zero(Field::R, n + 2, n + 2); }};
    out.push_back(std::move(m));
  }
  const auto gr_opp = [](const FMatrix& a, const FMatrix& b, const Tolerance& t) { return is_opposite_gr(a, b, t); };
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Index n = 2;
    LieModel m{std::string("grassmann/") + field_name(f) + "/n=2", sl_algebra(f, 2 * n), half_space(f, n, false),
               half_space(f, n, true), gr_opp, nullptr};
    out.push_back(std::move(m));
  }
  for (FormFamily fam : all_form_families()) {
    const SplitForm sf = standard_form(fam, 2);
    LieModel m{iso_config(fam, 2), sf.algebra(), coordinate_half(sf, false), coordinate_half(sf, true), gr_opp, nullptr};
    out.push_back(std::move(m));
  }
  for (Index n : {4, 5}) {
    const CMat id = CMat::Identity(n, n);
    LieModel m{"quadric/N=" + std::to_string(n), so_complex_algebra(n), FMatrix::complex(e_plus(n)),
               FMatrix::complex(e_minus(n)),
               [id](const FMatrix& a, const FMatrix& b, const Tolerance& t) { return null_lines_opposite(a, b, id, t); },
               [n](std::mt19937_64& rng) {
                 // isotropic z: the circle degenerates
                 const RVec a = random_normal_vector(n - 2, rng);
                 RVec b = random_normal_vector(n - 2, rng);
                 b -= a.dot(b) / a.squaredNorm() * a;
                 b *= a.norm() / b.norm();
                 return FMatrix::complex(z_matrix(a.cast<cd>() + cd(0, 1) * b.cast<cd>()));
               }};
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// is_prevalent, prevalent_iso_check and the sampled-opposite test agree on
/// random elements of q-polar; odd trials use non-prevalent elements.
inline SuiteReport suite_prevalence(int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = detail::start("prevalence-equiv", seed, trials);
  for (auto& m : detail::prevalence_models()) {
    const SubalgebraRep p = stabilizer(m.g, m.p, tol), q = stabilizer(m.g, m.q, tol);
    const SubalgebraRep qp = polar(q, m.g, tol);
    detail::run_config(rep, m.name, 0.0, trials, [&](std::mt19937_64& rng, int t, double) {
      FMatrix ym;
      if (t % 2 == 0) {
        const RVec c = random_normal_vector(qp.dim(), rng);
        ym = FMatrix::zero(m.g.field(), m.g.size(), m.g.size());
        for (Index j = 0; j < qp.dim(); ++j) ym = ym + c(j) * qp.element(j);
      } else {
        ym = m.degenerate ? m.degenerate(rng) : detail::annihilating_element(qp, m.p.col(0), rng);
      }
      if (ym.norm() > 0) ym = (1.0 / ym.norm()) * ym;
      const LieElement y{m.g.tag(), ym};
      const bool a = is_prevalent(y, q, m.g, tol);
      const bool b = prevalent_iso_check(y, p, q, m.g, tol);
      bool c = true;
      for (double s : {1.0, -1.0, 0.5, -0.5, 2.0}) {
        const FMatrix pt = exp_nilpotent(s * ym, tol) * m.p;
        c = c && m.opposite(pt, m.p, tol) && m.opposite(pt, m.q, tol);
      }
      TrialOutcome out{a == b && b == c, qp.residual(ym), ""};
      if (!out.pass)
        out.message = std::string("prevalent=") + (a ? "1" : "0") + " iso=" + (b ? "1" : "0") + " opposite=" + (c ? "1" : "0");
      return out;
    });
  }
  detail::finish(rep, t0);
  return rep;
}

/// Diametrical geodesic against the circle, gamma(s) vs c(tan pi s), on 50
/// samples per trial.
inline SuiteReport suite_circle_geodesic(int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = detail::start("circle-geodesic", seed, trials);
  const double thr = scaled_threshold(1e-8, tol);
  constexpr int kSamples = 50;
  constexpr double kWindow = 1e-6;
  const auto worst_over = [&](auto&& dist) {
    double w = 0;
    for (int k = 0; k < kSamples; ++k) w = std::max(w, dist(static_cast<double>(k) / kSamples));
    return w;
  };
  const auto verdict = [](double w, double thr_) { return TrialOutcome{w < thr_, w, ""}; };

  for (Index n : {2, 3, 4})
    detail::run_config(rep, "sphere/n=" + std::to_string(n), thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const RVec p = random_unit_vector(n + 1, rng), p1 = random_unit_vector(n + 1, rng), q = random_unit_vector(n + 1, rng);
      SphereCircle c(p, p1, q, tol);
      SphereGeodesic g(p, p1, q, tol);
      return verdict(worst_over([&](double s) { return (g(s) - c(ProjParam::tan_pi(s, kWindow))).norm(); }), th);
    });
  for (Field f : {Field::R, Field::C, Field::H})
    for (Index n : {2, 3})
      detail::run_config(rep, std::string("grassmann/") + field_name(f) + "/n=" + std::to_string(n), thr, trials,
                         [&](std::mt19937_64& rng, int, double th) {
                           const FMatrix p = random_fmatrix(f, 2 * n, n, rng), p1 = random_fmatrix(f, 2 * n, n, rng),
                                         q = random_fmatrix(f, 2 * n, n, rng);
                           GrassmannCircle c(p, p1, q, tol);
                           GrassmannGeodesic g(c.iso(), tol);
                           return verdict(worst_over([&](double s) {
                                            return subspace_distance(g(s), c(ProjParam::tan_pi(s, kWindow)), tol);
                                          }),
                                          th);
                         });
  for (FormFamily fam : all_form_families())
    for (Index n : detail::isotropic_sizes(standard_form(fam, 1), {2, 3, 4})) {
      const SplitForm sf = standard_form(fam, n);
      const AlgebraBasis g = sf.algebra(tol);
      const FMatrix p0 = coordinate_half(sf, false);
      detail::run_config(rep, detail::iso_config(fam, n), thr, trials, [&](std::mt19937_64& rng, int, double th) {
        const FMatrix p = random_group_element(g, rng) * p0, p1 = random_group_element(g, rng) * p0,
                      q = random_group_element(g, rng) * p0;
        IsotropicCircle c(p, p1, q, sf, tol);
        IsotropicGeodesic geo(c, tol);
        return verdict(
            worst_over([&](double s) { return subspace_distance(geo(s), c(ProjParam::tan_pi(s, kWindow)), tol); }), th);
      });
    }
  for (Index n : {4, 5, 6, 7})
    detail::run_config(rep, "quadric/N=" + std::to_string(n), thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const OrientedPlane p = detail::random_plane(n, rng), p1 = detail::random_plane(n, rng),
                          q = detail::random_plane(n, rng);
      QuadricCircle c(p, p1, q, tol);
      QuadricGeodesic geo(c, tol);
      return verdict(worst_over([&](double s) { return plane_distance(geo(s), c(ProjParam::tan_pi(s, kWindow))); }),
                     th);
    });
  detail::finish(rep, t0);
  return rep;
}

/// Bilinear pairing, characteristic angles and polar intersection agree on
/// whether two oriented planes are opposite. Odd trials use equal-angle pairs.
inline SuiteReport suite_opposite(int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = detail::start("opposite-equiv", seed, trials);
  std::vector<AlgebraBasis> algebras;
  for (Index n = 4; n <= 7; ++n) algebras.push_back(so_complex_algebra(n, tol));
  detail::run_config(rep, "quadric/N=4..7", 0.0, trials, [&](std::mt19937_64& rng, int t, double) {
    const Index n = 4 + t % 4;
    const AlgebraBasis& g = algebras[static_cast<size_t>(n - 4)];
    const OrientedPlane a = detail::random_plane(n, rng);
    const OrientedPlane b = (t / 4) % 2 ? detail::equal_angle_plane(a, rng) : detail::random_plane(n, rng);
    const OppositeVerdict v = opposite_quadric_verdict(a, b, tol);
    const bool by_angles = v.angle_gap > tol.eq_abs;
    const bool by_polar = is_opposite(stabilizer(g, FMatrix::complex(psi(a)), tol),
                                      stabilizer(g, FMatrix::complex(psi(b)), tol), g, tol);
    const bool in_band = v.pairing >= tol.eq_abs && v.pairing <= 10 * tol.eq_abs;
    TrialOutcome out{in_band || (v.opposite == by_angles && by_angles == by_polar), std::abs(v.pairing - v.angle_gap),
                     in_band ? "inside tolerance band" : ""};
    if (!out.pass)
      out.message = std::string("bilinear=") + (v.opposite ? "1" : "0") + " angles=" + (by_angles ? "1" : "0") +
                    " polar=" + (by_polar ? "1" : "0");
    return out;
  });
  detail::finish(rep, t0);
  return rep;
}

/// Image of a circle under a random group element equals the circle through
/// the image triple.
inline SuiteReport suite_equivariance(int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = detail::start("equivariance", seed, trials);
  const double thr = scaled_threshold(1e-8, tol);
  const std::vector<double> params = {-3.0, -1.0, -0.4, 0.5, 2.0};
  const auto over_params = [&](auto&& dist) {
    double w = 0;
    for (double s : params) w = std::max(w, dist(ProjParam::at(s)));
    return w;
  };
  {
    const Index n = 3;
    const AlgebraBasis g = lorentz_algebra(n, tol);
    detail::run_config(rep, "sphere/n=3", thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const RMat m = random_group_element(g, rng, 0.5).part_a().real();
      const RVec p = random_unit_vector(n + 1, rng), p1 = random_unit_vector(n + 1, rng), q = random_unit_vector(n + 1, rng);
      SphereCircle c(p, p1, q, tol), img(mobius_act(m, p, tol), mobius_act(m, p1, tol), mobius_act(m, q, tol), tol);
      const double w = over_params([&](const ProjParam& t) { return (mobius_act(m, c(t), tol) - img(t)).norm(); });
      return TrialOutcome{w < th, w, ""};
    });
  }
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Index n = 2;
    const AlgebraBasis g = sl_algebra(f, 2 * n, tol);
    detail::run_config(rep, std::string("grassmann/") + field_name(f) + "/n=2", thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const FMatrix m = random_group_element(g, rng, 0.5);
      const FMatrix p = random_fmatrix(f, 2 * n, n, rng), p1 = random_fmatrix(f, 2 * n, n, rng),
                    q = random_fmatrix(f, 2 * n, n, rng);
      GrassmannCircle c(p, p1, q, tol), img(m * p, m * p1, m * q, tol);
      const double w = over_params([&](const ProjParam& t) { return subspace_distance(m * c(t), img(t), tol); });
      return TrialOutcome{w < th, w, ""};
    });
  }
  for (FormFamily fam : all_form_families()) {
    const SplitForm sf = standard_form(fam, 2);
    const AlgebraBasis g = sf.algebra(tol);
    const FMatrix p0 = coordinate_half(sf, false);
    detail::run_config(rep, detail::iso_config(fam, 2), thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const FMatrix m = random_group_element(g, rng, 0.5);
      const FMatrix p = random_group_element(g, rng) * p0, p1 = random_group_element(g, rng) * p0,
                    q = random_group_element(g, rng) * p0;
      IsotropicCircle c(p, p1, q, sf, tol), img(m * p, m * p1, m * q, sf, tol);
      const double w = over_params([&](const ProjParam& t) { return subspace_distance(m * c(t), img(t), tol); });
      return TrialOutcome{w < th, w, ""};
    });
  }
  for (ClassicalGroup cg : {ClassicalGroup::SO, ClassicalGroup::U, ClassicalGroup::Sp}) {
    const Index size = 2;
    const Field f = classical_field(cg);
    const SplitForm sf = graph_form(f, size);
    const AlgebraBasis big = sf.algebra(tol);
    const AlgebraBasis k = form_algebra("k", FMatrix::identity(f, size), true, false, tol);
    detail::run_config(rep, "classical/" + classical_name(cg) + "/size=2", thr, trials,
                       [&](std::mt19937_64& rng, int, double th) {
                         const FMatrix m = random_group_element(big, rng, 0.5);
                         const FMatrix a = graph_embed(cg, random_group_element(k, rng), tol),
                                       a1 = graph_embed(cg, random_group_element(k, rng), tol),
                                       b = graph_embed(cg, random_group_element(k, rng), tol);
                         IsotropicCircle c(a, a1, b, sf, tol), img(m * a, m * a1, m * b, sf, tol);
                         const double w =
                             over_params([&](const ProjParam& t) { return subspace_distance(m * c(t), img(t), tol); });
                         return TrialOutcome{w < th, w, ""};
                       });
  }
  {
    const Index n = 5;
    const AlgebraBasis g = so_complex_algebra(n, tol);
    detail::run_config(rep, "quadric/N=5", thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const CMat m = random_group_element(g, rng, 0.5).part_a();
      const OrientedPlane p = detail::random_plane(n, rng), p1 = detail::random_plane(n, rng),
                          q = detail::random_plane(n, rng);
      QuadricCircle c(p, p1, q, tol);
      QuadricCircle img(act_on_plane(m, p, tol), act_on_plane(m, p1, tol), act_on_plane(m, q, tol), tol);
      Tolerance loose = tol;
      loose.eq_abs = std::max(tol.eq_abs, 1e-6);
      const double w = over_params([&](const ProjParam& t) { return plane_distance(act_on_plane(m, c(t), loose), img(t)); });
      return TrialOutcome{w < th, w, ""};
    });
  }
  detail::finish(rep, t0);
  return rep;
}

/// f-skew T gives isotropic circles; a T violating the skew condition gives
/// a curve leaving the isotropic Grassmannian.
inline SuiteReport suite_isotropy(int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = detail::start("isotropy", seed, trials);
  const double thr = scaled_threshold(1e-8, tol);
  constexpr double kViolation = 1e-3;
  const std::vector<double> params = {-2.0, -1.0, -0.5, 0.5, 1.0, 3.0};
  for (FormFamily fam : all_form_families()) {
    const SplitForm sf = standard_form(fam, 2);
    const AlgebraBasis g = sf.algebra(tol);
    const FMatrix p0 = coordinate_half(sf, false), q0 = coordinate_half(sf, true);
    detail::run_config(rep, detail::iso_config(fam, 2), thr, trials, [&](std::mt19937_64& rng, int, double th) {
      const FMatrix p = random_group_element(g, rng) * p0, p1 = random_group_element(g, rng) * p0,
                    q = random_group_element(g, rng) * p0;
      IsotropicCircle c(p, p1, q, sf, tol);
      double fwd = c.tskew_residual();
      for (double s : params) fwd = std::max(fwd, isotropy_residual(c(ProjParam::at(s)), sf));
      // converse: a random T is not f-skew and the curve is not isotropic
      const FMatrix h = random_group_element(g, rng);
      const FMatrix pp = h * p0, qq = h * q0;
      const FMatrix tm = random_fmatrix(sf.field, 2, 2, rng);
      GrassmannCircle bad(ConnectingIso{pp, qq, tm});
      const FMatrix tu = bad.iso().image_basis();
      const double skew = (sf.pair(tu, pp) + sf.pair(pp, tu)).norm();
      double rev = 0;
      for (double s : params) rev = std::max(rev, isotropy_residual(bad(ProjParam::at(s)), sf));
      TrialOutcome out{fwd < th && skew > kViolation && rev > kViolation, fwd, ""};
      if (!out.pass) out.message = "forward " + std::to_string(fwd) + ", violating T residual " + std::to_string(rev);
      return out;
    });
  }
  detail::finish(rep, t0);
  return rep;
}

/// c(t) = O c_o(t) for the conjugating element O; form residual of O.
inline TrialOutcome conjugating_trial(std::mt19937_64& rng, double thr, double form_thr) {
  const Index n = 4 + static_cast<Index>(rng() % 4);
  const double al = random_uniform(0.0, M_PI / 2 - 0.05, rng);
  const double be = random_uniform(al + 1e-2, M_PI - al - 1e-2, rng);
  RVec u = random_normal_vector(n, rng), v = random_normal_vector(n, rng);
  u.head(2).setZero();
  v.head(2).setZero();
  u.normalize();
  v -= u.dot(v) * u;
  v.normalize();
  const auto d = QuadricCircleData::make(al, be, RVec::Unit(n, 0), RVec::Unit(n, 1), u, v);
  const CMat o = conjugating_element(d.a, d.b, u, v);
  // form preservation in basis B: (B^{-1} O B)^T (B^T B) (B^{-1} O B) = B^T B
  const CMat bm = quadric_basis_matrix(n);
  const CMat ob = bm.inverse() * o * bm, gram = bm.transpose() * bm;
  const double form = (ob.transpose() * gram * ob - gram).norm();
  double w = 0;
  for (int k = 0; k < 20; ++k) {
    const double t = std::tan(M_PI * (k + 0.5) / 20 - M_PI / 2);
    w = std::max(w, plane_distance(act_on_plane(o, circle_simple(n, ProjParam::at(t))), circle_standard(d, ProjParam::at(t))));
  }
  TrialOutcome out{w < thr && form < form_thr, w, ""};
  if (!out.pass) out.message = "form residual " + std::to_string(form);
  return out;
}

inline SuiteReport suite_quadric_formulas(int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = detail::start("quadric-formulas", seed, trials);
  detail::run_config(rep, "abc-identity", scaled_threshold(1e-12, tol), trials, [&](std::mt19937_64& rng, int, double th) {
    const double al = random_uniform(0.0, M_PI / 2 - 0.05, rng);
    const double be = random_uniform(al + 1e-3, M_PI - al - 1e-3, rng);
    const auto d = QuadricCircleData::standard(al, be, 4);
    // relative to the size of the terms
    const double r = std::abs(d.c - (d.b * d.b - d.a * d.a)) / std::max(1.0, d.b * d.b);
    return TrialOutcome{r < th, r, ""};
  });
  detail::run_config(rep, "simple-circle", scaled_threshold(1e-14, tol), trials, [&](std::mt19937_64& rng, int, double th) {
    const Index n = 4 + static_cast<Index>(rng() % 4);
    const auto d = QuadricCircleData::standard(0, M_PI / 2, n);
    const double t = std::tan(M_PI * random_uniform(-0.5, 0.5, rng));
    const OrientedPlane a = circle_standard(d, ProjParam::at(t)), b = circle_simple(n, ProjParam::at(t));
    const double r = (a.u - b.u).norm() + (a.v - b.v).norm();
    return TrialOutcome{r < th, r, ""};
  });
  detail::run_config(rep, "exp-closed-form", scaled_threshold(1e-12, tol), trials, [&](std::mt19937_64& rng, int, double th) {
    const Index n = 4 + static_cast<Index>(rng() % 4);
    const CVec z = random_normal_vector(n - 2, rng).cast<cd>() + cd(0, 1) * random_normal_vector(n - 2, rng).cast<cd>();
    const double s = random_uniform(-2.0, 2.0, rng);
    const CMat b = quadric_basis_matrix(n);
    const CMat ex = exp_nilpotent(FMatrix::complex(s * z_matrix(z)), tol).part_a();
    CMat closed = CMat::Identity(n, n);
    closed(1, 0) = -s * s * bilinear(z, z);
    closed.block(2, 0, n - 2, 1) = 2 * s * z;
    closed.block(1, 2, 1, n - 2) = -s * z.transpose();
    const double r = (b.inverse() * ex * b - closed).norm() / std::max(1.0, closed.norm());
    return TrialOutcome{r < th, r, ""};
  });
  detail::run_config(rep, "pairing-cosine", scaled_threshold(1e-9, tol), trials, [&](std::mt19937_64& rng, int, double th) {
    const Index n = 4 + static_cast<Index>(rng() % 4);
    const OrientedPlane a = detail::random_plane(n, rng), b = detail::random_plane(n, rng);
    const auto ang = characteristic_angles(a, b);
    const double r = std::abs(std::abs(bilinear(psi(a), psi(b))) - std::abs(std::cos(ang.alpha) - std::cos(ang.beta)));
    return TrialOutcome{r < th, r, ""};
  });
  detail::run_config(rep, "conjugating-element", scaled_threshold(1e-8, tol), trials,
                     [&](std::mt19937_64& rng, int, double th) {
                       return conjugating_trial(rng, th, scaled_threshold(1e-10, tol));
                     });
  detail::finish(rep, t0);
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"prevalence-equiv", "circle-geodesic", "opposite-equiv",
                                                  "equivariance",     "isotropy",        "quadric-formulas"};
  return names;
}

/// Trials per configuration used when none is requested.
inline int default_trials(const std::string& suite) {
  if (suite == "prevalence-equiv") return 500;
  if (suite == "circle-geodesic") return 200;
  if (suite == "opposite-equiv") return 1000;
  if (suite == "equivariance") return 100;
  if (suite == "isotropy") return 200;
  return 500;
}

inline SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed, const Tolerance& tol = {}) {
  if (trials < 1) throw DomainError("trial count must be positive");
  if (name == "prevalence-equiv") return suite_prevalence(trials, seed, tol);
  if (name == "circle-geodesic") return suite_circle_geodesic(trials, seed, tol);
  if (name == "opposite-equiv") return suite_opposite(trials, seed, tol);
  if (name == "equivariance") return suite_equivariance(trials, seed, tol);
  if (name == "isotropy") return suite_isotropy(trials, seed, tol);
  if (name == "quadric-formulas") return suite_quadric_formulas(trials, seed, tol);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace rspace
