#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_io.hpp"
#include "rspace/classical.hpp"
#include "rspace/grassmann.hpp"
#include "rspace/isotropic.hpp"
#include "rspace/quadric.hpp"
#include "rspace/random.hpp"
#include "rspace/sphere.hpp"
#include "rspace/suites.hpp"

using namespace rspace;
using io::json;
using io::ParseError;

namespace {

enum Exit { kOk = 0, kUsage = 2, kPrecondition = 3, kInconsistency = 4 };

struct Options {
  std::string model = "sphere";
  std::string points;
  int samples = 16;
  std::uint64_t seed = 0;
  double tol_rank = Tolerance{}.rank_rel;
  double tol_eq = Tolerance{}.eq_abs;
  std::string format = "json";
  std::string out;
  int dim = 0;
  std::string field = "R";
  std::string family = "C-symmetric";
  std::string group = "U";
  std::string suite;
  int trials = 0;
  std::string y;
  bool all_trials = false;
};

Tolerance tolerance(const Options& o) {
  Tolerance t;
  t.rank_rel = o.tol_rank;
  t.eq_abs = o.tol_eq;
  try {
    t.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return t;
}

json read_json_arg(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty JSON argument");
  if (arg[first] != '[' && arg[first] != '{') {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot read '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_points(const Options& o, size_t count) {
  const json pts = read_json_arg(o.points);
  if (!pts.is_array() || pts.size() != count)
    throw ParseError("--points must be a JSON array of " + std::to_string(count) + " points");
  return pts;
}

void require_opposite(size_t count, const std::function<bool(size_t, size_t)>& opposite) {
  for (size_t i = 0; i < count; ++i)
    for (size_t j = i + 1; j < count; ++j)
      if (!opposite(i, j))
        throw PreconditionError("points " + std::to_string(i) + " and " + std::to_string(j) + " are not opposite");
}

/// Defining points and the two curves of one model, already serialized.
struct Curves {
  json defining = json::array();
  std::function<json(const ProjParam&)> circle;
  std::function<json(double)> geodesic;
};

Curves sphere_curves(const Options& o, const Tolerance& tol) {
  std::vector<RVec> p;
  if (o.points.empty()) {
    if (o.dim < 1) throw ParseError("--dim must be at least 1");
    auto rng = trial_rng(o.seed, 0);
    for (int k = 0; k < 3; ++k) p.push_back(random_unit_vector(o.dim + 1, rng));
  } else {
    for (const auto& j : read_points(o, 3)) p.push_back(io::rvec_from_json(j));
    if (p[0].size() < 2 || p[1].size() != p[0].size() || p[2].size() != p[0].size())
      throw ParseError("sphere points must share a dimension of at least 2");
    for (auto& v : p)
      if (std::abs(v.norm() - 1) > tol.eq_abs) throw ParseError("sphere points must be unit vectors");
  }
  require_opposite(3, [&](size_t i, size_t j) { return (p[i] - p[j]).norm() > tol.eq_abs; });
  Curves c;
  for (const auto& v : p) c.defining.push_back(io::to_json(v));
  auto circle = std::make_shared<SphereCircle>(p[0], p[1], p[2], tol);
  auto geo = std::make_shared<SphereGeodesic>(p[0], p[1], p[2], tol);
  c.circle = [circle](const ProjParam& t) { return io::to_json((*circle)(t)); };
  c.geodesic = [geo](double s) { return io::to_json((*geo)(s)); };
  return c;
}

std::vector<FMatrix> matrix_points(const Options& o, Field f) {
  std::vector<FMatrix> p;
  for (const auto& j : read_points(o, 3)) {
    p.push_back(io::fmatrix_from_json(j));
    if (p.back().field() != f) throw ParseError("point field does not match --field/--family/--group");
  }
  for (const auto& m : p)
    if (m.rows() != p[0].rows() || m.cols() != p[0].cols()) throw ParseError("points have different shapes");
  return p;
}

Curves grassmann_curves(const Options& o, const Tolerance& tol) {
  const Field f = io::parse_field(o.field);
  std::vector<FMatrix> p;
  if (o.points.empty()) {
    if (o.dim < 1) throw ParseError("--dim must be at least 1");
    auto rng = trial_rng(o.seed, 0);
    for (int k = 0; k < 3; ++k) p.push_back(random_fmatrix(f, 2 * o.dim, o.dim, rng));
  } else {
    p = matrix_points(o, f);
    if (p[0].rows() != 2 * p[0].cols()) throw ParseError("Grassmannian points must be 2n x n bases");
  }
  for (const auto& m : p) subspace_point(m, tol);
  require_opposite(3, [&](size_t i, size_t j) { return is_opposite_gr(p[i], p[j], tol); });
  Curves c;
  for (const auto& m : p) c.defining.push_back(io::to_json(m));
  auto circle = std::make_shared<GrassmannCircle>(p[0], p[1], p[2], tol);
  auto geo = std::make_shared<GrassmannGeodesic>(circle->iso(), tol);
  c.circle = [circle](const ProjParam& t) { return io::to_json((*circle)(t)); };
  c.geodesic = [geo](double s) { return io::to_json((*geo)(s)); };
  return c;
}

FormFamily family_arg(const Options& o) {
  try {
    return parse_family(o.family);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Curves isotropic_curves(const Options& o, const Tolerance& tol) {
  const FormFamily fam = family_arg(o);
  std::vector<FMatrix> p;
  Index n = o.dim;
  if (o.points.empty()) {
    if (o.dim < 1) throw ParseError("--dim must be at least 1");
    const SplitForm sf = standard_form(fam, n);
    require_self_dual(sf);
    const AlgebraBasis g = sf.algebra(tol);
    auto rng = trial_rng(o.seed, 0);
    for (int k = 0; k < 3; ++k) p.push_back(random_group_element(g, rng) * coordinate_half(sf, false));
  } else {
    p = matrix_points(o, detail::family_data(fam).field);
    n = p[0].cols();
    if (p[0].rows() != 2 * n) throw ParseError("isotropic points must be 2n x n bases");
  }
  const SplitForm sf = standard_form(fam, n);
  for (const auto& m : p) isotropic_subspace(m, sf, tol);
  require_opposite(3, [&](size_t i, size_t j) { return is_opposite_gr(p[i], p[j], tol); });
  Curves c;
  for (const auto& m : p) c.defining.push_back(io::to_json(m));
  auto circle = std::make_shared<IsotropicCircle>(p[0], p[1], p[2], sf, tol);
  auto geo = std::make_shared<IsotropicGeodesic>(*circle, tol);
  c.circle = [circle](const ProjParam& t) { return io::to_json((*circle)(t)); };
  c.geodesic = [geo](double s) { return io::to_json((*geo)(s)); };
  return c;
}

Curves classical_curves(const Options& o, const Tolerance& tol) {
  ClassicalGroup cg;
  try {
    cg = parse_classical(o.group);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  const Field f = classical_field(cg);
  std::vector<FMatrix> a;
  if (o.points.empty()) {
    if (o.dim < 1) throw ParseError("--dim must be at least 1");
    const AlgebraBasis k = form_algebra("k", FMatrix::identity(f, o.dim), true, false, tol);
    auto rng = trial_rng(o.seed, 0);
    for (int i = 0; i < 3; ++i) a.push_back(random_group_element(k, rng));
  } else {
    a = matrix_points(o, f);
    if (a[0].rows() != a[0].cols()) throw ParseError("group elements must be square");
  }
  std::vector<FMatrix> gr;
  for (const auto& m : a) gr.push_back(graph_embed(cg, m, tol));
  require_opposite(3, [&](size_t i, size_t j) { return is_opposite_gr(gr[i], gr[j], tol); });
  const SplitForm sf = graph_form(f, a[0].rows());
  Curves c;
  for (const auto& m : a) c.defining.push_back(io::to_json(m));
  auto circle = std::make_shared<IsotropicCircle>(gr[0], gr[1], gr[2], sf, tol);
  auto geo = std::make_shared<IsotropicGeodesic>(*circle, tol);
  c.circle = [circle, tol](const ProjParam& t) { return io::to_json(graph_chart((*circle)(t), tol)); };
  c.geodesic = [geo, tol](double s) { return io::to_json(graph_chart((*geo)(s), tol)); };
  return c;
}

std::vector<OrientedPlane> plane_points(const Options& o, size_t count, const Tolerance& tol) {
  std::vector<OrientedPlane> p;
  if (o.points.empty()) {
    if (o.dim < 4) throw ParseError("--dim must be at least 4 for oriented planes");
    auto rng = trial_rng(o.seed, 0);
    for (size_t k = 0; k < count; ++k)
      p.push_back(OrientedPlane::from_frame(random_normal_vector(o.dim, rng), random_normal_vector(o.dim, rng), tol));
  } else {
    for (const auto& j : read_points(o, count)) p.push_back(io::plane_from_json(j, tol));
    for (const auto& q : p)
      if (q.dim() != p[0].dim()) throw ParseError("planes live in different dimensions");
  }
  return p;
}

Curves quadric_curves(const Options& o, const Tolerance& tol) {
  const auto p = plane_points(o, 3, tol);
  require_opposite(3, [&](size_t i, size_t j) { return is_opposite_quadric(p[i], p[j], tol); });
  Curves c;
  for (const auto& q : p) c.defining.push_back(io::to_json(q));
  auto circle = std::make_shared<QuadricCircle>(p[0], p[1], p[2], tol);
  auto geo = std::make_shared<QuadricGeodesic>(*circle, tol);
  c.circle = [circle](const ProjParam& t) { return io::to_json((*circle)(t)); };
  c.geodesic = [geo](double s) { return io::to_json((*geo)(s)); };
  return c;
}

Curves model_curves(const Options& o, const Tolerance& tol) {
  if (o.model == "sphere") return sphere_curves(o, tol);
  if (o.model == "grassmann") return grassmann_curves(o, tol);
  if (o.model == "isotropic") return isotropic_curves(o, tol);
  if (o.model == "classical") return classical_curves(o, tol);
  if (o.model == "quadric") return quadric_curves(o, tol);
  throw ParseError("unknown model '" + o.model + "'");
}

std::string model_label(const Options& o) {
  if (o.model == "grassmann") return "grassmann/" + o.field;
  if (o.model == "isotropic") return "isotropic/" + o.family;
  if (o.model == "classical") return "classical/" + o.group;
  return o.model;
}

std::string number(double v) { return json(v).dump(); }

std::string curve_csv(const json& doc, const std::string& key) {
  std::ostringstream os;
  const auto& samples = doc.at("samples");
  std::vector<double> first;
  io::flatten(samples.at(0).at("point"), first);
  os << key;
  for (size_t i = 0; i < first.size(); ++i) os << ",c" << i;
  os << "\n";
  for (const auto& s : samples) {
    const json& k = s.at(key);
    os << (k.is_string() ? k.get<std::string>() : number(k.get<double>()));
    std::vector<double> flat;
    io::flatten(s.at("point"), flat);
    for (double v : flat) os << "," << number(v);
    os << "\n";
  }
  return os.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + o.out + "'");
  f << text;
}

int cmd_curve(const Options& o, bool geodesic) {
  if (o.samples < 2) throw ParseError("--samples must be at least 2");
  const Tolerance tol = tolerance(o);
  const Curves c = model_curves(o, tol);
  json doc = {{"model", model_label(o)}, {"curve", geodesic ? "geodesic" : "circle"}, {"defining_points", c.defining}};
  json samples = json::array();
  if (geodesic) {
    for (int k = 0; k < o.samples; ++k) {
      const double s = static_cast<double>(k) / o.samples;
      samples.push_back({{"s", s}, {"point", c.geodesic(s)}});
    }
  } else {
    // t = tan(pi u) on a grid avoiding u = 1/2, then the point at infinity
    for (int k = 0; k < o.samples; ++k) {
      const double t = std::tan(M_PI * 2.0 * k / (2.0 * o.samples + 1));
      samples.push_back({{"t", t}, {"point", c.circle(ProjParam::at(t))}});
    }
    samples.push_back({{"t", "inf"}, {"point", c.circle(ProjParam::infinity())}});
  }
  doc["samples"] = samples;
  emit(o, o.format == "csv" ? curve_csv(doc, geodesic ? "s" : "t") : doc.dump(2) + "\n");
  return kOk;
}

int cmd_check(const Options& o) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw ParseError("unknown suite '" + o.suite + "'");
  const Tolerance tol = tolerance(o);
  const int trials = o.trials > 0 ? o.trials : default_trials(o.suite);
  const SuiteReport rep = run_suite(o.suite, trials, o.seed, tol);
  if (o.format == "csv") {
    std::ostringstream os;
    os << "config,threshold,trials,passed,max_residual\n";
    for (const auto& c : rep.configs)
      os << c.config << "," << number(c.threshold) << "," << c.trials << "," << c.passed << ","
         << (std::isfinite(c.max_residual) ? number(c.max_residual) : "inf") << "\n";
    emit(o, os.str());
  } else {
    emit(o, io::to_json(rep, o.all_trials).dump(2) + "\n");
  }
  std::cerr << rep.suite << ": " << rep.total() - rep.failed() << "/" << rep.total() << " trials passed\n";
  return rep.all_pass() ? kOk : kInconsistency;
}

int cmd_angles(const Options& o) {
  const Tolerance tol = tolerance(o);
  const auto p = plane_points(o, 2, tol);
  if (p[0].dim() != p[1].dim()) throw ParseError("planes live in different dimensions");
  const auto ang = characteristic_angles(p[0], p[1]);
  const bool opp = is_opposite_quadric(p[0], p[1], tol);
  if (o.format == "csv") {
    emit(o, "alpha,beta,opposite\n" + number(ang.alpha) + "," + number(ang.beta) + "," + (opp ? "true" : "false") + "\n");
  } else {
    json doc = {{"planes", {io::to_json(p[0]), io::to_json(p[1])}},
                {"alpha", ang.alpha},
                {"beta", ang.beta},
                {"opposite", opp}};
    emit(o, doc.dump(2) + "\n");
  }
  return kOk;
}

/// Ambient algebra and base points of a model as F-subspaces.
struct LieSetup {
  AlgebraBasis g;
  FMatrix p, q;
  json defining = json::array();
};

LieSetup lie_setup(const Options& o, const Tolerance& tol) {
  if (o.model == "sphere") {
    std::vector<RVec> v;
    if (o.points.empty()) {
      auto rng = trial_rng(o.seed, 0);
      for (int k = 0; k < 2; ++k) v.push_back(random_unit_vector(o.dim + 1, rng));
    } else {
      for (const auto& j : read_points(o, 2)) v.push_back(io::rvec_from_json(j));
      if (v[0].size() != v[1].size() || v[0].size() < 2) throw ParseError("sphere points must share a dimension");
    }
    for (auto& x : v) x = sphere_point(x, tol);
    if ((v[0] - v[1]).norm() <= tol.eq_abs) throw PreconditionError("points 0 and 1 are not opposite");
    LieSetup s{lorentz_algebra(v[0].size() - 1, tol), FMatrix::real(detail::null_lift(v[0])),
               FMatrix::real(detail::null_lift(v[1]))};
    for (auto& x : v) s.defining.push_back(io::to_json(x));
    return s;
  }
  if (o.model == "quadric") {
    const auto p = plane_points(o, 2, tol);
    if (!is_opposite_quadric(p[0], p[1], tol)) throw PreconditionError("points 0 and 1 are not opposite");
    LieSetup s{so_complex_algebra(p[0].dim(), tol), FMatrix::complex(psi(p[0])), FMatrix::complex(psi(p[1]))};
    for (auto& x : p) s.defining.push_back(io::to_json(x));
    return s;
  }
  std::vector<FMatrix> m;
  AlgebraBasis g;
  if (o.model == "grassmann") {
    const Field f = io::parse_field(o.field);
    if (o.points.empty()) {
      auto rng = trial_rng(o.seed, 0);
      for (int k = 0; k < 2; ++k) m.push_back(random_fmatrix(f, 2 * o.dim, o.dim, rng));
    } else {
      for (const auto& j : read_points(o, 2)) m.push_back(io::fmatrix_from_json(j));
    }
    if (m[0].field() != f || m[1].field() != f || m[0].rows() != 2 * m[0].cols() || m[1].rows() != m[0].rows() ||
        m[1].cols() != m[0].cols())
      throw ParseError("points must be 2n x n bases over the chosen field");
    for (auto& x : m) subspace_point(x, tol);
    g = sl_algebra(f, m[0].rows(), tol);
  } else if (o.model == "isotropic") {
    const FormFamily fam = family_arg(o);
    if (o.points.empty()) {
      const SplitForm sf = standard_form(fam, o.dim);
      const AlgebraBasis a = sf.algebra(tol);
      auto rng = trial_rng(o.seed, 0);
      for (int k = 0; k < 2; ++k) m.push_back(random_group_element(a, rng) * coordinate_half(sf, false));
    } else {
      for (const auto& j : read_points(o, 2)) m.push_back(io::fmatrix_from_json(j));
    }
    const Field f = detail::family_data(fam).field;
    if (m[0].field() != f || m[1].field() != f || m[0].rows() != 2 * m[0].cols() || m[1].rows() != m[0].rows() ||
        m[1].cols() != m[0].cols())
      throw ParseError("points must be 2n x n bases over the family's field");
    const SplitForm sf = standard_form(fam, m[0].cols());
    for (auto& x : m) isotropic_subspace(x, sf, tol);
    g = sf.algebra(tol);
  } else {
    throw ParseError("prevalent supports sphere, grassmann, isotropic and quadric");
  }
  if (!is_opposite_gr(m[0], m[1], tol)) throw PreconditionError("points 0 and 1 are not opposite");
  LieSetup s{g, m[0], m[1]};
  for (auto& x : m) s.defining.push_back(io::to_json(x));
  return s;
}

int cmd_prevalent(const Options& o) {
  const Tolerance tol = tolerance(o);
  const LieSetup s = lie_setup(o, tol);
  const SubalgebraRep p = stabilizer(s.g, s.p, tol), q = stabilizer(s.g, s.q, tol);
  const SubalgebraRep qp = polar(q, s.g, tol);
  FMatrix ym;
  if (o.y.empty()) {
    auto rng = trial_rng(o.seed, 1);
    const RVec c = random_normal_vector(qp.dim(), rng);
    ym = FMatrix::zero(s.g.field(), s.g.size(), s.g.size());
    for (Index j = 0; j < qp.dim(); ++j) ym = ym + c(j) * qp.element(j);
  } else {
    ym = io::fmatrix_from_json(read_json_arg(o.y));
    if (ym.rows() != s.g.size() || ym.cols() != s.g.size()) throw ParseError("--y has the wrong size");
    if (ym.field() != s.g.field()) throw ParseError("--y has the wrong field");
  }
  const LieElement y = LieElement::checked(s.g, ym, tol);
  const bool in_polar = qp.residual(ym) <= tol.eq_abs * std::max(1.0, ym.norm());
  if (!in_polar) throw PreconditionError("y is not in the polar of point 1");
  const bool prev = is_prevalent(y, q, s.g, tol);
  const bool iso = prevalent_iso_check(y, p, q, s.g, tol);
  if (o.format == "csv") {
    emit(o, std::string("prevalent,iso_check\n") + (prev ? "true" : "false") + "," + (iso ? "true" : "false") + "\n");
  } else {
    json doc = {{"model", model_label(o)}, {"defining_points", s.defining}, {"y", io::to_json(ym)},
                {"prevalent", prev},       {"iso_check", iso}};
    emit(o, doc.dump(2) + "\n");
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--tol-rank", o.tol_rank, "relative singular-value cutoff for ranks");
  sub->add_option("--tol-eq", o.tol_eq, "absolute equality threshold");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--seed", o.seed, "seed for generated inputs");
}

void add_model(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "sphere, grassmann, isotropic, classical or quadric");
  sub->add_option("--points", o.points, "JSON array of points, inline or a file path; random if omitted");
  sub->add_option("--dim", o.dim, "size parameter for generated points (default 4 for quadric, else 2)");
  sub->add_option("--field", o.field, "R, C or H (grassmann)");
  sub->add_option("--family", o.family, "form family (isotropic)");
  sub->add_option("--group", o.group, "SO, U or Sp (classical)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circles and diametrical geodesics in symmetric R-spaces"};
  app.require_subcommand(1);
  Options o;
  auto* circle = app.add_subcommand("circle", "sample the circle through three points");
  auto* geodesic = app.add_subcommand("geodesic", "sample the diametrical geodesic of the same circle");
  auto* check = app.add_subcommand("check", "run a verification suite");
  auto* angles = app.add_subcommand("angles", "characteristic angles of two oriented planes");
  auto* prevalent = app.add_subcommand("prevalent", "prevalence of y in the polar of the second point");
  for (auto* s : {circle, geodesic}) {
    add_model(s, o);
    add_common(s, o);
    s->add_option("--samples", o.samples, "number of finite samples");
  }
  add_common(check, o);
  check->add_option("--suite", o.suite, "suite name")->required();
  check->add_option("--trials", o.trials, "trials per configuration (default: acceptance size)");
  check->add_flag("--all-trials", o.all_trials, "include every trial record");
  add_common(angles, o);
  angles->add_option("--points", o.points, "JSON array of two planes {u, v}; random if omitted");
  angles->add_option("--dim", o.dim, "ambient dimension for generated planes (default 4)");
  add_model(prevalent, o);
  add_common(prevalent, o);
  prevalent->add_option("--y", o.y, "element of the ambient algebra, JSON matrix; random if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (o.dim == 0) o.dim = (angles->parsed() || o.model == "quadric") ? 4 : 2;
  try {
    if (circle->parsed()) return cmd_curve(o, false);
    if (geodesic->parsed()) return cmd_curve(o, true);
    if (check->parsed()) return cmd_check(o);
    if (angles->parsed()) return cmd_angles(o);
    if (prevalent->parsed()) return cmd_prevalent(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kInconsistency;
  }
  return kUsage;
}
