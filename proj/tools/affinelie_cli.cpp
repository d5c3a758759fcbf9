// affinelie: command-line front end.
//
// Exit codes: 0 success / all checks passed, 1 a verification failed,
// 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "affinelie/centralizer.hpp"
#include "affinelie/parabolic.hpp"
#include "affinelie/serialize.hpp"
#include "affinelie/svg.hpp"
#include "affinelie/verify.hpp"
#include "affinelie/weierstrass.hpp"

using namespace affinelie;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeArgs {
  std::string family = "A";
  int rank = 1;
  std::string isogeny = "sc";

  void add(CLI::App* cmd) {
    cmd->add_option("type,--type", family, "Cartan family A-G")->required();
    cmd->add_option("rank,--rank", rank, "Rank")->required();
    cmd->add_option("isogeny,--isogeny", isogeny, "sc, ad or gl")->capture_default_str();
  }
  CartanType type() const { return CartanType::parse(family, rank, isogeny); }
  AffineSystem system() const { return AffineSystem(type()); }
};

/// "{0,2}", "0,2", "{}" or "" -> wall list.
std::vector<int> parse_walls(std::string text) {
  std::vector<int> walls;
  std::string digits;
  for (char c : text) {
    if (c == '{' || c == '}' || c == ' ') continue;
    if (c == ',') {
      if (digits.empty()) throw UsageError("bad face '" + text + "'");
      walls.push_back(std::stoi(digits));
      digits.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else {
      throw UsageError("bad face '" + text + "'");
    }
  }
  if (!digits.empty()) walls.push_back(std::stoi(digits));
  return walls;
}

QVector parse_point(const std::string& text, std::size_t dim, const char* what) {
  QVector v = text.empty() ? zero_vector(dim) : parse_vector(text);
  if (v.size() == 1 && dim > 1 && v[0].is_zero()) v = zero_vector(dim);
  if (v.size() != dim) throw UsageError(std::string(what) + " needs " + std::to_string(dim) + " coordinates");
  return v;
}

Complex parse_complex(const std::string& text) {
  std::stringstream ss(text);
  double re = 0, im = 0;
  char comma = 0;
  ss >> re;
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw UsageError("complex numbers are written re,im");
  }
  return {re, im};
}

ComplexMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  json j = json::parse(in);
  const std::size_t n = j.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (j[r].size() != n) throw UsageError("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {j[r][c].at(0).get<double>(), j[r][c].at(1).get<double>()};
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json complex_json(Complex z) { return {z.real(), z.imag()}; }

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine root systems, alcove geometry and loop-group centralizer combinatorics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("--out", out, "Write output to this file");

  TypeArgs roots_t, faces_t, cent_t, par_t, diag_t, star_t, over_t, ver_t, svg_t;

  auto* roots = app.add_subcommand("roots", "Root system data as JSON");
  roots_t.add(roots);

  auto* faces = app.add_subcommand("faces", "Face category of the fundamental alcove");
  faces_t.add(faces);

  auto* cent = app.add_subcommand("centralizer", "Centralizer data at Exp(theta, a tau)");
  cent_t.add(cent);
  std::string theta, a, im;
  bool gauge = false, text = false;
  cent->add_option("--theta", theta, "theta in lattice coordinates, e.g. 0,1/3");
  cent->add_option("--a", a, "a in simple-root coordinates (standard basis for gl), e.g. 1/2");
  cent->add_flag("--gauge", gauge, "Circle-gauge centralizer at A = a + i im");
  cent->add_option("--im", im, "Imaginary part for --gauge");
  cent->add_flag("--text", text, "Print the type-A shape as a bracket grid");

  auto* par = app.add_subcommand("parabolic", "Parabolic of Phi_J relative to J'");
  par_t.add(par);
  std::string from, to;
  par->add_option("--from", from, "Face J as a wall list, e.g. {0}")->required();
  par->add_option("--to", to, "Face J' as a wall list, e.g. {}")->required();

  auto* diag = app.add_subcommand("diagram", "Restriction diagram over the face category");
  diag_t.add(diag);
  bool diag_text = false;
  diag->add_flag("--text", diag_text, "Bracket-grid text instead of JSON");

  auto* star = app.add_subcommand("star", "Star membership and descent");
  star_t.add(star);
  std::string star_face, point;
  star->add_option("--face", star_face, "Face of C as a wall list")->required();
  star->add_option("--point", point, "Rational point, e.g. 1/3,1/3");

  auto* over = app.add_subcommand("overlap", "Chart overlaps between two face stars");
  over_t.add(over);
  std::string over_from, over_to;
  over->add_option("--from", over_from, "Face J1")->required();
  over->add_option("--to", over_to, "Face J2")->required();

  auto* wp = app.add_subcommand("wp", "Matrix Weierstrass p-function and the cubic identity");
  std::string omega1 = "1,0", omega2 = "0,2", matrix_file, z_text = "0.3,0.2";
  int radius = 100;
  bool raw = false;
  wp->add_option("--omega1", omega1, "First period re,im")->capture_default_str();
  wp->add_option("--omega2", omega2, "Second period re,im")->capture_default_str();
  wp->add_option("--radius", radius, "Summation radius")->capture_default_str();
  wp->add_option("--matrix", matrix_file, "JSON file with an n x n array of [re, im]");
  wp->add_option("--z", z_text, "Scalar argument re,im when no matrix is given")->capture_default_str();
  wp->add_flag("--raw", raw, "Plain truncated sums without the tail correction");

  auto* ver = app.add_subcommand("verify", "Run a verification suite; one JSON report per line");
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  ver->add_option("suite", suite, "faces|stabilizers|stars|cover|parabolic|centralizer|double-affine|weierstrass|all")->required();
  ver_t.add(ver);
  ver->add_option("--seed", seed)->capture_default_str();
  ver->add_option("--samples", samples)->capture_default_str();

  auto* svg = app.add_subcommand("svg", "SVG picture of a rank-2 arrangement");
  svg_t.add(svg);
  SvgOptions svg_opt;
  std::string highlight;
  svg->add_option("--lo", svg_opt.lo)->capture_default_str();
  svg->add_option("--hi", svg_opt.hi)->capture_default_str();
  svg->add_option("--highlight", highlight, "Face whose star is shaded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*roots) {
      emit(root_system_json(build_root_system(roots_t.type())).dump(2) + "\n", out);
    } else if (*faces) {
      AffineSystem sys = faces_t.system();
      emit(face_category_json(sys.rs(), sys.alcove(), sys.faces()).dump(2) + "\n", out);
    } else if (*cent) {
      AffineSystem sys = cent_t.system();
      const std::size_t d = sys.rs().dim();
      CentralizerData data =
          gauge ? gauge_centralizer_circle(sys, {parse_point(a, d, "--a"), parse_point(im, d, "--im")})
                : centralizer_elliptic(sys, ExpPoint::make(parse_point(theta, d, "--theta"), parse_point(a, d, "--a")));
      if (text && sys.rs().cartan_type().family == Family::A)
        emit(render_shape(matrix_shape(sys.rs(), data.phi)), out);
      else
        emit(centralizer_json(sys.rs(), data).dump(2) + "\n", out);
    } else if (*par) {
      AffineSystem sys = par_t.system();
      ParabolicData p = parabolic(sys, sys.face(parse_walls(from)), sys.face(parse_walls(to)));
      json j = parabolic_json(p);
      if (sys.rs().cartan_type().family == Family::A) j["shape"] = render_parabolic_shape(sys.rs(), p);
      emit(j.dump(2) + "\n", out);
    } else if (*diag) {
      AffineSystem sys = diag_t.system();
      RestrictionDiagram d = restriction_diagram(sys);
      emit(diag_text ? render_diagram(sys, d) : diagram_json(d).dump(2) + "\n", out);
    } else if (*star) {
      AffineSystem sys = star_t.system();
      const Face& f = sys.face(parse_walls(star_face));
      json j = {{"face", f.label()}, {"witness", vector_json(f.witness)}};
      if (!point.empty()) {
        QVector x = parse_point(point, sys.rs().dim(), "--point");
        Reduction r = reduce_to_alcove(sys, x);
        j["point"] = vector_json(x);
        j["in_star"] = star_contains(sys, f, x);
        j["reduced"] = vector_json(r.image);
        j["reduction"] = element_json(r.element);
        j["walls"] = r.walls;
      } else {
        j["facets"] = vectors_json(star_facets(sys, f));
      }
      emit(j.dump(2) + "\n", out);
    } else if (*over) {
      AffineSystem sys = over_t.system();
      emit(overlap_json(chart_overlap(sys, sys.face(parse_walls(over_from)), sys.face(parse_walls(over_to)))).dump(2) + "\n", out);
    } else if (*wp) {
      Lattice lat{parse_complex(omega1), parse_complex(omega2)};
      ComplexMatrix z;
      if (matrix_file.empty()) {
        z.resize(1, 1);
        z(0, 0) = parse_complex(z_text);
      } else {
        z = read_matrix(matrix_file);
      }
      WpOptions opt{radius, !raw};
      WpValues v = wp_values(z, lat, opt);
      CubicResidual r = verify_cubic(z, lat, opt);
      json j = {{"g2", complex_json(r.g2)},           {"g3", complex_json(r.g3)},
                {"residual_cubic", r.cubic},          {"residual_commutator", r.commutator},
                {"wp", matrix_to_json(v.wp)},          {"wp_prime", matrix_to_json(v.wp_prime)}};
      emit(j.dump(2) + "\n", out);
    } else if (*ver) {
      AffineSystem sys = ver_t.system();
      bool ok = true;
      std::string lines;
      for (const auto& r : run_suite(suite, sys, {seed, samples})) {
        ok = ok && r.passed;
        lines += r.to_json().dump() + "\n";
      }
      emit(lines, out);
      return ok ? 0 : 1;
    } else if (*svg) {
      AffineSystem sys = svg_t.system();
      if (!highlight.empty() || svg->count("--highlight")) svg_opt.highlight = parse_walls(highlight);
      emit(render_svg(sys, svg_opt), out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
