#include "echcap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace echcap {

namespace {

using nlohmann::json;

const std::pair<ShapeClass, const char*> kShapeNames[] = {
    {ShapeClass::convex, "convex"},
    {ShapeClass::strictly_convex, "strictly_convex"},
    {ShapeClass::concave, "concave"},
    {ShapeClass::strictly_concave, "strictly_concave"},
};

ShapeClass shape_from_string(const std::string& s) {
  for (const auto& [cls, name] : kShapeNames)
    if (s == name) return cls;
  fail(ErrorCode::ConfigError, "unknown shape_class '" + s + "'");
}

const char* shape_to_string(ShapeClass cls) {
  for (const auto& [c, name] : kShapeNames)
    if (c == cls) return name;
  return "convex";
}

double angle_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  fail(ErrorCode::ConfigError, "angle entries must be numbers or strings");
}

double number_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return rat_to_double(parse_rat(v.get<std::string>()));
  fail(ErrorCode::ConfigError, "numeric entries must be numbers or strings");
}

// 17 significant digits round-trip binary64 exactly; used for curve exports so
// a reloaded parametric curve keeps its angle range (and hence completeness)
std::string format_double_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Curve load_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open curve file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "read failure on '" + path + "'");
  return parse_curve_json(ss.str());
}

Curve parse_curve_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("curve file is not valid JSON: ") + e.what());
  }
  try {
    std::string kind = j.at("kind").get<std::string>();
    ShapeClass cls = shape_from_string(j.at("shape_class").get<std::string>());
    if (kind == "polygonal") {
      std::vector<RatPoint> vs;
      for (const auto& v : j.at("vertices")) {
        if (!v.is_array() || v.size() != 2)
          fail(ErrorCode::ConfigError, "vertices must be [x, y] pairs");
        vs.push_back({parse_rat(v[0].get<std::string>()), parse_rat(v[1].get<std::string>())});
      }
      return make_polygonal_curve(std::move(vs), cls);
    }
    if (kind == "parametric") {
      const auto& tr = j.at("theta_range");
      if (!tr.is_array() || tr.size() != 2)
        fail(ErrorCode::ConfigError, "theta_range must be [lo, hi]");
      double t0 = angle_from_json(tr[0]), t1 = angle_from_json(tr[1]);
      int n = j.value("samples", 8192);
      const auto& rad = j.at("radial");
      if (rad.contains("const")) {
        double r = number_from_json(rad.at("const"));
        return make_parametric_curve([r](double) { return r; }, t0, t1, cls, n);
      }
      if (rad.contains("samples")) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& s : rad.at("samples")) {
          if (!s.is_array() || s.size() != 2)
            fail(ErrorCode::ConfigError, "radial samples must be [theta, rho] pairs");
          pts.emplace_back(angle_from_json(s[0]), number_from_json(s[1]));
        }
        if (pts.size() < 2 || !std::is_sorted(pts.begin(), pts.end(),
                                              [](auto& a, auto& b) { return a.first < b.first; }))
          fail(ErrorCode::ConfigError, "radial samples need >= 2 entries with increasing theta");
        auto rho = [pts = std::move(pts)](double th) {
          auto it = std::lower_bound(pts.begin(), pts.end(), th,
                                     [](const auto& p, double t) { return p.first < t; });
          if (it == pts.begin()) return it->second;
          if (it == pts.end()) return (it - 1)->second;
          auto lo = it - 1;
          double w = (th - lo->first) / (it->first - lo->first);
          return lo->second + w * (it->second - lo->second);
        };
        return make_parametric_curve(rho, t0, t1, cls, n);
      }
      fail(ErrorCode::ConfigError, "radial must contain 'const' or 'samples'");
    }
    fail(ErrorCode::ConfigError, "unknown curve kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("curve file schema error: ") + e.what());
  }
}

std::string curve_to_json(const Curve& c) {
  json j;
  j["shape_class"] = shape_to_string(c.shape_class());
  if (c.kind() == CurveKind::polygonal) {
    j["kind"] = "polygonal";
    json vs = json::array();
    for (const auto& v : c.vertices()) vs.push_back({format_rat(v.x), format_rat(v.y)});
    j["vertices"] = std::move(vs);
  } else {
    // emit the curve's own sample grid so a round trip reproduces the same
    // piecewise-linear radial profile
    j["kind"] = "parametric";
    j["theta_range"] = {format_double_exact(c.theta_min()), format_double_exact(c.theta_max())};
    j["samples"] = static_cast<int>(c.grid_theta().size());
    json samp = json::array();
    for (double th : c.grid_theta())
      samp.push_back({format_double_exact(th), format_double_exact(c.radial(th))});
    j["radial"] = {{"samples", std::move(samp)}};
  }
  return j.dump(2) + "\n";
}

double parse_angle(const std::string& token) {
  std::string t;
  for (char ch : token)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) fail(ErrorCode::ConfigError, "empty angle token");
  double sign = 1;
  if (t[0] == '-') {
    sign = -1;
    t = t.substr(1);
  } else if (t[0] == '+') {
    t = t.substr(1);
  }
  size_t pos = t.find("pi");
  try {
    if (pos == std::string::npos) return sign * rat_to_double(parse_rat(t));
    std::string pre = t.substr(0, pos), post = t.substr(pos + 2);
    double mult = pre.empty() ? 1.0 : rat_to_double(parse_rat(pre));
    double div = 1.0;
    if (!post.empty()) {
      if (post[0] != '/') fail(ErrorCode::ConfigError, "bad angle token '" + token + "'");
      div = rat_to_double(parse_rat(post.substr(1)));
    }
    if (div == 0) fail(ErrorCode::ConfigError, "division by zero in angle '" + token + "'");
    return sign * mult * std::acos(-1.0) / div;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, "bad angle token '" + token + "'");
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigError, "bad angle token '" + token + "'");
  }
}

std::vector<AngleInterval> parse_arc_list(const std::string& spec) {
  std::vector<AngleInterval> arcs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t colon = item.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::ConfigError, "arc '" + item + "' is not of the form lo:hi");
    AngleInterval arc{parse_angle(item.substr(0, colon)), parse_angle(item.substr(colon + 1))};
    if (!(arc.lo <= arc.hi))
      fail(ErrorCode::ConfigError, "arc '" + item + "' has lo > hi");
    arcs.push_back(arc);
  }
  return arcs;
}

std::vector<int> parse_k_list(const std::string& spec) {
  std::vector<int> ks;
  std::stringstream ss(spec);
  std::string item;
  auto to_int = [&](const std::string& s) {
    try {
      size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size() || v < 1) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigError, "bad index '" + s + "' in k list '" + spec + "'");
    }
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t dots = item.find("..");
    if (dots == std::string::npos) {
      ks.push_back(to_int(item));
      continue;
    }
    int a = to_int(item.substr(0, dots)), b = to_int(item.substr(dots + 2));
    if (a > b) fail(ErrorCode::ConfigError, "empty range '" + item + "'");
    for (int k = a; k <= b; ++k) ks.push_back(k);
  }
  if (ks.empty()) fail(ErrorCode::ConfigError, "k list '" + spec + "' is empty");
  return ks;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  auto join = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  join(header);
  for (const auto& r : rows) join(r);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write failure on '" + path + "'");
}

CsvTable capacities_csv(const std::vector<CapacityResult>& results) {
  CsvTable t;
  t.header = {"k", "value", "num_optima", "nodes_explored"};
  for (const auto& r : results)
    t.rows.push_back({std::to_string(r.k),
                      r.exact ? format_rat(r.value_exact) : format_double(r.value),
                      std::to_string(r.optimal_paths.size()),
                      std::to_string(r.nodes_explored)});
  return t;
}

CsvTable path_csv(const IntegralPath& p) {
  CsvTable t;
  t.header = {"x", "y"};
  for (const auto& v : p.vertices())
    t.rows.push_back({std::to_string(v.x), std::to_string(v.y)});
  return t;
}

CsvTable equidist_csv(const ExperimentReport& report) {
  CsvTable t;
  t.header = {"k", "arc_id", "err", "hausdorff"};
  for (const auto& r : report.rows)
    t.rows.push_back(
        {std::to_string(r.k), r.arc_id, format_double(r.err), format_double(r.hausdorff)});
  return t;
}

namespace {

// fixed two-decimal SVG user units keep the output byte-stable
std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kPalette[] = {"#c02040", "#2060c0", "#208040", "#a06010", "#7030a0", "#107080"};

}  // namespace

std::string svg_curve_with_paths(const Curve& curve, const std::vector<IntegralPath>& paths,
                                 const std::vector<double>& scale_factors) {
  if (paths.size() != scale_factors.size())
    fail(ErrorCode::InvalidArgument, "one scale factor per path required");
  double span = 0;
  auto pts = curve_polyline(curve, 512);
  for (const auto& p : pts) span = std::max({span, p.x, p.y});
  for (size_t i = 0; i < paths.size(); ++i)
    for (const auto& v : paths[i].vertices())
      span = std::max({span, v.x * scale_factors[i], v.y * scale_factors[i]});
  if (span <= 0) span = 1;
  const double unit = 640.0 / span, margin = 40.0, size = 720.0;
  auto X = [&](double x) { return margin + unit * x; };
  auto Y = [&](double y) { return size - margin - unit * y; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"720\" "
         "viewBox=\"0 0 720 720\">\n";
  svg << "<rect width=\"720\" height=\"720\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << svg_num(X(0)) << "\" y1=\"" << svg_num(Y(0)) << "\" x2=\""
      << svg_num(X(span)) << "\" y2=\"" << svg_num(Y(0)) << "\" stroke=\"#999\"/>\n";
  svg << "<line x1=\"" << svg_num(X(0)) << "\" y1=\"" << svg_num(Y(0)) << "\" x2=\""
      << svg_num(X(0)) << "\" y2=\"" << svg_num(Y(span)) << "\" stroke=\"#999\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (const auto& p : pts) svg << svg_num(X(p.x)) << ',' << svg_num(Y(p.y)) << ' ';
  svg << "\"/>\n";
  for (size_t i = 0; i < paths.size(); ++i) {
    svg << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 6]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& v : paths[i].vertices())
      svg << svg_num(X(v.x * scale_factors[i])) << ',' << svg_num(Y(v.y * scale_factors[i]))
          << ' ';
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_residual_plot(const std::vector<int>& ks, const std::vector<double>& residuals) {
  if (ks.size() != residuals.size() || ks.empty())
    fail(ErrorCode::InvalidArgument, "need one residual per k");
  double xmin = std::log(double(ks.front())), xmax = std::log(double(ks.back()));
  if (xmax <= xmin) xmax = xmin + 1;
  double ymax = 1e-12;
  for (double r : residuals) ymax = std::max(ymax, std::fabs(r));
  const double W = 720, H = 480, m = 50;
  auto X = [&](double k) { return m + (std::log(k) - xmin) / (xmax - xmin) * (W - 2 * m); };
  auto Y = [&](double r) { return H / 2 - r / ymax * (H / 2 - m); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
         "viewBox=\"0 0 720 480\">\n<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << svg_num(m) << "\" y1=\"" << svg_num(H / 2) << "\" x2=\""
      << svg_num(W - m) << "\" y2=\"" << svg_num(H / 2) << "\" stroke=\"#999\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#2060c0\" stroke-width=\"2\" points=\"";
  for (size_t i = 0; i < ks.size(); ++i)
    svg << svg_num(X(ks[i])) << ',' << svg_num(Y(residuals[i])) << ' ';
  svg << "\"/>\n";
  for (size_t i = 0; i < ks.size(); ++i) {
    svg << "<circle cx=\"" << svg_num(X(ks[i])) << "\" cy=\"" << svg_num(Y(residuals[i]))
        << "\" r=\"3\" fill=\"#c02040\"/>\n";
    svg << "<text x=\"" << svg_num(X(ks[i])) << "\" y=\"" << svg_num(H - 12)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << ks[i] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace echcap
