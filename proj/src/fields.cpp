#include "meanfield/fields.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace meanfield {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_number(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("make_field: bad " + what + " '" + token + "'");
  }
  if (used != token.size())
    throw std::invalid_argument("make_field: bad " + what + " '" + token + "'");
  return v;
}

std::vector<double> parse_direction(const std::string& token, int m) {
  std::vector<double> d(static_cast<std::size_t>(m), 0.0);
  if (token.size() >= 2 && token[0] == 'e') {
    const int axis = static_cast<int>(parse_number(token.substr(1), "axis index"));
    if (axis < 1 || axis > m)
      throw std::invalid_argument("make_field: direction axis out of range: " + token);
    d[static_cast<std::size_t>(axis - 1)] = 1.0;
    return d;
  }
  const auto parts = split(token, ',');
  if (static_cast<int>(parts.size()) != m)
    throw std::invalid_argument("make_field: direction needs " + std::to_string(m) +
                                " components: " + token);
  double nrm = 0.0;
  for (int i = 0; i < m; ++i) {
    d[static_cast<std::size_t>(i)] = parse_number(parts[static_cast<std::size_t>(i)],
                                                  "direction component");
    nrm += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
  }
  nrm = std::sqrt(nrm);
  if (!(nrm > 0.0))
    throw std::invalid_argument("make_field: direction must be nonzero");
  for (double& c : d) c /= nrm;
  return d;
}

// Real/imaginary part of (x1 + i x2)^k by repeated complex multiplication.
double complex_power_part(double x, double y, int k, bool real_part) {
  double re = 1.0, im = 0.0;
  for (int i = 0; i < k; ++i) {
    const double nre = re * x - im * y;
    im = re * y + im * x;
    re = nre;
  }
  return real_part ? re : im;
}

ScalarField make_harmonic_poly(const std::string& name, int m) {
  if (name == "x1x2") {
    return ScalarField(m, "harmonic:x1x2", GroundTruth::harmonic,
                       [](const Point& p) { return p[0] * p[1]; });
  }
  if (name == "x1sq-x2sq") {
    return ScalarField(m, "harmonic:x1sq-x2sq", GroundTruth::harmonic,
                       [](const Point& p) { return p[0] * p[0] - p[1] * p[1]; });
  }
  if (name == "x1x2x3") {
    if (m < 3)
      throw std::invalid_argument("make_field: harmonic:x1x2x3 needs m >= 3");
    return ScalarField(m, "harmonic:x1x2x3", GroundTruth::harmonic,
                       [](const Point& p) { return p[0] * p[1] * p[2]; });
  }
  const bool re = name.rfind("re_z", 0) == 0;
  const bool im = name.rfind("im_z", 0) == 0;
  if (re || im) {
    if (m != 2)
      throw std::invalid_argument("make_field: harmonic:" + name + " needs m = 2");
    const int k = static_cast<int>(parse_number(name.substr(4), "power"));
    if (k < 1 || k > 16)
      throw std::invalid_argument("make_field: power out of range in harmonic:" + name);
    return ScalarField(2, "harmonic:" + name, GroundTruth::harmonic,
                       [k, re](const Point& p) {
                         return complex_power_part(p[0], p[1], k, re);
                       });
  }
  throw std::invalid_argument("make_field: unknown harmonic polynomial '" + name + "'");
}

}  // namespace

std::string ground_truth_name(GroundTruth truth) {
  switch (truth) {
    case GroundTruth::harmonic: return "harmonic";
    case GroundTruth::panharmonic: return "panharmonic";
    case GroundTruth::other: return "other";
    case GroundTruth::unknown: return "unknown";
  }
  throw std::logic_error("ground_truth_name: unreachable");
}

ScalarField::ScalarField(int dim, std::string label, GroundTruth truth,
                         std::function<double(const Point&)> evaluator,
                         std::optional<double> mu, std::optional<Domain> support)
    : dim_(dim),
      label_(std::move(label)),
      truth_(truth),
      evaluator_(std::move(evaluator)),
      mu_(mu),
      support_(std::move(support)) {
  if (dim_ < 2) throw std::invalid_argument("ScalarField: dimension must be >= 2");
  if (!evaluator_) throw std::invalid_argument("ScalarField: evaluator required");
}

double ScalarField::operator()(const Point& x) const {
  if (x.dim() != dim_)
    throw std::invalid_argument("ScalarField: point dimension mismatch");
  return evaluator_(x);
}

ScalarField make_field(const std::string& spec, int m) {
  if (m < 2) throw std::invalid_argument("make_field: dimension must be >= 2");
  const auto parts = split(spec, ':');
  const std::string& name = parts[0];
  const auto arg = [&](std::size_t i) -> const std::string& {
    if (i >= parts.size())
      throw std::invalid_argument("make_field: '" + spec + "' is missing arguments");
    return parts[i];
  };

  if (name == "constant") {
    const double c = parse_number(arg(1), "constant");
    return ScalarField(m, spec, GroundTruth::harmonic,
                       [c](const Point&) { return c; });
  }
  if (name == "coordinate") {
    const int axis = static_cast<int>(parse_number(arg(1), "axis index"));
    if (axis < 1 || axis > m)
      throw std::invalid_argument("make_field: coordinate axis out of range");
    return ScalarField(m, spec, GroundTruth::harmonic,
                       [axis](const Point& p) { return p[axis - 1]; });
  }
  if (name == "harmonic") return make_harmonic_poly(arg(1), m);
  if (name == "fundamental") {
    if (m == 2) {
      return ScalarField(2, spec, GroundTruth::harmonic, [](const Point& p) {
        const double r = norm(p);
        if (r == 0.0)
          throw std::domain_error("fundamental field is singular at the origin");
        return std::log(r);
      });
    }
    const double expo = 2.0 - m;
    return ScalarField(m, spec, GroundTruth::harmonic, [expo](const Point& p) {
      const double r = norm(p);
      if (r == 0.0)
        throw std::domain_error("fundamental field is singular at the origin");
      return std::pow(r, expo);
    });
  }
  if (name == "exp-plane") {
    const double mu = parse_number(arg(1), "mu");
    if (!(mu > 0.0)) throw std::invalid_argument("make_field: exp-plane needs mu > 0");
    const std::vector<double> d = parse_direction(arg(2), m);
    return ScalarField(m, spec, GroundTruth::panharmonic,
                       [mu, d](const Point& p) {
                         double dot = 0.0;
                         for (int i = 0; i < p.dim(); ++i)
                           dot += d[static_cast<std::size_t>(i)] * p[i];
                         return std::exp(mu * dot);
                       },
                       mu);
  }
  if (name == "quadratic") {
    return ScalarField(m, spec, GroundTruth::other, [](const Point& p) {
      double s = 0.0;
      for (int i = 0; i < p.dim(); ++i) s += p[i] * p[i];
      return s;
    });
  }
  if (name == "gaussian") {
    const double sigma = parse_number(arg(1), "sigma");
    if (!(sigma > 0.0)) throw std::invalid_argument("make_field: gaussian needs sigma > 0");
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    return ScalarField(m, spec, GroundTruth::other, [inv2s2](const Point& p) {
      double s = 0.0;
      for (int i = 0; i < p.dim(); ++i) s += p[i] * p[i];
      return std::exp(-s * inv2s2);
    });
  }
  if (name == "product-pan") {
    const double mu = parse_number(arg(1), "mu");
    if (!(mu > 0.0)) throw std::invalid_argument("make_field: product-pan needs mu > 0");
    return ScalarField(m, spec, GroundTruth::panharmonic,
                       [mu](const Point& p) { return std::cosh(mu * p[0]); }, mu);
  }
  throw std::invalid_argument("make_field: unknown field '" + spec + "'");
}

GridField::GridField(Point lo, Point hi, std::vector<int> counts,
                     std::vector<double> values)
    : lo_(std::move(lo)), hi_(std::move(hi)), counts_(std::move(counts)),
      values_(std::move(values)) {
  const int m = lo_.dim();
  if (hi_.dim() != m) throw std::invalid_argument("GridField: lo/hi dimension mismatch");
  if (static_cast<int>(counts_.size()) != m)
    throw std::invalid_argument("GridField: need one node count per axis");
  std::size_t expected = 1;
  for (int i = 0; i < m; ++i) {
    if (counts_[static_cast<std::size_t>(i)] < 2)
      throw std::invalid_argument("GridField: need >= 2 nodes per axis");
    if (!(lo_[i] < hi_[i]))
      throw std::invalid_argument("GridField: lo must be strictly below hi per axis");
    expected *= static_cast<std::size_t>(counts_[static_cast<std::size_t>(i)]);
  }
  if (values_.size() != expected)
    throw std::invalid_argument("GridField: value count mismatch (expected " +
                                std::to_string(expected) + ", got " +
                                std::to_string(values_.size()) + ")");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridField: values must be finite");
  step_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    step_[static_cast<std::size_t>(i)] =
        (hi_[i] - lo_[i]) / (counts_[static_cast<std::size_t>(i)] - 1);
}

double GridField::node_coord(int axis, int j) const {
  return lo_[axis] + j * step_[static_cast<std::size_t>(axis)];
}

std::size_t GridField::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < counts_.size(); ++a)
    flat = flat * static_cast<std::size_t>(counts_[a]) + static_cast<std::size_t>(idx[a]);
  return flat;
}

double GridField::operator()(const Point& x) const {
  const int m = dim();
  if (x.dim() != m) throw std::invalid_argument("GridField: point dimension mismatch");
  std::vector<int> cell(static_cast<std::size_t>(m));
  std::vector<double> t(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    const double extent = hi_[a] - lo_[a];
    const double slack = 1e-12 * extent;
    if (x[a] < lo_[a] - slack || x[a] > hi_[a] + slack)
      throw std::out_of_range("GridField: evaluation outside the bounding box");
    const double s = (x[a] - lo_[a]) / step_[static_cast<std::size_t>(a)];
    int i = static_cast<int>(std::floor(s));
    i = std::max(0, std::min(i, counts_[static_cast<std::size_t>(a)] - 2));
    double frac = (x[a] - node_coord(a, i)) / step_[static_cast<std::size_t>(a)];
    // Exact node queries must reproduce the stored sample bit for bit.
    if (x[a] == node_coord(a, i)) frac = 0.0;
    else if (x[a] == node_coord(a, i + 1)) frac = 1.0;
    frac = std::max(0.0, std::min(1.0, frac));
    cell[static_cast<std::size_t>(a)] = i;
    t[static_cast<std::size_t>(a)] = frac;
  }
  // Blend the 2^m cell corners; (1-t) v0 + t v1 keeps endpoints exact.
  double acc = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(m));
  const unsigned corners = 1u << m;
  for (unsigned mask = 0; mask < corners; ++mask) {
    double w = 1.0;
    for (int a = 0; a < m; ++a) {
      const bool high = (mask >> a) & 1u;
      w *= high ? t[static_cast<std::size_t>(a)] : 1.0 - t[static_cast<std::size_t>(a)];
      idx[static_cast<std::size_t>(a)] = cell[static_cast<std::size_t>(a)] + (high ? 1 : 0);
    }
    if (w != 0.0) acc += w * values_[flat_index(idx)];
  }
  return acc;
}

void GridField::save(std::ostream& out) const {
  out << "gridfield v1\n" << dim() << "\n";
  for (std::size_t a = 0; a < counts_.size(); ++a)
    out << (a ? " " : "") << counts_[a];
  out << "\n";
  char buf[40];
  for (int i = 0; i < dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", lo_[i]);
    out << (i ? " " : "") << buf;
  }
  for (int i = 0; i < dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", hi_[i]);
    out << " " << buf;
  }
  out << "\n";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values_[i]);
    out << buf << ((i + 1) % 8 == 0 || i + 1 == values_.size() ? "\n" : " ");
  }
}

GridField GridField::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "gridfield v1")
    throw std::runtime_error("gridfield: malformed header (expected 'gridfield v1')");
  int m = 0;
  if (!(in >> m) || m < 2)
    throw std::runtime_error("gridfield: invalid dimension");
  std::vector<int> counts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    if (!(in >> counts[static_cast<std::size_t>(i)]))
      throw std::runtime_error("gridfield: missing node counts");
  std::vector<double> lo(static_cast<std::size_t>(m)), hi(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    if (!(in >> lo[static_cast<std::size_t>(i)]))
      throw std::runtime_error("gridfield: missing bounding box");
  for (int i = 0; i < m; ++i)
    if (!(in >> hi[static_cast<std::size_t>(i)]))
      throw std::runtime_error("gridfield: missing bounding box");
  std::size_t expected = 1;
  for (int c : counts) {
    if (c < 2) throw std::runtime_error("gridfield: need >= 2 nodes per axis");
    expected *= static_cast<std::size_t>(c);
  }
  std::vector<double> values;
  values.reserve(expected);
  double v;
  while (in >> v) values.push_back(v);
  if (values.size() != expected)
    throw std::runtime_error("gridfield: value count mismatch (expected " +
                             std::to_string(expected) + ", got " +
                             std::to_string(values.size()) + ")");
  try {
    return GridField(Point(std::move(lo)), Point(std::move(hi)), std::move(counts),
                     std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("gridfield: ") + e.what());
  }
}

ScalarField load_grid_field(std::istream& in) {
  auto grid = std::make_shared<GridField>(GridField::load(in));
  Domain support = Domain::box(grid->lo(), grid->hi());
  return ScalarField(grid->dim(), "grid", GroundTruth::unknown,
                     [grid](const Point& p) { return (*grid)(p); },
                     std::nullopt, support);
}

ScalarField load_grid_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_grid_field: cannot open '" + path + "'");
  return load_grid_field(in);
}

double helmholtz_residual(const std::function<double(const Point&)>& u, int dim,
                          const Point& x, double h, double mu) {
  if (!(h > 0.0)) throw std::invalid_argument("helmholtz_residual: h must be positive");
  if (mu < 0.0) throw std::invalid_argument("helmholtz_residual: mu must be >= 0");
  if (x.dim() != dim)
    throw std::invalid_argument("helmholtz_residual: point dimension mismatch");
  const double center = u(x);
  double lap = 0.0;
  Point probe = x;
  for (int i = 0; i < dim; ++i) {
    const double xi = x[i];
    probe[i] = xi + h;
    const double up = u(probe);
    probe[i] = xi - h;
    const double um = u(probe);
    probe[i] = xi;
    lap += (up - 2.0 * center + um) / (h * h);
  }
  return lap - mu * mu * center;
}

double helmholtz_residual(const ScalarField& u, const Point& x, double h, double mu) {
  return helmholtz_residual([&u](const Point& p) { return u(p); }, u.dim(), x, h, mu);
}

}  // namespace meanfield
