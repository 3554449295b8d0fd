#include "meanfield/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "meanfield/specialfn.hpp"

namespace meanfield {

namespace {

constexpr double kPi = std::numbers::pi;

// Box-Muller on top of mt19937_64 with an explicit uniform mapping, so the
// node stream is identical across standard library implementations.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();        // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = n / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

std::string rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::circle_trapezoid: return "circle-trapezoid";
    case RuleKind::product_gauss: return "product-gauss";
    case RuleKind::monte_carlo: return "monte-carlo";
  }
  throw std::logic_error("rule_kind_name: unreachable");
}

RuleKind parse_rule_kind(const std::string& name) {
  if (name == "circle-trapezoid") return RuleKind::circle_trapezoid;
  if (name == "product-gauss") return RuleKind::product_gauss;
  if (name == "monte-carlo") return RuleKind::monte_carlo;
  throw std::invalid_argument("unknown quadrature kind '" + name + "'");
}

std::string SphereQuadrature::descriptor() const {
  std::ostringstream out;
  out << rule_kind_name(kind) << ":" << level;
  if (kind == RuleKind::monte_carlo) out << ":seed=" << seed;
  return out.str();
}

double unit_sphere_area(int m) {
  if (m < 2) throw std::invalid_argument("unit_sphere_area: dimension must be >= 2");
  return 2.0 * std::pow(kPi, m / 2.0) / gamma_fn(m / 2.0);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: (j+1) P_{j+1} = (2j+1) z P_j - j P_{j-1}.
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -z;
    nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

SphereQuadrature sphere_rule(int m, int level, RuleKind kind, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("sphere_rule: dimension must be >= 2");
  if (level < 1) throw std::invalid_argument("sphere_rule: level must be positive");

  SphereQuadrature rule;
  rule.dim = m;
  rule.kind = kind;
  rule.level = level;
  rule.seed = (kind == RuleKind::monte_carlo) ? seed : 0;

  switch (kind) {
    case RuleKind::circle_trapezoid: {
      if (m != 2)
        throw std::invalid_argument("sphere_rule: circle-trapezoid requires m = 2");
      rule.nodes.reserve(static_cast<std::size_t>(level));
      rule.weights.assign(static_cast<std::size_t>(level), 1.0 / level);
      for (int k = 0; k < level; ++k) {
        const double theta = 2.0 * kPi * k / level;
        rule.nodes.push_back(Point({std::cos(theta), std::sin(theta)}));
      }
      break;
    }
    case RuleKind::product_gauss: {
      if (m != 3)
        throw std::invalid_argument("sphere_rule: product-gauss requires m = 3");
      std::vector<double> gl_nodes, gl_weights;
      gauss_legendre(level, gl_nodes, gl_weights);
      const int n_phi = 2 * level;
      rule.nodes.reserve(static_cast<std::size_t>(level * n_phi));
      rule.weights.reserve(static_cast<std::size_t>(level * n_phi));
      for (int i = 0; i < level; ++i) {
        const double t = gl_nodes[static_cast<std::size_t>(i)];  // cos(theta)
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        // Gauss weights sum to 2 over cos(theta); normalize the product
        // with the uniform longitude weight so the total is 1.
        const double w = gl_weights[static_cast<std::size_t>(i)] / (2.0 * n_phi);
        for (int j = 0; j < n_phi; ++j) {
          const double phi = 2.0 * kPi * j / n_phi;
          rule.nodes.push_back(Point({s * std::cos(phi), s * std::sin(phi), t}));
          rule.weights.push_back(w);
        }
      }
      break;
    }
    case RuleKind::monte_carlo: {
      GaussianStream gaussians(seed);
      rule.nodes.reserve(static_cast<std::size_t>(level));
      rule.weights.assign(static_cast<std::size_t>(level), 1.0 / level);
      std::vector<double> v(static_cast<std::size_t>(m));
      for (int k = 0; k < level; ++k) {
        double nrm = 0.0;
        do {
          for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = gaussians.next();
          nrm = 0.0;
          for (double c : v) nrm += c * c;
          nrm = std::sqrt(nrm);
        } while (nrm < 1e-12);
        std::vector<double> unit(v);
        for (double& c : unit) c /= nrm;
        rule.nodes.push_back(Point(std::move(unit)));
      }
      break;
    }
  }
  return rule;
}

SphereQuadrature default_rule(int m, std::uint64_t seed) {
  if (m == 2) return sphere_rule(2, 64, RuleKind::circle_trapezoid);
  if (m == 3) return sphere_rule(3, 16, RuleKind::product_gauss);
  return sphere_rule(m, 20000, RuleKind::monte_carlo, seed);
}

double surface_mean(const SphereQuadrature& rule,
                    const std::function<double(const Point&)>& g) {
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double gi;
    try {
      gi = g(rule.nodes[i]);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "surface_mean: integrand evaluation failed at node " << i << " (";
      for (int c = 0; c < rule.dim; ++c) {
        if (c) msg << ", ";
        msg << rule.nodes[i][c];
      }
      msg << "): " << e.what();
      throw std::runtime_error(msg.str());
    }
    terms[i] = rule.weights[i] * gi;
  }
  return pairwise_sum(terms);
}

}  // namespace meanfield
