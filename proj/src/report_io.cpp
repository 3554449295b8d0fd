#include "meanfield/report_io.hpp"

#include <cstdio>
#include <ostream>

namespace meanfield {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

nlohmann::json report_to_json(const DetectionReport& report) {
  nlohmann::json j;
  j["test"] = report.test;
  j["field"] = report.field_label;
  j["domain"] = report.domain;
  if (!report.rule.empty()) j["rule"] = report.rule;
  j["confidence"] = report.confidence;
  j["tolerance"] = report.tolerance;
  if (!report.sampled_radii.empty()) j["radii"] = report.sampled_radii;
  if (report.mu) j["mu"] = *report.mu;
  if (report.fd_step) j["fd_step"] = *report.fd_step;
  if (report.fd_constant) j["fd_constant"] = *report.fd_constant;
  if (report.mu_hat_mean) {
    j["mu_hat"] = {{"mean", *report.mu_hat_mean}, {"stddev", *report.mu_hat_stddev}};
    j["counterevidence"] = report.counterevidence;
  }
  if (report.interior_max) {
    j["interior_max"] = *report.interior_max;
    j["boundary_max"] = *report.boundary_max;
    j["margin"] = *report.margin;
  }
  j["max_abs_residual"] = report.max_abs_residual;
  j["mean_abs_residual"] = report.mean_abs_residual;
  j["verdict"] = report.pass ? "pass" : "fail";
  nlohmann::json records = nlohmann::json::array();
  for (const PointRecord& rec : report.records) {
    nlohmann::json r;
    r["x"] = rec.x.coords();
    r["radii"] = rec.radii;
    r["residual"] = rec.residual;
    r["threshold"] = rec.threshold;
    r["pass"] = rec.pass;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  return j;
}

void write_report_csv(std::ostream& out, const DetectionReport& report) {
  std::size_t dim = 0, n_radii = 0;
  for (const PointRecord& rec : report.records) {
    dim = std::max(dim, static_cast<std::size_t>(rec.x.dim()));
    n_radii = std::max(n_radii, rec.radii.size());
  }
  for (std::size_t a = 0; a < dim; ++a) out << "x" << (a + 1) << ",";
  for (std::size_t k = 0; k < n_radii; ++k) out << "r" << (k + 1) << ",";
  out << "residual,threshold,pass\n";
  for (const PointRecord& rec : report.records) {
    for (int a = 0; a < rec.x.dim(); ++a) out << format_double(rec.x[a]) << ",";
    for (std::size_t k = 0; k < n_radii; ++k) {
      if (k < rec.radii.size()) out << format_double(rec.radii[k]);
      out << ",";
    }
    out << format_double(rec.residual) << "," << format_double(rec.threshold) << ","
        << (rec.pass ? 1 : 0) << "\n";
  }
}

}  // namespace meanfield
