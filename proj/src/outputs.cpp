#include "paim/outputs.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace paim {

namespace {

using nlohmann::json;

json vector_json(const Vector& v) { return json(v); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json component_json(const GaussianComponent& c) {
  return {{"mean", vector_json(c.mean)}, {"cov", matrix_json(c.cov.matrix())}};
}

json algorithm_json(const AlgorithmSummary& s) {
  return {{"mse", s.mse},
          {"estimates", s.estimates},
          {"budgets", s.budgets},
          {"total_steps", s.total_steps},
          {"acceptance_rates", s.acceptance_rates},
          {"final_active", s.final_active}};
}

class FileWriter {
 public:
  explicit FileWriter(std::filesystem::path path) : path_(std::move(path)), out_(path_) {
    if (!out_) throw std::runtime_error("cannot open " + path_.string() + " for writing");
    out_.imbue(std::locale::classic());
  }
  std::ofstream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

double ellipse_radius_squared(std::size_t dim, double mass) {
  boost::math::chi_squared dist(static_cast<double>(dim));
  return boost::math::quantile(dist, mass);
}

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, end);
}

json params_json(const RunRecord& record) {
  json chains = json::array();
  for (std::size_t n = 0; n < record.final_proposals.size(); ++n) {
    const auto& p = record.final_proposals[n];
    chains.push_back({{"chain", n},
                      {"global", component_json(p.global())},
                      {"local", component_json(p.local())},
                      {"budget", record.budgets.at(n)},
                      {"cluster_count", record.cluster_counts.at(n)}});
  }
  return {{"dim", record.dim},
          {"total_steps", record.total_steps},
          {"shared_global", {{"mean", vector_json(record.global_mean)},
                             {"cov", matrix_json(record.global_covariance.matrix())}}},
          {"chains", chains}};
}

json summary_json(const SummaryReport& report) {
  json j = {{"truth", report.truth}, {"replications", report.replications}};
  if (report.paim) j["paim"] = algorithm_json(*report.paim);
  if (report.ipc) j["ipc"] = algorithm_json(*report.ipc);
  j["reduction_percent"] = report.reduction_percent ? json(*report.reduction_percent) : json(nullptr);
  return j;
}

void emit_outputs(const RunRecord& record, const SummaryReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const std::size_t d = record.dim;

  {
    FileWriter f(dir / "samples.csv");
    auto& out = f.stream();
    out << "t,chain,k_n";
    for (std::size_t i = 0; i < d; ++i) out << ",x_" << (i + 1);
    out << ",accepted\n";
    for (const auto& s : record.samples) {
      out << s.step << ',' << s.chain << ',' << s.iteration;
      for (double v : s.x) out << ',' << format_real(v);
      out << ',' << (s.accepted ? 1 : 0) << '\n';
    }
    f.close();
  }
  {
    FileWriter f(dir / "activity.csv");
    auto& out = f.stream();
    out << "t,chain,active\n";
    for (std::size_t t = 0; t < record.activity.size(); ++t)
      for (std::size_t n = 0; n < record.activity[t].size(); ++n)
        out << t << ',' << n << ',' << (record.activity[t][n] ? 1 : 0) << '\n';
    f.close();
  }
  {
    FileWriter f(dir / "params.json");
    f.stream() << params_json(record).dump(2) << '\n';
    f.close();
  }
  {
    FileWriter f(dir / "summary.json");
    f.stream() << summary_json(report).dump(2) << '\n';
    f.close();
  }
  {
    FileWriter f(dir / "ellipses.csv");
    auto& out = f.stream();
    const double radius_sq = ellipse_radius_squared(d, 0.90);
    out << "component,chain";
    for (std::size_t i = 0; i < d; ++i) out << ",mean_" << (i + 1);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) out << ",cov_" << (i + 1) << '_' << (j + 1);
    out << ",radius_sq\n";
    auto row = [&](const char* component, const std::string& chain, const Vector& mean, const Matrix& cov) {
      out << component << ',' << chain;
      for (double v : mean) out << ',' << format_real(v);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) out << ',' << format_real(cov(i, j));
      out << ',' << format_real(radius_sq) << '\n';
    };
    const auto& last = record.activity.empty() ? std::vector<bool>{} : record.activity.back();
    for (std::size_t n = 0; n < record.final_proposals.size(); ++n) {
      if (n < last.size() && !last[n]) continue;
      const auto& local = record.final_proposals[n].local();
      row("local", std::to_string(n), local.mean, local.cov.matrix());
    }
    row("global", "", record.global_mean, record.global_covariance.matrix());
    f.close();
  }
}

}  // namespace paim
