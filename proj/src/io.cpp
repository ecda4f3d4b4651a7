#include "jorca/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jorca {

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("atomic_write_file: cannot open " +
                               tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("atomic_write_file: write failed for " +
                               tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

Json complex_json(ComplexAmp z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const FieldQuad& q) {
  Json j;
  j["a1"] = complex_json(q.a1);
  j["a2"] = complex_json(q.a2);
  j["a3"] = complex_json(q.a3);
  j["a4"] = complex_json(q.a4);
  j["stage"] = q.stage == Stage::Seed ? "seed" : "final";
  return j;
}

Json to_json(const GainReport& report) {
  Json j;
  j["lambda_max"] = report.lambda_max;
  j["optimizer"] = to_json(report.optimizer);
  j["seed"] = to_json(report.seed);
  j["i_in"] = report.i_in;
  j["i_out"] = report.i_out;
  j["verdict"] = std::string(to_string(report.verdict));
  return j;
}

Json to_json(const VerificationRecord& record) {
  Json j;
  j["scenario"] = record.scenario;
  j["eps"] = record.eps;
  Json outcomes = Json::array();
  for (const auto& out : record.outcomes) {
    Json o;
    o["label"] = out.label;
    o["prob"] = out.prob;
    o["lambda_max"] = out.lambda_max;
    o["verdict"] = std::string(to_string(out.verdict));
    o["agree"] = out.agree;
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

Json sweep_to_json(std::string_view scenario, int wing, double eps,
                   std::span<const SweepRow> rows) {
  Json j;
  j["scenario"] = std::string(scenario);
  j["wing"] = wing;
  j["eps"] = eps;
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json r;
    r["beta"] = row.beta;
    r["prob"] = row.prob;
    r["lambda_max"] = row.lambda_max;
    arr.push_back(std::move(r));
  }
  j["rows"] = std::move(arr);
  return j;
}

Json to_json(const ScanSummary& summary) {
  Json j;
  j["n"] = summary.n;
  j["eps"] = summary.eps;
  j["rng_seed"] = summary.rng_seed;
  j["zero_fraction"] = summary.zero_fraction;
  j["forced_zeros"] = summary.forced_zeros;
  j["agreements"] = summary.agreements;
  j["disagreements"] = summary.disagreements;
  j["gray_zone"] = summary.gray_zone;
  if (std::isfinite(summary.max_lambda_forbidden)) {
    j["max_lambda_forbidden"] = summary.max_lambda_forbidden;
  } else {
    j["max_lambda_forbidden"] = nullptr;
  }
  if (std::isfinite(summary.min_lambda_allowed)) {
    j["min_lambda_allowed"] = summary.min_lambda_allowed;
  } else {
    j["min_lambda_allowed"] = nullptr;
  }
  j["all_agree"] = summary.all_agree();
  return j;
}

std::string to_csv(const VerificationRecord& record) {
  std::ostringstream os;
  os << "label,prob,lambda_max,verdict,agree\n";
  for (const auto& out : record.outcomes) {
    os << out.label << ',' << format_g17(out.prob) << ','
       << format_g17(out.lambda_max) << ',' << to_string(out.verdict) << ','
       << (out.agree ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "beta,prob,lambda_max\n";
  for (const auto& row : rows) {
    os << format_g17(row.beta) << ',' << format_g17(row.prob) << ','
       << format_g17(row.lambda_max) << '\n';
  }
  return os.str();
}

std::string scan_to_csv(const ScanSummary& summary) {
  std::ostringstream os;
  os << "index,forced_zero,a,b,prob,lambda_max,qm_forbidden,cl_forbidden,"
        "agree\n";
  for (std::size_t i = 0; i < summary.cases.size(); ++i) {
    const auto& row = summary.cases[i];
    os << i << ',' << (row.forced_zero ? "true" : "false") << ','
       << format_g17(row.a) << ',' << format_g17(row.b) << ','
       << format_g17(row.prob) << ',' << format_g17(row.lambda_max) << ','
       << (row.qm_forbidden ? "true" : "false") << ','
       << (row.cl_forbidden ? "true" : "false") << ','
       << (row.agree ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace jorca
