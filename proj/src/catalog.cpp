#include "etf_forge/catalog.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "etf_forge/error.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/io.hpp"

namespace etf {

namespace {

constexpr std::array<std::size_t, 18> kNewSizes = {11, 35, 39, 43, 47, 59, 67, 71, 83,
                                                   95, 103, 107, 111, 119, 123, 127, 131, 143};
constexpr std::array<std::size_t, 16> kOpenSizes = {17, 29, 53, 65, 73, 77, 81, 89,
                                                    93, 101, 105, 109, 125, 133, 137, 149};

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SkewHadamard base_hadamard(const SizePlan& plan) {
  SkewHadamard h = plan.import_path.empty() ? paley_skew_hadamard(plan.paley_q) : io::read_hadamard(plan.import_path);
  if (h.order() != plan.m) {
    throw Error("dim_mismatch", "base Hadamard has order " + std::to_string(h.order()) + ", plan expects " +
                                    std::to_string(plan.m));
  }
  for (std::size_t i = 0; i < plan.j; ++i) h = double_hadamard(h);
  return h;
}

}  // namespace

ImportedHadamard load_import(const std::filesystem::path& path) {
  const SkewHadamard h = io::read_hadamard(path);
  return {path, h.order()};
}

bool is_paley_order(std::size_t m) { return m >= 4 && is_prime(m - 1) && (m - 1) % 4 == 3; }

std::optional<SizePlan> plan_size(std::size_t d, std::span<const ImportedHadamard> imports) {
  if (d == 0) return std::nullopt;
  for (std::size_t k = 0; k <= kMaxDoublings; ++k) {
    const std::size_t scale_k = std::size_t{1} << k;
    if (d % scale_k != 0) break;
    const std::size_t order = d / scale_k + 1;  // 2^j m
    for (std::size_t j = 0; j <= kMaxDoublings; ++j) {
      const std::size_t scale_j = std::size_t{1} << j;
      if (order % scale_j != 0) break;
      const std::size_t m = order / scale_j;
      if (order <= 2) continue;
      SizePlan plan{d, m, j, k, "", 0, {}};
      if (is_paley_order(m)) {
        plan.paley_q = m - 1;
        plan.source = "paley(" + std::to_string(plan.paley_q) + ")";
        return plan;
      }
      const auto hit = std::find_if(imports.begin(), imports.end(),
                                    [m](const ImportedHadamard& imp) { return imp.order == m; });
      if (hit != imports.end()) {
        plan.import_path = hit->path;
        plan.source = "import(" + hit->path.string() + ")";
        return plan;
      }
    }
  }
  return std::nullopt;
}

PlanOutcome execute_plan(const SizePlan& plan, double tolerance) {
  const std::size_t order = (std::size_t{1} << plan.j) * plan.m;
  if (plan.d != (std::size_t{1} << plan.k) * (order - 1)) {
    throw Error("dim_mismatch", "plan does not satisfy d = 2^k (2^j m - 1)");
  }
  const SkewHadamard h = base_hadamard(plan);
  Frame f = build_skew_etf(h);
  if (plan.k > 0) {
    // Doubling the complement with the opposite epsilon yields a complement
    // of the double, so each level reuses the previous pair.
    Frame g = naimark_complement(f);
    for (std::size_t level = 0; level < plan.k; ++level) {
      Frame phi = double_etf(f, g, Epsilon::plus);
      if (level + 1 < plan.k) g = double_etf(g, f, Epsilon::minus);
      f = std::move(phi);
    }
  }
  f.provenance = plan.source + " j=" + std::to_string(plan.j) + " k=" + std::to_string(plan.k) + " -> " + f.provenance;
  Certificate cert = verify_etf(f, tolerance);
  if (!cert.pass) {
    throw Error("certification_failed", "d=" + std::to_string(plan.d) + " coherence " + fmt_real(cert.coherence) +
                                            " vs target " + fmt_real(cert.mu_target));
  }
  return {std::move(f), std::move(cert)};
}

std::span<const std::size_t> new_sizes_below_150() { return kNewSizes; }
std::span<const std::size_t> open_sizes_below_150() { return kOpenSizes; }

std::vector<ReportRow> size_report(std::size_t max_d, std::span<const ImportedHadamard> imports, double tolerance) {
  std::vector<ReportRow> rows;
  for (std::size_t d = 3; d <= max_d; d += 4) {
    ReportRow row;
    row.d = d;
    const auto plan = plan_size(d, imports);
    if (!plan) {
      row.status = "needs_import";
      row.m = d + 1;
      row.source = "needs imported Hadamard of order " + std::to_string(d + 1);
      rows.push_back(std::move(row));
      continue;
    }
    row.m = plan->m;
    row.j = plan->j;
    row.k = plan->k;
    row.source = plan->source;
    try {
      const PlanOutcome outcome = execute_plan(*plan, tolerance);
      row.status = "certified";
      row.coherence = outcome.certificate.coherence;
      row.mu_target = outcome.certificate.mu_target;
      row.pass = outcome.certificate.pass;
    } catch (const Error& e) {
      row.status = "failed";
      row.mu_target = welch_mu(d, 2 * d);
      row.pass = false;
      row.source += " [" + std::string(e.what()) + "]";
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t d : kOpenSizes) {
    if (d > max_d) continue;
    ReportRow row;
    row.d = d;
    row.status = "conjectural";
    row.source = "conjectured: d x 2d ETF exists for every d";
    row.mu_target = welch_mu(d, 2 * d);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.d < b.d; });
  return rows;
}

std::string report_tsv(std::span<const ReportRow> rows) {
  std::string out = "d\tstatus\tm\tj\tk\tsource\tcoherence\tmu_target\tpass\n";
  for (const auto& row : rows) {
    const bool planned = row.status == "certified" || row.status == "failed";
    out += std::to_string(row.d) + "\t" + row.status + "\t";
    out += (row.m ? std::to_string(row.m) : "-") + "\t";
    out += (planned ? std::to_string(row.j) : "-") + "\t";
    out += (planned ? std::to_string(row.k) : "-") + "\t";
    out += row.source + "\t";
    out += (row.coherence ? fmt_real(*row.coherence) : "-") + "\t";
    out += (row.mu_target ? fmt_real(*row.mu_target) : "-") + "\t";
    out += row.pass ? (*row.pass ? "true" : "false") : "-";
    out += "\n";
  }
  return out;
}

}  // namespace etf
